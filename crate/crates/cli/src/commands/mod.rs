use std::path::PathBuf;

use mdperm::enumerate::{Enumeration, Predicate};
use mdperm::oeis::{self, Generator, RowStatus, SequenceId};
use mdperm::{formulas, LevelKind, MultiPermutation, ShiftSpec};
use serde_json::Value;

use crate::{
    usage, Body, ConstructArgs, Context, EnumerateArgs, Item, OeisArgs, Route, Status, UsageError, Witness,
};

mod seq;
mod table;
mod verify;

pub use seq::seq;
pub use table::table;
pub use verify::verify;

enum Filter {
    All,
    Levels(Predicate),
    Minimal,
    Maximal,
    Minimax,
}

impl Filter {
    fn parse(s: Option<&str>) -> Result<Self, UsageError> {
        Ok(match s {
            None => Filter::All,
            Some("minimal") => Filter::Minimal,
            Some("maximal") => Filter::Maximal,
            Some("minimax") => Filter::Minimax,
            Some(p) => Filter::Levels(p.parse().map_err(|e| usage(format!("--filter: {e}")))?),
        })
    }

    fn holds(&self, p: &MultiPermutation, kind: LevelKind) -> bool {
        match self {
            Filter::All => true,
            Filter::Levels(pred) => pred.holds(p.level_vector(kind).levels()),
            Filter::Minimal => formulas::is_minimal(p),
            Filter::Maximal => formulas::is_maximal(p),
            Filter::Minimax => formulas::is_minimal(p) && formulas::is_maximal(p),
        }
    }
}

pub fn enumerate(a: &EnumerateArgs, ctx: &Context) -> Result<Body, UsageError> {
    let filter = Filter::parse(a.filter.as_deref())?;
    let by_sum = matches!(filter, Filter::Minimal | Filter::Maximal | Filter::Minimax);
    if by_sum && ctx.kind == Some(crate::KindArg::Max) {
        return Err(usage("--kind max: minimal, maximal and minimax are defined under level sums"));
    }
    let kind = ctx.kind_or(if by_sum { LevelKind::EntrySum } else { LevelKind::MaxEntry });
    if a.d < 2 || a.n < 1 {
        return Err(usage(format!("--d must be at least 2 and --n at least 1, got {} and {}", a.d, a.n)));
    }
    let scope = if a.canonical { ctx.canonical_scope(a.d, a.n)? } else { ctx.scope(a.d, a.n)? };
    let e = Enumeration::new(scope)?;
    let mut items = Vec::new();
    if a.list {
        let mut found = e.collect_where(|p| filter.holds(p, kind));
        found.sort();
        items.push(Item::value("count", found.len(), Route::Brute));
        for (i, p) in found.iter().take(a.limit).enumerate() {
            let levels: Vec<String> = p.level_vector(kind).levels().iter().map(u64::to_string).collect();
            items.push(
                Item::value(format!("match {}", i + 1), p, Route::Brute).with_detail(format!("levels {}", levels.join(" "))),
            );
        }
    } else {
        items.push(Item::value("count", e.count_where(|p| filter.holds(p, kind)), Route::Brute));
    }
    Ok(Body { items, extra_params: vec![("kind".into(), kind.label().into())], ..Body::default() })
}

fn level_report(levels: &[u64]) -> String {
    match (levels.iter().min(), levels.iter().max()) {
        (Some(lo), Some(hi)) if lo == hi => format!("all columns at {lo}"),
        (Some(lo), Some(hi)) => format!("levels from {lo} to {hi}"),
        _ => "no columns".into(),
    }
}

fn describe(p: &MultiPermutation, items: &mut Vec<Item>) {
    for (i, row) in p.rows().iter().enumerate() {
        let text: Vec<String> = row.iter().map(u32::to_string).collect();
        items.push(Item::value(format!("row {}", i + 1), text.join(" "), Route::Formula));
    }
    let lv = p.level_vector(LevelKind::EntrySum);
    let levels: Vec<String> = lv.levels().iter().map(u64::to_string).collect();
    items.push(Item::value("levels", levels.join(" "), Route::Direct));
    items.push(Item::value("level report", level_report(lv.levels()), Route::Direct));
}

pub fn construct(a: &ConstructArgs, ctx: &Context) -> Result<Body, UsageError> {
    if ctx.kind == Some(crate::KindArg::Max) {
        return Err(usage("--kind max: constructions are about level sums"));
    }
    let mut items = Vec::new();
    match a.what {
        Witness::Minimal => {
            if !a.shifts.is_empty() || !a.last.is_empty() {
                return Err(usage("--shifts and --last apply to shiftform only"));
            }
            let (Some(d), Some(n)) = (a.d, a.n) else {
                return Err(usage("construct minimal needs --d and --n"));
            };
            let p = formulas::construct_minimal(d, n)?;
            describe(&p, &mut items);
            let (m, _) = formulas::level_bounds(d, n);
            items.push(Item::value("bound m", m, Route::Formula));
            let top = p.level_vector(LevelKind::EntrySum).max();
            items.push(Item::check("minimal", &[Route::Formula, Route::Direct], top == m));
        }
        Witness::Shiftform => {
            if a.d.is_some() {
                return Err(usage("--d is implied by the number of --shifts"));
            }
            let Some(n) = a.n else {
                return Err(usage("construct shiftform needs --n"));
            };
            if a.shifts.is_empty() {
                return Err(usage("construct shiftform needs --shifts"));
            }
            let spec = ShiftSpec::new(n, a.shifts.clone(), a.last.clone())?;
            let p = formulas::shift_form(&spec)?;
            describe(&p, &mut items);
            let direct = formulas::is_minimal(&p);
            items.push(Item::value("minimal", direct, Route::Direct));
            items.push(Item::value("maximal", formulas::is_maximal(&p), Route::Direct));
            match formulas::shift_form_is_minimal(&spec) {
                Ok(decided) => items.push(
                    Item::check("shift-form decision", &[Route::Formula, Route::Direct], decided == direct)
                        .with_value(decided),
                ),
                Err(e) => items.push(Item::value("shift-form decision", "n/a", Route::Formula).with_detail(e.to_string())),
            }
        }
    }
    Ok(Body { items, ..Body::default() })
}

fn generator_route(g: &Generator) -> Route {
    match g {
        Generator::CanonicalMinimal4Odd => Route::Brute,
        _ => Route::Formula,
    }
}

fn bfile_dir(a: &OeisArgs, ctx: &Context) -> Option<PathBuf> {
    a.dir.clone().or_else(|| ctx.bfile_dir.clone())
}

pub fn oeis_check(a: &OeisArgs, ctx: &Context) -> Result<Body, UsageError> {
    if a.all {
        return oeis_all(a, ctx);
    }
    let id: SequenceId = a.id.as_deref().unwrap_or_default().parse().map_err(|e| usage(format!("--id: {e}")))?;
    let mapping = oeis::lookup(id).map_err(|e| usage(format!("--id: {e}")))?;
    let path = match (&a.bfile, bfile_dir(a, ctx)) {
        (Some(p), _) => p.clone(),
        (None, Some(dir)) => dir.join(id.bfile_name()),
        (None, None) => {
            return Err(usage(format!("no --bfile given and {} is not set", crate::BFILE_DIR_ENV)));
        }
    };
    let bfile = oeis::read_bfile(&path).map_err(|e| usage(format!("--bfile {}: {e}", path.display())))?;
    if let Some(file_id) = bfile.id {
        if file_id != id {
            return Err(usage(format!("--bfile holds {file_id}, not {id}")));
        }
    }
    let limit = a.limit.unwrap_or(mapping.default_limit);
    let report = oeis::reconcile_guarded(mapping, &bfile, limit, &ctx.max_states)?;
    let route = generator_route(&mapping.generator);
    let items = report
        .rows
        .iter()
        .map(|row| {
            let status = match row.status {
                RowStatus::Match => Status::Pass,
                RowStatus::Mismatch => Status::Fail,
                RowStatus::Skipped => Status::Skipped,
            };
            let computed = row.computed.as_ref().map_or_else(|| "-".to_string(), ToString::to_string);
            Item {
                key: row.index.to_string(),
                value: Some(row.expected.to_string()),
                status: Some(status),
                provenance: format!("bfile+{}", route.label()),
                detail: (row.status == RowStatus::Mismatch).then(|| format!("computed {computed}")),
            }
        })
        .collect();
    let mut summary = format!("{id}: {} compared, {} mismatches", report.compared, report.mismatches);
    if report.compared == 0 {
        summary.push_str(", nothing compared");
    }
    if report.provisional {
        summary.push_str(" (provisional mapping)");
    }
    let mut body = Body {
        items,
        summary: Some(summary),
        extra_params: vec![
            ("generator".into(), mapping.generator.name().into()),
            ("provisional".into(), report.provisional.into()),
            ("bfile".into(), path.display().to_string().into()),
            ("pass".into(), report.pass.into()),
        ],
    };
    if !report.pass && report.mismatches == 0 {
        // nothing was compared: that is a failed reconciliation, not a pass
        body.items.push(Item {
            key: "compared".into(),
            value: Some("0".into()),
            status: Some(Status::Fail),
            provenance: format!("bfile+{}", route.label()),
            detail: Some("no index of the b-file lies in the generator's domain".into()),
        });
    }
    Ok(body)
}

fn oeis_all(a: &OeisArgs, ctx: &Context) -> Result<Body, UsageError> {
    let Some(dir) = bfile_dir(a, ctx) else {
        return Err(usage(format!("--all needs --dir or {}", crate::BFILE_DIR_ENV)));
    };
    let mut items = Vec::new();
    for mapping in oeis::registry() {
        let path = dir.join(mapping.id.bfile_name());
        if !path.exists() {
            continue;
        }
        let bfile = oeis::read_bfile(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let limit = a.limit.unwrap_or(mapping.default_limit);
        let report = oeis::reconcile_guarded(mapping, &bfile, limit, &ctx.max_states)?;
        let mut detail = mapping.description.to_string();
        if report.provisional {
            detail.push_str(" (provisional mapping)");
        }
        let route = generator_route(&mapping.generator);
        items.push(Item {
            key: mapping.id.to_string(),
            value: Some(format!("{} compared, {} mismatches", report.compared, report.mismatches)),
            status: Some(if report.pass { Status::Pass } else { Status::Fail }),
            provenance: format!("bfile+{}", route.label()),
            detail: Some(detail),
        });
    }
    if items.is_empty() {
        return Err(usage(format!("no registered b-files found in {}", dir.display())));
    }
    let failed = items.iter().filter(|i| i.status == Some(Status::Fail)).count();
    let summary = format!("{} of {} sequences reconciled", items.len() - failed, items.len());
    Ok(Body {
        items,
        summary: Some(summary),
        extra_params: vec![("dir".into(), Value::String(dir.display().to_string()))],
    })
}
