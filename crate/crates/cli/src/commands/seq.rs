use mdperm::enumerate::{self, Predicate};
use mdperm::{formulas, series, LevelKind, Pattern};
use num_bigint::{BigInt, BigUint};

use crate::{usage, Body, Context, Item, Route, RouteArg, SeqArgs, SeqName, UsageError};

fn first_index(name: SeqName, param: Option<usize>, d: usize, route: RouteArg) -> usize {
    let lo = match name {
        SeqName::Springer | SeqName::Unimodal | SeqName::RColumn => 0,
        SeqName::Hoe | SeqName::TotalAscents => 2,
        SeqName::CBounded => param.unwrap_or(0) + 1,
        SeqName::TotalPlateaux => (d - 1).max(1),
    };
    // the enumerator has no empty permutation
    if route == RouteArg::Brute {
        lo.max(1)
    } else {
        lo
    }
}

fn check_flags(a: &SeqArgs, kind: LevelKind, d: usize) -> Result<(), UsageError> {
    let needs_param = matches!(a.name, SeqName::RColumn | SeqName::CBounded);
    match (needs_param, a.param) {
        (true, None) => {
            let what = if a.name == SeqName::RColumn { "K (the column)" } else { "C (the bound)" };
            return Err(usage(format!("this sequence needs a positional {what}")));
        }
        (false, Some(p)) => return Err(usage(format!("unexpected positional argument {p}"))),
        _ => {}
    }
    if a.d.is_some() && !matches!(a.name, SeqName::Hoe | SeqName::TotalPlateaux) {
        return Err(usage("--d applies to hoe and total-plateaux only"));
    }
    if d < 2 {
        return Err(usage(format!("--d must be at least 2, got {d}")));
    }
    if a.canonical && a.name != SeqName::CBounded {
        return Err(usage("--canonical applies to c-bounded only"));
    }
    let sum_only = a.name == SeqName::CBounded;
    let max_only = matches!(a.name, SeqName::Springer | SeqName::Unimodal | SeqName::Hoe | SeqName::RColumn);
    if sum_only && kind == LevelKind::MaxEntry {
        return Err(usage("--kind max: c-bounded permutations are defined under level sums"));
    }
    if max_only && kind == LevelKind::EntrySum && a.route != RouteArg::Brute {
        return Err(usage("--kind sum: this formula counts under level maxima; use --route brute"));
    }
    if a.name == SeqName::TotalPlateaux && kind == LevelKind::EntrySum && d != 3 && a.route != RouteArg::Brute {
        return Err(usage("--kind sum: the plateau formula under level sums is only known for --d 3"));
    }
    if a.route == RouteArg::Series && !matches!(a.name, SeqName::Springer | SeqName::Unimodal | SeqName::RColumn) {
        return Err(usage("--route series is available for springer, unimodal and r-column"));
    }
    Ok(())
}

pub fn seq(a: &SeqArgs, ctx: &Context) -> Result<Body, UsageError> {
    let default_kind = if a.name == SeqName::CBounded { LevelKind::EntrySum } else { LevelKind::MaxEntry };
    let kind = ctx.kind_or(default_kind);
    let d = a.d.unwrap_or(3);
    check_flags(a, kind, d)?;
    let lo = first_index(a.name, a.param, d, a.route);
    let n_min = a.n_min.unwrap_or(lo);
    if n_min < lo {
        return Err(usage(format!("--n-min {n_min} is below the first index {lo} of this sequence")));
    }
    if n_min > a.n_max {
        return Err(usage(format!("--n-min {n_min} exceeds --n-max {}", a.n_max)));
    }
    let values: Vec<BigInt> = match a.route {
        RouteArg::Formula => formula_values(a, kind, d, n_min)?.into_iter().map(BigInt::from).collect(),
        RouteArg::Series => series_values(a, n_min),
        RouteArg::Brute => brute_values(a, kind, d, n_min, ctx)?.into_iter().map(BigInt::from).collect(),
    };
    let route = match a.route {
        RouteArg::Formula => Route::Formula,
        RouteArg::Series => Route::Series,
        RouteArg::Brute => Route::Brute,
    };
    let items = (n_min..=a.n_max).zip(values).map(|(n, v)| Item::value(n.to_string(), v, route)).collect();
    Ok(Body {
        items,
        extra_params: vec![("kind".into(), kind.label().into()), ("n_min".into(), n_min.into())],
        ..Body::default()
    })
}

fn formula_values(a: &SeqArgs, kind: LevelKind, d: usize, n_min: usize) -> Result<Vec<BigUint>, UsageError> {
    let p = a.param.unwrap_or(0);
    (n_min..=a.n_max)
        .map(|n| {
            Ok(match a.name {
                SeqName::Springer => formulas::wi_value(n),
                SeqName::Unimodal => formulas::u_value(n),
                SeqName::Hoe => formulas::hoe_value(n, d)?,
                SeqName::RColumn => formulas::r_value(n, p),
                SeqName::CBounded => formulas::c_bounded_value(n, p, a.canonical)?,
                SeqName::TotalPlateaux if kind == LevelKind::EntrySum => formulas::total_plateaux_3(n)?,
                SeqName::TotalPlateaux => formulas::total_plateaux_levmax(d, n)?,
                SeqName::TotalAscents => formulas::total_ascents_3(n, kind)?,
            })
        })
        .collect()
}

fn series_values(a: &SeqArgs, n_min: usize) -> Vec<BigInt> {
    let n_max = a.n_max;
    let all: Vec<BigInt> = match a.name {
        SeqName::Springer => series::series_w(n_max).egf_integers(),
        SeqName::Unimodal => series::series_u(n_max).egf_integers(),
        SeqName::RColumn => {
            let k = a.param.unwrap_or(0);
            series::series_r(n_max)
                .egf_triangle()
                .into_iter()
                .map(|row| row.get(k).cloned().unwrap_or_default())
                .collect()
        }
        _ => unreachable!("flags were checked"),
    };
    all.into_iter().skip(n_min).collect()
}

fn brute_values(
    a: &SeqArgs,
    kind: LevelKind,
    d: usize,
    n_min: usize,
    ctx: &Context,
) -> Result<Vec<BigUint>, UsageError> {
    let p = a.param.unwrap_or(0);
    // check every size against the guard before doing any work
    let dim = if matches!(a.name, SeqName::Hoe | SeqName::TotalPlateaux) { d } else { 3 };
    let canonical = a.canonical || a.name == SeqName::RColumn;
    let scopes = (n_min..=a.n_max)
        .map(|n| if canonical { ctx.canonical_scope(dim, n) } else { ctx.scope(dim, n) })
        .collect::<Result<Vec<_>, _>>()?;
    scopes
        .iter()
        .map(|scope| {
            Ok(match a.name {
                SeqName::Springer => enumerate::oracle_count(scope, kind, &Predicate::WeaklyIncreasing)?,
                SeqName::Unimodal => enumerate::oracle_count(scope, kind, &Predicate::Unimodal)?,
                SeqName::Hoe => enumerate::oracle_count(scope, kind, &Predicate::Hoe)?,
                SeqName::RColumn => enumerate::r_distribution_in(scope)?.get(p).cloned().unwrap_or_default(),
                SeqName::CBounded => {
                    enumerate::oracle_level_sets_in(scope, &[p as u64])?.c_bounded[0].1.clone()
                }
                SeqName::TotalPlateaux => enumerate::oracle_total_pattern(scope, kind, &Pattern::plateau(d - 1))?,
                SeqName::TotalAscents => enumerate::oracle_stat_totals(scope, kind)?.ascents.into(),
            })
        })
        .collect()
}
