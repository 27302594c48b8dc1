use std::collections::BTreeMap;

use mdperm::enumerate::{self, Enumeration, Predicate};
use mdperm::polyreal::{self, RatPolynomial};
use mdperm::series::{self, Series2};
use mdperm::{formulas, LevelKind, MultiPermutation, Pattern, ShiftSpec};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::{usage, Body, Context, Item, Route, Suite, UsageError, VerifyArgs};

use Route::{Brute, Direct, Formula, Recurrence, Series};

fn row_text<T: ToString>(row: &[T]) -> String {
    row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn signed(row: Vec<BigUint>) -> Vec<BigInt> {
    row.into_iter().map(BigInt::from).collect()
}

pub fn verify(a: &VerifyArgs, ctx: &Context) -> Result<Body, UsageError> {
    let items = match a.suite {
        Suite::RTriangle => r_triangle(a, ctx)?,
        Suite::WiIdentities => wi_identities(a, ctx)?,
        Suite::PdeResidual => pde_residual(a)?,
        Suite::RealRooted => real_rooted(a)?,
        Suite::Interlacing => interlacing(a)?,
        Suite::MinimalSets => minimal_sets(a, ctx)?,
        Suite::ComplementBijection => complement_bijection(a, ctx)?,
        Suite::ElementUniformity => element_uniformity(a, ctx)?,
        Suite::PlateauTotals => plateau_totals(a, ctx)?,
        Suite::Shiftform => shiftform(a)?,
    };
    let failed = items.iter().filter(|i| i.status == Some(crate::Status::Fail)).count();
    let summary = if failed == 0 {
        format!("all {} checks passed", items.len())
    } else {
        format!("{failed} of {} checks failed", items.len())
    };
    Ok(Body { items, summary: Some(summary), ..Body::default() })
}

fn no_level_flags(a: &VerifyArgs) -> Result<(), UsageError> {
    if a.d.is_some() || a.n.is_some() {
        return Err(usage("--d and --n apply to the level-set and shift-form suites"));
    }
    Ok(())
}

fn r_triangle(a: &VerifyArgs, ctx: &Context) -> Result<Vec<Item>, UsageError> {
    no_level_flags(a)?;
    let n_max = a.n_max.unwrap_or(7);
    let brute_max = a.brute_max.unwrap_or(n_max.min(7)).min(n_max);
    let scopes = (1..=brute_max).map(|n| ctx.canonical_scope(3, n)).collect::<Result<Vec<_>, _>>()?;
    let series_rows = series::series_r(n_max).egf_triangle();
    let mut items = Vec::new();
    for n in 0..=n_max {
        let table = signed(formulas::r_row(n));
        let from_series = &series_rows[n];
        let mut ok = &table == from_series;
        let mut routes = vec![Formula, Series];
        if n <= brute_max {
            let brute = if n == 0 {
                enumerate::r_distribution(0)?
            } else {
                enumerate::r_distribution_in(&scopes[n - 1])?
            };
            ok &= signed(brute) == table;
            routes.insert(0, Brute);
        }
        items.push(Item::check(format!("n={n}"), &routes, ok).with_value(row_text(&table)));
    }
    Ok(items)
}

fn wi_identities(a: &VerifyArgs, ctx: &Context) -> Result<Vec<Item>, UsageError> {
    no_level_flags(a)?;
    let n_max = a.n_max.unwrap_or(20);
    let brute_max = a.brute_max.unwrap_or(5).min(n_max);
    let scopes = (1..=brute_max).map(|n| ctx.scope(3, n)).collect::<Result<Vec<_>, _>>()?;
    let euler = formulas::wi_values_euler(n_max);
    let egf = series::series_w(n_max).egf_integers();
    let mut items = Vec::new();
    for n in 0..=n_max {
        let sum = formulas::wi_value(n);
        let mut ok = euler[n] == sum && egf[n] == BigInt::from(sum.clone());
        let mut routes = vec![Formula, Recurrence, Series];
        if (1..=brute_max).contains(&n) {
            let brute =
                enumerate::oracle_count(&scopes[n - 1], LevelKind::MaxEntry, &Predicate::WeaklyIncreasing)?;
            ok &= brute == sum;
            routes.push(Brute);
        }
        items.push(Item::check(format!("n={n}"), &routes, ok).with_value(sum));
    }
    Ok(items)
}

/// The bivariate series rebuilt from the table: `Σ R(n,k) y^k x^n / n!`.
fn series_from_table(order: usize) -> Series2 {
    let coeffs = (0..=order)
        .map(|n| {
            let f = BigRational::from_integer(formulas::factorial(n).into());
            RatPolynomial::from_bigints(formulas::r_row(n).into_iter().map(BigInt::from)).scale(&(BigRational::from_integer(1.into()) / f))
        })
        .collect();
    Series2::new(coeffs, order)
}

fn pde_residual(a: &VerifyArgs) -> Result<Vec<Item>, UsageError> {
    no_level_flags(a)?;
    let order = a.n_max.unwrap_or(20);
    let from_series = series::series_r(order + 1);
    let from_table = series_from_table(order + 1);
    let mut items = Vec::new();
    let rs = series::pde_residual(&from_series, order)?;
    let rt = series::pde_residual(&from_table, order)?;
    items.push(
        Item::check(format!("pde order {order}"), &[Series, Formula], rs.is_zero() && rt.is_zero() && from_series == from_table)
            .with_detail("R - 2(y^2-y)R_y + xyR_x - R_x vanishes for both constructions"),
    );
    for k in 1..=5 {
        let ok = series::integral_recurrence_residual(&from_series, k).is_zero()
            && series::integral_recurrence_residual(&from_table, k).is_zero();
        items.push(Item::check(format!("integral recurrence k={k}"), &[Series, Formula], ok));
    }
    Ok(items)
}

fn both_constructions(n_max: usize) -> (Vec<RatPolynomial>, Vec<RatPolynomial>) {
    let recurrence = polyreal::r_polys(n_max);
    let s = series::series_r(n_max);
    let from_series = (0..=n_max).map(|n| s.egf_row(n)).collect();
    (recurrence, from_series)
}

fn real_rooted(a: &VerifyArgs) -> Result<Vec<Item>, UsageError> {
    no_level_flags(a)?;
    let n_max = a.n_max.unwrap_or(20);
    let (rec, ser) = both_constructions(n_max);
    let mut items = Vec::new();
    for n in 1..=n_max {
        let ok = rec[n] == ser[n] && polyreal::is_real_rooted(&rec[n])? && polyreal::is_real_rooted(&ser[n])?;
        items.push(
            Item::check(format!("n={n}"), &[Formula, Series], ok)
                .with_value(format!("degree {}", rec[n].degree())),
        );
    }
    Ok(items)
}

fn interlacing(a: &VerifyArgs) -> Result<Vec<Item>, UsageError> {
    no_level_flags(a)?;
    let n_max = a.n_max.unwrap_or(20);
    let (rec, ser) = both_constructions(n_max + 1);
    let mut items = Vec::new();
    for n in 1..=n_max {
        let ok = rec[n] == ser[n]
            && rec[n + 1] == ser[n + 1]
            && polyreal::interlaces(&rec[n], &rec[n + 1])?
            && polyreal::interlaces(&ser[n], &ser[n + 1])?;
        items.push(Item::check(format!("R_{n} interlaces R_{}", n + 1), &[Formula, Series], ok));
    }
    Ok(items)
}

const LEVEL_CASES: [(usize, usize); 8] = [(3, 2), (3, 3), (3, 4), (3, 5), (4, 2), (4, 3), (4, 4), (5, 3)];

fn level_cases(a: &VerifyArgs) -> Result<Vec<(usize, usize)>, UsageError> {
    if a.n_max.is_some() || a.brute_max.is_some() {
        return Err(usage("level-set suites take --d and --n instead of --n-max/--brute-max"));
    }
    if let (Some(d), Some(n)) = (a.d, a.n) {
        if d < 3 || n < 1 {
            return Err(usage(format!("--d must be at least 3 and --n at least 1, got {d} and {n}")));
        }
        return Ok(vec![(d, n)]);
    }
    let cases: Vec<_> = LEVEL_CASES
        .into_iter()
        .filter(|&(d, n)| a.d.is_none_or(|x| x == d) && a.n.is_none_or(|x| x == n))
        .collect();
    if cases.is_empty() {
        return Err(usage("no built-in case matches --d/--n; give both to pick one"));
    }
    Ok(cases)
}

fn minimal_sets(a: &VerifyArgs, ctx: &Context) -> Result<Vec<Item>, UsageError> {
    let cases = level_cases(a)?;
    let scopes = cases.iter().map(|&(d, n)| ctx.scope(d, n)).collect::<Result<Vec<_>, _>>()?;
    let mut items = Vec::new();
    for (&(d, n), scope) in cases.iter().zip(&scopes) {
        let s = enumerate::oracle_level_sets_in(scope, &[])?;
        let (m, m_star) = formulas::level_bounds(d, n);
        let witness = formulas::construct_minimal(d, n)?;
        items.push(
            Item::check(
                format!("({d},{n}) bounds"),
                &[Formula, Brute],
                (s.m_min_observed, s.m_max_observed) == (m, m_star) && formulas::is_minimal(&witness),
            )
            .with_value(format!("m={m} m*={m_star}")),
        );
        let complemented = Enumeration::new(scope.clone())?
            .collect_where(formulas::is_minimal)
            .iter()
            .filter(|p| formulas::is_maximal(&p.complement()))
            .count();
        items.push(
            Item::check(
                format!("({d},{n}) |M| = |M*|"),
                &[Brute, Direct],
                s.minimal == s.maximal && BigUint::from(complemented) == s.minimal,
            )
            .with_value(&s.minimal),
        );
        if d % 2 == 1 || n % 2 == 1 {
            items.push(
                Item::check(
                    format!("({d},{n}) minimal = complete-plateau"),
                    &[Brute, Formula],
                    m == m_star && s.minimal == s.complete_plateau,
                )
                .with_value(&s.complete_plateau),
            );
        }
    }
    Ok(items)
}

fn complement_bijection(a: &VerifyArgs, ctx: &Context) -> Result<Vec<Item>, UsageError> {
    let cases = level_cases(a)?;
    let scopes = cases.iter().map(|&(d, n)| ctx.scope(d, n)).collect::<Result<Vec<_>, _>>()?;
    let mut items = Vec::new();
    for (&(d, n), scope) in cases.iter().zip(&scopes) {
        let e = Enumeration::new(scope.clone())?;
        let mut image: Vec<MultiPermutation> =
            e.collect_where(formulas::is_minimal).iter().map(MultiPermutation::complement).collect();
        let mut maximal = e.collect_where(formulas::is_maximal);
        image.sort();
        maximal.sort();
        let witness = formulas::construct_minimal(d, n)?;
        let ok = image == maximal && formulas::is_maximal(&witness.complement());
        items.push(Item::check(format!("({d},{n})"), &[Brute, Formula], ok).with_value(image.len()));
    }
    Ok(items)
}

fn element_uniformity(a: &VerifyArgs, ctx: &Context) -> Result<Vec<Item>, UsageError> {
    let cases = level_cases(a)?;
    let scopes = cases.iter().map(|&(d, n)| ctx.scope(d, n)).collect::<Result<Vec<_>, _>>()?;
    let mut items = Vec::new();
    for (&(d, n), scope) in cases.iter().zip(&scopes) {
        let mult = enumerate::oracle_element_multiplicity_in(scope)?;
        // fix the column's position (n ways), then each row freely orders the rest
        let each = BigUint::from(n) * formulas::factorial(n - 1).pow(d as u32 - 1);
        let uniform = mult.values().all(|c| *c == each) && mult.len() == n.pow(d as u32 - 1);
        items.push(Item::check(format!("({d},{n}) multiplicity"), &[Brute, Formula], uniform).with_value(&each));
        let mut by_level: BTreeMap<usize, u64> = BTreeMap::new();
        for col in mult.keys() {
            *by_level.entry(col.iter().map(|&v| v as usize).sum()).or_default() += 1;
        }
        let poly = formulas::e_level_polynomial(d, n);
        let levels_ok = poly.len() == by_level.len()
            && poly.iter().enumerate().all(|(l, c)| by_level.get(&l).is_some_and(|&b| BigUint::from(b) == *c));
        items.push(
            Item::check(format!("({d},{n}) elements per level"), &[Brute, Formula], levels_ok)
                .with_value(row_text(&poly)),
        );
    }
    Ok(items)
}

fn plateau_totals(a: &VerifyArgs, ctx: &Context) -> Result<Vec<Item>, UsageError> {
    if a.brute_max.is_some() || a.n.is_some() {
        return Err(usage("plateau-totals takes --d and --n-max"));
    }
    let d = a.d.unwrap_or(3);
    let n_max = a.n_max.unwrap_or(if d == 3 { 5 } else { 4 });
    if d < 2 {
        return Err(usage(format!("--d must be at least 2, got {d}")));
    }
    let kinds: Vec<LevelKind> = match ctx.kind {
        Some(k) => vec![k.into()],
        None if d == 3 => vec![LevelKind::MaxEntry, LevelKind::EntrySum],
        None => vec![LevelKind::MaxEntry],
    };
    if d != 3 && kinds.contains(&LevelKind::EntrySum) {
        return Err(usage("--kind sum: plateau totals under level sums are only known for --d 3"));
    }
    let n_lo = if d == 3 { 2 } else { d - 1 };
    let scopes = (n_lo..=n_max).map(|n| ctx.scope(d, n)).collect::<Result<Vec<_>, _>>()?;
    let plateau = Pattern::plateau(d - 1);
    let mut items = Vec::new();
    for (n, scope) in (n_lo..=n_max).zip(&scopes) {
        for &kind in &kinds {
            let brute = enumerate::oracle_total_pattern(scope, kind, &plateau)?;
            let formula = if d == 3 && kind == LevelKind::EntrySum {
                formulas::total_plateaux_3(n)?
            } else {
                formulas::total_plateaux_levmax(d, n)?
            };
            items.push(
                Item::check(format!("({d},{n}) {}-plateaux {}", d - 1, kind.label()), &[Brute, Formula], brute == formula)
                    .with_value(&formula),
            );
            if d == 3 {
                let asc = enumerate::oracle_stat_totals(scope, kind)?.ascents;
                let formula = formulas::total_ascents_3(n, kind)?;
                items.push(
                    Item::check(format!("({d},{n}) ascents {}", kind.label()), &[Brute, Formula], BigUint::from(asc) == formula)
                        .with_value(&formula),
                );
            }
        }
    }
    Ok(items)
}

fn shiftform(a: &VerifyArgs) -> Result<Vec<Item>, UsageError> {
    if a.n_max.is_some() || a.brute_max.is_some() || a.d.is_some() {
        return Err(usage("shiftform takes --n only"));
    }
    let ns = match a.n {
        Some(n) => vec![n],
        None => vec![3, 5],
    };
    let mut items = Vec::new();
    let spec = ShiftSpec::new(5, vec![1, 2, 2], vec![4, 0, 2])?;
    let witness = formulas::shift_form(&spec)?;
    let want = MultiPermutation::parse_rows(&["01234", "24130", "41302"])?;
    items.push(
        Item::check("witness n=5 s=(1,2,2)", &[Formula, Direct], witness == want && formulas::is_minimal(&witness))
            .with_value(witness.to_string()),
    );
    for n in ns {
        let specs = formulas::theorem_shift_specs(n)?;
        let mut agree = true;
        let mut minimal = 0;
        for s in &specs {
            let decided = formulas::shift_form_is_minimal(s)?;
            let direct = formulas::is_minimal(&formulas::shift_form(s)?);
            agree &= decided == direct;
            minimal += usize::from(direct);
        }
        items.push(
            Item::check(format!("n={n}"), &[Formula, Direct], agree)
                .with_value(format!("{} specs, {minimal} minimal", specs.len())),
        );
    }
    Ok(items)
}
