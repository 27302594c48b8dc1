use std::collections::BTreeMap;

use mdperm::{enumerate, formulas, series, LevelKind};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::{usage, Body, Context, Item, Route, RouteArg, TableArgs, TableName, UsageError};

fn trim(mut row: Vec<BigInt>) -> Vec<BigInt> {
    while row.len() > 1 && row.last().is_some_and(Zero::is_zero) {
        row.pop();
    }
    row
}

fn signed(row: Vec<BigUint>) -> Vec<BigInt> {
    row.into_iter().map(BigInt::from).collect()
}

pub fn table(a: &TableArgs, ctx: &Context) -> Result<Body, UsageError> {
    if a.name != TableName::ELevels && (a.d.is_some() || a.n.is_some()) {
        return Err(usage("--d and --n apply to e-levels only"));
    }
    match a.name {
        TableName::R => r_table(a, ctx),
        TableName::Peaks => peaks(a, ctx),
        TableName::ELevels => e_levels(a, ctx),
    }
}

fn triangle_items(label: &str, rows: Vec<Vec<BigInt>>, route: Route) -> Vec<Item> {
    rows.into_iter()
        .enumerate()
        .flat_map(|(n, row)| {
            trim(row)
                .into_iter()
                .enumerate()
                .map(move |(k, v)| Item::value(format!("{label}({n},{k})"), v, route))
        })
        .collect()
}

fn r_table(a: &TableArgs, ctx: &Context) -> Result<Body, UsageError> {
    if ctx.kind_or(LevelKind::MaxEntry) != LevelKind::MaxEntry {
        return Err(usage("--kind sum: repeated levels are counted under level maxima"));
    }
    let route = a.route.unwrap_or(RouteArg::Formula);
    let rows: Vec<Vec<BigInt>> = match route {
        RouteArg::Formula => (0..=a.n_max).map(|n| signed(formulas::r_row(n))).collect(),
        RouteArg::Series => series::series_r(a.n_max).egf_triangle(),
        RouteArg::Brute => {
            let scopes = (1..=a.n_max).map(|n| ctx.canonical_scope(3, n)).collect::<Result<Vec<_>, _>>()?;
            let mut rows = vec![signed(enumerate::r_distribution(0)?)];
            for scope in &scopes {
                rows.push(signed(enumerate::r_distribution_in(scope)?));
            }
            rows
        }
    };
    Ok(Body { items: triangle_items("R", rows, route_of(route)), ..Body::default() })
}

fn peaks(a: &TableArgs, ctx: &Context) -> Result<Body, UsageError> {
    let route = a.route.unwrap_or(RouteArg::Series);
    let rows: Vec<Vec<BigInt>> = match route {
        RouteArg::Formula => return Err(usage("--route formula: peaks are tabulated by series or brute")),
        RouteArg::Series => series::series_p(a.n_max).egf_triangle(),
        RouteArg::Brute => {
            for n in 1..=a.n_max {
                ctx.scope(2, n)?;
            }
            (0..=a.n_max)
                .map(|n| enumerate::peak_distribution(n).map(signed))
                .collect::<Result<_, _>>()?
        }
    };
    Ok(Body { items: triangle_items("P", rows, route_of(route)), ..Body::default() })
}

fn e_levels(a: &TableArgs, ctx: &Context) -> Result<Body, UsageError> {
    let (Some(d), Some(n)) = (a.d, a.n) else {
        return Err(usage("e-levels needs --d and --n"));
    };
    if d < 2 || n < 1 {
        return Err(usage(format!("--d must be at least 2 and --n at least 1, got {d} and {n}")));
    }
    let route = a.route.unwrap_or(RouteArg::Formula);
    let counts: Vec<BigUint> = match route {
        RouteArg::Formula => formulas::e_level_polynomial(d, n),
        RouteArg::Series => return Err(usage("--route series: e-levels are tabulated by formula or brute")),
        RouteArg::Brute => {
            let scope = ctx.scope(d, n)?;
            let mult = enumerate::oracle_element_multiplicity_in(&scope)?;
            let mut by_level: BTreeMap<usize, u64> = BTreeMap::new();
            for col in mult.keys() {
                *by_level.entry(col.iter().map(|&v| v as usize).sum()).or_default() += 1;
            }
            (0..=(d - 1) * (n - 1)).map(|l| BigUint::from(by_level.get(&l).copied().unwrap_or(0))).collect()
        }
    };
    let items = counts
        .into_iter()
        .enumerate()
        .map(|(l, v)| Item::value(format!("E({l})"), v, route_of(route)))
        .collect();
    Ok(Body { items, ..Body::default() })
}

pub fn route_of(r: RouteArg) -> Route {
    match r {
        RouteArg::Formula => Route::Formula,
        RouteArg::Series => Route::Series,
        RouteArg::Brute => Route::Brute,
    }
}
