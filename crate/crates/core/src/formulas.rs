//! Closed forms, recurrences and explicit constructions, evaluated exactly.

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{LevelKind, MultiPermutation};
use crate::series;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shift {shift} is not coprime to n = {n}")]
    NotCoprime { shift: usize, n: usize },
    #[error("outside the normalized shift-form setting: {0}")]
    OutOfTheoremScope(String),
    #[error("malformed shift spec: {0}")]
    BadSpec(String),
}

fn domain<T>(msg: impl Into<String>) -> Result<T, FormulaError> {
    Err(FormulaError::Domain(msg.into()))
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Arrangement number `m!/(m-k)!`, zero outside `0 <= k <= m`.
pub fn arrangement(m: i64, k: i64) -> BigUint {
    if k < 0 || m < 0 || k > m {
        return BigUint::zero();
    }
    ((m - k + 1)..=m).map(|i| BigUint::from(i as u64)).product()
}

fn to_unsigned(v: BigInt) -> BigUint {
    v.to_biguint().expect("count is nonnegative")
}

fn exact_div(num: BigInt, den: i64) -> BigInt {
    let (q, r) = num.div_rem(&BigInt::from(den));
    assert!(r.is_zero(), "closed form is not integral: remainder {r} mod {den}");
    q
}

/// Memoized triangle `R[n][k]` with `R(n,k) = (2k+1)R(n-1,k) + (n-2k+1)R(n-1,k-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RTable {
    rows: Vec<Vec<BigUint>>,
}

impl RTable {
    pub fn new(n_max: usize) -> Self {
        let mut t = RTable { rows: vec![vec![BigUint::one()]] };
        t.extend_to(n_max);
        t
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    fn extend_to(&mut self, n_max: usize) {
        while self.rows.len() <= n_max {
            let n = self.rows.len();
            let prev: Vec<BigInt> = self.rows[n - 1].iter().cloned().map(BigInt::from).collect();
            let get = |k: usize| prev.get(k).cloned().unwrap_or_else(BigInt::zero);
            // row n is nonzero for k <= ceil((n-1)/2); keep one extra slot of slack
            let width = n / 2 + 1;
            let mut row = Vec::with_capacity(width);
            for k in 0..width {
                let v = if k == 0 {
                    BigInt::one()
                } else {
                    BigInt::from(2 * k + 1) * get(k) + BigInt::from(n as i64 - 2 * k as i64 + 1) * get(k - 1)
                };
                row.push(to_unsigned(v));
            }
            while row.len() > 1 && row.last().is_some_and(Zero::is_zero) {
                row.pop();
            }
            self.rows.push(row);
        }
    }

    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(|| {
                assert!(n <= self.n_max(), "row {n} beyond table");
                // R(0, k) = 0 for k >= 1, and rows vanish past their width
                BigUint::zero()
            })
    }

    /// Nonzero prefix of row `n`.
    pub fn row(&self, n: usize) -> &[BigUint] {
        if n == 0 {
            return &self.rows[0][..1];
        }
        &self.rows[n]
    }
}

fn r_cache() -> &'static RwLock<RTable> {
    static CACHE: OnceLock<RwLock<RTable>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(RTable::new(32)))
}

/// Row `n` of the R triangle, computed through a shared memo.
pub fn r_row(n: usize) -> Vec<BigUint> {
    {
        let t = r_cache().read().expect("r table lock");
        if n <= t.n_max() {
            return t.row(n).to_vec();
        }
    }
    let mut t = r_cache().write().expect("r table lock");
    t.extend_to(n);
    t.row(n).to_vec()
}

/// Number of canonical `(3,n)`-permutations with exactly `k` repeated levels
/// under levMax.
pub fn r_value(n: usize, k: usize) -> BigUint {
    r_row(n).get(k).cloned().unwrap_or_else(BigUint::zero)
}

/// The printed closed forms for the columns `k = 1, 2, 3`.
pub fn r_closed_form(n: usize, k: usize) -> Option<BigUint> {
    let n = n as i64;
    let pow = |b: i64| BigInt::from(b).pow(n as u32);
    let v = match k {
        1 => exact_div(pow(3) - 2 * n - 1, 4),
        2 => exact_div(pow(5) - BigInt::from(2 * n - 1) * pow(3) + 2 * n * n - 2 * n - 2, 16),
        3 => exact_div(
            3 * pow(7) - BigInt::from(6 * n - 9) * pow(5) + BigInt::from(6 * n * n - 18 * n + 3) * pow(3)
                - 4 * n * n * n
                + 18 * n * n
                - 8 * n
                - 15,
            192,
        ),
        _ => return None,
    };
    // the closed forms describe n >= 1; at n = 0 they may not vanish
    if n == 0 {
        return Some(BigUint::zero());
    }
    Some(to_unsigned(v))
}

/// Springer number: weakly increasing `(3,n)`-permutations under levMax.
pub fn wi_value(n: usize) -> BigUint {
    r_row(n)
        .iter()
        .enumerate()
        .map(|(k, r)| r << k)
        .sum()
}

/// `WI_0..=WI_{n_max}` via the Euler-number recurrence.
pub fn wi_values_euler(n_max: usize) -> Vec<BigUint> {
    let euler = series::euler_numbers(n_max);
    let mut wi = vec![BigUint::one()];
    for n in 1..=n_max {
        let v = (0..n)
            .map(|k| ((binomial(n - 1, k) * &euler[k]) << k) * &wi[n - k - 1])
            .sum();
        wi.push(v);
    }
    wi
}

pub fn wi_value_euler(n: usize) -> BigUint {
    wi_values_euler(n).pop().expect("nonempty")
}

/// Unimodal `(3,n)`-permutations under levMax, with `U_0 = 0`.
pub fn u_value(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    r_row(n - 1)
        .iter()
        .enumerate()
        .map(|(k, r)| r << (n - k - 1))
        .sum()
}

/// Hoe `(d,n)`-permutations: `Σ_{k=0}^{n-2} (2^{d-1}-1)^k`.
pub fn hoe_value(n: usize, d: usize) -> Result<BigUint, FormulaError> {
    if n < 2 || d < 2 {
        return domain(format!("hoe count needs n >= 2 and d >= 2, got n = {n}, d = {d}"));
    }
    let base = (BigUint::one() << (d - 1)) - 1u32;
    Ok((0..=n - 2).map(|k| base.pow(k as u32)).sum())
}

/// Same count via `H_n = 1 + (2^{d-1}-1) H_{n-1}` from `H_2 = 1`.
pub fn hoe_value_recurrence(n: usize, d: usize) -> Result<BigUint, FormulaError> {
    if n < 2 || d < 2 {
        return domain(format!("hoe count needs n >= 2 and d >= 2, got n = {n}, d = {d}"));
    }
    let base = (BigUint::one() << (d - 1)) - 1u32;
    Ok((3..=n).fold(BigUint::one(), |h, _| BigUint::one() + &base * h))
}

/// `(m, m*)`: least maximum level and greatest minimum level under levSum.
pub fn level_bounds(d: usize, n: usize) -> (u64, u64) {
    if d <= 2 {
        return (n.saturating_sub(1) as u64, 0);
    }
    let t = ((d - 1) * n.saturating_sub(1)) as u64;
    (t.div_ceil(2), t / 2)
}

fn x_rows(n: usize) -> [Vec<u32>; 2] {
    let n = n as u32;
    [(0..n).collect(), (0..n).rev().collect()]
}

fn y_rows(n: usize) -> [Vec<u32>; 2] {
    let k = n / 2;
    if n % 2 == 1 {
        let row2 = (0..n).map(|j| ((j + k) % n) as u32).collect();
        let row3 = (0..n)
            .map(|j| if j <= k { 2 * k - 2 * j } else { 4 * k + 1 - 2 * j } as u32)
            .collect();
        [row2, row3]
    } else {
        let row2 = (0..n).map(|j| ((k - 1 + j) % n) as u32).collect();
        let row3 = (0..n)
            .map(|j| match j.cmp(&k) {
                std::cmp::Ordering::Less => 2 * k - 1 - 2 * j,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => 4 * k - 2 * j,
            } as u32)
            .collect();
        [row2, row3]
    }
}

/// A minimal `(d,n)`-permutation under levSum: copies of `X_{3,n}`, led by
/// `Y_{4,n}` when `d` is even.
pub fn construct_minimal(d: usize, n: usize) -> Result<MultiPermutation, FormulaError> {
    if d < 3 || n < 1 {
        return domain(format!("construction needs d >= 3 and n >= 1, got d = {d}, n = {n}"));
    }
    let mut rows = Vec::with_capacity(d - 1);
    let mut remaining = d - 1;
    if d.is_multiple_of(2) {
        rows.push((0..n as u32).collect());
        rows.extend(y_rows(n));
        remaining -= 3;
    }
    for _ in 0..remaining / 2 {
        rows.extend(x_rows(n));
    }
    Ok(MultiPermutation::new(rows).expect("construction yields bijections"))
}

/// `Y_{4,n}` on its own.
pub fn construct_y4(n: usize) -> Result<MultiPermutation, FormulaError> {
    construct_minimal(4, n)
}

/// Whether the levSum maximum level equals `m_{d,n}`.
pub fn is_minimal(perm: &MultiPermutation) -> bool {
    perm.level_vector(LevelKind::EntrySum).max() == level_bounds(perm.dimension(), perm.len()).0
}

/// Whether the levSum minimum level equals `m*_{d,n}`.
pub fn is_maximal(perm: &MultiPermutation) -> bool {
    perm.level_vector(LevelKind::EntrySum).min() == level_bounds(perm.dimension(), perm.len()).1
}

/// Rows given by `π^i_j ≡ π^i_n + j·s_i (mod n)`, `i = 2..d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftSpec {
    pub n: usize,
    pub shifts: Vec<usize>,
    pub last_column: Vec<usize>,
}

impl ShiftSpec {
    pub fn new(n: usize, shifts: Vec<usize>, last_column: Vec<usize>) -> Result<Self, FormulaError> {
        let spec = ShiftSpec { n, shifts, last_column };
        spec.validate()?;
        Ok(spec)
    }

    pub fn dimension(&self) -> usize {
        self.shifts.len() + 1
    }

    pub fn validate(&self) -> Result<(), FormulaError> {
        if self.n == 0 || self.shifts.is_empty() {
            return Err(FormulaError::BadSpec("need n >= 1 and at least one row".into()));
        }
        if self.shifts.len() != self.last_column.len() {
            return Err(FormulaError::BadSpec(format!(
                "{} shifts but {} last-column entries",
                self.shifts.len(),
                self.last_column.len()
            )));
        }
        if let Some(&p) = self.last_column.iter().find(|&&p| p >= self.n) {
            return Err(FormulaError::BadSpec(format!("last-column entry {p} is not below n = {}", self.n)));
        }
        if let Some(&s) = self.shifts.iter().find(|&&s| (s % self.n).gcd(&self.n) != 1) {
            return Err(FormulaError::NotCoprime { shift: s, n: self.n });
        }
        Ok(())
    }
}

pub fn shift_form(spec: &ShiftSpec) -> Result<MultiPermutation, FormulaError> {
    spec.validate()?;
    let n = spec.n;
    let rows = spec
        .shifts
        .iter()
        .zip(&spec.last_column)
        .map(|(&s, &last)| (1..=n).map(|j| ((last + j * s) % n) as u32).collect())
        .collect();
    Ok(MultiPermutation::new(rows).expect("coprime shifts give bijections"))
}

/// The minimality decision for normalized specs with `d = 4`, `n = 2k+1`,
/// `s_2 = 1`, `π^2_n = n-1` and `s_3 ∈ {1, k}`.
pub fn shift_form_is_minimal(spec: &ShiftSpec) -> Result<bool, FormulaError> {
    spec.validate()?;
    let n = spec.n;
    if spec.dimension() != 4 || n < 3 || n.is_multiple_of(2) {
        return Err(FormulaError::OutOfTheoremScope(format!(
            "needs d = 4 and odd n >= 3, got d = {}, n = {n}",
            spec.dimension()
        )));
    }
    if spec.shifts[0] != 1 || spec.last_column[0] != n - 1 {
        return Err(FormulaError::OutOfTheoremScope("needs s_2 = 1 and last entry n-1 in row 2".into()));
    }
    let k = n / 2;
    let (s3, s4) = (spec.shifts[1], spec.shifts[2]);
    let pair = (spec.last_column[1], spec.last_column[2]);
    if s3 == 1 {
        Ok(s4 == n - 2 && (pair == (k - 1, 1) || pair == (k, 0)))
    } else if s3 == k {
        Ok(s4 == k && (pair == (0, k) || pair == (k, 0)))
    } else {
        Err(FormulaError::OutOfTheoremScope(format!("s_3 = {s3} is neither 1 nor {k}")))
    }
}

/// Every spec [`shift_form_is_minimal`] decides at odd length `n`: `s_2 = 1`,
/// `π^2_n = n-1`, `s_3 ∈ {1, k}`, any unit `s_4` and any last entries.
pub fn theorem_shift_specs(n: usize) -> Result<Vec<ShiftSpec>, FormulaError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(FormulaError::OutOfTheoremScope(format!("needs odd n >= 3, got {n}")));
    }
    let k = n / 2;
    let mut s3s = vec![1, k];
    s3s.dedup();
    let mut out = Vec::new();
    for s3 in s3s {
        for s4 in (1..n).filter(|s| s.gcd(&n) == 1) {
            for p3 in 0..n {
                for p4 in 0..n {
                    out.push(ShiftSpec::new(n, vec![1, s3, s4], vec![n - 1, p3, p4])?);
                }
            }
        }
    }
    Ok(out)
}

/// c-bounded `(3,n)`-permutations:`c!(c+1)^{n-c} n!`, without the `n!`
/// factor when only canonical ones are counted.
pub fn c_bounded_value(n: usize, c: usize, canonical: bool) -> Result<BigUint, FormulaError> {
    if c >= n {
        return domain(format!("c-bounded count needs c < n, got c = {c}, n = {n}"));
    }
    let v = factorial(c) * BigUint::from(c + 1).pow((n - c) as u32);
    Ok(if canonical { v } else { v * factorial(n) })
}

/// Coefficients of `(1 + x + .. + x^{n-1})^{d-1}`.
pub fn e_level_polynomial(d: usize, n: usize) -> Vec<BigUint> {
    let mut poly = vec![BigUint::one()];
    for _ in 1..d {
        let mut next = vec![BigUint::zero(); poly.len() + n.saturating_sub(1)];
        for (i, c) in poly.iter().enumerate() {
            for slot in &mut next[i..i + n] {
                *slot += c;
            }
        }
        poly = next;
    }
    poly
}

/// Number of distinct elements of level `ℓ` in `S_n^d` under levSum.
pub fn e_level_count(d: usize, n: usize, level: usize) -> Result<BigUint, FormulaError> {
    if d < 2 || n < 1 || level > (d - 1) * (n - 1) {
        return domain(format!("level {level} out of range for d = {d}, n = {n}"));
    }
    Ok(e_level_polynomial(d, n).swap_remove(level))
}

/// Total number of `(d-1)`-plateaux (consecutive `11..1` with `d-1` ones)
/// over all `(d,n)`-permutations under levMax.
pub fn total_plateaux_levmax(d: usize, n: usize) -> Result<BigUint, FormulaError> {
    if d < 2 || n + 1 < d {
        return domain(format!("needs d >= 2 and n >= d-1, got d = {d}, n = {n}"));
    }
    let sum: BigUint = (0..n as i64)
        .map(|l| arrangement(l, d as i64 - 2).pow(d as u32 - 1))
        .sum();
    Ok(BigUint::from(n + 2 - d) * factorial(d - 1) * factorial(n + 1 - d).pow(d as u32 - 1) * sum)
}

/// The `d = 3` specialization `(2n-1) n! (n-1)! / 3`.
pub fn total_plateaux_3(n: usize) -> Result<BigUint, FormulaError> {
    if n < 2 {
        return domain(format!("needs n >= 2, got {n}"));
    }
    let num = BigUint::from(2 * n - 1) * factorial(n) * factorial(n - 1);
    let (q, r) = num.div_rem(&BigUint::from(3u32));
    assert!(r.is_zero(), "plateau total is not integral");
    Ok(q)
}

/// Total ascents over `S_n^3`, the same under levMax and levSum.
pub fn total_ascents_3(n: usize, _kind: LevelKind) -> Result<BigUint, FormulaError> {
    if n < 2 {
        return domain(format!("needs n >= 2, got {n}"));
    }
    let num = BigUint::from(3 * n * n - 5 * n + 1) * factorial(n) * factorial(n - 1);
    let (q, r) = num.div_rem(&BigUint::from(6u32));
    assert!(r.is_zero(), "ascent total is not integral");
    Ok(q)
}

/// Total occurrences of the consecutive `k`-plateau over `S_n^3` under levSum.
pub fn total_k_plateaux_levsum(n: usize, k: usize) -> Result<BigUint, FormulaError> {
    if n < 2 || k < 2 || k > n {
        return domain(format!("needs 2 <= k <= n, got n = {n}, k = {k}"));
    }
    let tail: BigUint = (k - 1..=n - 2)
        .map(|l| arrangement(l as i64 + 1, k as i64))
        .sum();
    let head = arrangement(n as i64, k as i64);
    Ok(factorial(n - k + 1) * factorial(n - k) * (head + (tail << 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn r_examples() {
        assert_eq!(r_value(3, 1), u(5));
        assert_eq!(r_value(5, 2), u(61));
        assert_eq!(r_value(0, 1), u(0));
        assert_eq!(r_value(0, 0), u(1));
        assert_eq!(r_value(4, 2), u(5));
        assert_eq!(r_value(2, 1), u(1));
    }

    #[test]
    fn r_rows_sum_to_factorial() {
        for n in 0..=12 {
            assert_eq!(r_row(n).iter().sum::<BigUint>(), factorial(n), "n={n}");
        }
    }

    #[test]
    fn r_positivity_profile() {
        for n in 1..=20 {
            for k in 0..=n {
                let positive = !r_value(n, k).is_zero();
                assert_eq!(positive, k <= n / 2, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn r_columns_match_closed_forms() {
        for n in 1..=20 {
            for k in 1..=3 {
                assert_eq!(r_closed_form(n, k).unwrap(), r_value(n, k), "n={n} k={k}");
            }
        }
        assert_eq!(r_closed_form(5, 4), None);
    }

    #[test]
    fn r_table_grows_past_cache() {
        let t = RTable::new(40);
        assert_eq!(r_row(40), t.row(40));
        assert_eq!(t.get(0, 3), u(0));
    }

    #[test]
    fn springer_routes_agree() {
        let expected = [1u64, 1, 3, 11, 57, 361, 2763, 24611, 250737];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(wi_value(n), u(e));
        }
        let euler = wi_values_euler(20);
        for (n, v) in euler.iter().enumerate() {
            assert_eq!(&wi_value(n), v, "n={n}");
        }
    }

    #[test]
    fn unimodal_examples() {
        assert_eq!(u_value(0), u(0));
        assert_eq!(u_value(1), u(1));
        assert_eq!(u_value(3), u(6));
        assert_eq!(u_value(4), u(28));
    }

    #[test]
    fn hoe_examples() {
        assert_eq!(hoe_value(4, 3).unwrap(), u(13));
        assert_eq!(hoe_value(3, 4).unwrap(), u(8));
        for n in 2..10 {
            assert_eq!(hoe_value(n, 2).unwrap(), u(n as u64 - 1));
        }
        for n in 2..=30 {
            for d in 2..=8 {
                assert_eq!(hoe_value(n, d), hoe_value_recurrence(n, d));
            }
        }
        assert!(hoe_value(1, 3).is_err());
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(level_bounds(4, 5), (6, 6));
        assert_eq!(level_bounds(4, 4), (5, 4));
        assert_eq!(level_bounds(2, 7), (6, 0));
        for d in 3..8 {
            for n in 1..8 {
                let (m, ms) = level_bounds(d, n);
                assert_eq!(m == ms, n % 2 == 1 || d % 2 == 1);
            }
        }
    }

    #[test]
    fn minimal_constructions() {
        let x = construct_minimal(3, 4).unwrap();
        assert_eq!(x.rows(), &[vec![0, 1, 2, 3], vec![3, 2, 1, 0]]);
        assert_eq!(x.level_vector(LevelKind::EntrySum).levels(), &[3, 3, 3, 3]);

        let y5 = construct_minimal(4, 5).unwrap();
        assert_eq!(y5, MultiPermutation::parse_rows(&["01234", "23401", "42031"]).unwrap());
        assert_eq!(y5.level_vector(LevelKind::EntrySum).levels(), &[6; 5]);

        let y4 = construct_minimal(4, 4).unwrap();
        assert_eq!(y4, MultiPermutation::parse_rows(&["0123", "1230", "3102"]).unwrap());
        assert_eq!(y4.level_vector(LevelKind::EntrySum).levels(), &[4, 4, 5, 5]);

        for d in 3..=6 {
            for n in 1..=7 {
                let p = construct_minimal(d, n).unwrap();
                assert_eq!(p.dimension(), d);
                assert!(is_minimal(&p), "d={d} n={n}: {p}");
            }
        }
        assert!(construct_minimal(2, 3).is_err());
    }

    #[test]
    fn shift_form_examples() {
        let spec = ShiftSpec::new(5, vec![1, 2, 2], vec![4, 0, 2]).unwrap();
        let p = shift_form(&spec).unwrap();
        assert_eq!(p, MultiPermutation::parse_rows(&["01234", "24130", "41302"]).unwrap());

        let spec = ShiftSpec::new(3, vec![1, 1], vec![2, 2]).unwrap();
        assert_eq!(shift_form(&spec).unwrap(), MultiPermutation::parse_rows(&["012", "012"]).unwrap());

        assert_eq!(
            ShiftSpec::new(4, vec![1, 2, 1], vec![3, 0, 0]),
            Err(FormulaError::NotCoprime { shift: 2, n: 4 })
        );
    }

    #[test]
    fn shift_form_decisions() {
        let case_b = ShiftSpec::new(5, vec![1, 2, 2], vec![4, 0, 2]).unwrap();
        assert!(shift_form_is_minimal(&case_b).unwrap());
        // this spec is minimal: every column sits at level 6
        let case_a = ShiftSpec::new(5, vec![1, 1, 3], vec![4, 1, 1]).unwrap();
        assert!(shift_form_is_minimal(&case_a).unwrap());
        assert!(is_minimal(&shift_form(&case_a).unwrap()));
        let case_a_bad = ShiftSpec::new(5, vec![1, 1, 3], vec![4, 0, 1]).unwrap();
        assert!(!shift_form_is_minimal(&case_a_bad).unwrap());
        assert!(!is_minimal(&shift_form(&case_a_bad).unwrap()));
        let small = ShiftSpec::new(3, vec![1, 1, 1], vec![2, 1, 0]).unwrap();
        assert!(shift_form_is_minimal(&small).unwrap());
        let odd = ShiftSpec::new(7, vec![1, 2, 1], vec![6, 0, 0]).unwrap();
        assert!(matches!(shift_form_is_minimal(&odd), Err(FormulaError::OutOfTheoremScope(_))));
    }

    #[test]
    fn theorem_specs_cover_both_cases() {
        // n = 3: s_3 = 1 = k, two units for s_4, nine last-column pairs
        assert_eq!(theorem_shift_specs(3).unwrap().len(), 18);
        // n = 5: s_3 in {1, 2}, four units, 25 pairs
        assert_eq!(theorem_shift_specs(5).unwrap().len(), 200);
        for n in [3, 5, 7] {
            for spec in theorem_shift_specs(n).unwrap() {
                let decided = shift_form_is_minimal(&spec).unwrap();
                assert_eq!(decided, is_minimal(&shift_form(&spec).unwrap()), "{spec:?}");
            }
        }
        assert!(theorem_shift_specs(4).is_err());
    }

    #[test]
    fn c_bounded_examples() {
        for n in 1..7 {
            assert_eq!(c_bounded_value(n, 0, false).unwrap(), factorial(n));
        }
        assert_eq!(c_bounded_value(3, 1, false).unwrap(), u(24));
        assert_eq!(c_bounded_value(4, 2, true).unwrap(), u(18));
        for n in 3..10 {
            assert_eq!(c_bounded_value(n, 2, true).unwrap(), u(2 * 3u64.pow(n as u32 - 2)));
        }
        assert!(c_bounded_value(3, 3, false).is_err());
    }

    #[test]
    fn e_levels() {
        assert_eq!(e_level_count(3, 3, 2).unwrap(), u(3));
        assert_eq!(e_level_count(5, 4, 0).unwrap(), u(1));
        assert_eq!(e_level_count(3, 4, 1).unwrap(), u(2));
        assert_eq!(e_level_count(3, 4, 5).unwrap(), u(2));
        assert!(e_level_count(3, 4, 7).is_err());
        for d in 2..6 {
            for n in 1..6 {
                let top = (d - 1) * (n - 1);
                let poly = e_level_polynomial(d, n);
                assert_eq!(poly.iter().sum::<BigUint>(), BigUint::from(n).pow(d as u32 - 1));
                for l in 0..=top {
                    assert_eq!(poly[l], poly[top - l]);
                    if l < n {
                        assert_eq!(poly[l], binomial(l + d - 2, d - 2));
                    }
                }
            }
        }
    }

    #[test]
    fn plateau_totals() {
        assert_eq!(total_plateaux_levmax(3, 3).unwrap(), u(20));
        assert_eq!(total_plateaux_levmax(3, 2).unwrap(), u(2));
        assert_eq!(total_plateaux_levmax(4, 4).unwrap(), u(2688));
        for n in 2..10 {
            assert_eq!(total_plateaux_levmax(3, n), total_plateaux_3(n));
        }
        assert!(total_plateaux_levmax(5, 3).is_err());
    }

    #[test]
    fn ascent_totals() {
        assert_eq!(total_ascents_3(2, LevelKind::MaxEntry).unwrap(), u(1));
        assert_eq!(total_ascents_3(3, LevelKind::EntrySum).unwrap(), u(26));
        for n in 2..=6 {
            let lhs = (total_ascents_3(n, LevelKind::MaxEntry).unwrap() << 1) + total_plateaux_3(n).unwrap();
            assert_eq!(lhs, BigUint::from(n - 1) * factorial(n).pow(2));
        }
    }

    #[test]
    fn k_plateaux_levsum() {
        assert_eq!(total_k_plateaux_levsum(3, 2).unwrap(), u(20));
        assert_eq!(total_k_plateaux_levsum(2, 2).unwrap(), u(2));
        assert_eq!(total_k_plateaux_levsum(3, 3).unwrap(), u(6));
        for n in 2..10 {
            assert_eq!(total_k_plateaux_levsum(n, 2), total_plateaux_3(n));
        }
        assert!(total_k_plateaux_levsum(3, 4).is_err());
    }

    #[test]
    fn arrangement_edges() {
        assert_eq!(arrangement(5, 2), u(20));
        assert_eq!(arrangement(2, 3), u(0));
        assert_eq!(arrangement(0, 0), u(1));
        assert_eq!(arrangement(3, -1), u(0));
    }
}
