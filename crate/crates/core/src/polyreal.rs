//! Exact rational polynomials and real-root machinery.
//!
//! Root counting uses Sturm chains over `BigRational`, so every decision
//! (real-rootedness, interlacing) is exact. Isolation bisects at points that
//! are never roots, which keeps all Sturm queries on valid endpoints.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::formulas;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("interval endpoint {0} is a root")]
    EndpointIsRoot(Box<BigRational>),
    #[error("interval ({}, {}] is empty", .0.0, .0.1)]
    EmptyInterval(Box<(BigRational, BigRational)>),
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("polynomial is not real-rooted")]
    NotRealRooted,
    #[error("polynomial has a negative leading coefficient")]
    NotStandard,
    #[error("degrees {0} and {1} differ by more than one")]
    DegreeGapTooLarge(usize, usize),
    #[error("isolation tolerance must be positive")]
    BadTolerance,
}

/// Polynomial with rational coefficients, stored in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(rat).collect())
    }

    pub fn from_bigints<I: IntoIterator<Item = BigInt>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `y`.
    pub fn var() -> Self {
        Self::from_integers([0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, y: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * y + c)
    }

    pub fn eval_f64(&self, y: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `self * y^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RatPolynomial { coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(BigRational::one()), |acc, _| &acc * self)
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        if self.coeffs.len() < divisor.coeffs.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / &lead;
            if !q.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * c;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, PolyError> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; errors unless `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(PolyError::NotSquareFree);
        }
        Ok(q)
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Self::from_bigints(ints.into_iter().map(|c| c / &content))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    /// Monic greatest common divisor (zero when both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor").primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Largest square-free divisor, `p / gcd(p, p')`.
    pub fn square_free_part(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.exact_div(&g).expect("gcd divides").monic())
    }

    pub fn is_square_free(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Yun decomposition: `[(a_1, 1), (a_2, 2), ..]` with `p ~ Π a_i^i`.
    pub fn square_free_factors(&self) -> Result<Vec<(Self, usize)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut out = Vec::new();
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.exact_div(&a0).expect("gcd divides");
        let mut c = d.exact_div(&a0).expect("gcd divides");
        let mut dd = &c - &b.derivative();
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&dd);
            b = b.exact_div(&a).expect("gcd divides");
            c = dd.exact_div(&a).expect("gcd divides");
            dd = &c - &b.derivative();
            if a.degree() > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        Ok(out)
    }

    /// Cauchy bound: every real root lies strictly inside `(-M, M)`.
    pub fn root_bound(&self) -> BigRational {
        let lead = self.leading().abs();
        let m = self.coeffs[..self.degree()]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(BigRational::zero);
        BigRational::one() + m
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("y")?,
                _ => write!(f, "y^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;

    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;

    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &RatPolynomial {
    type Output = RatPolynomial;

    fn neg(self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;

    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for RatPolynomial {
            type Output = RatPolynomial;
            fn $m(self, rhs: RatPolynomial) -> RatPolynomial { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

/// `R_{n,*}(y) = Σ_k R(n, k) y^k`, built by the derivative recurrence
/// `R_n = ((n-1)y + 1) R_{n-1} - 2y(y-1) R'_{n-1}` from `R_0 = R_1 = 1`.
pub fn r_poly(n: usize) -> RatPolynomial {
    r_polys(n).pop().expect("at least one polynomial")
}

/// `[R_{0,*}, .., R_{n_max,*}]`.
pub fn r_polys(n_max: usize) -> Vec<RatPolynomial> {
    let one = RatPolynomial::from_integers([1]);
    let mut out = vec![one.clone()];
    if n_max >= 1 {
        out.push(one);
    }
    let y_sq_minus_y = RatPolynomial::from_integers([0, -2, 2]);
    for n in 2..=n_max {
        let prev = &out[n - 1];
        let lin = RatPolynomial::from_integers([1, n as i64 - 1]);
        let next = &(&lin * prev) - &(&y_sq_minus_y * &prev.derivative());
        out.push(next);
    }
    out
}

/// Standard Sturm chain `p, p', -rem(..), ..`.
pub fn sturm_chain(p: &RatPolynomial) -> Vec<RatPolynomial> {
    // positive rescaling leaves sign sequences intact and keeps entries small
    let mut chain = vec![p.primitive(), p.derivative().primitive()];
    while !chain.last().unwrap().is_zero() {
        let k = chain.len();
        let r = chain[k - 2].rem(&chain[k - 1]).expect("nonzero");
        chain.push((-&r).primitive());
    }
    chain.pop();
    chain
}

// Sturm chain with primitive integer coefficients, evaluated by integer
// Horner on `num / den` so no rational normalisation happens per query.
struct IntChain {
    polys: Vec<Vec<BigInt>>,
}

impl IntChain {
    fn new(p: &RatPolynomial) -> Self {
        let polys = sturm_chain(p)
            .iter()
            .map(|q| q.coeffs.iter().map(|c| c.numer().clone()).collect())
            .collect();
        IntChain { polys }
    }

    // sign of q(num/den) for den > 0
    fn sign_at(q: &[BigInt], num: &BigInt, den_pows: &[BigInt]) -> Ordering {
        let d = q.len() - 1;
        let mut acc = q[d].clone();
        for i in (0..d).rev() {
            acc = acc * num + &q[i] * &den_pows[d - i];
        }
        acc.cmp(&BigInt::zero())
    }

    fn variations(&self, x: &BigRational) -> usize {
        let deg = self.polys[0].len() - 1;
        let mut den_pows = Vec::with_capacity(deg + 1);
        den_pows.push(BigInt::one());
        for i in 0..deg {
            let next = &den_pows[i] * x.denom();
            den_pows.push(next);
        }
        let mut last = Ordering::Equal;
        let mut count = 0;
        for q in &self.polys {
            let s = Self::sign_at(q, x.numer(), &den_pows);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn is_root(&self, x: &BigRational) -> bool {
        let p = &self.polys[0];
        let den_pows: Vec<BigInt> = (0..p.len()).map(|i| num_traits::pow(x.denom().clone(), i)).collect();
        Self::sign_at(p, x.numer(), &den_pows) == Ordering::Equal
    }

    fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

// Smallest power of two at least the Cauchy bound, so bisection stays dyadic.
fn dyadic_bound(p: &RatPolynomial) -> BigRational {
    let m = p.root_bound();
    let mut b = BigRational::one();
    while b < m {
        b *= BigRational::from_integer(2.into());
    }
    b
}

/// Number of distinct real roots in `(a, b]`.
pub fn sturm_count(p: &RatPolynomial, a: &BigRational, b: &BigRational) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if a >= b {
        return Err(PolyError::EmptyInterval(Box::new((a.clone(), b.clone()))));
    }
    for x in [a, b] {
        if p.eval(x).is_zero() {
            return Err(PolyError::EndpointIsRoot(Box::new(x.clone())));
        }
    }
    Ok(IntChain::new(p).count(a, b))
}

/// Number of distinct real roots on the whole line.
pub fn distinct_real_roots(p: &RatPolynomial) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Ok(0);
    }
    let m = dyadic_bound(p);
    sturm_count(p, &-m.clone(), &m)
}

/// True when all roots (with multiplicity) are real.
pub fn is_real_rooted(p: &RatPolynomial) -> Result<bool, PolyError> {
    for (factor, _) in p.square_free_factors()? {
        if distinct_real_roots(&factor)? != factor.degree() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Open interval `(lo, hi)` holding exactly one root; endpoints are never roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo < x && x < &self.hi
    }

    fn overlaps(&self, other: &RootInterval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }
}

/// Disjoint isolating intervals, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RootIsolation {
    pub intervals: Vec<RootInterval>,
}

impl RootIsolation {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

// A point inside (lo, hi) near the middle that is not a root of `p`.
fn split_point(chain: &IntChain, lo: &BigRational, hi: &BigRational) -> BigRational {
    let w = hi - lo;
    let tries = chain.polys[0].len() + 1;
    for t in 0..tries {
        // 1/2, 1/4, 3/4, 1/8, 3/8, ... stays dyadic on dyadic endpoints
        let (num, den) = match t {
            0 => (1i64, 2i64),
            t => {
                let den = 1i64 << (t / 2 + 2);
                let num = if t % 2 == 1 { 1 } else { 3 };
                (num, den)
            }
        };
        let c = lo + &w * BigRational::new(num.into(), den.into());
        if !chain.is_root(&c) {
            return c;
        }
    }
    unreachable!("a polynomial of degree d has at most d roots")
}

/// Isolates every real root of a square-free polynomial into intervals no
/// wider than `tolerance`.
pub fn isolate_roots(p: &RatPolynomial, tolerance: &BigRational) -> Result<RootIsolation, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !tolerance.is_positive() {
        return Err(PolyError::BadTolerance);
    }
    if !p.is_square_free() {
        return Err(PolyError::NotSquareFree);
    }
    if p.degree() == 0 {
        return Ok(RootIsolation::default());
    }
    let chain = IntChain::new(p);
    let m = dyadic_bound(p);
    let lo = -m.clone();
    let (vlo, vhi) = (chain.variations(&lo), chain.variations(&m));
    let mut stack = vec![(lo, m, vlo, vhi)];
    let mut found = Vec::new();
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        let count = vlo - vhi;
        if count == 0 {
            continue;
        }
        if count == 1 && &hi - &lo <= *tolerance {
            found.push(RootInterval { lo, hi });
            continue;
        }
        let c = split_point(&chain, &lo, &hi);
        let vc = chain.variations(&c);
        stack.push((c.clone(), hi, vc, vhi));
        stack.push((lo, c, vlo, vc));
    }
    found.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(RootIsolation { intervals: found })
}

fn refine(chain: &IntChain, iv: &mut RootInterval) {
    let c = split_point(chain, &iv.lo, &iv.hi);
    if chain.count(&iv.lo, &c) == 1 {
        iv.hi = c;
    } else {
        iv.lo = c;
    }
}

struct TaggedRoot {
    interval: RootInterval,
    multiplicity: usize,
    factor: usize,
    from_f: bool,
}

// Roots of f and g with multiplicity, after common factors have been
// removed, so all root values are pairwise distinct.
fn ordered_roots(f: &RatPolynomial, g: &RatPolynomial) -> Result<Vec<bool>, PolyError> {
    let mut factors = Vec::new();
    let mut roots = Vec::new();
    for (poly, from_f) in [(f, true), (g, false)] {
        if poly.degree() == 0 {
            continue;
        }
        for (a, mult) in poly.square_free_factors()? {
            let iso = isolate_roots(&a, &BigRational::one())?;
            let idx = factors.len();
            factors.push(IntChain::new(&a));
            roots.extend(iso.intervals.into_iter().map(|interval| TaggedRoot {
                interval,
                multiplicity: mult,
                factor: idx,
                from_f,
            }));
        }
    }
    loop {
        let mut clash = None;
        'outer: for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if roots[i].interval.overlaps(&roots[j].interval) {
                    clash = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = clash else { break };
        for k in [i, j] {
            refine(&factors[roots[k].factor], &mut roots[k].interval);
        }
    }
    roots.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));
    Ok(roots.iter().flat_map(|r| std::iter::repeat_n(r.from_f, r.multiplicity)).collect())
}

/// Whether `g` interlaces `f` (`g ⪯ f`).
///
/// With roots listed in nonincreasing order, `r` for `f` and `s` for `g`:
/// equal degrees need `s_n ≤ r_n ≤ .. ≤ s_1 ≤ r_1`, and `deg f = deg g + 1`
/// needs `r_n ≤ s_{n-1} ≤ r_{n-1} ≤ .. ≤ s_1 ≤ r_1`. A constant interlaces
/// any polynomial of degree at most one, and the zero polynomial interlaces
/// and is interlaced by everything. Shared roots are divided out first.
pub fn interlaces(g: &RatPolynomial, f: &RatPolynomial) -> Result<bool, PolyError> {
    if f.is_zero() || g.is_zero() {
        for p in [f, g] {
            if !p.is_zero() && !is_real_rooted(p)? {
                return Err(PolyError::NotRealRooted);
            }
        }
        return Ok(true);
    }
    for p in [f, g] {
        if p.leading().is_negative() {
            return Err(PolyError::NotStandard);
        }
        if !is_real_rooted(p)? {
            return Err(PolyError::NotRealRooted);
        }
    }
    let (df, dg) = (f.degree(), g.degree());
    if df != dg && df != dg + 1 {
        return Err(PolyError::DegreeGapTooLarge(dg, df));
    }
    if dg == 0 {
        return Ok(df <= 1);
    }
    let common = f.gcd(g);
    let f1 = f.exact_div(&common).expect("gcd divides");
    let g1 = g.exact_div(&common).expect("gcd divides");
    // descending: r_1 is the largest root of f
    let merged: Vec<bool> = ordered_roots(&f1, &g1)?.into_iter().rev().collect();
    // after removing shared roots the merged order must alternate, starting
    // with a root of f; equal degrees end on a root of g
    let expected_len = f1.degree() + g1.degree();
    debug_assert_eq!(merged.len(), expected_len);
    Ok(merged.iter().enumerate().all(|(i, &from_f)| from_f == (i % 2 == 0)))
}

/// Sanity hook used by tests: coefficients of `r_poly(n)` are the `R` row.
pub fn r_poly_matches_table(n: usize) -> bool {
    let p = r_poly(n);
    (0..=p.degree() + 1).all(|k| p.coeff(k) == BigRational::from_integer(formulas::r_value(n, k).into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RatPolynomial {
        RatPolynomial::from_integers(c.iter().copied())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 1]);
        assert_eq!(&a * &a, p(&[1, 2, 1]));
        assert_eq!(&(&a * &a) - &a, p(&[0, 1, 1]));
        let (qq, r) = p(&[-2, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(qq, p(&[1, 1]));
        assert_eq!(r, p(&[-1]));
        assert_eq!(p(&[1, 2, 1]).gcd(&p(&[1, 1])), p(&[1, 1]));
        assert_eq!(p(&[3, 0, 1]).to_string(), "3 + y^2");
        assert_eq!(p(&[0, -2, 1]).degree(), 2);
        assert!(RatPolynomial::zero().is_zero());
        assert!(p(&[1]).div_rem(&RatPolynomial::zero()).is_err());
    }

    #[test]
    fn r_poly_examples() {
        assert_eq!(r_poly(1), p(&[1]));
        assert_eq!(r_poly(2), p(&[1, 1]));
        assert_eq!(r_poly(3), p(&[1, 5]));
        assert_eq!(r_poly(5), p(&[1, 58, 61]));
        for n in 0..15 {
            assert!(r_poly_matches_table(n), "n={n}");
        }
    }

    #[test]
    fn r_poly_row_sums_and_springer() {
        for (n, poly) in r_polys(20).iter().enumerate() {
            let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
            assert_eq!(poly.eval(&BigRational::one()), BigRational::from_integer(fact));
            let wi = BigRational::from_integer(formulas::wi_value(n).into());
            assert_eq!(poly.eval(&rat(2)), wi);
            // degree is floor(n/2): R(n, k) > 0 iff k <= ceil((n-1)/2)
            if n >= 1 {
                assert_eq!(poly.degree(), n / 2);
            }
        }
    }

    #[test]
    fn sturm_count_examples() {
        assert_eq!(sturm_count(&p(&[-2, 0, 1]), &rat(0), &rat(2)).unwrap(), 1);
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &rat(-10), &rat(10)).unwrap(), 0);
        let r5 = r_poly(5);
        let m = r5.root_bound();
        assert_eq!(sturm_count(&r5, &-m, &rat(0)).unwrap(), 2);
        assert_eq!(
            sturm_count(&p(&[-1, 1]), &rat(0), &rat(1)),
            Err(PolyError::EndpointIsRoot(Box::new(rat(1))))
        );
        assert_eq!(sturm_count(&RatPolynomial::zero(), &rat(0), &rat(1)), Err(PolyError::ZeroPolynomial));
        assert!(matches!(sturm_count(&p(&[1, 1]), &rat(1), &rat(0)), Err(PolyError::EmptyInterval(..))));
    }

    #[test]
    fn real_rootedness_examples() {
        assert!(!is_real_rooted(&p(&[1, 0, 1])).unwrap());
        assert!(is_real_rooted(&p(&[1, 2, 1])).unwrap());
        // (y+1)^2 (y^2+1) is not, (y-1)^3 (y+2) is
        assert!(!is_real_rooted(&(&p(&[1, 2, 1]) * &p(&[1, 0, 1]))).unwrap());
        assert!(is_real_rooted(&(&p(&[-1, 1]).pow(3) * &p(&[2, 1]))).unwrap());
        assert!(is_real_rooted(&p(&[5])).unwrap());
        assert_eq!(is_real_rooted(&RatPolynomial::zero()), Err(PolyError::ZeroPolynomial));
        for n in 2..=25 {
            assert!(is_real_rooted(&r_poly(n)).unwrap(), "n={n}");
        }
    }

    #[test]
    fn square_free_factors_recombine() {
        let poly = &(&p(&[-1, 1]).pow(3) * &p(&[2, 1]).pow(2)) * &p(&[1, 0, 1]);
        let parts = poly.square_free_factors().unwrap();
        let mults: Vec<usize> = parts.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 2, 3]);
        let back = parts.iter().fold(p(&[1]), |acc, (a, m)| &acc * &a.pow(*m));
        assert_eq!(back, poly.monic());
    }

    #[test]
    fn isolation_examples() {
        let iso = isolate_roots(&p(&[1, 5]), &rat(1)).unwrap();
        assert_eq!(iso.len(), 1);
        assert!(iso.intervals[0].contains(&q(-1, 5)));

        let iso = isolate_roots(&r_poly(5), &q(1, 100)).unwrap();
        assert_eq!(iso.len(), 2);
        for iv in &iso.intervals {
            assert!(iv.lo >= rat(-1) && iv.hi <= rat(0));
        }
        // roots near -0.933 and -0.0176
        assert!(iso.intervals[0].lo.clone() < q(-93, 100) && iso.intervals[0].hi > q(-94, 100));

        let tol = q(1, 1024);
        let iso = isolate_roots(&p(&[-2, 0, 1]), &tol).unwrap();
        assert_eq!(iso.len(), 2);
        for (iv, sign) in iso.intervals.iter().zip([-1.0, 1.0]) {
            assert!(iv.width() <= tol);
            let (lo, hi) = (iv.lo.clone(), iv.hi.clone());
            use num_traits::ToPrimitive;
            let root = sign * 2f64.sqrt();
            assert!(lo.to_f64().unwrap() < root && root < hi.to_f64().unwrap());
        }
        assert_eq!(isolate_roots(&p(&[1, 2, 1]), &rat(1)), Err(PolyError::NotSquareFree));
    }

    #[test]
    fn isolation_survives_rational_midpoints() {
        // roots exactly at the first bisection points
        let poly = &(&p(&[0, 1]) * &p(&[-1, 2])) * &p(&[1, 2]);
        let iso = isolate_roots(&poly, &q(1, 8)).unwrap();
        assert_eq!(iso.len(), 3);
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&p(&[1]), &p(&[1, 5])).unwrap());
        assert!(!interlaces(&p(&[-1, 0, 1]), &p(&[-4, 0, 1])).unwrap());
        assert!(interlaces(&p(&[-4, 0, 1]), &p(&[-1, 0, 1])).is_ok());
        // roots -1 < 0 < 1 < 2: g = y(y-2)?  use explicit chains
        // f roots {2, 0}, g roots {1}: r2 <= s1 <= r1
        assert!(interlaces(&p(&[-1, 1]), &p(&[0, -2, 1])).unwrap());
        // f roots {2, 0}, g roots {3}: fails
        assert!(!interlaces(&p(&[-3, 1]), &p(&[0, -2, 1])).unwrap());
        // equal degree: s = {1, -1}, r = {2, 0}
        assert!(interlaces(&p(&[-1, 0, 1]), &p(&[0, -2, 1])).unwrap());
        assert!(!interlaces(&p(&[0, -2, 1]), &p(&[-1, 0, 1])).unwrap());
        // shared root is divided out
        assert!(interlaces(&p(&[0, -1, 1]), &p(&[0, -2, 1])).unwrap());
        assert!(interlaces(&RatPolynomial::zero(), &p(&[1, 5])).unwrap());
        assert_eq!(interlaces(&p(&[1, 0, 1]), &p(&[1, 0, 1])), Err(PolyError::NotRealRooted));
        assert_eq!(interlaces(&p(&[1]), &p(&[0, 0, 1])), Err(PolyError::DegreeGapTooLarge(0, 2)));
        assert_eq!(interlaces(&p(&[1, -1]), &p(&[0, 1])), Err(PolyError::NotStandard));
    }

    #[test]
    fn interlacing_with_multiple_roots() {
        // f = (y-1)^2 y, g = (y-1) (y-1/2)? f roots {1,1,0}, g roots {1, 1/2}
        let f = &p(&[-1, 1]).pow(2) * &p(&[0, 1]);
        let g = &p(&[-1, 1]) * &p(&[-1, 2]);
        assert!(interlaces(&g, &f).unwrap());
        let g_bad = &p(&[-1, 1]) * &p(&[-3, 1]);
        assert!(!interlaces(&g_bad, &f).unwrap());
    }

    #[test]
    fn r_polys_form_generalized_sturm_sequence() {
        let polys = r_polys(21);
        for n in 1..=20 {
            assert!(interlaces(&polys[n], &polys[n + 1]).unwrap(), "n={n}");
        }
    }
}
