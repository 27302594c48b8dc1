//! Truncated power series with exact rational coefficients.
//!
//! `Series1` holds ordinary coefficients `c_0..=c_N`; `Series2` holds, for
//! each power of `x`, an exact polynomial in `y`. Exponential generating
//! functions are stored as ordinary series and counts are read back as
//! `n!·c_n`.
//!
//! The trigonometric generating functions involve `√(y-1)`, but only through
//! `cos(x√(y-1))` and `sin(x√(y-1))/√(y-1)`, whose expansions are in integer
//! powers of `y-1`. Everything stays rational.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::formulas::factorial;
use crate::polyreal::RatPolynomial;

/// Truncation order used by callers that do not care.
pub const DEFAULT_ORDER: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series has a zero (or non-constant) constant term")]
    ZeroConstantTerm,
    #[error("series has order {have}, need at least {need}")]
    InsufficientOrder { have: usize, need: usize },
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn inv_factorial(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(factorial(n)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series1 {
    coeffs: Vec<BigRational>,
}

impl Series1 {
    /// Pads or truncates `coeffs` to order `order`.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        Series1 { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigRational::one()], order)
    }

    /// `1 + x + x^2 + ..` style constructors go through `new`; this one is `x`.
    pub fn x(order: usize) -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()], order)
    }

    pub fn from_integers(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self::new((0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect(), order)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self::new((0..=order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect(), order)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Series1 { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| (0..=n).map(|i| &self.coeffs[i] * &rhs.coeffs[n - i]).sum())
            .collect();
        Series1 { coeffs }
    }

    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let mut out: Vec<BigRational> = vec![inv0.clone()];
        for n in 1..=self.order() {
            let s: BigRational = (1..=n).map(|i| &self.coeffs[i] * &out[n - i]).sum();
            out.push(-s * &inv0);
        }
        Ok(Series1 { coeffs: out })
    }

    /// `f(a·x)`.
    pub fn rescale(&self, a: &BigRational) -> Self {
        let mut p = BigRational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * &p;
                p *= a;
                v
            })
            .collect();
        Series1 { coeffs }
    }

    /// Derivative; the order drops by one.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..=self.order()).map(|n| &self.coeffs[n] * rat(n as i64)).collect();
        Series1 { coeffs }
    }

    /// Antiderivative with the given constant; the order rises by one.
    pub fn antiderivative(&self, constant: BigRational) -> Self {
        let mut coeffs = vec![constant];
        coeffs.extend(self.coeffs.iter().enumerate().map(|(n, c)| c / rat(n as i64 + 1)));
        Series1 { coeffs }
    }

    /// `n!·c_n` for every `n`.
    pub fn egf_values(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * BigRational::from_integer(factorial(n).into()))
            .collect()
    }

    /// `n!·c_n` as integers; panics if one is fractional.
    pub fn egf_integers(&self) -> Vec<BigInt> {
        self.egf_values()
            .into_iter()
            .map(|v| {
                assert!(v.is_integer(), "egf coefficient {v} is not an integer");
                v.to_integer()
            })
            .collect()
    }

    /// Horner evaluation of the truncated sum in floating point.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series2 {
    coeffs: Vec<RatPolynomial>,
}

impl Series2 {
    pub fn new(mut coeffs: Vec<RatPolynomial>, order: usize) -> Self {
        coeffs.resize(order + 1, RatPolynomial::zero());
        Series2 { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    /// A series that does not depend on `y`.
    pub fn from_series1(s: &Series1) -> Self {
        Series2 { coeffs: s.coeffs.iter().map(|c| RatPolynomial::constant(c.clone())).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &RatPolynomial {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[RatPolynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatPolynomial::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Series2 { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Series2 { coeffs: (0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Series2 { coeffs: (0..=order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(RatPolynomial::zero(), |acc, i| &acc + &(&self.coeffs[i] * &rhs.coeffs[n - i]))
            })
            .collect();
        Series2 { coeffs }
    }

    /// Multiplies every coefficient by a polynomial in `y`.
    pub fn mul_poly(&self, p: &RatPolynomial) -> Self {
        Series2 { coeffs: self.coeffs.iter().map(|c| c * p).collect() }
    }

    /// Multiplies by `x`, keeping the order.
    pub fn mul_x(&self) -> Self {
        let mut coeffs = vec![RatPolynomial::zero()];
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        Series2 { coeffs }
    }

    /// Reciprocal; the constant term must be a nonzero constant.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() || a0.degree() > 0 {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv0 = a0.coeff(0).recip();
        let mut out = vec![RatPolynomial::constant(inv0.clone())];
        for n in 1..=self.order() {
            let s = (1..=n).fold(RatPolynomial::zero(), |acc, i| &acc + &(&self.coeffs[i] * &out[n - i]));
            out.push(s.scale(&-inv0.clone()));
        }
        Ok(Series2 { coeffs: out })
    }

    pub fn derivative_x(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..=self.order()).map(|n| self.coeffs[n].scale(&rat(n as i64))).collect();
        Series2 { coeffs }
    }

    pub fn derivative_y(&self) -> Self {
        Series2 { coeffs: self.coeffs.iter().map(RatPolynomial::derivative).collect() }
    }

    pub fn antiderivative_x(&self) -> Self {
        let mut coeffs = vec![RatPolynomial::zero()];
        coeffs.extend(self.coeffs.iter().enumerate().map(|(n, c)| c.scale(&BigRational::new(1.into(), (n as i64 + 1).into()))));
        Series2 { coeffs }
    }

    /// Substitutes a value for `y`.
    pub fn specialize(&self, y: &BigRational) -> Series1 {
        Series1 { coeffs: self.coeffs.iter().map(|c| c.eval(y)).collect() }
    }

    /// The series `Σ_n [x^n y^k] x^n`.
    pub fn y_slice(&self, k: usize) -> Series1 {
        Series1 { coeffs: self.coeffs.iter().map(|c| c.coeff(k)).collect() }
    }

    /// The polynomial `n!·[x^n]` in `y`.
    pub fn egf_row(&self, n: usize) -> RatPolynomial {
        self.coeffs[n].scale(&BigRational::from_integer(factorial(n).into()))
    }

    /// `n!·[x^n y^k]` as integers, row by row.
    pub fn egf_triangle(&self) -> Vec<Vec<BigInt>> {
        (0..=self.order())
            .map(|n| {
                self.egf_row(n)
                    .coeffs()
                    .iter()
                    .map(|v| {
                        assert!(v.is_integer(), "egf coefficient {v} is not an integer");
                        v.to_integer()
                    })
                    .collect()
            })
            .collect()
    }
}

/// `cos x`.
pub fn cos_series(order: usize) -> Series1 {
    Series1 {
        coeffs: (0..=order)
            .map(|n| match n % 4 {
                0 => inv_factorial(n),
                2 => -inv_factorial(n),
                _ => BigRational::zero(),
            })
            .collect(),
    }
}

/// `sin x`.
pub fn sin_series(order: usize) -> Series1 {
    Series1 {
        coeffs: (0..=order)
            .map(|n| match n % 4 {
                1 => inv_factorial(n),
                3 => -inv_factorial(n),
                _ => BigRational::zero(),
            })
            .collect(),
    }
}

// C = cos(x√(y-1)) and S = sin(x√(y-1))/√(y-1), in integer powers of y-1.
fn trig_pair(order: usize) -> (Series2, Series2) {
    let y_minus_one = RatPolynomial::from_integers([-1, 1]);
    let mut c = Vec::with_capacity(order + 1);
    let mut s = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let m = n / 2;
        let sign = if m % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        let term = y_minus_one.pow(m).scale(&(sign * inv_factorial(n)));
        if n % 2 == 0 {
            c.push(term);
            s.push(RatPolynomial::zero());
        } else {
            c.push(RatPolynomial::zero());
            s.push(term);
        }
    }
    (Series2 { coeffs: c }, Series2 { coeffs: s })
}

/// `R(x, y) = Σ R(n,k) x^n y^k / n!`.
pub fn series_r(order: usize) -> Series2 {
    let (c, s) = trig_pair(order);
    c.sub(&s).reciprocal().expect("constant term is 1")
}

/// Peak generating function `P(x, y)`; `y` marks peaks.
pub fn series_p(order: usize) -> Series2 {
    let (c, s) = trig_pair(order);
    c.mul(&c.sub(&s).reciprocal().expect("constant term is 1"))
}

/// `W(x) = 1/(cos x - sin x)`.
pub fn series_w(order: usize) -> Series1 {
    cos_series(order).sub(&sin_series(order)).reciprocal().expect("constant term is 1")
}

/// `sec x + tan x = (1 + sin x)/cos x`.
pub fn series_e(order: usize) -> Series1 {
    let num = Series1::one(order).add(&sin_series(order));
    num.mul(&cos_series(order).reciprocal().expect("constant term is 1"))
}

/// Euler numbers `E_0..=E_{n_max}`.
pub fn euler_numbers(n_max: usize) -> Vec<BigUint> {
    series_e(n_max)
        .egf_integers()
        .into_iter()
        .map(|v| v.to_biguint().expect("Euler numbers are positive"))
        .collect()
}

/// `U(x) = ∫_0^x R(2t, 1/2) dt`.
pub fn series_u(order: usize) -> Series1 {
    let inner = series_r(order.saturating_sub(1)).specialize(&BigRational::new(1.into(), 2.into()));
    inner.rescale(&rat(2)).antiderivative(BigRational::zero())
}

/// `R - 2(y-1)y ∂R/∂y + (xy-1) ∂R/∂x`, truncated to order `n`.
pub fn pde_residual(series: &Series2, n: usize) -> Result<Series2, SeriesError> {
    if series.order() < n + 1 {
        return Err(SeriesError::InsufficientOrder { have: series.order(), need: n + 1 });
    }
    let s = series.truncate(n + 1);
    let y2_minus_y = RatPolynomial::from_integers([0, -2, 2]);
    let dx = s.derivative_x();
    let xy_dx = dx.mul_x().mul_poly(&RatPolynomial::var());
    let out = s
        .truncate(n)
        .sub(&s.derivative_y().mul_poly(&y2_minus_y).truncate(n))
        .add(&xy_dx.truncate(n))
        .sub(&dx.truncate(n));
    Ok(out)
}

/// Residual of `R_{*,k} = (2k+1)∫R_{*,k} + x R_{*,k-1} + (1-2k)∫R_{*,k-1}`
/// for `k >= 1`, where `R_{*,k}` is the `y^k` slice of `series`.
pub fn integral_recurrence_residual(series: &Series2, k: usize) -> Series1 {
    assert!(k >= 1, "the slice recurrence starts at k = 1");
    let order = series.order();
    let cur = series.y_slice(k);
    let prev = series.y_slice(k - 1);
    let int_cur = cur.antiderivative(BigRational::zero()).truncate(order);
    let int_prev = prev.antiderivative(BigRational::zero()).truncate(order);
    let x_prev = Series1::x(order).mul(&prev);
    let rhs = int_cur
        .scale(&rat(2 * k as i64 + 1))
        .add(&x_prev)
        .add(&int_prev.scale(&rat(1 - 2 * k as i64)));
    cur.sub(&rhs)
}

/// The closed form of `U` at a real point.
pub fn u_closed_form_f64(x: f64) -> f64 {
    let a = 1f64.asinh();
    ((1.0 / (a - std::f64::consts::SQRT_2 * x).sinh()).asinh() - a) / std::f64::consts::SQRT_2
}
