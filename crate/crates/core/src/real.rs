//! Multiprecision reals for the analytic side, and the float-side `q`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use crate::error::{Error, Result};
use crate::qcore::Rational;

const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision in bits; `QGEN_PRECISION_BITS` overrides it.
pub const DEFAULT_PRECISION_BITS: usize = 128;
pub const MIN_PRECISION_BITS: usize = 64;
pub const PRECISION_ENV: &str = "QGEN_PRECISION_BITS";

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Precision from `QGEN_PRECISION_BITS`, or the default.
pub fn precision_from_env() -> Result<usize> {
    match std::env::var(PRECISION_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("{PRECISION_ENV}={v}"))),
        Err(_) => Ok(DEFAULT_PRECISION_BITS),
    }
}

/// Binary floating-point value with its own precision. Binary operations
/// round to the larger of the two operand precisions.
#[derive(Clone)]
pub struct Real(BigFloat);

impl Real {
    pub fn from_f64(v: f64, prec: usize) -> Self {
        Real(BigFloat::from_f64(v, prec))
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        Real(BigFloat::from_i64(v, prec))
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_i64(0, prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_rational(r: &Rational, prec: usize) -> Self {
        let parse = |s: String| with_consts(|cc| BigFloat::parse(&s, Radix::Dec, prec + 64, RM, cc));
        let n = parse(r.numer().to_string());
        let d = parse(r.denom().to_string());
        Real(n.div(&d, prec, RM))
    }

    /// Decimal string such as `"0.5"`, `"-3"`, `"1e-8"`.
    pub fn parse(s: &str, prec: usize) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t.parse::<f64>().is_err() {
            return Err(Error::Parse(s.to_string()));
        }
        let v = with_consts(|cc| BigFloat::parse(t, Radix::Dec, prec, RM, cc));
        if v.is_nan() || v.is_inf() {
            return Err(Error::Parse(s.to_string()));
        }
        Ok(Real(v))
    }

    pub fn prec(&self) -> usize {
        // zero carries no mantissa, so report the floor instead of 0
        self.0.precision().filter(|&p| p > 0).unwrap_or(MIN_PRECISION_BITS)
    }

    pub fn with_prec(&self, prec: usize) -> Self {
        let mut v = self.0.clone();
        // Infinities and NaN carry no mantissa; leave them as they are.
        let _ = v.set_precision(prec, RM);
        Real(v)
    }

    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        self.0.to_string().parse().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive() && !self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn is_integer(&self) -> bool {
        self.is_finite() && self.0.is_int()
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        // astro-float yields NaN for exp(0)
        if self.0.is_zero() {
            return Real::one(p);
        }
        Real(with_consts(|cc| self.0.exp(p, RM, cc)))
    }

    pub fn ln(&self) -> Self {
        let p = self.prec();
        Real(with_consts(|cc| self.0.ln(p, RM, cc)))
    }

    /// `self^e` for a non-negative integer exponent.
    pub fn powi(&self, e: usize) -> Self {
        Real(self.0.powi(e, self.prec(), RM))
    }

    pub fn round(&self) -> Self {
        let half = Real::from_f64(0.5, self.prec());
        Real((self + &half).0.floor())
    }

    pub fn max(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Full-precision decimal rendering.
    pub fn to_decimal(&self) -> String {
        self.0.to_string()
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.prec().max(rhs.prec());
                Real(self.0.$m(&rhs.0, p, RM))
            }
        }
        impl $tr for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.neg())
    }
}

/// Floating-side parameters: base `q`, working precision and target
/// relative error.
#[derive(Clone, Debug)]
pub struct FloatContext {
    q: Real,
    ln_q: Real,
    precision: usize,
    tol: f64,
}

impl FloatContext {
    /// Requires `0 < q < 1`, `precision >= 64`, `tol > 0`.
    pub fn new(q: Real, precision: usize, tol: f64) -> Result<Self> {
        Self::check_settings(precision, tol)?;
        let one = Real::one(precision);
        if !(q.is_positive() && q < one) {
            return Err(Error::NonConvergentQ(q.to_decimal()));
        }
        Self::build(q, precision, tol)
    }

    /// Like [`FloatContext::new`] but also admits `q = 1`; used by the zeta
    /// sums, which stay meaningful in the classical case.
    pub fn new_closed(q: Real, precision: usize, tol: f64) -> Result<Self> {
        Self::check_settings(precision, tol)?;
        let one = Real::one(precision);
        if !(q.is_positive() && q <= one) {
            return Err(Error::InvalidQ(q.to_decimal()));
        }
        Self::build(q, precision, tol)
    }

    pub fn parse(q: &str, precision: usize, tol: f64) -> Result<Self> {
        Self::check_settings(precision, tol)?;
        Self::new(Real::parse(q, precision + 32)?, precision, tol)
    }

    fn check_settings(precision: usize, tol: f64) -> Result<()> {
        if precision < MIN_PRECISION_BITS {
            return Err(Error::InvalidArgument(format!("precision {precision} < {MIN_PRECISION_BITS} bits")));
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
        }
        Ok(())
    }

    fn build(q: Real, precision: usize, tol: f64) -> Result<Self> {
        let work = precision + 32;
        let q = q.with_prec(work);
        let ln_q = q.ln();
        Ok(FloatContext { q, ln_q, precision, tol })
    }

    pub fn q(&self) -> &Real {
        &self.q
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn is_classical(&self) -> bool {
        self.q == self.real(1)
    }

    /// Working precision: requested precision plus guard bits.
    pub fn work_prec(&self) -> usize {
        self.precision + 32
    }

    pub fn real(&self, v: i64) -> Real {
        Real::from_i64(v, self.work_prec())
    }

    pub fn real_f64(&self, v: f64) -> Real {
        Real::from_f64(v, self.work_prec())
    }

    pub fn lift(&self, r: &Rational) -> Real {
        Real::from_rational(r, self.work_prec())
    }

    pub fn ln_q(&self) -> &Real {
        &self.ln_q
    }

    /// `q^x` for real `x`.
    pub fn qpow(&self, x: &Real) -> Real {
        (&x.with_prec(self.work_prec()) * &self.ln_q).exp()
    }

    /// `q^n` for integer `n`, by exact repeated multiplication.
    pub fn qpow_int(&self, n: i64) -> Real {
        let p = self.q.powi(n.unsigned_abs() as usize);
        if n >= 0 {
            p
        } else {
            &self.real(1) / &p
        }
    }

    /// `[x]_q = (1 - q^x)/(1 - q)`, or `x` at `q = 1`.
    pub fn q_int(&self, x: &Real) -> Real {
        if self.is_classical() {
            return x.with_prec(self.work_prec());
        }
        let one = self.real(1);
        &(&one - &self.qpow(x)) / &(&one - &self.q)
    }
}
