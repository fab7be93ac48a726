//! Truncated formal power series `c_0 + c_1 z + ... + c_N z^N` over a
//! coefficient ring, plus the two q-exponential series.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qcore::{QContext, Rational};

/// Coefficient ring for [`PowerSeries`].
pub trait Coefficient: Clone + PartialEq + Debug + Zero + One {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse, if this element is a unit.
    fn inverse(&self) -> Option<Self>;
}

impl Coefficient for Rational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Series truncated at `z^order`. Holds exactly `order + 1` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Coefficient> PowerSeries<R> {
    /// Builds a series of order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least c_0");
        PowerSeries { coeffs }
    }

    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn with_order(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        PowerSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        PowerSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| R::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, R::one(), order)
    }

    /// `c z^k`, or zero if `k > order`.
    pub fn monomial(k: usize, c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::with_order(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn map<S: Coefficient>(&self, f: impl FnMut(&R) -> S) -> PowerSeries<S> {
        PowerSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| f(&self.coeffs[k], &other.coeffs[k]))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, R::plus)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, R::minus)
    }

    pub fn neg(&self) -> Self {
        self.map(R::negated)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| a.times(c))
    }

    /// Multiplies by `z^k`, dropping what falls past the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        Self::from_fn(n, |i| if i >= k { self.coeffs[i - k].clone() } else { R::zero() })
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |m| {
            let mut acc = R::zero();
            for k in 0..=m {
                let (a, b) = (&self.coeffs[k], &other.coeffs[m - k]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.plus(&a.times(b));
            }
            acc
        })
    }

    /// Reciprocal series via `d_n = -(1/c_0) * sum_{k=1..n} c_k d_{n-k}`.
    pub fn inverse(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].inverse().ok_or(Error::NonInvertibleConstantTerm)?;
        let n = self.order();
        let mut d: Vec<R> = Vec::with_capacity(n + 1);
        d.push(c0_inv.clone());
        for m in 1..=n {
            let mut acc = R::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc.plus(&self.coeffs[k].times(&d[m - k]));
            }
            d.push(acc.times(&c0_inv).negated());
        }
        Ok(PowerSeries { coeffs: d })
    }

    /// `self^alpha` for `alpha >= 1`, by repeated squaring.
    pub fn pow(&self, alpha: u32) -> Self {
        assert!(alpha >= 1, "series power needs alpha >= 1");
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = alpha;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        result.expect("alpha >= 1")
    }
}

/// `e_q(z) = sum z^l / [l]_q!` through `z^order`.
pub fn eq_series(ctx: &QContext, order: usize) -> PowerSeries<Rational> {
    let facts = ctx.q_factorials(order);
    PowerSeries::from_fn(order, |l| facts[l].recip())
}

/// `E_q(z) = sum q^{C(l,2)} z^l / [l]_q!` through `z^order`.
pub fn big_eq_series(ctx: &QContext, order: usize) -> PowerSeries<Rational> {
    let facts = ctx.q_factorials(order);
    PowerSeries::from_fn(order, |l| ctx.q_binom2_power(l as u64) / &facts[l])
}
