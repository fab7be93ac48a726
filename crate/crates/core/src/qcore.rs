//! Exact rational scalars and the q-arithmetic primitives: q-integers,
//! q-factorials, Gaussian binomials and the `q^C(l,2)` weights of `E_q`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses the canonical `p/r` (or `p`) form.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((_, d)) = t.split_once('/') {
        if d.trim().trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return Err(Error::Parse(s.to_string()));
        }
    }
    Rational::from_str(t).map_err(|_| Error::Parse(s.to_string()))
}

/// Canonical serialization: `"-9/16"`, `"3"`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `base^e` for any integer exponent; `base` must be nonzero when `e < 0`.
pub fn pow_int(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        Pow::pow(base, e.unsigned_abs())
    } else {
        Pow::pow(base.recip(), e.unsigned_abs())
    }
}

/// Deformation parameter for all exact operations.
///
/// `new` accepts `0 < q <= 1`. The reciprocal base `1/q` (needed for
/// `e_{1/q} = E_q`) is only reachable through [`QContext::reciprocal`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QContext {
    q: Rational,
}

impl QContext {
    pub fn new(q: Rational) -> Result<Self> {
        if !q.is_positive() || q > Rational::one() {
            return Err(Error::InvalidQ(format_rational(&q)));
        }
        Ok(QContext { q })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_rational(s)?)
    }

    /// The `q = 1` context, where every primitive takes its classical value.
    pub fn classical() -> Self {
        QContext { q: Rational::one() }
    }

    /// Context at base `1/q`. This is the only way to obtain `q > 1`.
    pub fn reciprocal(&self) -> Self {
        QContext { q: self.q.recip() }
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn is_classical(&self) -> bool {
        self.q.is_one()
    }

    /// True for `0 < q < 1`, the range where infinite q-products converge.
    pub fn is_convergent(&self) -> bool {
        self.q.is_positive() && self.q < Rational::one()
    }

    pub fn require_convergent(&self) -> Result<()> {
        if self.is_convergent() {
            Ok(())
        } else {
            Err(Error::NonConvergentQ(format_rational(&self.q)))
        }
    }

    pub fn pow(&self, e: i64) -> Rational {
        pow_int(&self.q, e)
    }

    /// `[n]_q = 1 + q + ... + q^{n-1}`.
    pub fn q_int(&self, n: u64) -> Rational {
        if self.is_classical() {
            return Rational::from_integer(BigInt::from(n));
        }
        let one = Rational::one();
        (&one - Pow::pow(&self.q, n)) / (&one - &self.q)
    }

    /// `[n]_q! = [n]_q [n-1]_q ... [1]_q`, with `[0]_q! = 1`.
    pub fn q_factorial(&self, n: u64) -> Rational {
        (1..=n).fold(Rational::one(), |acc, k| acc * self.q_int(k))
    }

    /// Gaussian binomial `binom(n, k)_q`; zero when `k < 0` or `k > n`.
    pub fn q_binomial(&self, n: u64, k: i64) -> Rational {
        if k < 0 || k as u64 > n {
            return Rational::zero();
        }
        let k = (k as u64).min(n - k as u64);
        let mut num = Rational::one();
        for i in 0..k {
            num *= self.q_int(n - i);
        }
        num / self.q_factorial(k)
    }

    /// `q^{l(l-1)/2}`.
    pub fn q_binom2_power(&self, l: u64) -> Rational {
        let e = if l == 0 { 0 } else { l * (l - 1) / 2 };
        Pow::pow(&self.q, e)
    }

    /// All of `[0]_q!, ..., [n]_q!`.
    pub fn q_factorials(&self, n: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(Rational::one());
        for k in 1..=n {
            let next = &out[k - 1] * self.q_int(k as u64);
            out.push(next);
        }
        out
    }
}

impl std::fmt::Display for QContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.q)
    }
}
