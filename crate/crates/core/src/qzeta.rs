//! The q-Hurwitz-zeta type function
//!
//! ```text
//! Z_q(z, x : a) = [2]_q^a sum_{l_1..l_a >= 0} (-1)^{l_1+..+l_a} / (qx + q(l_1+..+l_a))^z
//! ```
//!
//! The multi-index sum is collapsed along `s = l_1 + .. + l_a`, where `s` is
//! hit by `C(s+a-1, a-1)` index tuples. At negative integers the divergent
//! alternating series is given its Abel/Euler value, exactly.

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::genocchi::GenocchiTable;
use crate::qcore::{format_rational, int, pow_int, QContext, Rational};
use crate::qpoly::QPolynomial;
use crate::real::{FloatContext, Real};

/// `sum_k (-1)^k (Delta^k v)_0 / 2^{k+1}` over the forward-difference table
/// of `v`. When `v` lists `p(0), .., p(deg p)` this is the Euler value of
/// `sum_l (-1)^l p(l)`.
pub fn euler_transform_values(values: &[Rational]) -> Rational {
    let mut row = values.to_vec();
    let mut acc = Rational::zero();
    let mut weight = Rational::new(1.into(), 2.into());
    let mut sign = true;
    while !row.is_empty() {
        let term = &row[0] * &weight;
        acc = if sign { acc + term } else { acc - term };
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        weight /= int(2);
        sign = !sign;
    }
    acc
}

/// Abel/Euler value of `sum_{l>=0} (-1)^l p(l)`.
pub fn euler_regularized_altsum(p: &QPolynomial) -> Rational {
    let deg = p.degree().unwrap_or(0);
    let values: Vec<Rational> = (0..=deg).map(|l| p.eval(&int(l as i64))).collect();
    euler_transform_values(&values)
}

/// `C(s+a-1, a-1) = prod_{i=1}^{a-1} (s+i) / (a-1)!` as a polynomial in `s`.
pub fn composition_weight(alpha: u32) -> QPolynomial {
    let mut w = QPolynomial::one();
    let mut fact = Rational::one();
    for i in 1..alpha {
        w = &w * &QPolynomial::new(vec![int(i as i64), Rational::one()]);
        fact *= int(i as i64);
    }
    w.scale(&fact.recip())
}

fn check_alpha(alpha: u32) -> Result<()> {
    if alpha == 0 {
        return Err(Error::InvalidArgument("alpha must be >= 1".into()));
    }
    Ok(())
}

/// Regularized `Z_q(-n, x : a)`.
pub fn qzeta_neg_int(ctx: &QContext, n: u32, x: &Rational, alpha: u32) -> Result<Rational> {
    check_alpha(alpha)?;
    let q = ctx.q();
    // (qx + qs)^n as a polynomial in s
    let linear = QPolynomial::new(vec![q * x, q.clone()]);
    let mut power = QPolynomial::one();
    for _ in 0..n {
        power = &power * &linear;
    }
    let summand = &composition_weight(alpha) * &power;
    Ok(pow_int(&ctx.q_int(2), alpha as i64) * euler_regularized_altsum(&summand))
}

fn as_string<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

fn as_opt_string<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

/// Both sides of the negative-integer interpolation formula.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaReport {
    pub n: u32,
    #[serde(serialize_with = "as_string")]
    pub x: Rational,
    pub alpha: u32,
    #[serde(serialize_with = "as_string")]
    pub q: Rational,
    #[serde(serialize_with = "as_string")]
    pub lhs: Rational,
    #[serde(serialize_with = "as_string")]
    pub rhs: Rational,
    pub equal: bool,
    /// `lhs / rhs`; absent when `rhs = 0`.
    #[serde(serialize_with = "as_opt_string")]
    pub ratio: Option<Rational>,
}

/// `Z_q(-n, x : a)` against `q^{-n} G_{n+a}^(a)(x) / ([a]_q! binom(n+a, a)_q)`.
pub fn interpolation_check(ctx: &QContext, n: u32, x: &Rational, alpha: u32) -> Result<ZetaReport> {
    check_alpha(alpha)?;
    let table = GenocchiTable::new(ctx, alpha, (n + alpha) as usize)?;
    interpolation_check_with(&table, n, x)
}

/// [`interpolation_check`] against an existing table of order `>= n + a`.
pub fn interpolation_check_with(table: &GenocchiTable, n: u32, x: &Rational) -> Result<ZetaReport> {
    let ctx = table.ctx();
    let alpha = table.alpha();
    let m = (n + alpha) as usize;
    if m > table.order() {
        return Err(Error::InvalidArgument(format!("table order {} < n + alpha = {m}", table.order())));
    }
    let lhs = qzeta_neg_int(ctx, n, x, alpha)?;
    let denom = ctx.q_factorial(alpha as u64) * ctx.q_binomial(m as u64, alpha as i64);
    let rhs = ctx.pow(-(n as i64)) * table.poly(m).eval(x) / denom;
    let ratio = if rhs.is_zero() { None } else { Some(&lhs / &rhs) };
    Ok(ZetaReport { n, x: x.clone(), alpha, q: ctx.q().clone(), equal: lhs == rhs, lhs, rhs, ratio })
}

/// Numeric `Z_q(z, x : a)` for `z > 0`, `x > 0`, `0 < q <= 1`.
///
/// The collapsed alternating series is summed by the Euler transform. The
/// k-th difference loses about k bits, so terms are computed with that many
/// extra bits; the transform stops after ten consecutive terms below `tol/10`
/// of the running sum.
pub fn qzeta_numeric(fctx: &FloatContext, z: &Real, x: &Real, alpha: u32) -> Result<Real> {
    check_alpha(alpha)?;
    if !z.is_positive() {
        return Err(Error::DomainError(format!("z = {} must be positive; use the negative-integer form", z.to_f64())));
    }
    if !x.is_positive() {
        return Err(Error::DomainError(format!("x = {} must be positive", x.to_f64())));
    }
    let bits_for_tol = (-fctx.tol().log2()).ceil().max(1.0) as usize;
    let max_terms = 4 * bits_for_tol + 256;
    let prec = fctx.work_prec() + max_terms + 64;
    let lift = |r: &Real| r.with_prec(prec);
    let (q, z, x) = (lift(fctx.q()), lift(z), lift(x));
    let one = Real::one(prec);
    let a = |s: usize| -> Real {
        let mut w = one.clone();
        for i in 1..alpha as usize {
            w = &(&w * &Real::from_i64((s + i) as i64, prec)) / &Real::from_i64(i as i64, prec);
        }
        let base = &q * &(&x + &Real::from_i64(s as i64, prec));
        &w / &(&z * &base.ln()).exp()
    };

    let mut values: Vec<Real> = Vec::new();
    let mut binom: Vec<Real> = vec![one.clone()];
    let mut sum = Real::zero(prec);
    let mut weight = Real::from_f64(0.5, prec);
    let half = Real::from_f64(0.5, prec);
    let rel = Real::from_f64(fctx.tol() / 10.0, prec);
    let mut small = 0usize;
    for k in 0..max_terms {
        values.push(a(k));
        if k > 0 {
            // row k of Pascal's triangle
            let mut next = vec![one.clone(); k + 1];
            for i in 1..k {
                next[i] = &binom[i - 1] + &binom[i];
            }
            binom = next;
        }
        // Delta^k a_0 = sum_i (-1)^{k-i} C(k,i) a_i
        let mut diff = Real::zero(prec);
        for (i, (c, v)) in binom.iter().zip(&values).enumerate() {
            let t = c * v;
            diff = if (k - i) % 2 == 0 { &diff + &t } else { &diff - &t };
        }
        let term = &diff * &weight;
        sum = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        weight = &weight * &half;
        if term.abs() <= &rel * &sum.abs() {
            small += 1;
            if small >= 10 {
                let scale = if fctx.is_classical() {
                    Real::from_i64(2, prec)
                } else {
                    &one + &q
                };
                let value = &scale.powi(alpha as usize) * &sum;
                return Ok(value.with_prec(fctx.work_prec()));
            }
        } else {
            small = 0;
        }
    }
    Err(Error::DivergentTail(format!("Euler transform did not settle within {max_terms} terms")))
}

/// `[2]_q^a` times the plain partial sums of the collapsed series, averaged
/// over two consecutive cut-offs. A slow reference for tests.
pub fn qzeta_partial_average(fctx: &FloatContext, z: f64, x: f64, alpha: u32, terms: usize) -> f64 {
    let q = fctx.q().to_f64();
    let mut s = 0.0f64;
    let mut prev = 0.0;
    for l in 0..terms {
        let mut w = 1.0;
        for i in 1..alpha as usize {
            w = w * (l + i) as f64 / i as f64;
        }
        let t = w / (q * (x + l as f64)).powf(z);
        prev = s;
        s += if l % 2 == 0 { t } else { -t };
    }
    (1.0 + q).powi(alpha as i32) * 0.5 * (s + prev)
}
