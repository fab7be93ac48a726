//! The q-Gamma function in three representations (infinite products, Jackson
//! integral, meromorphic split), q-Mellin transforms over the lattice
//! `{q^j}`, and partial-fraction series `sum a_n / [z + n]_q` with their
//! residues.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{QContext, Rational};
use crate::real::{FloatContext, Real};

/// Upper bound on lattice terms in one direction before giving up.
const MAX_LATTICE_TERMS: usize = 200_000;
/// Consecutive small (or growing) terms that end a one-sided lattice sum.
const RUN_LENGTH: usize = 10;

/// A numeric result with truncation metadata.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: Real,
    /// Terms or factors consumed.
    pub terms: usize,
    /// Bound (or, for lattice sums, estimate) of the discarded tail, relative
    /// to the value.
    pub tail_bound: f64,
    pub warnings: Vec<String>,
}

impl Evaluation {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaMethod {
    Product,
    Integral,
    Meromorphic,
}

impl std::str::FromStr for GammaMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "product" => Ok(GammaMethod::Product),
            "integral" => Ok(GammaMethod::Integral),
            "meromorphic" => Ok(GammaMethod::Meromorphic),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

impl GammaMethod {
    pub fn name(self) -> &'static str {
        match self {
            GammaMethod::Product => "product",
            GammaMethod::Integral => "integral",
            GammaMethod::Meromorphic => "meromorphic",
        }
    }
}

pub fn qgamma(fctx: &FloatContext, x: &Real, method: GammaMethod) -> Result<Evaluation> {
    match method {
        GammaMethod::Product => qgamma_product(fctx, x),
        GammaMethod::Integral => qgamma_integral(fctx, x, IntegralForm::Improper),
        GammaMethod::Meromorphic => qgamma_meromorphic(fctx, x),
    }
}

fn non_positive_integer(x: &Real) -> bool {
    x.is_integer() && !x.is_positive()
}

fn pole(x: &Real) -> Error {
    Error::PoleAt(format!("{}", x.to_f64()))
}

/// `(q;q)_inf / (q^x;q)_inf * (1-q)^{1-x}`.
///
/// Both products run in one loop; it stops once the remaining factors can
/// change the ratio by less than `tol/4`, using
/// `|log prod (1-a_k)/(1-b_k)| <= 2 sum (a_k + |b_k|)` for `a_k, |b_k| <= 1/2`.
pub fn qgamma_product(fctx: &FloatContext, x: &Real) -> Result<Evaluation> {
    if non_positive_integer(x) {
        return Err(pole(x));
    }
    let one = fctx.real(1);
    let one_minus_q = &one - fctx.q();
    let mut a = fctx.q().clone();
    let mut b = fctx.qpow(x);
    let mut ratio = one.clone();
    let threshold = fctx.real_f64(fctx.tol() / 4.0);
    let half = fctx.real_f64(0.5);
    let mut k = 0usize;
    loop {
        let shifted = &x.with_prec(fctx.work_prec()) + &fctx.real(k as i64);
        if shifted.is_positive() && a <= half && b.abs() <= half {
            let tail = &(&fctx.real(2) * &(&a + &b.abs())) / &one_minus_q;
            if tail < threshold {
                let tail_bound = tail.to_f64();
                let value = &ratio * &(&(&one - x) * &one_minus_q.ln()).exp();
                return Ok(Evaluation { value, terms: k, tail_bound, warnings: vec![] });
            }
        }
        ratio = &ratio * &(&(&one - &a) / &(&one - &b));
        a = &a * fctx.q();
        b = &b * fctx.q();
        k += 1;
        if k > MAX_LATTICE_TERMS * 10 {
            return Err(Error::DivergentTail("q-Pochhammer product did not settle".into()));
        }
    }
}

/// `E_q(z) = prod_{k>=0} (1 + (1-q) q^k z)`, the product form of
/// `sum q^{C(l,2)} z^l / [l]_q!`, truncated at relative error `tol/10`.
pub fn big_eq_value(fctx: &FloatContext, z: &Real) -> Real {
    let one = fctx.real(1);
    let one_minus_q = &one - fctx.q();
    let mut c = &one_minus_q * &z.with_prec(fctx.work_prec());
    let mut acc = one.clone();
    let threshold = fctx.real_f64(fctx.tol() / 20.0);
    let half = fctx.real_f64(0.5);
    for _ in 0..MAX_LATTICE_TERMS * 10 {
        if c.abs() <= half && &(&fctx.real(2) * &c.abs()) / &one_minus_q < threshold {
            break;
        }
        acc = &acc * &(&one + &c);
        if acc.is_zero() {
            break;
        }
        c = &c * fctx.q();
    }
    acc
}

/// `E_q(z)` from its power series, for cross-checks at moderate `|z|`.
pub fn big_eq_series_value(fctx: &FloatContext, z: &Real, terms: usize) -> Real {
    let z = z.with_prec(fctx.work_prec());
    let mut term = fctx.real(1);
    let mut acc = term.clone();
    for l in 1..terms {
        let ql = fctx.qpow_int(l as i64 - 1);
        term = &(&(&term * &z) * &ql) / &fctx.q_int(&fctx.real(l as i64));
        acc = &acc + &term;
    }
    acc
}

/// One side of a bilateral lattice sum, `sum_{i>=0} term(step * (i + start))`.
///
/// Stops after [`RUN_LENGTH`] consecutive terms below `tol/10` of the running
/// sum whose magnitudes are also non-increasing; declares divergence after
/// [`RUN_LENGTH`] consecutive increases.
fn one_sided_sum(fctx: &FloatContext, mut term: impl FnMut(i64) -> Real, start: i64, step: i64) -> Result<(Real, usize, f64)> {
    let mut sum = fctx.real(0);
    let mut prev: Option<Real> = None;
    let mut small_run = 0usize;
    let mut grow_run = 0usize;
    let mut last_nonzero = (fctx.real(0), fctx.real(0));
    let rel = fctx.real_f64(fctx.tol() / 10.0);
    for i in 0..MAX_LATTICE_TERMS {
        let j = step * (i as i64 + start);
        let t = term(j);
        if !t.is_finite() {
            return Err(Error::DivergentTail(format!("non-finite lattice term at j = {j}")));
        }
        sum = &sum + &t;
        let mag = t.abs();
        let shrinking = prev.as_ref().is_none_or(|p| mag <= *p);
        if mag <= &rel * &sum.abs() && shrinking {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if prev.as_ref().is_some_and(|p| mag > *p && !mag.is_zero()) {
            grow_run += 1;
        } else {
            grow_run = 0;
        }
        if grow_run >= RUN_LENGTH {
            return Err(Error::DivergentTail(format!("lattice terms grow through j = {j}")));
        }
        if !mag.is_zero() {
            last_nonzero = (last_nonzero.1, mag.clone());
        }
        prev = Some(mag);
        if small_run >= RUN_LENGTH {
            let (before, last) = last_nonzero;
            let tail = if before.is_zero() || last.is_zero() {
                0.0
            } else {
                let rho = (&last / &before).to_f64();
                if rho < 1.0 {
                    (&last / &sum.abs()).to_f64() * rho / (1.0 - rho)
                } else {
                    f64::INFINITY
                }
            };
            return Ok((sum, i + 1, tail));
        }
    }
    Err(Error::DivergentTail(format!("no convergence within {MAX_LATTICE_TERMS} lattice terms")))
}

/// q-Mellin transform `(1-q) sum_{j in Z} q^{js} f(q^j)`.
pub fn qmellin(fctx: &FloatContext, f: impl Fn(&Real) -> Real, s: &Real) -> Result<Evaluation> {
    let s = s.with_prec(fctx.work_prec());
    let term = |j: i64| {
        let t = fctx.qpow_int(j);
        &fctx.qpow(&(&fctx.real(j) * &s)) * &f(&t)
    };
    let (pos, n_pos, tail_pos) = one_sided_sum(fctx, term, 0, 1)?;
    let (neg, n_neg, tail_neg) = one_sided_sum(fctx, term, 1, -1)?;
    let one_minus_q = &fctx.real(1) - fctx.q();
    let value = &one_minus_q * &(&pos + &neg);
    Ok(Evaluation { value, terms: n_pos + n_neg, tail_bound: tail_pos.max(tail_neg), warnings: vec![] })
}

/// Whether `log(1-q)/log q` is an integer, the condition under which the
/// lattice form of `int_0^inf t^{s-1} E_q(-qt) d_q t` equals `Gamma_q(s)`.
pub fn lattice_condition(fctx: &FloatContext) -> Option<i64> {
    let one = fctx.real(1);
    let m = &(&one - fctx.q()).ln() / fctx.ln_q();
    let r = m.round();
    let slack = Real::from_f64(2f64.powi(-(fctx.precision() as i32) / 2), fctx.work_prec());
    if (&m - &r).abs() <= slack {
        Some(r.to_f64() as i64)
    } else {
        None
    }
}

/// Exact version of [`lattice_condition`]: some integer `m` with `q^m = 1-q`.
pub fn lattice_condition_exact(ctx: &QContext) -> Option<i64> {
    if !ctx.is_convergent() {
        return None;
    }
    let target = Rational::from_integer(1.into()) - ctx.q();
    let mut p = ctx.q().clone();
    for m in 1..=64 {
        if p == target {
            return Some(m);
        }
        if p < target {
            return None;
        }
        p *= ctx.q();
    }
    None
}

fn lattice_warning(fctx: &FloatContext) -> Vec<String> {
    match lattice_condition(fctx) {
        Some(_) => vec![],
        None => vec!["LatticeConditionWarning: log(1-q)/log q is not an integer".into()],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegralForm {
    /// `int_0^{1/(1-q)}`, the Jackson sum at `x = 1/(1-q)`.
    Finite,
    /// `int_0^inf` as the bilateral lattice sum.
    Improper,
}

/// `f(t) = t^{s-1} E_q(-qt)`.
fn gamma_integrand<'a>(fctx: &'a FloatContext, s: &'a Real) -> impl Fn(&Real) -> Real + 'a {
    move |t: &Real| {
        let e = big_eq_value(fctx, &-(t * fctx.q()));
        if e.is_zero() {
            return e;
        }
        let pw = (&(s - &fctx.real(1)) * &t.ln()).exp();
        &pw * &e
    }
}

pub fn qgamma_integral(fctx: &FloatContext, s: &Real, form: IntegralForm) -> Result<Evaluation> {
    if !s.is_positive() {
        return Err(Error::DomainError(format!("integral representation needs s > 0, got {}", s.to_f64())));
    }
    let s = s.with_prec(fctx.work_prec());
    let f = gamma_integrand(fctx, &s);
    match form {
        IntegralForm::Finite => {
            // (1-q) X sum_l q^l f(q^l X) with X = 1/(1-q): the prefactor is 1.
            let one_minus_q = &fctx.real(1) - fctx.q();
            let x_top = &fctx.real(1) / &one_minus_q;
            let term = |l: i64| {
                let ql = fctx.qpow_int(l);
                &ql * &f(&(&ql * &x_top))
            };
            let (value, terms, tail_bound) = one_sided_sum(fctx, term, 0, 1)?;
            Ok(Evaluation { value, terms, tail_bound, warnings: vec![] })
        }
        IntegralForm::Improper => {
            let warnings = lattice_warning(fctx);
            let mut ev = qmellin(fctx, |t: &Real| big_eq_value(fctx, &-(t * fctx.q())), &s)?;
            ev.warnings = warnings;
            Ok(ev)
        }
    }
}

/// `Gamma_q(z) = int_1^inf t^{z-1} E_q(-qt) d_q t + sum_j a_j / [z + j]_q`
/// with `a_j = (-1)^j q^{C(j+1,2)} / [j]_q!`; valid for all real `z` off the
/// non-positive integers.
pub fn qgamma_meromorphic(fctx: &FloatContext, z: &Real) -> Result<Evaluation> {
    if non_positive_integer(z) {
        return Err(pole(z));
    }
    let z = z.with_prec(fctx.work_prec());
    let warnings = lattice_warning(fctx);
    // Lattice points q^{-j}, j >= 1: (1-q) sum q^{-jz} E_q(-q^{1-j}).
    let term = |j: i64| {
        let e = big_eq_value(fctx, &-fctx.qpow_int(1 + j));
        if e.is_zero() {
            return e;
        }
        &fctx.qpow(&(&fctx.real(j) * &z)) * &e
    };
    let (entire, n_entire, tail_entire) = one_sided_sum(fctx, term, 1, -1)?;
    let entire = &(&fctx.real(1) - fctx.q()) * &entire;
    let pfs = PartialFractionSeries::qgamma(fctx);
    let poles = pfs.eval(fctx, &z)?;
    Ok(Evaluation {
        value: &entire + &poles.value,
        terms: n_entire + poles.terms,
        tail_bound: tail_entire.max(poles.tail_bound),
        warnings,
    })
}

/// `Res(Gamma_q, -j) = (-1)^j q^{C(j+1,2)} / [j]_q!`, as the coefficient of
/// `1/[z+j]_q`.
pub fn qgamma_residue(ctx: &QContext, j: u64) -> Rational {
    let sign = if j % 2 == 0 { 1 } else { -1 };
    let e = j * (j + 1) / 2;
    let mag = num_traits::Pow::pow(ctx.q(), e) / ctx.q_factorial(j);
    if sign > 0 {
        mag
    } else {
        -mag
    }
}

/// The same residue measured against `1/(z+j)`:
/// `a_j * (1-q) / (-ln q)`, since `d[z+j]_q/dz = -ln q / (1-q)` at the pole.
pub fn classical_residue(fctx: &FloatContext, j: u64) -> Real {
    let pfs = PartialFractionSeries::qgamma(fctx);
    let one_minus_q = &fctx.real(1) - fctx.q();
    &(&pfs.residue_at(j as usize) * &one_minus_q) / &(-fctx.ln_q())
}

type CoeffFn = Box<dyn Fn(usize) -> Real + Send + Sync>;

/// `g(z) = sum_n a_n / [z + n]_q` with an absolutely summable coefficient
/// sequence.
///
/// Summability is certified at construction: either the support is finite,
/// or `|a_{n+1}| <= ratio |a_n|` for all `n >= decay_from` with `ratio < 1`.
pub struct PartialFractionSeries {
    coeff: CoeffFn,
    support: Option<usize>,
    decay_from: usize,
    ratio: f64,
}

impl std::fmt::Debug for PartialFractionSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PartialFractionSeries")
            .field("support", &self.support)
            .field("decay_from", &self.decay_from)
            .field("ratio", &self.ratio)
            .finish()
    }
}

impl PartialFractionSeries {
    pub fn finite(coeffs: Vec<Real>) -> Self {
        let n = coeffs.len();
        PartialFractionSeries {
            coeff: Box::new(move |k| coeffs.get(k).cloned().unwrap_or_else(|| Real::zero(64))),
            support: Some(n),
            decay_from: n,
            ratio: 0.0,
        }
    }

    /// Caller certifies `|a_{n+1}| <= ratio |a_n|` for `n >= decay_from`.
    pub fn geometric(coeff: impl Fn(usize) -> Real + Send + Sync + 'static, decay_from: usize, ratio: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&ratio) {
            return Err(Error::InvalidArgument(format!("decay ratio {ratio} must lie in [0, 1)")));
        }
        Ok(PartialFractionSeries { coeff: Box::new(coeff), support: None, decay_from, ratio })
    }

    /// Pole part of `Gamma_q`: `a_j = (-1)^j q^{C(j+1,2)} / [j]_q!`.
    ///
    /// `|a_{j+1}/a_j| = q^{j+1}/[j+1]_q`, which for `j >= 1` is at most
    /// `q^2/(1+q) < 1/2`.
    pub fn qgamma(fctx: &FloatContext) -> Self {
        let f = fctx.clone();
        let q = f.q().to_f64();
        let ratio = q * q / (1.0 + q);
        let coeff = move |j: usize| {
            let e = (j * (j + 1) / 2) as i64;
            let mut fact = f.real(1);
            for k in 1..=j {
                fact = &fact * &f.q_int(&f.real(k as i64));
            }
            let v = &f.qpow_int(e) / &fact;
            if j % 2 == 1 {
                -v
            } else {
                v
            }
        };
        PartialFractionSeries { coeff: Box::new(coeff), support: None, decay_from: 1, ratio }
    }

    pub fn residue_at(&self, n: usize) -> Real {
        (self.coeff)(n)
    }

    pub fn eval(&self, fctx: &FloatContext, z: &Real) -> Result<Evaluation> {
        let z = z.with_prec(fctx.work_prec());
        if non_positive_integer(&z) {
            let n = (-z.to_f64()).round() as usize;
            if !self.residue_at(n).is_zero() {
                return Err(pole(&z));
            }
        }
        let mut sum = fctx.real(0);
        let rel = fctx.tol() / 10.0;
        let mut n = 0usize;
        loop {
            if self.support.is_some_and(|s| n >= s) {
                return Ok(Evaluation { value: sum, terms: n, tail_bound: 0.0, warnings: vec![] });
            }
            let a = self.residue_at(n);
            let shifted = &z + &fctx.real(n as i64);
            if !shifted.is_zero() && !a.is_zero() {
                sum = &sum + &(&a.with_prec(fctx.work_prec()) / &fctx.q_int(&shifted));
            }
            // Tail past n: |a_m| <= |a_n| ratio^{m-n} and [z+m]_q >= [z+n+1]_q once z+n+1 > 0.
            let next = &shifted + &fctx.real(1);
            if n >= self.decay_from && next.is_positive() {
                let geo = self.ratio / (1.0 - self.ratio);
                let tail = (a.abs().to_f64() * geo) / fctx.q_int(&next).to_f64();
                let scale = sum.abs().to_f64();
                if tail <= rel * scale || tail == 0.0 {
                    let tail_bound = if scale > 0.0 { tail / scale } else { 0.0 };
                    return Ok(Evaluation { value: sum, terms: n + 1, tail_bound, warnings: vec![] });
                }
            }
            n += 1;
            if n > MAX_LATTICE_TERMS {
                return Err(Error::DivergentTail("partial-fraction series did not settle".into()));
            }
        }
    }
}
