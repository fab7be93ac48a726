//! Dense polynomials in `x` over the rationals and the q-operators acting on
//! them: the Jackson derivative and integral, and Rubin's symmetric operator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::qcore::{format_rational, int, parse_rational, QContext, Rational};
use crate::series::Coefficient;

/// `a_0 + a_1 x + ... + a_d x^d`, stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<Rational>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c x^k`.
    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(c x)`: coefficient `a_k` becomes `a_k c^k`.
    pub fn substitute_scaled(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Self::new(out)
    }

    /// `p(x + y)` by Horner's scheme in the shifted variable.
    pub fn translate(&self, y: &Rational) -> Self {
        let lin = QPolynomial::new(vec![y.clone(), Rational::one()]);
        self.coeffs.iter().rev().fold(QPolynomial::zero(), |acc, c| &(&acc * &lin) + &QPolynomial::constant(c.clone()))
    }

    /// Ordinary derivative.
    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, a)| a * int(k as i64)).collect())
    }

    /// Exact quotient by `x`; `None` if the constant term is nonzero.
    pub fn div_x(&self) -> Option<Self> {
        match self.coeffs.first() {
            None => Some(Self::zero()),
            Some(c) if c.is_zero() => Some(Self::new(self.coeffs[1..].to_vec())),
            Some(_) => None,
        }
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> Rational {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(v: &[S]) -> crate::Result<Self> {
        Ok(Self::new(v.iter().map(|s| parse_rational(s.as_ref())).collect::<crate::Result<_>>()?))
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        QPolynomial::from_strings(&v).map_err(D::Error::custom)
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::new(out)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: QPolynomial) -> QPolynomial {
        &self + &rhs
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl Zero for QPolynomial {
    fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for QPolynomial {
    fn one() -> Self {
        QPolynomial::constant(Rational::one())
    }
}

impl Coefficient for QPolynomial {
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
        match self.degree() {
            Some(0) => Some(QPolynomial::constant(self.coeffs[0].recip())),
            _ => None,
        }
    }
}

/// Coefficientwise `|a_k - b_k| <= rel |b_k|`. Where `b_k = 0` the bound is
/// taken relative to the largest `|b_j|` instead.
pub fn coefficients_within(got: &QPolynomial, want: &QPolynomial, rel: f64) -> bool {
    let scale = crate::qcore::to_f64(&want.max_abs_coeff());
    let n = got.coeffs.len().max(want.coeffs.len());
    (0..n).all(|k| {
        let (g, w) = (crate::qcore::to_f64(&got.coeff(k)), crate::qcore::to_f64(&want.coeff(k)));
        let bound = if w == 0.0 { rel * scale } else { rel * w.abs() };
        (g - w).abs() <= bound
    })
}

/// Jackson derivative: `x^n -> [n]_q x^{n-1}`.
pub fn jackson_derivative(ctx: &QContext, p: &QPolynomial) -> QPolynomial {
    QPolynomial::new(p.coeffs.iter().enumerate().skip(1).map(|(n, a)| a * ctx.q_int(n as u64)).collect())
}

/// Jackson integral from 0: `x^n -> x^{n+1} / [n+1]_q`.
pub fn jackson_integral(ctx: &QContext, p: &QPolynomial) -> QPolynomial {
    if p.is_zero() {
        return QPolynomial::zero();
    }
    let mut out = vec![Rational::zero()];
    out.extend(p.coeffs.iter().enumerate().map(|(n, a)| a / ctx.q_int(n as u64 + 1)));
    QPolynomial::new(out)
}

/// Rubin's operator
/// `(f(x/q) + f(-x/q) - f(qx) + f(-qx) - 2f(-x)) / (2(1-q)x)` on polynomials.
///
/// On monomials: `x^l -> q^{-l}[l]_q x^{l-1}` for even `l`, `[l]_q x^{l-1}`
/// for odd `l`, constants vanish. At `q = 1` this is the ordinary derivative.
pub fn rubin_derivative(ctx: &QContext, p: &QPolynomial) -> QPolynomial {
    if ctx.is_classical() {
        return p.derivative();
    }
    QPolynomial::new(
        p.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(l, a)| {
                let c = ctx.q_int(l as u64);
                if l % 2 == 0 {
                    a * c * ctx.pow(-(l as i64))
                } else {
                    a * c
                }
            })
            .collect(),
    )
}

fn sign(l: u64) -> Rational {
    if l % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `T_q(l)` exactly as printed alongside the Rubin expansion of the
/// generating function (last term `+2(-1)^l`). Does not match the operator.
pub fn rubin_t_printed(ctx: &QContext, l: u64) -> Rational {
    let (qi, qn) = (ctx.pow(-(l as i64)), ctx.pow(l as i64));
    let s = sign(l);
    &qi + &s * &qi - &qn + &s * &qn + int(2) * s
}

/// `T^_q(l)`, the monomial numerator the Rubin quotient actually produces:
/// `rubin(x^l) = T^_q(l) / (2(1-q)) x^{l-1}`. Vanishes at `l = 0`.
pub fn rubin_t_corrected(ctx: &QContext, l: u64) -> Rational {
    let (qi, qn) = (ctx.pow(-(l as i64)), ctx.pow(l as i64));
    let s = sign(l);
    &qi + &s * &qi - &qn + &s * &qn - int(2) * s
}

/// `2(1 - q)`, the Rubin denominator constant.
pub(crate) fn rubin_denominator(ctx: &QContext) -> Rational {
    int(2) * (Rational::one() - ctx.q())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rational;
    use proptest::prelude::*;

    fn ctx(a: i64, b: i64) -> QContext {
        QContext::new(rational(a, b)).unwrap()
    }

    fn contexts() -> Vec<QContext> {
        vec![ctx(1, 2), ctx(2, 3), QContext::classical()]
    }

    /// Five-term quotient evaluated symbolically by substitution, independent
    /// of the monomial parity rule.
    fn rubin_quotient_oracle(ctx: &QContext, p: &QPolynomial) -> QPolynomial {
        let q = ctx.q();
        let qi = q.recip();
        let num = &(&(&p.substitute_scaled(&qi) + &p.substitute_scaled(&-&qi)) - &p.substitute_scaled(q))
            + &p.substitute_scaled(&-q);
        let num = &num - &p.substitute_scaled(&-Rational::one()).scale(&int(2));
        num.div_x().expect("numerator vanishes at 0").scale(&rubin_denominator(ctx).recip())
    }

    /// `(p(x) - p(qx)) / ((1-q)x)` by substitution.
    fn jackson_quotient_oracle(ctx: &QContext, p: &QPolynomial) -> QPolynomial {
        let diff = p - &p.substitute_scaled(ctx.q());
        diff.div_x().unwrap().scale(&(Rational::one() - ctx.q()).recip())
    }

    #[test]
    fn canonical_form() {
        let p = QPolynomial::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(QPolynomial::new(vec![int(0)]).degree(), None);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(QPolynomial::monomial(2, int(1)).eval(&int(3)), int(9));
        assert_eq!(QPolynomial::zero().eval(&rational(5, 3)), int(0));
        assert_eq!(QPolynomial::from_ints(&[1, 1, 1]).eval(&rational(1, 2)), rational(7, 4));
    }

    #[test]
    fn jackson_derivative_examples() {
        let d = jackson_derivative(&ctx(1, 2), &QPolynomial::monomial(3, int(1)));
        assert_eq!(d, QPolynomial::monomial(2, rational(7, 4)));
        assert!(jackson_derivative(&ctx(1, 2), &QPolynomial::from_ints(&[5])).is_zero());
        let c = jackson_derivative(&QContext::classical(), &QPolynomial::from_ints(&[0, 1, 1]));
        assert_eq!(c, QPolynomial::from_ints(&[1, 2]));
    }

    #[test]
    fn jackson_derivative_matches_quotient() {
        for c in [ctx(1, 2), ctx(2, 3), ctx(3, 7)] {
            let p = QPolynomial::new((0..9).map(|k| rational(k * k - 3, k + 2)).collect());
            assert_eq!(jackson_derivative(&c, &p), jackson_quotient_oracle(&c, &p));
        }
    }

    #[test]
    fn jackson_integral_examples() {
        let i = jackson_integral(&ctx(1, 2), &QPolynomial::monomial(2, int(1)));
        assert_eq!(i, QPolynomial::monomial(3, rational(4, 7)));
        assert!(jackson_integral(&ctx(1, 2), &QPolynomial::zero()).is_zero());
        assert_eq!(jackson_integral(&ctx(2, 3), &QPolynomial::from_ints(&[1])), QPolynomial::x());
    }

    #[test]
    fn rubin_examples() {
        let half = ctx(1, 2);
        assert_eq!(rubin_derivative(&half, &QPolynomial::monomial(2, int(1))), QPolynomial::monomial(1, int(6)));
        assert_eq!(rubin_derivative(&half, &QPolynomial::monomial(3, int(1))), QPolynomial::monomial(2, rational(7, 4)));
        assert!(rubin_derivative(&half, &QPolynomial::from_ints(&[4])).is_zero());
        let p = QPolynomial::from_ints(&[3, -1, 4, 1, -5]);
        assert_eq!(rubin_derivative(&QContext::classical(), &p), p.derivative());
    }

    #[test]
    fn rubin_parity_rule_matches_quotient() {
        for c in [ctx(1, 2), ctx(2, 3), ctx(5, 9)] {
            for l in 0..12 {
                let m = QPolynomial::monomial(l, int(1));
                assert_eq!(rubin_derivative(&c, &m), rubin_quotient_oracle(&c, &m), "l={l}");
                let expect = if l == 0 {
                    QPolynomial::zero()
                } else {
                    QPolynomial::monomial(l - 1, rubin_t_corrected(&c, l as u64) / rubin_denominator(&c))
                };
                assert_eq!(rubin_derivative(&c, &m), expect);
            }
        }
    }

    #[test]
    fn rubin_t_variants() {
        let c = ctx(1, 2);
        assert!(rubin_t_corrected(&c, 0).is_zero());
        assert_eq!(rubin_t_printed(&c, 0), int(4));
        // even: 2q^{-l} - 2, odd: 2 - 2q^l
        assert_eq!(rubin_t_corrected(&c, 2), int(6));
        assert_eq!(rubin_t_corrected(&c, 3), rational(7, 4));
        assert_eq!(rubin_t_printed(&c, 2), int(10));
        assert_eq!(rubin_t_printed(&c, 3), rational(-9, 4));
    }

    #[test]
    fn rubin_classical_limit() {
        let c = ctx(999, 1000);
        let p = QPolynomial::new((0..=8).map(|k| rational(2 * k - 7, k + 1)).collect());
        let got = rubin_derivative(&c, &p);
        let want = p.derivative();
        for k in 0..=7 {
            let (g, w) = (crate::qcore::to_f64(&got.coeff(k)), crate::qcore::to_f64(&want.coeff(k)));
            assert!((g - w).abs() <= 1e-2 * w.abs(), "k={k} {g} vs {w}");
        }
    }

    #[test]
    fn translate_matches_eval() {
        let p = QPolynomial::from_ints(&[1, -2, 0, 3]);
        let y = rational(1, 3);
        let t = p.translate(&y);
        for x in [int(0), int(2), rational(-5, 4)] {
            assert_eq!(t.eval(&x), p.eval(&(&x + &y)));
        }
    }

    #[test]
    fn serde_roundtrip() {
        let p = QPolynomial::new(vec![rational(-9, 16), rational(9, 8)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["-9/16","9/8"]"#);
        assert_eq!(serde_json::from_str::<QPolynomial>(&s).unwrap(), p);
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = QPolynomial> {
        prop::collection::vec((-30i64..30, 1i64..12), 0..=max_deg + 1)
            .prop_map(|v| QPolynomial::new(v.into_iter().map(|(a, b)| rational(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn fundamental_theorem(p in arb_poly(10), i in 0usize..3) {
            let c = &contexts()[i];
            prop_assert_eq!(jackson_derivative(c, &jackson_integral(c, &p)), p);
        }

        #[test]
        fn q_leibniz(f in arb_poly(6), g in arb_poly(6), i in 0usize..3) {
            let c = &contexts()[i];
            let lhs = jackson_derivative(c, &(&f * &g));
            let rhs = &(&f * &jackson_derivative(c, &g)) + &(&g.substitute_scaled(c.q()) * &jackson_derivative(c, &f));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rubin_is_linear(f in arb_poly(8), g in arb_poly(8)) {
            let c = ctx(2, 3);
            prop_assert_eq!(rubin_derivative(&c, &(&f + &g)), &rubin_derivative(&c, &f) + &rubin_derivative(&c, &g));
        }
    }
}
