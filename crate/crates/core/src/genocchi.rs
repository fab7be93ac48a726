//! Higher-order q-Genocchi numbers and polynomials, built from
//!
//! ```text
//! sum_n G_n^(a)(x) z^n / [n]_q! = ([2]_q z / (e_q(z) + 1))^a e_q(zx)
//! ```
//!
//! together with the identities they satisfy: binomial expansion, the
//! Jackson-derivative recurrence, the addition formula, order convolution and
//! the Rubin-operator expansions.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{format_rational, parse_rational, QContext, Rational};
use crate::qpoly::{rubin_denominator, rubin_derivative, rubin_t_corrected, rubin_t_printed, QPolynomial};
use crate::series::{eq_series, PowerSeries};

/// `G_0^(a)(x), ..., G_N^(a)(x)` for one `(q, a, N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenocchiTable {
    ctx: QContext,
    alpha: u32,
    order: usize,
    polys: Vec<QPolynomial>,
}

/// `([2]_q z / (e_q(z) + 1))^alpha` through `z^order`.
pub fn genocchi_kernel(ctx: &QContext, alpha: u32, order: usize) -> PowerSeries<Rational> {
    let denom = eq_series(ctx, order).add(&PowerSeries::one(order));
    let base = denom.inverse().expect("e_q(0) + 1 = 2").shift(1).scale(&ctx.q_int(2));
    base.pow(alpha)
}

fn check_params(alpha: u32, order: usize) -> Result<()> {
    if alpha == 0 {
        return Err(Error::InvalidArgument("alpha must be >= 1".into()));
    }
    if order < alpha as usize {
        return Err(Error::InvalidArgument(format!("order {order} < alpha {alpha}")));
    }
    Ok(())
}

impl GenocchiTable {
    pub fn new(ctx: &QContext, alpha: u32, order: usize) -> Result<Self> {
        check_params(alpha, order)?;
        let kernel = genocchi_kernel(ctx, alpha, order).map(|c| QPolynomial::constant(c.clone()));
        let facts = ctx.q_factorials(order);
        let exp_zx = PowerSeries::from_fn(order, |l| QPolynomial::monomial(l, facts[l].recip()));
        let gf = kernel.mul(&exp_zx);
        let polys = gf.coeffs().iter().zip(&facts).map(|(c, f)| c.scale(f)).collect();
        Ok(GenocchiTable { ctx: ctx.clone(), alpha, order, polys })
    }

    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn polys(&self) -> &[QPolynomial] {
        &self.polys
    }

    pub fn poly(&self, n: usize) -> &QPolynomial {
        &self.polys[n]
    }

    /// `G_n^(a) = G_n^(a)(0)`.
    pub fn number(&self, n: usize) -> Rational {
        self.polys[n].coeff(0)
    }

    pub fn numbers(&self) -> Vec<Rational> {
        (0..=self.order).map(|n| self.number(n)).collect()
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            q: format_rational(self.ctx.q()),
            alpha: self.alpha,
            order: self.order,
            polys: self.polys.clone(),
        }
    }

    pub fn from_json(t: &TableJson) -> Result<Self> {
        let ctx = QContext::new(parse_rational(&t.q)?)?;
        check_params(t.alpha, t.order)?;
        if t.polys.len() != t.order + 1 {
            return Err(Error::InvalidArgument(format!("expected {} polynomials, found {}", t.order + 1, t.polys.len())));
        }
        Ok(GenocchiTable { ctx, alpha: t.alpha, order: t.order, polys: t.polys.clone() })
    }
}

/// Wire form of a table: `{"q": "1/2", "alpha": 1, "N": 10, "polys": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub q: String,
    pub alpha: u32,
    #[serde(rename = "N")]
    pub order: usize,
    pub polys: Vec<QPolynomial>,
}

pub fn genocchi_numbers(ctx: &QContext, alpha: u32, order: usize) -> Result<Vec<Rational>> {
    Ok(GenocchiTable::new(ctx, alpha, order)?.numbers())
}

/// `sum_n binom(j, n)_q G_n^(a) x^{j-n}`, rebuilt from the numbers alone.
pub fn expand_polynomial(table: &GenocchiTable, j: usize) -> QPolynomial {
    let ctx = table.ctx();
    (0..=j).fold(QPolynomial::zero(), |acc, n| {
        let c = ctx.q_binomial(j as u64, n as i64) * table.number(n);
        &acc + &QPolynomial::monomial(j - n, c)
    })
}

/// Right side of the addition formula,
/// `sum_j binom(n, j)_q y^{n-j} G_j^(a)(x)`, as a polynomial in `x`.
pub fn q_add_shift(table: &GenocchiTable, n: usize, y: &Rational) -> QPolynomial {
    let ctx = table.ctx();
    (0..=n).fold(QPolynomial::zero(), |acc, j| {
        let c = ctx.q_binomial(n as u64, j as i64) * crate::qcore::pow_int(y, (n - j) as i64);
        &acc + &table.poly(j).scale(&c)
    })
}

/// `[n]_q!` times the `z^n` coefficient of `e_q(zy) * S_q(x, z : a)`.
pub fn q_add_shift_cauchy(table: &GenocchiTable, n: usize, y: &Rational) -> QPolynomial {
    let ctx = table.ctx();
    let facts = ctx.q_factorials(n);
    let gen = PowerSeries::from_fn(n, |j| table.poly(j).scale(&facts[j].recip()));
    let exp_zy = PowerSeries::from_fn(n, |l| QPolynomial::constant(crate::qcore::pow_int(y, l as i64) / &facts[l]));
    exp_zy.mul(&gen).coeff(n).scale(&facts[n])
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvolutionRow {
    pub l: usize,
    pub lhs: QPolynomial,
    pub rhs: QPolynomial,
}

impl ConvolutionRow {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of `G_l^(a+b)(x) = sum_n binom(l, n)_q G_n^(a) G_{l-n}^(b)(x)`
/// for every `l <= order`.
pub fn order_convolution(ctx: &QContext, alpha: u32, beta: u32, order: usize) -> Result<Vec<ConvolutionRow>> {
    let order = order.max((alpha + beta) as usize);
    let left = GenocchiTable::new(ctx, alpha + beta, order)?;
    let a = GenocchiTable::new(ctx, alpha, order)?;
    let b = GenocchiTable::new(ctx, beta, order)?;
    Ok((0..=order)
        .map(|l| {
            let rhs = (0..=l).fold(QPolynomial::zero(), |acc, n| {
                let c = ctx.q_binomial(l as u64, n as i64) * a.number(n);
                &acc + &b.poly(l - n).scale(&c)
            });
            ConvolutionRow { l, lhs: left.poly(l).clone(), rhs }
        })
        .collect())
}

/// A polynomial plus an `x^{-1}` term; the printed Rubin sum is not a polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentTail {
    pub x_inverse: Rational,
    pub polynomial: QPolynomial,
}

/// Three exact routes to `rubin(G_n^(a)(x))`, plus the two printed variants.
#[derive(Clone, Debug, PartialEq)]
pub struct RubinCheck {
    pub n: usize,
    /// The operator applied to the table polynomial.
    pub operator: QPolynomial,
    /// `(1/(2(1-q))) sum_{l>=1} binom(n,l)_q T^_q(l) x^{l-1} G_{n-l}`.
    pub corrected_sum: QPolynomial,
    /// Even/odd split of `corrected_sum`.
    pub even_odd_split: QPolynomial,
    /// The same single sum with the printed `T_q`, including its `l = 0` term.
    pub printed_sum: LaurentTail,
    /// The printed even/odd formula (no powers of `x`, `+1` in both braces).
    pub printed_split: QPolynomial,
}

impl RubinCheck {
    pub fn consistent(&self) -> bool {
        self.operator == self.corrected_sum && self.operator == self.even_odd_split
    }

    pub fn printed_sum_matches(&self) -> bool {
        self.printed_sum.x_inverse.is_zero() && self.printed_sum.polynomial == self.operator
    }

    pub fn printed_split_matches(&self) -> bool {
        self.printed_split == self.operator
    }
}

pub fn rubin_on_genocchi(table: &GenocchiTable, n: usize) -> Result<RubinCheck> {
    let ctx = table.ctx();
    if ctx.is_classical() {
        return Err(Error::InvalidArgument("the Rubin expansions need q != 1".into()));
    }
    let nn = n as u64;
    let binom = |l: usize| ctx.q_binomial(nn, l as i64);
    let g = |k: usize| table.number(k);
    let inv_denom = rubin_denominator(ctx).recip();
    let one_minus_q_inv = (Rational::one() - ctx.q()).recip();

    let operator = rubin_derivative(ctx, table.poly(n));

    let corrected_sum = (1..=n).fold(QPolynomial::zero(), |acc, l| {
        let c = binom(l) * rubin_t_corrected(ctx, l as u64) * g(n - l) * &inv_denom;
        &acc + &QPolynomial::monomial(l - 1, c)
    });

    let mut even_odd_split = QPolynomial::zero();
    for m in 1..=n / 2 {
        let c = binom(2 * m) * (ctx.pow(-2 * m as i64) - Rational::one()) * g(n - 2 * m) * &one_minus_q_inv;
        even_odd_split = &even_odd_split + &QPolynomial::monomial(2 * m - 1, c);
    }
    for m in 0..n.div_ceil(2) {
        let c = binom(2 * m + 1) * (Rational::one() - ctx.pow(2 * m as i64 + 1)) * g(n - 1 - 2 * m) * &one_minus_q_inv;
        even_odd_split = &even_odd_split + &QPolynomial::monomial(2 * m, c);
    }

    let x_inverse = binom(0) * rubin_t_printed(ctx, 0) * g(n) * &inv_denom;
    let printed_poly = (1..=n).fold(QPolynomial::zero(), |acc, l| {
        let c = binom(l) * rubin_t_printed(ctx, l as u64) * g(n - l) * &inv_denom;
        &acc + &QPolynomial::monomial(l - 1, c)
    });

    let mut printed_const = Rational::zero();
    for l in 0..=n / 2 {
        printed_const += binom(2 * l) * (ctx.pow(-2 * l as i64) + Rational::one()) * g(n - 2 * l) * &one_minus_q_inv;
    }
    for l in 0..n.div_ceil(2) {
        printed_const += binom(2 * l + 1) * (ctx.pow(2 * l as i64 + 1) + Rational::one()) * g(n - 1 - 2 * l) * &one_minus_q_inv;
    }

    Ok(RubinCheck {
        n,
        operator,
        corrected_sum,
        even_odd_split,
        printed_sum: LaurentTail { x_inverse, polynomial: printed_poly },
        printed_split: QPolynomial::constant(printed_const),
    })
}
