//! Classical (`q = 1`) Genocchi references built from Bernoulli numbers and
//! ordinary binomial convolution. Shares no code with the q-series path.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::qcore::{int, Rational};
use crate::qpoly::QPolynomial;

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let next = &row[k - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
        row.push(next);
    }
    row
}

/// `B_0..B_n` with `B_1 = -1/2`, from `sum_{k<=m} C(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for m in 1..=n {
        let row = binomial_row(m + 1);
        let s = (0..m).fold(Rational::zero(), |acc, k| acc + Rational::from_integer(row[k].clone()) * &b[k]);
        b.push(-s / Rational::from_integer(row[m].clone()));
    }
    b
}

/// `G_n = 2(1 - 2^n) B_n` for `n = 0..=max_n`.
pub fn genocchi_numbers(max_n: usize) -> Vec<Rational> {
    bernoulli_numbers(max_n)
        .into_iter()
        .enumerate()
        .map(|(n, b)| int(2) * (Rational::one() - Rational::from_integer(BigInt::one() << n)) * b)
        .collect()
}

/// Higher-order numbers: the `alpha`-fold exponential (binomial) convolution.
pub fn higher_order_numbers(alpha: u32, max_n: usize) -> Vec<Rational> {
    let base = genocchi_numbers(max_n);
    let mut acc = base.clone();
    for _ in 1..alpha {
        acc = (0..=max_n)
            .map(|n| {
                let row = binomial_row(n);
                (0..=n).fold(Rational::zero(), |s, k| s + Rational::from_integer(row[k].clone()) * &acc[k] * &base[n - k])
            })
            .collect();
    }
    acc
}

/// `G_n^(alpha)(x) = sum_k C(n, k) G_k^(alpha) x^{n-k}` for `n = 0..=max_n`.
pub fn genocchi_polynomials(alpha: u32, max_n: usize) -> Vec<QPolynomial> {
    let nums = higher_order_numbers(alpha, max_n);
    (0..=max_n)
        .map(|n| {
            let row = binomial_row(n);
            let mut coeffs = vec![Rational::zero(); n + 1];
            for k in 0..=n {
                coeffs[n - k] = Rational::from_integer(row[k].clone()) * &nums[k];
            }
            QPolynomial::new(coeffs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rational;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], rational(-1, 2));
        assert_eq!(b[2], rational(1, 6));
        assert_eq!(b[4], rational(-1, 30));
        assert_eq!(b[8], rational(-1, 30));
        assert!(b[7].is_zero());
    }

    #[test]
    fn genocchi_values() {
        let g = genocchi_numbers(10);
        let want = [0, 1, -1, 0, 1, 0, -3, 0, 17, 0, -155];
        assert_eq!(g, want.iter().map(|&v| int(v)).collect::<Vec<_>>());
    }

    #[test]
    fn second_order_low_terms() {
        // (2t/(e^t+1))^2 = t^2 - t^3 + ..., so G_2^(2) = 2, G_3^(2) = -6.
        let g = higher_order_numbers(2, 4);
        assert_eq!(&g[..4], &[int(0), int(0), int(2), int(-6)]);
    }
}
