//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the console; exits non-zero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qgenocchi::classical;
use qgenocchi::genocchi::{expand_polynomial, order_convolution, q_add_shift, q_add_shift_cauchy, rubin_on_genocchi};
use qgenocchi::qcore::{int, pow_int, rational, to_f64};
use qgenocchi::qgamma::{qgamma_integral, qgamma_meromorphic, qgamma_product, qgamma_residue, IntegralForm};
use qgenocchi::qpoly::{coefficients_within, jackson_derivative, jackson_integral};
use qgenocchi::qzeta::{euler_regularized_altsum, euler_transform_values, interpolation_check_with, qzeta_neg_int};
use qgenocchi::series::{big_eq_series, eq_series};
use qgenocchi::{FloatContext, GenocchiTable, QContext, QPolynomial, Rational, Real};

const SEED: u64 = 0x5eed_9e0c;

fn q_values(list: &[(i64, i64)]) -> Vec<QContext> {
    list.iter().map(|&(n, d)| QContext::new(rational(n, d)).unwrap()).collect()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// Expansion in q-binomials of the numbers reproduces the polynomials.
fn criterion_1() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for ctx in q_values(&[(1, 2), (2, 3), (1, 1)]) {
        for alpha in 1..=3 {
            let t = GenocchiTable::new(&ctx, alpha, 12).unwrap();
            for j in 0..=12 {
                checked += 1;
                if expand_polynomial(&t, j) != *t.poly(j) {
                    bad.push(format!("q={ctx} alpha={alpha} j={j}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} exact checks, mismatches {bad:?}"))
}

/// D_q G_n = [n]_q G_{n-1}.
fn criterion_2() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for ctx in q_values(&[(1, 2), (2, 3), (1, 1)]) {
        for alpha in 1..=3 {
            let t = GenocchiTable::new(&ctx, alpha, 12).unwrap();
            for n in 1..=12 {
                checked += 1;
                let rhs = t.poly(n - 1).scale(&ctx.q_int(n as u64));
                if jackson_derivative(&ctx, t.poly(n)) != rhs {
                    bad.push(format!("q={ctx} alpha={alpha} n={n}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} exact checks, mismatches {bad:?}"))
}

/// Addition formula in Cauchy-product form, and convolution in the order.
fn criterion_3() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for ctx in q_values(&[(1, 2), (2, 3)]) {
        for alpha in 1..=2 {
            let t = GenocchiTable::new(&ctx, alpha, 10).unwrap();
            for y in [rational(1, 3), int(-2), rational(5, 7)] {
                for n in 0..=10 {
                    checked += 1;
                    if q_add_shift_cauchy(&t, n, &y) != q_add_shift(&t, n, &y) {
                        bad.push(format!("addition q={ctx} alpha={alpha} n={n} y={y}"));
                    }
                }
            }
        }
        for (a, b) in [(1, 1), (1, 2), (2, 2)] {
            for row in order_convolution(&ctx, a, b, 10).unwrap() {
                checked += 1;
                if !row.equal() {
                    bad.push(format!("convolution q={ctx} ({a},{b}) l={}", row.l));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} exact checks, mismatches {bad:?}"))
}

/// Rubin operator: three exact expressions agree; printed variants are
/// reported; the q -> 1 limit holds to 1e-2 at q = 1 - 1e-3 for n <= 8.
fn criterion_4() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let (mut printed_t_differs, mut printed_split_differs, mut printed_total) = (0, 0, 0);
    for ctx in q_values(&[(1, 2), (2, 3)]) {
        for alpha in 1..=2 {
            let t = GenocchiTable::new(&ctx, alpha, 10).unwrap();
            for n in 0..=10 {
                let c = rubin_on_genocchi(&t, n).unwrap();
                checked += 1;
                if !c.consistent() {
                    bad.push(format!("q={ctx} alpha={alpha} n={n}"));
                }
                printed_total += 1;
                printed_t_differs += usize::from(!c.printed_sum_matches());
                printed_split_differs += usize::from(!c.printed_split_matches());
            }
        }
    }
    let consistency = bad.is_empty();

    let near = QContext::new(rational(999, 1000)).unwrap();
    let t = GenocchiTable::new(&near, 1, 8).unwrap();
    let classical = classical::genocchi_polynomials(1, 8);
    let mut limit_bad = Vec::new();
    let mut worst = Vec::new();
    for n in 1..=8 {
        let got = rubin_on_genocchi(&t, n).unwrap().operator;
        let want = classical[n - 1].scale(&int(n as i64));
        let err = worst_relative_error(&got, &want);
        worst.push(format!("n={n}:{err:.2e}"));
        if !coefficients_within(&got, &want, 1e-2) {
            limit_bad.push(n);
        }
    }
    let ok = consistency && limit_bad.is_empty();
    outcome(
        ok,
        format!(
            "consistency {checked} checks, mismatches {bad:?}; printed T_q differs in {printed_t_differs}/{printed_total} and printed split in {printed_split_differs}/{printed_total} (reported); \
             limit at q=999/1000 exceeds 1e-2 for n={limit_bad:?}, worst coefficient errors [{}]",
            worst.join(" ")
        ),
    )
}

fn worst_relative_error(got: &QPolynomial, want: &QPolynomial) -> f64 {
    let scale = to_f64(&want.max_abs_coeff());
    let len = got.coeffs().len().max(want.coeffs().len());
    (0..len)
        .map(|k| {
            let (g, w) = (to_f64(&got.coeff(k)), to_f64(&want.coeff(k)));
            let denom = if w == 0.0 { scale } else { w.abs() };
            (g - w).abs() / denom
        })
        .fold(0.0, f64::max)
}

/// q = 1 reproduces the classical Genocchi numbers.
fn criterion_5() -> Outcome {
    let t = GenocchiTable::new(&QContext::classical(), 1, 8).unwrap();
    let want: Vec<Rational> = [1, -1, 0, 1, 0, -3, 0, 17].iter().map(|&v| int(v)).collect();
    let got: Vec<Rational> = (1..=8).map(|n| t.number(n)).collect();
    let oracle = classical::genocchi_numbers(8);
    let ok = got == want && got[..] == oracle[1..=8];
    let mut higher_ok = true;
    for alpha in 2..=3 {
        let t = GenocchiTable::new(&QContext::classical(), alpha, 10).unwrap();
        higher_ok &= t.numbers() == classical::higher_order_numbers(alpha, 10);
    }
    let shown: Vec<String> = got.iter().map(|v| v.to_string()).collect();
    outcome(ok && higher_ok, format!("G_1..G_8 = {}; orders 2 and 3 match: {higher_ok}", shown.join(", ")))
}

/// q-Gamma: factorial values, three-way agreement, residues.
fn criterion_6() -> Outcome {
    let start = Instant::now();
    let half = QContext::new(rational(1, 2)).unwrap();
    let fine = FloatContext::parse("0.5", 128, 1e-14).unwrap();
    let mut notes = Vec::new();
    let mut ok = true;

    let mut worst_fact = 0.0f64;
    for n in 0..=10u64 {
        let got = qgamma_product(&fine, &fine.real(n as i64 + 1)).unwrap().to_f64();
        let want = to_f64(&half.q_factorial(n));
        worst_fact = worst_fact.max((got - want).abs() / want);
    }
    ok &= worst_fact <= 1e-10;
    notes.push(format!("factorials worst {worst_fact:.1e}"));

    let tol = 1e-8;
    let f = FloatContext::parse("0.5", 128, tol).unwrap();
    let mut worst_pair = 0.0f64;
    for k in 1..=10 {
        let x = f.real_f64(k as f64 / 2.0);
        let p = qgamma_product(&f, &x).unwrap().to_f64();
        let i = qgamma_integral(&f, &x, IntegralForm::Improper).unwrap().to_f64();
        let fi = qgamma_integral(&f, &x, IntegralForm::Finite).unwrap().to_f64();
        let m = qgamma_meromorphic(&f, &x).unwrap().to_f64();
        for (a, b) in [(p, i), (p, m), (i, m), (p, fi)] {
            worst_pair = worst_pair.max((a - b).abs() / b.abs());
        }
    }
    ok &= worst_pair <= 10.0 * tol;
    notes.push(format!("pairwise worst {worst_pair:.1e}"));

    let eps = fine.real_f64(1e-6);
    let mut worst_res = 0.0f64;
    for j in 0..=6i64 {
        let z = &fine.real(-j) + &eps;
        let g = qgamma_meromorphic(&fine, &z).unwrap().value;
        let limit = (&fine.q_int(&eps) * &g).to_f64();
        let exact = to_f64(&qgamma_residue(&half, j as u64));
        worst_res = worst_res.max((limit - exact).abs() / exact.abs());
    }
    ok &= worst_res <= 1e-4;
    notes.push(format!("residues worst {worst_res:.1e}"));
    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed < 60.0;
    notes.push(format!("{elapsed:.2}s"));
    outcome(ok, notes.join(", "))
}

/// Interpolation at negative integers: exact equality at q = 1, complete
/// exact reports elsewhere.
fn criterion_7() -> Outcome {
    let xs = [int(0), rational(1, 2), int(1)];
    let mut equal = 0;
    let mut unequal = Vec::new();
    for alpha in 1..=2u32 {
        let t = GenocchiTable::new(&QContext::classical(), alpha, 8 + alpha as usize).unwrap();
        for n in 0..=8 {
            for x in &xs {
                let r = interpolation_check_with(&t, n, x).unwrap();
                if r.equal {
                    equal += 1;
                } else {
                    unequal.push(format!("alpha={alpha} n={n} x={x}"));
                }
            }
        }
    }
    let mut reports = 0;
    let mut incomplete = 0;
    let mut holds = 0;
    for ctx in q_values(&[(1, 2), (2, 3)]) {
        for alpha in 1..=2u32 {
            let t = GenocchiTable::new(&ctx, alpha, 8 + alpha as usize).unwrap();
            for n in 0..=8 {
                for x in &xs {
                    let r = interpolation_check_with(&t, n, x).unwrap();
                    reports += 1;
                    holds += usize::from(r.equal);
                    if r.ratio.is_none() != r.rhs.is_zero() {
                        incomplete += 1;
                    }
                }
            }
        }
    }
    outcome(
        unequal.is_empty() && reports == 108 && incomplete == 0,
        format!("q=1: {equal}/54 equal {unequal:?}; q in {{1/2, 2/3}}: {reports} reports, {holds} with lhs = rhs"),
    )
}

/// `sum_l (-r)^l l^k` for k = 0..=4 by direct summation in 256-bit floats.
fn abel_power_sums(r: f64) -> Vec<f64> {
    let prec = 256;
    let neg_r = Real::from_f64(-r, prec);
    let cutoff = Real::from_f64(1e-40, prec);
    (0..=4usize)
        .into_par_iter()
        .map(|k| {
            let mut sum = Real::zero(prec);
            let mut geo = Real::one(prec);
            let mut l = 0i64;
            loop {
                let lk = Real::from_i64(l, prec).powi(k);
                let term = if k == 0 { geo.clone() } else { &geo * &lk };
                sum = &sum + &term;
                if l > 1000 && term.abs() < cutoff {
                    break;
                }
                geo = &geo * &neg_r;
                l += 1;
            }
            sum.to_f64()
        })
        .collect()
}

/// Regularization agrees with Abel means; the collapsed sum agrees with the
/// dimension-by-dimension Euler transform.
fn criterion_8(rng: &mut ChaCha8Rng) -> Outcome {
    let sums = abel_power_sums(1.0 - 1e-4);
    let mut cases = Vec::new();
    for k in 0..=4 {
        let mut c = vec![0i64; k + 1];
        c[k] = 1;
        cases.push(c);
    }
    for _ in 0..200 {
        let deg = rng.gen_range(0..=4);
        cases.push((0..=deg).map(|_| rng.gen_range(-9..=9)).collect());
    }
    let mut worst = 0.0f64;
    let mut abel_bad = 0;
    for c in &cases {
        let exact = to_f64(&euler_regularized_altsum(&QPolynomial::from_ints(c)));
        let abel: f64 = c.iter().zip(&sums).map(|(&ci, s)| ci as f64 * s).sum();
        let err = (abel - exact).abs() / exact.abs().max(1.0);
        worst = worst.max(err);
        if err > 1e-2 {
            abel_bad += 1;
        }
    }

    let mut collapse_checked = 0;
    let mut collapse_bad = Vec::new();
    for ctx in q_values(&[(1, 1), (1, 2), (2, 3)]) {
        for alpha in 1..=3u32 {
            for n in 0..=4u32 {
                for x in [int(0), rational(1, 2), int(1), rational(-3, 4)] {
                    collapse_checked += 1;
                    let brute = pow_int(&ctx.q_int(2), alpha as i64) * dimensionwise(&ctx, n, &x, alpha, 0);
                    if qzeta_neg_int(&ctx, n, &x, alpha).unwrap() != brute {
                        collapse_bad.push(format!("q={ctx} alpha={alpha} n={n} x={x}"));
                    }
                }
            }
        }
    }
    outcome(
        abel_bad == 0 && collapse_bad.is_empty(),
        format!(
            "{} polynomials vs Abel means at r=1-1e-4, worst {worst:.1e}; collapse {collapse_checked} exact checks, mismatches {collapse_bad:?}",
            cases.len()
        ),
    )
}

/// Euler value of the alpha-fold alternating sum, one index at a time.
fn dimensionwise(ctx: &QContext, n: u32, x: &Rational, depth: u32, c: i64) -> Rational {
    if depth == 0 {
        return pow_int(&(ctx.q() * (x + int(c))), n as i64);
    }
    let values: Vec<Rational> = (0..=n as i64).map(|l| dimensionwise(ctx, n, x, depth - 1, c + l)).collect();
    euler_transform_values(&values)
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> QPolynomial {
    let deg = rng.gen_range(0..=max_deg);
    QPolynomial::new((0..=deg).map(|_| rational(rng.gen_range(-12..=12), rng.gen_range(1..=6))).collect())
}

/// q-Pascal rules, e_{1/q} = E_q, D_q after the Jackson integral, q-Leibniz.
fn criterion_9(rng: &mut ChaCha8Rng) -> Outcome {
    let named = q_values(&[(1, 2), (2, 3), (1, 1)]);
    let cases = 240;
    let mut failures = Vec::new();

    for i in 0..cases {
        let ctx = &named[i % 3];
        let n = rng.gen_range(1..=30u64);
        let k = rng.gen_range(-1..=(n as i64 + 1));
        let b = |n: u64, k: i64| ctx.q_binomial(n, k);
        let first = b(n, k) == b(n - 1, k - 1) + ctx.pow(k.max(0)) * b(n - 1, k);
        let second = b(n, k) == ctx.pow((n as i64 - k).max(0)) * b(n - 1, k - 1) + b(n - 1, k);
        if !(first && second) {
            failures.push(format!("pascal q={ctx} n={n} k={k}"));
        }
    }

    for i in 0..cases {
        // the named bases plus random rational ones
        let ctx = if i < 30 {
            named[i % 3].clone()
        } else {
            let d = rng.gen_range(2..=40);
            QContext::new(rational(rng.gen_range(1..=d), d)).unwrap()
        };
        let order = rng.gen_range(0..=14);
        if eq_series(&ctx.reciprocal(), order) != big_eq_series(&ctx, order) {
            failures.push(format!("exponential q={ctx} order={order}"));
        }
    }

    for i in 0..cases {
        let ctx = &named[i % 3];
        let p = random_poly(rng, 8);
        if jackson_derivative(ctx, &jackson_integral(ctx, &p)) != p {
            failures.push(format!("fundamental q={ctx} p={p}"));
        }
    }

    for i in 0..cases {
        let ctx = &named[i % 3];
        let (f, g) = (random_poly(rng, 6), random_poly(rng, 6));
        let lhs = jackson_derivative(ctx, &(&f * &g));
        let rhs = &(&f.substitute_scaled(ctx.q()) * &jackson_derivative(ctx, &g)) + &(&g * &jackson_derivative(ctx, &f));
        if lhs != rhs {
            failures.push(format!("leibniz q={ctx} f={f} g={g}"));
        }
    }
    outcome(failures.is_empty(), format!("4 laws x {cases} random cases, failures {failures:?}"))
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let results = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(&mut rng),
        criterion_9(&mut rng),
    ];
    let mut failed = 0;
    for (i, r) in results.iter().enumerate() {
        println!("criterion {}: {}: {}", i + 1, if r.ok { "PASS" } else { "FAIL" }, r.detail);
        failed += usize::from(!r.ok);
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
