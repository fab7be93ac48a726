//! Batch verification of every identity the library implements, producing a
//! deterministic report of pass/fail/reported records.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genocchi::{expand_polynomial, order_convolution, q_add_shift, q_add_shift_cauchy, rubin_on_genocchi, GenocchiTable};
use crate::qcore::{format_rational, int, rational, to_f64, QContext, Rational};
use crate::qgamma::{lattice_condition_exact, qgamma_integral, qgamma_meromorphic, qgamma_product, qgamma_residue, IntegralForm};
use crate::qpoly::{coefficients_within, jackson_derivative, rubin_derivative, QPolynomial};
use crate::qzeta::interpolation_check_with;
use crate::real::{FloatContext, DEFAULT_PRECISION_BITS};
use crate::classical;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Expansion,
    Qderiv,
    Qadd,
    Convolution,
    Rubin,
    Gamma,
    Zeta,
    Limits,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Expansion,
        Suite::Qderiv,
        Suite::Qadd,
        Suite::Convolution,
        Suite::Rubin,
        Suite::Gamma,
        Suite::Zeta,
        Suite::Limits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Expansion => "expansion",
            Suite::Qderiv => "qderiv",
            Suite::Qadd => "qadd",
            Suite::Convolution => "convolution",
            Suite::Rubin => "rubin",
            Suite::Gamma => "gamma",
            Suite::Zeta => "zeta",
            Suite::Limits => "limits",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub suites: Vec<Suite>,
    pub q_list: Vec<Rational>,
    pub max_n: usize,
    pub alpha_list: Vec<u32>,
    /// Bits for the floating-point checks.
    pub precision: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suites: Suite::ALL.to_vec(),
            q_list: vec![rational(1, 2), rational(2, 3), int(1)],
            max_n: 10,
            alpha_list: vec![1, 2],
            precision: DEFAULT_PRECISION_BITS,
        }
    }
}

impl VerifyConfig {
    /// Rejects empty lists, `max_n = 0`, `alpha = 0` and `q` outside `(0, 1]`;
    /// removes duplicates.
    pub fn validated(mut self) -> Result<Self> {
        if self.suites.is_empty() {
            return Err(Error::InvalidArgument("no suites selected".into()));
        }
        if self.q_list.is_empty() {
            return Err(Error::InvalidArgument("no q values given".into()));
        }
        if self.alpha_list.is_empty() || self.alpha_list.contains(&0) {
            return Err(Error::InvalidArgument("alpha values must be >= 1".into()));
        }
        if self.max_n == 0 {
            return Err(Error::InvalidArgument("max_n must be >= 1".into()));
        }
        for q in &self.q_list {
            QContext::new(q.clone())?;
        }
        self.suites = self.suites.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        self.q_list = self.q_list.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        self.alpha_list = self.alpha_list.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A claim that is computed and recorded but not asserted.
    Reported,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub suite: Suite,
    pub q: String,
    pub alpha: Option<u32>,
    pub n: usize,
    pub variant: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub notes: String,
    #[serde(skip)]
    q_value: Rational,
}

impl Record {
    #[allow(clippy::too_many_arguments)]
    fn new(suite: Suite, q: &Rational, alpha: Option<u32>, n: usize, variant: impl Into<String>, status: Status, lhs: impl ToString, rhs: impl ToString) -> Self {
        Record {
            suite,
            q: format_rational(q),
            alpha,
            n,
            variant: variant.into(),
            status,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            notes: String::new(),
            q_value: q.clone(),
        }
    }

    fn exact(suite: Suite, q: &Rational, alpha: Option<u32>, n: usize, variant: &str, lhs: &QPolynomial, rhs: &QPolynomial) -> Self {
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        Record::new(suite, q, alpha, n, variant, status, lhs, rhs)
    }

    fn note(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    fn sort_key(&self) -> (Suite, &Rational, Option<u32>, usize, &str) {
        (self.suite, &self.q_value, self.alpha, self.n, &self.variant)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub reported: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }
}

/// `q` at which the limit suite measures convergence to the classical case.
pub const LIMIT_Q: (i64, i64) = (999, 1000);
const LIMIT_REL: f64 = 1e-2;
const LIMIT_RUBIN_MAX_N: usize = 8;
const LIMIT_GAMMA_MAX_N: usize = 6;
const GAMMA_TOL: f64 = 1e-8;
const RESIDUE_EPS: f64 = 1e-6;
const RESIDUE_REL: f64 = 1e-4;

enum Job {
    /// Table-backed identities at one `(q, alpha)`.
    Table(Suite, Rational, u32),
    Convolution(Rational, u32, u32),
    Gamma(Rational, usize),
    Limits,
}

pub fn run(config: VerifyConfig) -> Result<VerifyReport> {
    let config = config.validated()?;
    let mut jobs = Vec::new();
    for &suite in &config.suites {
        match suite {
            Suite::Expansion | Suite::Qderiv | Suite::Qadd | Suite::Rubin | Suite::Zeta => {
                for q in &config.q_list {
                    for &a in &config.alpha_list {
                        jobs.push(Job::Table(suite, q.clone(), a));
                    }
                }
            }
            Suite::Convolution => {
                for q in &config.q_list {
                    for &a in &config.alpha_list {
                        for &b in &config.alpha_list {
                            jobs.push(Job::Convolution(q.clone(), a, b));
                        }
                    }
                }
            }
            Suite::Gamma => {
                for q in config.q_list.iter().filter(|q| **q < int(1)) {
                    for n in 0..=config.max_n {
                        jobs.push(Job::Gamma(q.clone(), n));
                    }
                }
            }
            Suite::Limits => jobs.push(Job::Limits),
        }
    }
    let max_n = config.max_n;
    let precision = config.precision;
    let chunks: Vec<Result<Vec<Record>>> = jobs
        .par_iter()
        .map(|job| match job {
            Job::Table(suite, q, a) => table_suite(*suite, q, *a, max_n),
            Job::Convolution(q, a, b) => convolution_suite(q, *a, *b, max_n),
            Job::Gamma(q, n) => gamma_suite(q, *n, precision),
            Job::Limits => limits_suite(precision),
        })
        .collect();
    let mut records = Vec::new();
    for chunk in chunks {
        records.extend(chunk?);
    }
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    let mut summary = Summary { total: records.len(), ..Summary::default() };
    for r in &records {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Reported => summary.reported += 1,
        }
    }
    Ok(VerifyReport { records, summary })
}

fn table_suite(suite: Suite, q: &Rational, alpha: u32, max_n: usize) -> Result<Vec<Record>> {
    let ctx = QContext::new(q.clone())?;
    let order = max_n.max(alpha as usize) + if suite == Suite::Zeta { alpha as usize } else { 0 };
    let table = GenocchiTable::new(&ctx, alpha, order)?;
    let a = Some(alpha);
    let mut out = Vec::new();
    for n in 0..=max_n {
        match suite {
            Suite::Expansion => {
                out.push(Record::exact(suite, q, a, n, "numbers", &expand_polynomial(&table, n), table.poly(n)));
            }
            Suite::Qderiv => {
                let lhs = jackson_derivative(&ctx, table.poly(n));
                let rhs = if n == 0 { QPolynomial::zero() } else { table.poly(n - 1).scale(&ctx.q_int(n as u64)) };
                out.push(Record::exact(suite, q, a, n, "recurrence", &lhs, &rhs));
            }
            Suite::Qadd => {
                let y = rational(1, 2);
                let lhs = q_add_shift_cauchy(&table, n, &y);
                let rhs = q_add_shift(&table, n, &y);
                out.push(Record::exact(suite, q, a, n, "y=1/2", &lhs, &rhs));
            }
            Suite::Rubin => out.extend(rubin_records(&ctx, &table, n)?),
            Suite::Zeta => {
                for x in [int(0), rational(1, 2), int(1)] {
                    let report = interpolation_check_with(&table, n as u32, &x)?;
                    let status = match (ctx.is_classical(), report.equal) {
                        (false, _) => Status::Reported,
                        (true, true) => Status::Pass,
                        (true, false) => Status::Fail,
                    };
                    let ratio = report.ratio.as_ref().map_or("undefined".to_string(), format_rational);
                    let variant = format!("x={}", format_rational(&x));
                    out.push(
                        Record::new(suite, q, a, n, variant, status, format_rational(&report.lhs), format_rational(&report.rhs))
                            .note(format!("ratio={ratio}")),
                    );
                }
            }
            _ => unreachable!("not a table suite"),
        }
    }
    Ok(out)
}

fn rubin_records(ctx: &QContext, table: &GenocchiTable, n: usize) -> Result<Vec<Record>> {
    let q = ctx.q();
    let a = Some(table.alpha());
    let suite = Suite::Rubin;
    if ctx.is_classical() {
        // the operator is the ordinary derivative at q = 1
        let lhs = rubin_derivative(ctx, table.poly(n));
        let rhs = table.poly(n).derivative();
        return Ok(vec![Record::exact(suite, q, a, n, "classical", &lhs, &rhs)]);
    }
    let check = rubin_on_genocchi(table, n)?;
    let corrected = Record::exact(suite, q, a, n, "corrected-sum", &check.corrected_sum, &check.operator);
    let split = Record::exact(suite, q, a, n, "even-odd-split", &check.even_odd_split, &check.operator);
    let printed = &check.printed_sum;
    let printed_sum = Record::new(
        suite,
        q,
        a,
        n,
        "printed-t",
        Status::Reported,
        format!("{} + ({})/x", printed.polynomial, format_rational(&printed.x_inverse)),
        &check.operator,
    )
    .note(if check.printed_sum_matches() { "matches" } else { "differs" });
    let printed_split = Record::new(suite, q, a, n, "printed-split", Status::Reported, &check.printed_split, &check.operator)
        .note(if check.printed_split_matches() { "matches" } else { "differs" });
    Ok(vec![corrected, split, printed_sum, printed_split])
}

fn convolution_suite(q: &Rational, alpha: u32, beta: u32, max_n: usize) -> Result<Vec<Record>> {
    let ctx = QContext::new(q.clone())?;
    let rows = order_convolution(&ctx, alpha, beta, max_n)?;
    Ok(rows
        .into_iter()
        .filter(|row| row.l <= max_n)
        .map(|row| Record::exact(Suite::Convolution, q, Some(alpha), row.l, &format!("beta={beta}"), &row.lhs, &row.rhs))
        .collect())
}

fn relative_record(suite: Suite, q: &Rational, n: usize, variant: &str, got: Result<f64>, want: f64, rel: f64) -> Record {
    match got {
        Ok(v) => {
            let ok = (v - want).abs() <= rel * want.abs();
            let status = if ok { Status::Pass } else { Status::Fail };
            Record::new(suite, q, None, n, variant, status, format!("{v:e}"), format!("{want:e}"))
                .note(format!("relative error {:.3e}, bound {rel:e}", (v - want).abs() / want.abs()))
        }
        Err(e) => Record::new(suite, q, None, n, variant, Status::Fail, e.name(), format!("{want:e}")).note(e.to_string()),
    }
}

fn gamma_suite(q: &Rational, n: usize, precision: usize) -> Result<Vec<Record>> {
    let ctx = QContext::new(q.clone())?;
    let fine = FloatContext::new(crate::real::Real::from_rational(q, precision + 32), precision, 1e-12)?;
    let coarse = FloatContext::new(fine.q().clone(), precision, GAMMA_TOL)?;
    let suite = Suite::Gamma;
    let mut out = Vec::new();

    let fact = to_f64(&ctx.q_factorial(n as u64));
    let got = qgamma_product(&fine, &fine.real(n as i64 + 1)).map(|e| e.to_f64());
    out.push(relative_record(suite, q, n, "factorial", got, fact, 1e-10));

    let x = fine.real_f64((n as f64 + 1.0) / 2.0);
    let fe = (|| -> Result<(f64, f64)> {
        let lhs = qgamma_product(&fine, &(&x + &fine.real(1)))?.value;
        let rhs = &fine.q_int(&x) * &qgamma_product(&fine, &x)?.value;
        Ok((lhs.to_f64(), rhs.to_f64()))
    })();
    out.push(match fe {
        Ok((l, r)) => relative_record(suite, q, n, "functional-equation", Ok(l), r, 1e-10),
        Err(e) => relative_record(suite, q, n, "functional-equation", Err(e), f64::NAN, 1e-10),
    });

    // representation agreement on x = (n+1)/2
    let x = coarse.real_f64((n as f64 + 1.0) / 2.0);
    let product = qgamma_product(&coarse, &x)?.to_f64();
    let agree = 10.0 * GAMMA_TOL;
    let finite = qgamma_integral(&coarse, &x, IntegralForm::Finite).map(|e| e.to_f64());
    out.push(relative_record(suite, q, n, "integral-finite", finite, product, agree));
    if lattice_condition_exact(&ctx).is_some() {
        let improper = qgamma_integral(&coarse, &x, IntegralForm::Improper).map(|e| e.to_f64());
        out.push(relative_record(suite, q, n, "integral-improper", improper, product, agree));
        let mero = qgamma_meromorphic(&coarse, &x).map(|e| e.to_f64());
        out.push(relative_record(suite, q, n, "meromorphic", mero, product, agree));

        let residue = to_f64(&qgamma_residue(&ctx, n as u64));
        let z = &fine.real(-(n as i64)) + &fine.real_f64(RESIDUE_EPS);
        let eps = fine.real_f64(RESIDUE_EPS);
        let limit = qgamma_meromorphic(&fine, &z).map(|g| (&fine.q_int(&eps) * &g.value).to_f64());
        out.push(relative_record(suite, q, n, "residue", limit, residue, RESIDUE_REL));
    }
    Ok(out)
}

fn limits_suite(precision: usize) -> Result<Vec<Record>> {
    let q = rational(LIMIT_Q.0, LIMIT_Q.1);
    let ctx = QContext::new(q.clone())?;
    let mut out = Vec::new();

    let table = GenocchiTable::new(&ctx, 1, LIMIT_RUBIN_MAX_N)?;
    let classical = classical::genocchi_polynomials(1, LIMIT_RUBIN_MAX_N);
    for n in 1..=LIMIT_RUBIN_MAX_N {
        let got = rubin_on_genocchi(&table, n)?.operator;
        let want = classical[n - 1].scale(&int(n as i64));
        let ok = coefficients_within(&got, &want, LIMIT_REL);
        let status = if ok { Status::Pass } else { Status::Fail };
        let approx: Vec<String> = got.coeffs().iter().map(|c| format!("{:.6}", to_f64(c))).collect();
        out.push(
            Record::new(Suite::Limits, &q, Some(1), n, "rubin", status, format!("[{}]", approx.join(", ")), &want)
                .note(format!("per-coefficient relative bound {LIMIT_REL:e}")),
        );
    }

    let fctx = FloatContext::new(crate::real::Real::from_rational(&q, precision + 32), precision, 1e-12)?;
    let mut fact = 1.0f64;
    for n in 1..=LIMIT_GAMMA_MAX_N {
        fact *= n as f64;
        let got = qgamma_product(&fctx, &fctx.real(n as i64 + 1)).map(|e| e.to_f64());
        out.push(relative_record(Suite::Limits, &q, n, "gamma", got, fact, LIMIT_REL));
    }
    Ok(out)
}
