//! `qgen`: q-Genocchi tables, q-Gamma and q-zeta evaluation, and the
//! verification runner.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or
//! configuration error, 3 invalid `q` or a domain error (pole, divergence).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use qgenocchi::qcore::{format_rational, parse_rational};
use qgenocchi::qgamma::{qgamma_integral, qgamma_meromorphic, qgamma_product, IntegralForm};
use qgenocchi::qzeta::{interpolation_check, qzeta_numeric};
use qgenocchi::real::precision_from_env;
use qgenocchi::{Error, FloatContext, GammaMethod, GenocchiTable, TableJson, QContext, Rational, Real, Suite, VerifyConfig};

#[derive(Parser)]
#[command(name = "qgen", version, about = "Higher-order q-Genocchi polynomials and q-special functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate G_0..G_N of order alpha at rational q.
    Genocchi(GenocchiArgs),
    /// Evaluate the q-Gamma function.
    Gamma(GammaArgs),
    /// Evaluate the q-Hurwitz-type zeta function.
    Zeta(ZetaArgs),
    /// Run the verification suites and write a JSON report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct GenocchiArgs {
    #[arg(long)]
    alpha: u32,
    /// Largest index N.
    #[arg(long)]
    order: usize,
    /// Rational q as "p/r", 0 < q <= 1.
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also evaluate every polynomial at this rational point.
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Finite,
    Improper,
}

#[derive(Args)]
struct GammaArgs {
    /// Decimal q, 0 < q < 1.
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, default_value = "product")]
    method: String,
    /// Which Jackson integral the integral method uses.
    #[arg(long, value_enum, default_value = "improper")]
    form: Form,
    /// Working precision in bits; defaults to QGEN_PRECISION_BITS or 128.
    #[arg(long)]
    prec: Option<usize>,
    #[arg(long, default_value_t = 1e-20)]
    tol: f64,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("point").required(true).args(["neg_n", "z"]))]
struct ZetaArgs {
    /// Rational with --neg-n, decimal with --z.
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, default_value_t = 1)]
    alpha: u32,
    /// Exact regularized value at z = -n, with the interpolation check.
    #[arg(long)]
    neg_n: Option<u32>,
    /// Numeric value at real z > 0.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long)]
    prec: Option<usize>,
    #[arg(long, default_value_t = 1e-20)]
    tol: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated subset of expansion,qderiv,qadd,convolution,rubin,gamma,zeta,limits.
    #[arg(long, value_delimiter = ',', default_value = "expansion,qderiv,qadd,convolution,rubin,gamma,zeta,limits")]
    suites: Vec<String>,
    #[arg(long = "q", value_delimiter = ',', default_value = "1/2,2/3,1")]
    q_list: Vec<String>,
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    #[arg(long = "alpha", value_delimiter = ',', default_value = "1,2")]
    alpha_list: Vec<u32>,
    #[arg(long)]
    prec: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let code = match error {
            Error::InvalidArgument(_) | Error::Parse(_) => 2,
            _ => 3,
        };
        Failure { code, error }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, error: Error::InvalidArgument(msg.into()) }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure { code: 2, error: Error::InvalidArgument(e.to_string()) }
}

type CmdResult = Result<u8, Failure>;

fn parse_q(s: &str) -> Result<QContext, Failure> {
    let q = parse_rational(s).map_err(|_| Error::InvalidQ(s.to_string()))?;
    Ok(QContext::new(q)?)
}

fn parse_point(s: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(s)?)
}

fn precision(flag: Option<usize>) -> Result<usize, Failure> {
    match flag {
        Some(p) => Ok(p),
        None => Ok(precision_from_env()?),
    }
}

fn float_context(q: &str, prec: usize, tol: f64, closed: bool) -> Result<FloatContext, Failure> {
    let qr = Real::parse(q, prec.max(qgenocchi::real::MIN_PRECISION_BITS) + 32).map_err(|_| Error::InvalidQ(q.to_string()))?;
    let ctx = if closed { FloatContext::new_closed(qr, prec, tol) } else { FloatContext::new(qr, prec, tol) };
    ctx.map_err(|e| match e {
        Error::InvalidArgument(_) => usage(e.to_string()),
        other => other.into(),
    })
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(io_failure),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(io_failure)
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct TableOutput {
    #[serde(flatten)]
    table: TableJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<String>>,
}

#[derive(Serialize)]
struct GammaOutput<'a> {
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    form: Option<&'static str>,
    q: &'a str,
    x: &'a str,
    value: String,
    approx: f64,
    terms: usize,
    tail_bound: f64,
    tol: f64,
    precision: usize,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct ZetaOutput<'a> {
    q: &'a str,
    z: &'a str,
    x: &'a str,
    alpha: u32,
    value: String,
    approx: f64,
    tol: f64,
    precision: usize,
}

fn cmd_genocchi(args: GenocchiArgs) -> CmdResult {
    let ctx = parse_q(&args.q)?;
    let table = GenocchiTable::new(&ctx, args.alpha, args.order)?;
    let x = args.x.as_deref().map(parse_point).transpose()?;
    let values: Option<Vec<String>> =
        x.as_ref().map(|x| table.polys().iter().map(|p| format_rational(&p.eval(x))).collect());
    let text = match args.format {
        Format::Json => json_line(&TableOutput {
            table: table.to_json(),
            x: x.as_ref().map(format_rational),
            values,
        }),
        Format::Csv => {
            let width = table.order() + 1;
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["n".to_string()];
            header.extend((0..width).map(|k| format!("c{k}")));
            if values.is_some() {
                header.push("value".into());
            }
            w.write_record(&header).map_err(|e| usage(e.to_string()))?;
            for (n, p) in table.polys().iter().enumerate() {
                let mut row = vec![n.to_string()];
                row.extend((0..width).map(|k| format_rational(&p.coeff(k))));
                if let Some(values) = &values {
                    row.push(values[n].clone());
                }
                w.write_record(&row).map_err(|e| usage(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| usage(e.to_string()))?).expect("utf-8")
        }
    };
    emit(args.out.as_ref(), &text)?;
    Ok(0)
}

fn cmd_gamma(args: GammaArgs) -> CmdResult {
    let method: GammaMethod = args.method.parse().map_err(|_| usage(format!("unknown method '{}'", args.method)))?;
    let prec = precision(args.prec)?;
    let fctx = float_context(&args.q, prec, args.tol, false)?;
    let x = Real::parse(&args.x, fctx.work_prec())?;
    let (ev, form) = match method {
        GammaMethod::Product => (qgamma_product(&fctx, &x)?, None),
        GammaMethod::Meromorphic => (qgamma_meromorphic(&fctx, &x)?, None),
        GammaMethod::Integral => {
            let (f, name) = match args.form {
                Form::Finite => (IntegralForm::Finite, "finite"),
                Form::Improper => (IntegralForm::Improper, "improper"),
            };
            (qgamma_integral(&fctx, &x, f)?, Some(name))
        }
    };
    let out = GammaOutput {
        method: method.name(),
        form,
        q: &args.q,
        x: &args.x,
        value: ev.value.to_decimal(),
        approx: ev.to_f64(),
        terms: ev.terms,
        tail_bound: ev.tail_bound,
        tol: args.tol,
        precision: prec,
        warnings: ev.warnings,
    };
    emit(None, &json_line(&out))?;
    Ok(0)
}

fn cmd_zeta(args: ZetaArgs) -> CmdResult {
    if let Some(n) = args.neg_n {
        let ctx = parse_q(&args.q)?;
        let x = parse_point(&args.x)?;
        let report = interpolation_check(&ctx, n, &x, args.alpha)?;
        emit(None, &json_line(&report))?;
        return Ok(0);
    }
    let z_str = args.z.expect("clap enforces --neg-n or --z");
    let prec = precision(args.prec)?;
    let fctx = float_context(&args.q, prec, args.tol, true)?;
    let z = Real::parse(&z_str, fctx.work_prec())?;
    let x = Real::parse(&args.x, fctx.work_prec())?;
    let value = qzeta_numeric(&fctx, &z, &x, args.alpha)?;
    let out = ZetaOutput {
        q: &args.q,
        z: &z_str,
        x: &args.x,
        alpha: args.alpha,
        value: value.to_decimal(),
        approx: value.to_f64(),
        tol: args.tol,
        precision: prec,
    };
    emit(None, &json_line(&out))?;
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let suites = args
        .suites
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Suite>())
        .collect::<Result<Vec<_>, _>>()?;
    let q_list = args
        .q_list
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_rational(s).map_err(|_| usage(format!("invalid q '{s}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    let config = VerifyConfig {
        suites,
        q_list,
        max_n: args.max_n,
        alpha_list: args.alpha_list,
        precision: precision(args.prec)?,
    };
    // every configuration problem is a usage error here, including q out of range
    let report = qgenocchi::verify::run(config).map_err(|error| Failure { code: 2, error })?;
    let mut text = serde_json::to_string_pretty(&report).expect("serializable");
    text.push('\n');
    emit(args.out.as_ref(), &text)?;
    let s = &report.summary;
    eprintln!("{} checks: {} pass, {} fail, {} reported", s.total, s.pass, s.fail, s.reported);
    for r in report.failures() {
        eprintln!("FAIL {} q={} alpha={:?} n={} {}: {} vs {}", r.suite, r.q, r.alpha, r.n, r.variant, r.lhs, r.rhs);
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Genocchi(a) => cmd_genocchi(a),
        Command::Gamma(a) => cmd_gamma(a),
        Command::Zeta(a) => cmd_zeta(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            println!("{}", json!({ "error": f.error.name(), "message": f.error.to_string() }));
            ExitCode::from(f.code)
        }
    }
}
