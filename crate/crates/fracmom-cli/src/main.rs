//! `fracmom` — closed forms and numerical verification for the fractional
//! moments ∫₀¹ xᵏ f({1/x}) dx.
//!
//! Subcommands:
//! - `compute`: one moment, as a closed form (theorem/engine) or by a
//!   numerical oracle; JSON Lines or CSV output.
//! - `verify`: cross-check grids (closed form vs engine vs both oracles),
//!   exact identity suites, and the a_n/b_n sequence quadratures.
//! - `table`: write a grid of records to a file.
//!
//! Exit codes: 0 success; 1 unregistered verification failure; 2 invalid
//! flags; 3 precision unachievable; 4 I/O error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracmom::bernoulli::bernoulli_poly;
use fracmom::constants::{parse_decimal, Precision, Real};
use fracmom::error::Error as FmError;
use fracmom::exactmath::{Poly, Rational};
use fracmom::moments::{
    self, moment, moment_poly_generic, Discrepancy, IdentityId, IdentityStatus, MomentFamily,
    Source,
};
use fracmom::oracle::{self, LogGammaWeight};
use fracmom::registry;
use fracmom::symbolic::{a_seq, b_seq};
use serde::Serialize;
use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "fracmom",
    version,
    about = "Closed forms and high-precision verification for fractional moments"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one fractional moment.
    Compute(ComputeArgs),
    /// Run verification suites; exit 1 on unregistered failures.
    Verify(VerifyArgs),
    /// Write a grid of moments to a file.
    Table(TableArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Sine,
    Cosine,
    Bernoulli,
    Power,
    Sympower,
    Poly,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Theorem,
    Engine,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    /// JSON Lines (alias: json).
    #[value(alias = "json")]
    Jsonl,
    Csv,
}

#[derive(Args)]
struct ComputeArgs {
    /// Integrand family.
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Moment index k ≥ 0.
    #[arg(long)]
    k: u32,
    /// Power index m (power/sympower families).
    #[arg(long)]
    m: Option<u32>,
    /// Bernoulli-polynomial index n.
    #[arg(long)]
    n: Option<u32>,
    /// Comma-separated rational coefficients c0,c1,... for --family poly
    /// (each an integer or num/den).
    #[arg(long, value_delimiter = ',')]
    coeffs: Option<Vec<String>>,
    /// Decimal digits of the printed value.
    #[arg(long, env = "FRACMOM_PRECISION", default_value_t = 30)]
    precision: u32,
    /// How to produce the value.
    #[arg(long, value_enum, default_value = "theorem")]
    method: MethodArg,
    /// Output format.
    #[arg(long, value_enum, default_value = "jsonl")]
    format: FormatArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest m (and Bernoulli n) in the grids.
    #[arg(long, default_value_t = 6)]
    max_m: u32,
    /// Largest k in the grids.
    #[arg(long, default_value_t = 12)]
    max_k: u32,
    /// Comparison tolerance, e.g. 1e-10.
    #[arg(long, default_value = "1e-10")]
    tol: String,
    /// Decimal digits of working precision.
    #[arg(long, env = "FRACMOM_PRECISION", default_value_t = 30)]
    precision: u32,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Inclusive family-index range, e.g. 1..3 (power m, sympower m,
    /// bernoulli n).
    #[arg(long, default_value = "1..3")]
    m_range: String,
    /// Inclusive k range, e.g. 0..6.
    #[arg(long, default_value = "0..6")]
    k_range: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Output path.
    #[arg(long)]
    out: std::path::PathBuf,
    #[arg(long, env = "FRACMOM_PRECISION", default_value_t = 30)]
    precision: u32,
}

/// One emitted row; the JSON Lines schema of `compute` and `table`.
#[derive(Serialize)]
struct OutputRecord {
    family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    k: u32,
    symbolic: String,
    value: String,
    precision: u32,
    method: String,
    regime: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancy: Option<Discrepancy>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Compute(args) => cmd_compute(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Table(args) => cmd_table(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::BadArgs(_) => ExitCode::from(2),
                CliError::Precision(_) => ExitCode::from(3),
                CliError::Io(_) => ExitCode::from(4),
            }
        }
    }
}

#[derive(Debug)]
enum CliError {
    BadArgs(String),
    Precision(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::BadArgs(m) => write!(f, "{m}"),
            CliError::Precision(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<FmError> for CliError {
    fn from(e: FmError) -> Self {
        match e {
            FmError::PrecisionUnachievable(m) => CliError::Precision(m),
            FmError::UnsupportedArgument(m) | FmError::Domain(m) => CliError::BadArgs(m),
        }
    }
}

fn parse_family(
    family: FamilyArg,
    m: Option<u32>,
    n: Option<u32>,
    coeffs: Option<&[String]>,
) -> Result<MomentFamily, CliError> {
    match family {
        FamilyArg::Sine => Ok(MomentFamily::Sine),
        FamilyArg::Cosine => Ok(MomentFamily::Cosine),
        FamilyArg::Bernoulli => {
            let n = n.ok_or_else(|| CliError::BadArgs("--family bernoulli needs --n".into()))?;
            Ok(MomentFamily::BernoulliPoly(n))
        }
        FamilyArg::Power => {
            let m = m.ok_or_else(|| CliError::BadArgs("--family power needs --m".into()))?;
            if m < 1 {
                return Err(CliError::BadArgs("power family needs m >= 1".into()));
            }
            Ok(MomentFamily::Power(m))
        }
        FamilyArg::Sympower => {
            let m = m.ok_or_else(|| CliError::BadArgs("--family sympower needs --m".into()))?;
            if m < 1 {
                return Err(CliError::BadArgs("sympower family needs m >= 1".into()));
            }
            Ok(MomentFamily::SymPower(m))
        }
        FamilyArg::Poly => {
            let cs = coeffs
                .ok_or_else(|| CliError::BadArgs("--family poly needs --coeffs".into()))?;
            let parsed: Result<Vec<Rational>, _> = cs
                .iter()
                .map(|s| {
                    Rational::from_str(s.trim())
                        .map_err(|_| CliError::BadArgs(format!("bad rational coefficient {s:?}")))
                })
                .collect();
            Ok(MomentFamily::GenericPoly(Poly::from_coeffs(parsed?)))
        }
    }
}

fn family_indices(f: &MomentFamily) -> (Option<u32>, Option<u32>) {
    match f {
        MomentFamily::Power(m) | MomentFamily::SymPower(m) => (Some(*m), None),
        MomentFamily::BernoulliPoly(n) => (None, Some(*n)),
        _ => (None, None),
    }
}

fn build_record(
    f: &MomentFamily,
    k: u32,
    precision: u32,
    method: MethodArg,
) -> Result<OutputRecord, CliError> {
    let prec = Precision::new(precision);
    let (m, n) = family_indices(f);
    let rec = match method {
        MethodArg::Theorem => {
            let r = moment(f, k);
            let value = r.value.eval(prec)?;
            OutputRecord {
                family: f.label(),
                m,
                n,
                k,
                symbolic: r.value.to_string(),
                value: value.to_decimal(precision),
                precision,
                method: match r.source {
                    Source::Theorem => "theorem".into(),
                    Source::Engine => "engine".into(),
                },
                regime: r.regime,
                discrepancy: r.discrepancy,
            }
        }
        MethodArg::Engine => {
            let p = f.poly().ok_or_else(|| {
                CliError::BadArgs("the engine handles polynomial families only".into())
            })?;
            let v = moment_poly_generic(&p, k);
            let value = v.eval(prec)?;
            OutputRecord {
                family: f.label(),
                m,
                n,
                k,
                symbolic: v.to_string(),
                value: value.to_decimal(precision),
                precision,
                method: "engine".into(),
                regime: "engine".into(),
                discrepancy: None,
            }
        }
        MethodArg::Oracle => {
            let r = oracle::oracle_interval_series(f, k, prec)?;
            OutputRecord {
                family: f.label(),
                m,
                n,
                k,
                symbolic: String::new(),
                value: r.value.to_decimal(precision),
                precision,
                method: "oracle".into(),
                regime: format!(
                    "oracle:interval-series(order={},J={},T={})",
                    r.params.order, r.params.intervals, r.params.tail_terms
                ),
                discrepancy: None,
            }
        }
    };
    Ok(rec)
}

fn write_records<W: Write>(
    out: &mut W,
    records: &[OutputRecord],
    format: FormatArg,
) -> Result<(), CliError> {
    match format {
        FormatArg::Jsonl => {
            for r in records {
                serde_json::to_writer(&mut *out, r).map_err(std::io::Error::from)?;
                writeln!(out)?;
            }
        }
        FormatArg::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "family",
                "m",
                "n",
                "k",
                "symbolic",
                "value",
                "precision",
                "method",
                "regime",
                "discrepancy",
            ])
            .map_err(csv_io)?;
            for r in records {
                let disc = r
                    .discrepancy
                    .as_ref()
                    .map(|d| serde_json::to_string(d).unwrap_or_default())
                    .unwrap_or_default();
                w.write_record([
                    r.family.as_str(),
                    &r.m.map(|v| v.to_string()).unwrap_or_default(),
                    &r.n.map(|v| v.to_string()).unwrap_or_default(),
                    &r.k.to_string(),
                    r.symbolic.as_str(),
                    r.value.as_str(),
                    &r.precision.to_string(),
                    r.method.as_str(),
                    r.regime.as_str(),
                    &disc,
                ])
                .map_err(csv_io)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn csv_io(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

fn cmd_compute(args: ComputeArgs) -> Result<ExitCode, CliError> {
    let family = parse_family(args.family, args.m, args.n, args.coeffs.as_deref())?;
    let rec = build_record(&family, args.k, args.precision, args.method)?;
    let mut stdout = std::io::stdout().lock();
    write_records(&mut stdout, &[rec], args.format)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_range(s: &str) -> Result<(u32, u32), CliError> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| CliError::BadArgs(format!("bad range {s:?}, expected A..B")))?;
    let lo: u32 = a
        .trim()
        .parse()
        .map_err(|_| CliError::BadArgs(format!("bad range start {a:?}")))?;
    let hi: u32 = b
        .trim()
        .parse()
        .map_err(|_| CliError::BadArgs(format!("bad range end {b:?}")))?;
    if hi < lo {
        return Err(CliError::BadArgs(format!("empty range {s:?}")));
    }
    Ok((lo, hi))
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, CliError> {
    let (m_lo, m_hi) = parse_range(&args.m_range)?;
    let (k_lo, k_hi) = parse_range(&args.k_range)?;
    let mut records = Vec::new();
    for m in m_lo..=m_hi {
        for k in k_lo..=k_hi {
            let family = match args.family {
                FamilyArg::Sine => MomentFamily::Sine,
                FamilyArg::Cosine => MomentFamily::Cosine,
                FamilyArg::Bernoulli => MomentFamily::BernoulliPoly(m),
                FamilyArg::Power => MomentFamily::Power(m),
                FamilyArg::Sympower => MomentFamily::SymPower(m),
                FamilyArg::Poly => {
                    return Err(CliError::BadArgs(
                        "table does not support the generic poly family".into(),
                    ))
                }
            };
            records.push(build_record(&family, k, args.precision, MethodArg::Theorem)?);
        }
        // the trig families have no m index; one sweep over k is the grid
        if matches!(args.family, FamilyArg::Sine | FamilyArg::Cosine) {
            break;
        }
    }
    let file = std::fs::File::create(&args.out)?;
    let mut w = std::io::BufWriter::new(file);
    write_records(&mut w, &records, args.format)?;
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SequenceRecord {
    sequence: String,
    n: u32,
    symbolic: String,
    closed_value: String,
    quadrature_value: String,
    quadrature_bound: String,
    abs_diff: String,
    pass: bool,
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let prec = Precision::new(args.precision);
    let bits = prec.working_bits();
    let tol_q = parse_decimal(&args.tol)
        .map_err(|_| CliError::BadArgs(format!("bad tolerance {:?}", args.tol)))?;
    let tol = Real::from_rational(&tol_q, bits);
    let mut stdout = std::io::stdout().lock();
    let mut all_ok = true;
    let reg = registry::known_discrepancies();

    let run_identities = |out: &mut dyn Write, ok: &mut bool| -> Result<(), CliError> {
        for id in [IdentityId::FactorialRatioSums, IdentityId::AlternatingBinomialSums, IdentityId::PSumEvaluations] {
            let rep = moments::identity_suite(id, args.max_m);
            if !matches!(rep.status, IdentityStatus::AllExact) {
                *ok = false;
            }
            serde_json::to_writer(&mut *out, &rep).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        // polynomial-identity checks: the xᵐ(1-x)ᵐ expansion and the two
        // shifted-Legendre constructions
        let mut expansion_ok = true;
        for m in 1..=args.max_m.min(20) {
            if fracmom::bernoulli::expand_sympower(m).to_poly() != Poly::sympower(m) {
                expansion_ok = false;
            }
        }
        for m in 0..=args.max_m.min(15) {
            if fracmom::bernoulli::shifted_legendre(m)
                != fracmom::bernoulli::shifted_legendre_bernoulli_form(m).to_poly()
            {
                expansion_ok = false;
            }
        }
        if !expansion_ok {
            *ok = false;
        }
        serde_json::to_writer(
            &mut *out,
            &serde_json::json!({
                "id": "bernoulli-basis-expansions",
                "range": format!("sympower m <= {}, legendre m <= {}",
                                 args.max_m.min(20), args.max_m.min(15)),
                "status": if expansion_ok { "all-exact" } else { "failure" },
            }),
        )
        .map_err(std::io::Error::from)?;
        writeln!(out)?;
        Ok(())
    };

    let run_moments = |out: &mut dyn Write, ok: &mut bool| -> Result<(), CliError> {
        let mut families = Vec::new();
        for m in 1..=args.max_m {
            families.push(MomentFamily::Power(m));
            families.push(MomentFamily::BernoulliPoly(m));
            families.push(MomentFamily::SymPower(m));
        }
        families.push(MomentFamily::Sine);
        families.push(MomentFamily::Cosine);
        for f in &families {
            let k_hi = match f {
                MomentFamily::Sine | MomentFamily::Cosine => args.max_k.min(7),
                _ => args.max_k,
            };
            for k in 0..=k_hi {
                let rep = oracle::cross_check(f, k, prec, &tol)?;
                if !rep.pass && !registry::is_registered(&reg, &rep.family, &rep.regime) {
                    *ok = false;
                }
                serde_json::to_writer(&mut *out, &rep).map_err(std::io::Error::from)?;
                writeln!(out)?;
            }
        }
        Ok(())
    };

    let run_sequences = |out: &mut dyn Write, ok: &mut bool| -> Result<(), CliError> {
        for n in 0..=args.max_m {
            let bn = bernoulli_poly(n);
            for (name, sym, quad) in [
                (
                    "a",
                    a_seq(n),
                    oracle::loggamma_quadrature_at_zero(&bn, prec)?,
                ),
                (
                    "b",
                    b_seq(n),
                    oracle::loggamma_quadrature(&LogGammaWeight::Poly(bn.clone()), prec)?,
                ),
            ] {
                let closed = sym.eval(prec)?;
                let diff = closed.sub(&quad.0).abs();
                let pass = diff.le(&tol);
                if !pass {
                    *ok = false;
                }
                let rec = SequenceRecord {
                    sequence: name.into(),
                    n,
                    symbolic: sym.to_string(),
                    closed_value: closed.to_decimal(args.precision),
                    quadrature_value: quad.0.to_decimal(args.precision),
                    quadrature_bound: quad.1.to_decimal(args.precision + 4),
                    abs_diff: diff.to_decimal(args.precision + 4),
                    pass,
                };
                serde_json::to_writer(&mut *out, &rec).map_err(std::io::Error::from)?;
                writeln!(out)?;
            }
        }
        Ok(())
    };

    match args.suite.as_str() {
        "identities" => run_identities(&mut stdout, &mut all_ok)?,
        "moments" => run_moments(&mut stdout, &mut all_ok)?,
        "sequences" => run_sequences(&mut stdout, &mut all_ok)?,
        "all" => {
            run_identities(&mut stdout, &mut all_ok)?;
            run_moments(&mut stdout, &mut all_ok)?;
            run_sequences(&mut stdout, &mut all_ok)?;
        }
        other => {
            return Err(CliError::BadArgs(format!(
                "unknown suite {other:?}; expected all|identities|moments|sequences"
            )))
        }
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
