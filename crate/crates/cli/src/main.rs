//! Command-line front end.
//!
//! Exit codes: 0 success, 1 check failure (or runtime limits), 2 cross-route
//! or expected-value mismatch, 64 usage errors (bad flags or parameters
//! outside T > G > 1).

mod checks;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::Signed;

use checks::VerifyConfig;
use output::Format;
use pdwbc_core::asymptotics::{
    c_of_m, finite_size_free_energy, free_energy, theorem_check, theorem_check_float,
};
use pdwbc_core::ik::z_det;
use pdwbc_core::lattice::partition_transfer;
use pdwbc_core::orthopoly::z_op;
use pdwbc_core::report::{CheckResult, ReportParams, RunReport};
use pdwbc_core::scalar::bigfloat::BigFloat;
use pdwbc_core::scalar::rational::{format_rational, parse_rational, Rational};
use pdwbc_core::{Error, ModelParams};

const EXIT_CHECK_FAILURE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "pdwbc",
    version,
    about = "Exact six-vertex partition functions with partial domain wall boundaries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Z by the requested route(s); `--route all` demands exact agreement
    Z(ZArgs),
    /// Run the named verification checks (all of them by default)
    Verify(VerifyArgs),
    /// Tabulate Z against its asymptotic form over a range of n
    Sweep(SweepArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// T = e^t as an exact fraction "p/q"
    #[arg(long = "T", value_name = "FRAC", default_value = "2/1")]
    t: String,
    /// G = e^gamma as an exact fraction "p/q"; requires T > G > 1
    #[arg(long = "G", value_name = "FRAC", default_value = "5/4")]
    g: String,
    /// Float precision in bits (>= 64); overrides the PDWBC_PRECISION env var
    #[arg(long)]
    precision: Option<u32>,
    /// Report format
    #[arg(long, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<String>,
}

#[derive(Args)]
struct ZArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// transfer | determinant | orthopoly | all
    #[arg(long, default_value = "all")]
    route: Route,
    /// Exact fraction the result must equal (regression guard; exit 2 on mismatch)
    #[arg(long, value_name = "FRAC")]
    expect: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Route {
    Transfer,
    Determinant,
    Orthopoly,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Restrict to named checks (repeatable); see --list-checks
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Print the known check names and exit
    #[arg(long)]
    list_checks: bool,
    /// Size cap for enumeration-backed checks
    #[arg(long, visible_alias = "n", default_value_t = 4)]
    n_max: usize,
    /// Toda finite-difference step: a fraction "p/q" or scientific "1e-4"
    #[arg(long, default_value = "1/10000")]
    eps: String,
    /// Seed for the randomized checks
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Inclusive range of n, e.g. "6..14"
    #[arg(long = "n-range", value_name = "LO..HI")]
    n_range: String,
    /// m per n: "half", "fixed:K", or "ratio:p/q"
    #[arg(long = "m-rule", default_value = "half")]
    m_rule: String,
    /// Envelope exponent eps in rho^m e^{-n^(1-eps)}
    #[arg(long = "envelope-eps", default_value_t = 0.5)]
    envelope_eps: f64,
    /// exact: bit-exact rational pipeline; bigfloat: float norms for large n
    #[arg(long, default_value = "exact")]
    backend: Backend,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Backend {
    Exact,
    Bigfloat,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful exits; everything else is usage.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let outcome = match cli.command {
        Command::Z(args) => cmd_z(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Domain(_) | Error::Size(_) => EXIT_USAGE,
                Error::Inconsistency(_) => EXIT_MISMATCH,
                Error::Resource(_) | Error::Singular(_) | Error::Precision { .. } => {
                    EXIT_CHECK_FAILURE
                }
            })
        }
    }
}

struct Session {
    params: ModelParams,
    precision: u32,
    format: Format,
    output: Option<String>,
    t_text: String,
    g_text: String,
}

fn session(common: &CommonArgs) -> Result<Session, Error> {
    let t = parse_rational(&common.t)?;
    let g = parse_rational(&common.g)?;
    let params = ModelParams::new(t, g)?;
    let precision = match common.precision {
        Some(p) => p,
        None => match std::env::var("PDWBC_PRECISION") {
            Ok(text) => text
                .parse()
                .map_err(|_| Error::Domain(format!("PDWBC_PRECISION='{text}' is not a bit count")))?,
            Err(_) => pdwbc_core::scalar::DEFAULT_PRECISION,
        },
    };
    if precision < 64 {
        return Err(Error::Domain(format!("precision must be at least 64 bits, got {precision}")));
    }
    Ok(Session {
        params,
        precision,
        format: common.format,
        output: common.output.clone(),
        t_text: common.t.clone(),
        g_text: common.g.clone(),
    })
}

impl Session {
    fn report(&self, command: &str, n: Option<u64>, m: Option<u64>, results: Vec<CheckResult>) -> RunReport {
        RunReport {
            command: command.into(),
            params: ReportParams { t: self.t_text.clone(), g: self.g_text.clone(), n, m },
            results,
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }

    fn emit(&self, report: &RunReport) -> Result<(), Error> {
        let text = output::render(report, self.format);
        output::emit(&text, self.output.as_deref())
            .map_err(|e| Error::Resource(format!("cannot write report: {e}")))
    }

    fn decimal(&self, value: &Rational) -> String {
        BigFloat::from_rational(value, self.precision.max(64)).to_decimal_string(24)
    }
}

fn cmd_z(args: ZArgs) -> Result<ExitCode, Error> {
    let session = session(&args.common)?;
    let p = &session.params;
    if args.m >= args.n {
        return Err(Error::Size(format!("need 0 <= m < n, got m = {}, n = {}", args.m, args.n)));
    }
    let mut values: Vec<(&str, Rational)> = Vec::new();
    let want = |r: Route| args.route == r || args.route == Route::All;
    if want(Route::Transfer) {
        values.push(("transfer", partition_transfer(args.n, args.m, &p.weights())?));
    }
    if want(Route::Determinant) {
        values.push(("determinant", z_det(args.n, args.m, p)?));
    }
    if want(Route::Orthopoly) {
        values.push(("orthopoly", z_op(args.n, args.m, p)?));
    }

    let mut results = Vec::new();
    let mut mismatch = false;
    let reference = values[0].1.clone();
    for (route, value) in &values {
        let agrees = value == &reference;
        mismatch |= !agrees;
        results.push(if agrees {
            CheckResult::ok(format!("Z[{route}]"), format_rational(value), session.decimal(value))
        } else {
            CheckResult::fail(
                format!("Z[{route}]"),
                format_rational(value),
                format!("disagrees with {} = {}", values[0].0, format_rational(&reference)),
            )
        });
    }
    if let Some(expect_text) = &args.expect {
        let expected = parse_rational(expect_text)?;
        let agrees = expected == reference;
        mismatch |= !agrees;
        results.push(if agrees {
            CheckResult::ok("Z[expected]", format_rational(&expected), "matches the computed value".to_string())
        } else {
            CheckResult::fail(
                "Z[expected]",
                format_rational(&expected),
                format!("computed value is {}", format_rational(&reference)),
            )
        });
    }
    let report = session.report("z", Some(args.n as u64), Some(args.m as u64), results);
    session.emit(&report)?;
    Ok(if mismatch { ExitCode::from(EXIT_MISMATCH) } else { ExitCode::SUCCESS })
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    if args.list_checks {
        println!("{}", checks::check_names().join("\n"));
        return Ok(ExitCode::SUCCESS);
    }
    let session = session(&args.common)?;
    for name in &args.checks {
        if !checks::check_names().contains(&name.as_str()) {
            return Err(Error::Domain(format!(
                "unknown check '{name}'; known checks: {}",
                checks::check_names().join(", ")
            )));
        }
    }
    if args.n_max == 0 || args.n_max > pdwbc_core::lattice::MAX_ENUM_N {
        return Err(Error::Size(format!(
            "n_max must lie in 1..={}, got {}",
            pdwbc_core::lattice::MAX_ENUM_N,
            args.n_max
        )));
    }
    let eps = parse_eps(&args.eps)?;
    if !eps.is_positive() {
        return Err(Error::Domain("eps must be positive".into()));
    }
    let config = VerifyConfig {
        params: session.params.clone(),
        n_max: args.n_max,
        eps,
        seed: args.seed,
        precision: session.precision,
    };
    let results = checks::run_checks(&config, &args.checks)?;
    let failing: Vec<String> = results
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.name.clone())
        .collect();
    let report = session.report("verify", None, None, results);
    session.emit(&report)?;
    if failing.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("failing checks: {}", failing.join(", "));
        Ok(ExitCode::from(EXIT_CHECK_FAILURE))
    }
}

/// A step knob: an exact fraction, or scientific/decimal notation mapped to
/// the exact dyadic value of the f64.
fn parse_eps(text: &str) -> Result<Rational, Error> {
    if let Ok(r) = parse_rational(text) {
        return Ok(r);
    }
    text.parse::<f64>()
        .ok()
        .and_then(pdwbc_core::scalar::rational::rational_from_f64)
        .ok_or_else(|| Error::Domain(format!("cannot parse eps '{text}'")))
}

enum MRule {
    Half,
    Fixed(usize),
    Ratio(Rational),
}

fn parse_m_rule(text: &str) -> Result<MRule, Error> {
    if text == "half" {
        return Ok(MRule::Half);
    }
    if let Some(k) = text.strip_prefix("fixed:") {
        return k
            .parse()
            .map(MRule::Fixed)
            .map_err(|_| Error::Domain(format!("bad fixed m in '{text}'")));
    }
    if let Some(r) = text.strip_prefix("ratio:") {
        let ratio = parse_rational(r)?;
        if ratio.is_negative() {
            return Err(Error::Domain("m ratio must be nonnegative".into()));
        }
        return Ok(MRule::Ratio(ratio));
    }
    Err(Error::Domain(format!("bad m-rule '{text}' (want half, fixed:K, or ratio:p/q)")))
}

fn parse_range(text: &str) -> Result<(usize, usize), Error> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| Error::Domain(format!("bad range '{text}' (want LO..HI, inclusive)")))?;
    let lo = lo.trim().parse().map_err(|_| Error::Domain(format!("bad range start in '{text}'")))?;
    let hi = hi.trim().parse().map_err(|_| Error::Domain(format!("bad range end in '{text}'")))?;
    Ok((lo, hi))
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, Error> {
    let session = session(&args.common)?;
    let p = &session.params;
    let (lo, hi) = parse_range(&args.n_range)?;
    let rule = parse_m_rule(&args.m_rule)?;

    let mut rows: Vec<(usize, usize)> = Vec::new();
    for n in lo..=hi {
        let m = match &rule {
            MRule::Half => n / 2,
            MRule::Fixed(k) => *k,
            MRule::Ratio(r) => {
                let scaled = r * Rational::from_integer((n as i64).into())
                    + Rational::new(1.into(), 2.into());
                scaled.floor().to_integer().try_into().unwrap_or(usize::MAX)
            }
        };
        if m < n {
            rows.push((n, m));
        }
    }
    rows.sort_unstable();

    let mut results = Vec::new();
    let mut csv = String::new();
    csv.push_str(&output::csv_row(&[
        "n", "m", "Z", "Z_meixner", "C_m", "xi", "envelope", "free_energy", "free_energy_limit",
    ]));
    csv.push_str("\r\n");
    for (n, m) in &rows {
        let r = Rational::new(((*n - *m) as i64).into(), (*n as i64).into());
        let fe_limit = free_energy(&r, p, session.precision)?;
        // (Z, Z_meixner) as fraction strings in exact mode, decimals in the
        // float backend; everything downstream of them is diagnostic.
        let (z_text, zm_text, xi_text, envelope_text, fe) = match args.backend {
            Backend::Exact => {
                let report = theorem_check(*n, *m, p, args.envelope_eps, 10.0, session.precision)?;
                let fe = finite_size_free_energy(*n, *m, p, session.precision)?;
                let xi = BigFloat::from_rational(&report.xi_exact, session.precision);
                (
                    format_rational(&report.z_exact),
                    format_rational(&report.z_meixner),
                    xi.to_decimal_string(12),
                    report.envelope.to_decimal_string(6),
                    fe,
                )
            }
            Backend::Bigfloat => {
                let report =
                    theorem_check_float(*n, *m, p, args.envelope_eps, 10.0, session.precision)?;
                let fe = report
                    .z
                    .ln()?
                    .div(&BigFloat::from_i64((*n * (*n - *m)) as i64));
                (
                    report.z.to_decimal_string(24),
                    report.z_meixner.to_decimal_string(24),
                    report.xi.to_decimal_string(12),
                    report.envelope.to_decimal_string(6),
                    fe,
                )
            }
        };
        csv.push_str(&output::csv_row(&[
            &n.to_string(),
            &m.to_string(),
            &z_text,
            &zm_text,
            &format_rational(&c_of_m(*m, p)),
            &xi_text,
            &envelope_text,
            &fe.to_decimal_string(12),
            &fe_limit.to_decimal_string(12),
        ]));
        csv.push_str("\r\n");
        results.push(CheckResult::info(
            format!("sweep[n={n},m={m}]"),
            z_text,
            format!(
                "Z_meixner={zm_text};C_m={};xi={xi_text};envelope={envelope_text};free_energy={};free_energy_limit={}",
                format_rational(&c_of_m(*m, p)),
                fe.to_decimal_string(12),
                fe_limit.to_decimal_string(12),
            ),
        ));
    }

    match session.format {
        Format::Csv => output::emit(&csv, session.output.as_deref())
            .map_err(|e| Error::Resource(format!("cannot write report: {e}")))?,
        Format::Json => {
            let report = session.report("sweep", None, None, results);
            session.emit(&report)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
