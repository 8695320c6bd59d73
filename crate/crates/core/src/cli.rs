//! The `gini-refine` command line tool.
//!
//! Everything is driven by flags and written through the two writers passed
//! to [`run`], so the commands are testable without a subprocess. Exit codes
//! are stable: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 domain error, 4 I/O error.

use std::collections::HashMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::certify::{self, Certificate, CertResult};
use crate::kernels::{eval_combination, eval_kernel, KernelError, KernelKind, PositivePair};
use crate::numverify::{self, VerifyConfig, VerifyReport};
use crate::registry::{self, Level};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "gini-refine", version, about = "Evaluate means and divergences, verify the inequality catalogue")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one kernel at a pair of positive reals.
    #[command(allow_negative_numbers = true)]
    Eval {
        /// A named mean (A, G, N1, ...), `gini:r,s`, `power:r`, `lehmer:r`,
        /// or a divergence kernel (I, J, T, Delta, h).
        kernel: String,
        a: f64,
        b: f64,
    },
    /// Verify every registry statement numerically and replay the built-in certificates.
    VerifyAll(VerifyArgs),
    /// Write the gap curve of a kernel-level statement as CSV.
    Curve {
        id: String,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, default_value_t = 100.0)]
        xmax: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check certificate files.
    Certify(CertifyArgs),
    /// Registry utilities.
    Registry {
        #[command(subcommand)]
        command: RegistryCommand,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Relative tolerance: a gap counts as nonnegative above `-tol * (1 + x)`.
    #[arg(long, default_value_t = VerifyConfig::default().tol_rel)]
    tol: f64,
    /// Number of log-spaced grid points on `[1, x_max]`.
    #[arg(long, default_value_t = VerifyConfig::default().grid_points)]
    grid: usize,
    #[arg(long, default_value_t = numverify::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CertifyArgs {
    /// A certificate file.
    #[arg(long)]
    cert: Option<PathBuf>,
    /// The built-in certificate set.
    #[arg(long)]
    all: bool,
}

#[derive(Subcommand, Debug)]
enum RegistryCommand {
    /// Write the registry as JSON.
    Export {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Totals of a `verify-all` run. The wall time is left out of the JSON
/// report so that the report is byte-identical across runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub proved_exact: usize,
    #[serde(skip)]
    pub wall_time_seconds: f64,
}

/// One row of the report. `method` is `"exact"` when a built-in certificate
/// covers the statement; the row passes only if both the numeric check and
/// the certificate succeed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub id: String,
    pub verdict: &'static str,
    pub min_value: f64,
    pub argmin_x: f64,
    pub method: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub summary: RunSummary,
    pub results: Vec<ResultRow>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        Self::new(EXIT_IO, format!("{}: {err}", path.display()))
    }
}

fn kernel_failure(err: KernelError) -> Failure {
    match err {
        KernelError::UnknownKernel(_) => Failure::new(EXIT_USAGE, err.to_string()),
        _ => Failure::new(EXIT_DOMAIN, err.to_string()),
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval { kernel, a, b } => cmd_eval(&kernel, a, b, out),
        Command::VerifyAll(args) => cmd_verify_all(&args, out),
        Command::Curve { id, points, xmax, out: path } => cmd_curve(&id, points, xmax, path.as_deref(), out),
        Command::Certify(args) => cmd_certify(&args, out),
        Command::Registry { command: RegistryCommand::Export { out: path } } => cmd_export(path.as_deref(), out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::new(EXIT_IO, e.to_string()))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::io(path, e))
}

/// `v` with 15 significant digits and no trailing zeros, like C's `%.15g`.
pub fn format_significant(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.14e}");
    let (_, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..15).contains(&exp) {
        trim(format!("{v:.*}", (14 - exp) as usize))
    } else {
        let (mantissa, _) = sci.split_once('e').unwrap();
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn cmd_eval(kernel: &str, a: f64, b: f64, out: &mut dyn Write) -> Result<i32, Failure> {
    let kind: KernelKind = kernel.parse().map_err(kernel_failure)?;
    let pair = PositivePair::new(a, b).map_err(kernel_failure)?;
    let value = eval_kernel(&kind, pair).map_err(kernel_failure)?;
    emit(out, &format!("{}\n", format_significant(value)))?;
    Ok(EXIT_OK)
}

/// Numeric reports merged with the built-in certificate results.
pub fn build_report(reports: &[VerifyReport], certs: &[CertResult], wall_time_seconds: f64) -> Report {
    let by_id: HashMap<&str, &CertResult> = certs.iter().map(|c| (c.statement_id.as_str(), c)).collect();
    let mut results = Vec::with_capacity(reports.len());
    let mut proved_exact = 0;
    for r in reports {
        let cert = by_id.get(r.statement_id.as_str());
        let cert_ok = cert.is_none_or(|c| c.proved());
        if cert.is_some_and(|c| c.proved()) {
            proved_exact += 1;
        }
        results.push(ResultRow {
            id: r.statement_id.clone(),
            verdict: if r.passed() && cert_ok { "pass" } else { "fail" },
            min_value: r.min_value,
            argmin_x: r.argmin_x,
            method: if cert.is_some() { "exact" } else { "numeric" },
        });
    }
    let passed = results.iter().filter(|r| r.verdict == "pass").count();
    Report {
        summary: RunSummary {
            total: results.len(),
            passed,
            failed: results.len() - passed,
            proved_exact,
            wall_time_seconds,
        },
        results,
    }
}

/// Failures first, then passes, then the summary line.
pub fn report_text(report: &Report) -> String {
    let mut s = String::new();
    let rows = report.results.iter();
    for r in rows.clone().filter(|r| r.verdict == "fail").chain(rows.filter(|r| r.verdict == "pass")) {
        s.push_str(&format!(
            "{:<5} {:<14} {:<8} min {:>12.4e} at x = {:.6e}\n",
            r.verdict.to_uppercase(),
            r.id,
            r.method,
            r.min_value,
            r.argmin_x
        ));
    }
    s.push_str(&summary_line(&report.summary));
    s
}

fn summary_line(m: &RunSummary) -> String {
    format!(
        "total {}  passed {}  failed {}  proved exactly {}  ({:.2} s)\n",
        m.total, m.passed, m.failed, m.proved_exact, m.wall_time_seconds
    )
}

fn cmd_verify_all(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = VerifyConfig { tol_rel: args.tol, grid_points: args.grid, seed: args.seed, ..VerifyConfig::default() };
    cfg.validate().map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    let start = Instant::now();
    let reports = numverify::verify_all(&cfg);
    let certs = certify::check_builtin();
    let report = build_report(&reports, &certs, start.elapsed().as_secs_f64());
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => report_text(&report),
    };
    match &args.out {
        Some(path) => {
            write_file(path, &text)?;
            emit(out, &summary_line(&report.summary))?;
        }
        None => emit(out, &text)?,
    }
    Ok(if report.summary.failed == 0 { EXIT_OK } else { EXIT_FAIL })
}

/// `points` log-spaced ratios on `[1/xmax, xmax]`, with the gap at `(x, 1)`.
pub fn curve_rows(id: &str, points: usize, xmax: f64) -> Result<Vec<(f64, f64)>, String> {
    let stmt = registry::get(id).ok_or_else(|| format!("unknown statement id `{id}`"))?;
    if stmt.level != Level::Kernel {
        return Err(format!("{id} is a distribution-level statement; curves need kernel level"));
    }
    if points < 2 {
        return Err(format!("--points must be at least 2, got {points}"));
    }
    if !(xmax.is_finite() && xmax > 1.0) {
        return Err(format!("--xmax must be a finite number above 1, got {xmax}"));
    }
    let lo = -xmax.ln();
    let step = 2.0 * xmax.ln() / (points - 1) as f64;
    (0..points)
        .map(|i| {
            // exact endpoints and an exact 1 at the middle of an odd grid
            let x = if 2 * i + 1 == points {
                1.0
            } else if i == 0 {
                1.0 / xmax
            } else if i == points - 1 {
                xmax
            } else {
                (lo + step * i as f64).exp()
            };
            let pair = PositivePair::new(x, 1.0).map_err(|e| e.to_string())?;
            let gap = eval_combination(stmt.combination(), pair).map_err(|e| e.to_string())?;
            Ok((x, gap))
        })
        .collect()
}

fn cmd_curve(id: &str, points: usize, xmax: f64, path: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    let rows = curve_rows(id, points, xmax).map_err(|m| Failure::new(EXIT_USAGE, m))?;
    let mut csv = String::from("x,gap\n");
    for (x, gap) in rows {
        csv.push_str(&format!("{x:e},{gap:e}\n"));
    }
    match path {
        Some(p) => write_file(p, &csv)?,
        None => emit(out, &csv)?,
    }
    Ok(EXIT_OK)
}

fn cmd_certify(args: &CertifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let results = match &args.cert {
        Some(path) => {
            let src = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
            let cert = Certificate::from_json(&src)
                .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
            let result = certify::check_registered(&cert);
            let mut text = String::new();
            for t in &result.trace {
                text.push_str(&format!("  step {} {}: {}\n", t.step_index, t.op, t.detail));
            }
            emit(out, &text)?;
            vec![result]
        }
        None => certify::check_builtin(),
    };
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!("{r}\n"));
    }
    emit(out, &text)?;
    Ok(if results.iter().all(CertResult::proved) { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_export(path: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    match path {
        Some(p) => registry::export_json(p).map_err(|e| Failure::new(EXIT_IO, e.to_string()))?,
        None => emit(out, &registry::to_json(registry::all_statements()))?,
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("gini-refine").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(3.0), "3");
        assert_eq!(format_significant(5.0 / 3.0), "1.66666666666667");
        assert_eq!(format_significant(7.0 / 3.0), "2.33333333333333");
        assert_eq!(format_significant(1.0e-7 / 3.0), "3.33333333333333e-8");
        assert_eq!(format_significant(-0.25), "-0.25");
        assert_eq!(format_significant(1.0e20), "1e20");
    }

    #[test]
    fn eval_outputs_and_codes() {
        assert_eq!(call(&["eval", "A", "2", "4"]), (0, "3\n".into(), String::new()));
        assert_eq!(call(&["eval", "gini:2,1", "1", "2"]).1, "1.66666666666667\n");
        assert_eq!(call(&["eval", "N3", "1", "4"]).1, "2.33333333333333\n");
        assert_eq!(call(&["eval", "power:-1", "1", "1"]).1, "1\n");

        let (code, out, err) = call(&["eval", "Q9", "1", "2"]);
        assert_eq!((code, out.as_str()), (EXIT_USAGE, ""));
        assert_eq!(err.lines().count(), 1);
        let (code, _, err) = call(&["eval", "A", "-1", "2"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert_eq!(err.lines().count(), 1);
        assert_eq!(call(&["eval", "A", "x", "2"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    }

    #[test]
    fn curve_rows_and_errors() {
        let rows = curve_rows("eq8.06", 5, 10.0).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|&(_, g)| g >= 0.0));
        assert_eq!(rows[2].0, 1.0);
        assert!(rows[2].1.abs() <= 1e-14);
        assert_eq!((rows[0].0, rows[4].0), (0.1, 10.0));

        let (code, csv, _) = call(&["curve", "eq8.06", "--points", "5", "--xmax", "10"]);
        assert_eq!(code, 0);
        assert_eq!(csv.lines().next(), Some("x,gap"));
        assert_eq!(csv.lines().count(), 6);
        assert_eq!(call(&["curve", "nope"]).0, EXIT_USAGE);
        assert_eq!(call(&["curve", "eq17.id"]).0, EXIT_USAGE);
    }

    #[test]
    fn report_merges_routes() {
        let numeric = vec![
            VerifyReport {
                statement_id: "a".into(),
                verdict: numverify::Verdict::Pass,
                min_value: 0.0,
                argmin_x: 1.0,
                samples_used: 0,
            },
            VerifyReport {
                statement_id: "b".into(),
                verdict: numverify::Verdict::Pass,
                min_value: 0.0,
                argmin_x: 1.0,
                samples_used: 0,
            },
        ];
        let cert = CertResult {
            statement_id: "b".into(),
            verdict: certify::Verdict::Failed { step_index: 3, reason: "x".into() },
            trace: vec![],
        };
        let report = build_report(&numeric, &[cert], 0.5);
        assert_eq!(report.summary.total, 2);
        assert_eq!((report.summary.passed, report.summary.failed, report.summary.proved_exact), (1, 1, 0));
        assert_eq!(report.results[1].method, "exact");
        assert_eq!(report.results[1].verdict, "fail");
        // failures are listed first
        assert!(report_text(&report).starts_with("FAIL"));
        let json = serde_json::to_value(&report).unwrap();
        assert!(json["summary"].get("wall_time_seconds").is_none());
    }
}
