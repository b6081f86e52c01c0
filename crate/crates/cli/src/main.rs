//! Command-line front end for the cohomogeneity-one Einstein metric
//! pipeline on I × S³.
//!
//! Subcommands:
//!
//! * `verify` — sample a named solution or a parameter triple on an
//!   interior grid and check the Einstein residual against a tolerance;
//! * `classify` — produce one classification record per maximal
//!   positivity interval of the given parameters;
//! * `sweep` — classify a rectangular (a, C, λ) grid (parallelized;
//!   `EINSTEIN_CYL_THREADS` caps the worker count);
//! * `emit-profile` — write the sampled profile and diagonal Ricci
//!   entries as CSV or JSON.
//!
//! All structured output is a single self-describing document wrapped in
//! an `OutputRecord { schema_version, command, payload }`; CSV is reserved
//! for profile tables. Output is byte-stable for fixed inputs. Exit codes:
//! 0 success, 1 verification failure, 2 usage or domain error, 3 I/O error.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use einstein_cyl_core::{
    classify_case, named_solution, positivity_intervals, ricci_diag, sample_profile, sweep,
    ClassificationRecord, ModelParams, ProfileSample, SInterval, SolutionFamily, SolutionName,
    SweepGrid,
};

/// Version of the output document layout; bumped on breaking changes.
const SCHEMA_VERSION: u32 = 1;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "einstein-cyl",
    version,
    about = "Verify, classify, and tabulate cohomogeneity-one Einstein metrics on I x S^3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Einstein residual of a solution on an interior grid.
    Verify(VerifyArgs),
    /// Classify a parameter triple: completeness, smoothness, orbifold order.
    Classify(ClassifyArgs),
    /// Classify every point of a rectangular (a, C, lambda) grid.
    Sweep(SweepArgs),
    /// Emit a sampled profile table (t, s, f, h, derivatives, Ricci).
    EmitProfile(EmitProfileArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Solution selector: either a name or the numeric (a, C, lambda) triple.
#[derive(Args)]
struct Target {
    /// Branch selector a (one of -1, 0, 1).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i8>,
    /// Integration constant C of the quartic G (a = ±1) or of φ (a = 0).
    #[arg(long = "C", allow_hyphen_values = true)]
    c: Option<f64>,
    /// Einstein constant lambda.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// Named solution, e.g. sphere4, page, eguchi-hanson:1.5, orbifold:4,
    /// family-c24:-2.5, family-a1:0.5:1, family-am1:0.8:2.
    #[arg(long, conflicts_with_all = ["a", "c", "lambda"])]
    name: Option<String>,
}

impl Target {
    /// Resolve to parameters plus, for named solutions, the distinguished
    /// interval and family metadata.
    fn resolve(&self) -> Result<(ModelParams, Option<SolutionFamily>), CliError> {
        if let Some(name) = &self.name {
            let family = named_solution(parse_name(name)?)?;
            return Ok((family.params, Some(family)));
        }
        match (self.a, self.c, self.lambda) {
            (Some(a), Some(c), Some(lambda)) => {
                if !matches!(a, -1 | 0 | 1) {
                    return Err(CliError::usage(format!("--a must be -1, 0, or 1 (got {a})")));
                }
                if !c.is_finite() || !lambda.is_finite() {
                    return Err(CliError::usage("--C and --lambda must be finite".into()));
                }
                Ok((ModelParams::new(a, c, lambda), None))
            }
            _ => Err(CliError::usage(
                "give either --name or all three of --a, --C, --lambda".into(),
            )),
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format (CSV is only valid for profile tables).
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this path instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    target: Target,
    /// Number of interior grid nodes per interval.
    #[arg(long, default_value_t = 200)]
    grid: usize,
    /// Residual tolerance for a passing verdict.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    target: Target,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Branch value to include (repeat the flag; default all of -1, 0, 1).
    #[arg(long, allow_hyphen_values = true, action = clap::ArgAction::Append, default_values_t = [-1i8, 0, 1])]
    a: Vec<i8>,
    /// Lower edge of the C range.
    #[arg(long, allow_hyphen_values = true, default_value_t = -10.0)]
    c_min: f64,
    /// Upper edge of the C range.
    #[arg(long, allow_hyphen_values = true, default_value_t = 10.0)]
    c_max: f64,
    /// Lower edge of the lambda range.
    #[arg(long, allow_hyphen_values = true, default_value_t = -6.0)]
    lambda_min: f64,
    /// Upper edge of the lambda range.
    #[arg(long, allow_hyphen_values = true, default_value_t = 6.0)]
    lambda_max: f64,
    /// Number of grid points along each of the C and lambda axes.
    #[arg(long, default_value_t = 11)]
    grid: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct EmitProfileArgs {
    #[command(flatten)]
    target: Target,
    /// Number of rows to emit.
    #[arg(long, default_value_t = 200)]
    grid: usize,
    #[command(flatten)]
    output: OutputArgs,
}

// --- output document -----------------------------------------------------

#[derive(Serialize)]
struct OutputRecord<T: Serialize> {
    schema_version: u32,
    command: String,
    payload: T,
}

#[derive(Serialize)]
struct WorstSample {
    component: &'static str,
    t: f64,
    s: f64,
    residual: f64,
}

#[derive(Serialize)]
struct IntervalReport {
    s_interval: SInterval,
    max_residual: f64,
    worst: WorstSample,
}

#[derive(Serialize)]
struct VerifyReport {
    params: ModelParams,
    label: Option<String>,
    grid: usize,
    tolerance: f64,
    intervals: Vec<IntervalReport>,
    max_residual: f64,
    pass: bool,
}

#[derive(Serialize)]
struct ProfileRow {
    t: f64,
    s: f64,
    f: f64,
    h: f64,
    df_dt: f64,
    dh_dt: f64,
    ric00: f64,
    ric11: f64,
    ric22: f64,
}

#[derive(Serialize)]
struct ProfilePayload {
    params: ModelParams,
    s_interval: SInterval,
    rows: Vec<ProfileRow>,
}

#[derive(Serialize)]
struct SweepPayload {
    a_values: Vec<i8>,
    c_values: Vec<f64>,
    lambda_values: Vec<f64>,
    records: Vec<ClassificationRecord>,
}

// --- error / exit-code plumbing -------------------------------------------

enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    fn usage(msg: String) -> Self {
        CliError::Usage(msg)
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

impl From<einstein_cyl_core::Error> for CliError {
    fn from(e: einstein_cyl_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

// --- name parsing ----------------------------------------------------------

fn parse_name(raw: &str) -> Result<SolutionName, CliError> {
    let lower = raw.to_ascii_lowercase();
    let mut parts = lower.split(':');
    let head = parts.next().unwrap_or("");
    let args: Vec<&str> = parts.collect();
    let bad = |what: &str| CliError::usage(format!("solution '{raw}': {what}"));
    let real = |txt: &str, what: &str| {
        txt.parse::<f64>().map_err(|_| bad(&format!("{what} must be a real number")))
    };
    let expect_args = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(bad(&format!("expected {n} parameter(s) after ':'")))
        }
    };
    match head {
        "flat" | "r4" => {
            expect_args(0)?;
            Ok(SolutionName::Flat)
        }
        "fubini-study" | "cp2" => {
            expect_args(0)?;
            Ok(SolutionName::FubiniStudy)
        }
        "complex-hyperbolic" | "ch2" => {
            expect_args(0)?;
            Ok(SolutionName::ComplexHyperbolic)
        }
        "eguchi-hanson" | "eh" => match args.as_slice() {
            [] => Ok(SolutionName::EguchiHanson(1.0)),
            [d] => Ok(SolutionName::EguchiHanson(real(d, "bolt scale D")?)),
            _ => Err(bad("expected at most one parameter (bolt scale D)")),
        },
        "sphere4" | "s4" => {
            expect_args(0)?;
            Ok(SolutionName::Sphere4)
        }
        "page" => {
            expect_args(0)?;
            Ok(SolutionName::Page)
        }
        "real-hyperbolic" | "h4" => {
            expect_args(0)?;
            Ok(SolutionName::RealHyperbolic)
        }
        "orbifold" | "orbifold-a0" => {
            expect_args(1)?;
            let n = args[0]
                .parse::<i64>()
                .map_err(|_| bad("orbifold order n must be an integer"))?;
            Ok(SolutionName::OrbifoldA0(n))
        }
        "family-a1" | "family-am1" => {
            expect_args(2)?;
            let z = real(args[0], "root z")?;
            let n = args[1]
                .parse::<i32>()
                .map_err(|_| bad("collapse order n must be an integer"))?;
            if head == "family-a1" {
                Ok(SolutionName::FamilyA1Z { z, n })
            } else {
                Ok(SolutionName::FamilyAm1Z { z, n })
            }
        }
        "family-c24" => {
            expect_args(1)?;
            Ok(SolutionName::FamilyC24 { lambda: real(args[0], "lambda")? })
        }
        _ => Err(bad(
            "unknown name (try flat, cp2, ch2, eguchi-hanson[:D], sphere4, page, h4, \
             orbifold:n, family-a1:z:n, family-am1:z:n, family-c24:lambda)",
        )),
    }
}

// --- command implementations ------------------------------------------------

fn cmd_verify(args: &VerifyArgs) -> Result<u8, CliError> {
    if !(args.tol > 0.0) {
        return Err(CliError::usage(format!("--tol must be positive (got {})", args.tol)));
    }
    if args.grid < 3 {
        return Err(CliError::usage(format!("--grid must be at least 3 (got {})", args.grid)));
    }
    let (params, family) = args.target.resolve()?;
    let intervals = match &family {
        Some(f) => vec![f.s_interval],
        None => positivity_intervals(&params)?,
    };
    if intervals.is_empty() {
        return Err(CliError::usage(format!(
            "no positivity interval: f^2 <= 0 everywhere for a = {}, C = {}, lambda = {}",
            params.a, params.c, params.lambda
        )));
    }

    let mut reports = Vec::with_capacity(intervals.len());
    let mut max_residual = 0.0f64;
    for interval in &intervals {
        let grid = sample_profile(&params, interval, args.grid)?;
        let mut worst =
            WorstSample { component: "ric00", t: f64::NAN, s: f64::NAN, residual: -1.0 };
        for sample in &grid.samples {
            let ric = ricci_diag(sample)?;
            let entries = [("ric00", ric.ric00), ("ric11", ric.ric11), ("ric22", ric.ric22)];
            for (component, value) in entries {
                let residual = (value - params.lambda).abs();
                if residual > worst.residual {
                    worst =
                        WorstSample { component, t: sample.t, s: sample.s, residual };
                }
            }
        }
        max_residual = max_residual.max(worst.residual);
        reports.push(IntervalReport {
            s_interval: *interval,
            max_residual: worst.residual,
            worst,
        });
    }

    let pass = max_residual <= args.tol;
    let report = VerifyReport {
        params,
        label: family.and_then(|f| f.label),
        grid: args.grid,
        tolerance: args.tol,
        intervals: reports,
        max_residual,
        pass,
    };
    emit_json(&args.output, "verify", &report)?;
    Ok(if pass { 0 } else { EXIT_VERIFY_FAILED })
}

fn cmd_classify(args: &ClassifyArgs) -> Result<u8, CliError> {
    let (params, _) = args.target.resolve()?;
    let records = classify_case(&params)?;
    emit_json(&args.output, "classify", &records)?;
    Ok(0)
}

fn cmd_sweep(args: &SweepArgs) -> Result<u8, CliError> {
    if args.grid < 2 {
        return Err(CliError::usage(format!("--grid must be at least 2 (got {})", args.grid)));
    }
    for &a in &args.a {
        if !matches!(a, -1 | 0 | 1) {
            return Err(CliError::usage(format!("--a values must be -1, 0, or 1 (got {a})")));
        }
    }
    if !(args.c_min <= args.c_max) || !(args.lambda_min <= args.lambda_max) {
        return Err(CliError::usage("range edges must satisfy min <= max".into()));
    }
    let grid = SweepGrid {
        a_values: args.a.clone(),
        c_values: linspace(args.c_min, args.c_max, args.grid),
        lambda_values: linspace(args.lambda_min, args.lambda_max, args.grid),
    };
    let records = sweep(&grid)?;
    let payload = SweepPayload {
        a_values: grid.a_values,
        c_values: grid.c_values,
        lambda_values: grid.lambda_values,
        records,
    };
    emit_json(&args.output, "sweep", &payload)?;
    Ok(0)
}

fn cmd_emit_profile(args: &EmitProfileArgs) -> Result<u8, CliError> {
    if args.grid < 3 {
        return Err(CliError::usage(format!("--grid must be at least 3 (got {})", args.grid)));
    }
    let (params, family) = args.target.resolve()?;
    let interval = match &family {
        Some(f) => f.s_interval,
        None => {
            let intervals = positivity_intervals(&params)?;
            *intervals.first().ok_or_else(|| {
                CliError::usage(format!(
                    "no positivity interval: f^2 <= 0 everywhere for a = {}, C = {}, lambda = {}",
                    params.a, params.c, params.lambda
                ))
            })?
        }
    };
    let grid = sample_profile(&params, &interval, args.grid)?;
    let mut rows = Vec::with_capacity(grid.samples.len());
    for sample in &grid.samples {
        let ric = ricci_diag(sample)?;
        let ProfileSample { t, s, f, h, df_dt, dh_dt, .. } = *sample;
        rows.push(ProfileRow {
            t,
            s,
            f,
            h,
            df_dt,
            dh_dt,
            ric00: ric.ric00,
            ric11: ric.ric11,
            ric22: ric.ric22,
        });
    }
    match args.output.format {
        Format::Json => {
            let payload = ProfilePayload { params, s_interval: interval, rows };
            emit_json(&args.output, "emit-profile", &payload)
        }
        Format::Csv => write_output(&args.output, &profile_csv(&rows)),
    }?;
    Ok(0)
}

// --- serialization helpers ---------------------------------------------------

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// CSV profile table: header row, comma separators, LF line endings,
/// 17 significant digits (f64 round-trip exact).
fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::from("t,s,f,h,df_dt,dh_dt,ric00,ric11,ric22\n");
    for r in rows {
        let cols = [r.t, r.s, r.f, r.h, r.df_dt, r.dh_dt, r.ric00, r.ric11, r.ric22];
        let line: Vec<String> = cols.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn emit_json<T: Serialize>(output: &OutputArgs, command: &str, payload: &T) -> Result<(), CliError> {
    if output.format == Format::Csv {
        return Err(CliError::usage(format!(
            "--format csv is only valid for emit-profile, not {command}"
        )));
    }
    let record = OutputRecord {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        payload,
    };
    let mut doc = serde_json::to_string_pretty(&record)
        .map_err(|e| CliError::usage(format!("serialization: {e}")))?;
    doc.push('\n');
    write_output(output, &doc)
}

fn write_output(output: &OutputArgs, doc: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, doc).map_err(|e| {
            CliError::Io(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(doc.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::EmitProfile(args) => cmd_emit_profile(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
