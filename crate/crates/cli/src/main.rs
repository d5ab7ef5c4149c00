use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schroeder_core::densela::{classify, read_matrix, to_matrix_market, write_matrix, DenseMatrix, Matrix, NormKind, Scalar};
use schroeder_core::pseries::{schroeder_coeff_table, table_to_csv, table_to_json};
use schroeder_core::schroeder::{IterationReport, Schroeder, SchroederConfig, Termination};
use schroeder_core::verify::{run_campaign, CampaignSpec};
use schroeder_core::Error;

#[derive(Parser, Debug)]
#[command(name = "schroeder", version, about = "Matrix pth roots by Schröder iterations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute X ~ A^(1/p) and write the iterate and an iteration report.
    Compute(ComputeArgs),
    /// Print the exact coefficient table of the scalar iterates.
    Series(SeriesArgs),
    /// Run a verification campaign.
    Verify(VerifyArgs),
    /// Classify a matrix (Z, M1, H1) as JSON.
    Structure(StructureArgs),
}

#[derive(Args, Debug)]
struct ComputeArgs {
    /// Matrix Market or JSON matrix.
    #[arg(long)]
    input: PathBuf,
    /// Where to write X (JSON for `.json`, Matrix Market otherwise); stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the iteration report as JSON.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long = "p", default_value_t = 2)]
    p: u32,
    #[arg(long = "m", default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1e-13)]
    tol: f64,
    #[arg(long, default_value_t = 60)]
    max_iter: usize,
    #[arg(long, default_value = "inf")]
    norm: NormKind,
    /// Skip the Gershgorin / spectral-radius precheck.
    #[arg(long)]
    skip_precheck: bool,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long = "p")]
    p: u32,
    #[arg(long = "m")]
    m: usize,
    /// Truncation order N: coefficients of z^0 ..= z^N.
    #[arg(long)]
    order: usize,
    /// Last iterate index.
    #[arg(long = "k")]
    k: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Campaign spec (TOML or JSON); the default grid if omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Where to write the certificates as a JSON array.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Override the campaign seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct StructureArgs {
    #[arg(long)]
    input: PathBuf,
}

/// Exit codes: 1 computational failure, 2 usage or input error, 3 verification failure.
enum Failure {
    Compute(String),
    Usage(String),
    Verification,
}

impl Failure {
    fn usage(e: Error) -> Self {
        Self::Usage(e.to_string())
    }

    fn compute(e: Error) -> Self {
        Self::Compute(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => compute(args),
        Command::Series(args) => series(args),
        Command::Verify(args) => verify(args),
        Command::Structure(args) => structure(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(3),
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Compute(format!("{}: {e}", path.display())))
}

fn to_json_text<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn compute(args: ComputeArgs) -> Result<(), Failure> {
    let a = read_matrix(&args.input).map_err(Failure::usage)?;
    let mut cfg = SchroederConfig::new(args.p, args.m);
    cfg.tol = args.tol;
    cfg.max_iter = args.max_iter;
    cfg.norm = args.norm;
    cfg.skip_precheck = args.skip_precheck;
    let solver = Schroeder::new(cfg).map_err(Failure::usage)?;
    let (x, report) = match &a {
        DenseMatrix::Real(m) => solve(&solver, m)?,
        DenseMatrix::Complex(m) => solve(&solver, m)?,
    };

    match &args.out {
        Some(path) => write_matrix(path, &x).map_err(Failure::compute)?,
        None => print!("{}", to_matrix_market(&x)),
    }
    if let Some(path) = &args.report {
        write_text(path, &to_json_text(&report))?;
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    eprintln!("termination: {}", termination_name(report.termination));
    eprintln!("iterations: {}", report.iterations());
    if let Some(r) = report.final_residual() {
        eprintln!("final residual: {r:.16e}");
    }
    if let Some(last) = report.steps.last() {
        if let (Some(plain), Some(sharp)) = (last.bound_plain, last.bound_sharp) {
            eprintln!("error bound: {plain:.16e} (sharp {sharp:.16e})");
        }
    }
    match report.termination {
        Termination::Converged => Ok(()),
        other => Err(Failure::Compute(format!(
            "iteration stopped without converging: {}",
            termination_name(other)
        ))),
    }
}

fn solve<T: Scalar>(solver: &Schroeder, a: &Matrix<T>) -> Result<(DenseMatrix, IterationReport), Failure>
where
    DenseMatrix: From<Matrix<T>>,
{
    let outcome = solver.run(a).map_err(|e| match e {
        Error::DimensionMismatch(_) => Failure::usage(e),
        e => Failure::compute(e),
    })?;
    Ok((outcome.x.into(), outcome.report))
}

fn termination_name(t: Termination) -> String {
    serde_json::to_value(t)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn series(args: SeriesArgs) -> Result<(), Failure> {
    let table = schroeder_coeff_table(args.p, args.m, args.k, args.order).map_err(Failure::usage)?;
    let text = match args.format {
        Format::Csv => table_to_csv(&table),
        Format::Json => to_json_text(&table_to_json(&table)),
    };
    match &args.out {
        Some(path) => write_text(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let mut spec = match &args.config {
        Some(path) => CampaignSpec::from_path(path).map_err(Failure::usage)?,
        None => CampaignSpec::default(),
    };
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    let outcome = run_campaign(&spec).map_err(|e| match e {
        Error::InvalidParameter(_) => Failure::usage(e),
        e => Failure::compute(e),
    })?;
    if let Some(path) = &args.report {
        write_text(path, &to_json_text(&outcome.certificates))?;
    }
    print!("{}", outcome.summary());
    for c in outcome.unexpected().take(20) {
        eprintln!(
            "unexpected verdict: {}",
            serde_json::to_string(c).expect("serializable")
        );
    }
    if outcome.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn structure(args: StructureArgs) -> Result<(), Failure> {
    let a = read_matrix(&args.input).map_err(Failure::usage)?;
    let report = classify(&a).map_err(Failure::usage)?;
    print!("{}", to_json_text(&report));
    Ok(())
}
