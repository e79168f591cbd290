use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use iqc_lab::config::ExperimentConfig;
use iqc_lab::error::LabError;
use iqc_lab::experiments;

/// Numerical experiments on a band-limited quantum clock at finite
/// truncation. Times are in units of tau, shift frequencies in units of the
/// band edge W = pi / tau. Reports are deterministic for a fixed (config,
/// seed); wall time goes to stderr only.
#[derive(Parser)]
#[command(name = "iqc-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Interior residual of [T, H] - i, plus its trend across truncations
    VerifyCcr(CommonArgs),
    /// Residual of the integrated conjugacy T G(t) - G(t) T = t G(t)
    Covariance(CommonArgs),
    /// sigma(T) sigma(H) across a state suite (width-4 member needs N >= 64)
    Uncertainty(CommonArgs),
    /// Invariance of sigma(T) and linear advance of <T> under evolution
    SigmaInvariance(CommonArgs),
    /// Eigenvector scans of the truncated H and T
    EigenScan(CommonArgs),
    /// Duration read off the clock between two coupling times
    Duration(CommonArgs),
    /// Classify an overlap family as no/weak/strong interaction
    Interact(CommonArgs),
    /// Energy-shift identity under V(k) = exp(ikT) and its collision with W
    PauliShift(CommonArgs),
    /// Boundary mass and admissibility weight of V(k)-shifted states
    Leakage(CommonArgs),
}

impl Command {
    fn tag(&self) -> &'static str {
        match self {
            Command::VerifyCcr(_) => "verify-ccr",
            Command::Covariance(_) => "covariance",
            Command::Uncertainty(_) => "uncertainty",
            Command::SigmaInvariance(_) => "sigma-invariance",
            Command::EigenScan(_) => "eigen-scan",
            Command::Duration(_) => "duration",
            Command::Interact(_) => "interact",
            Command::PauliShift(_) => "pauli-shift",
            Command::Leakage(_) => "leakage",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::VerifyCcr(a)
            | Command::Covariance(a)
            | Command::Uncertainty(a)
            | Command::SigmaInvariance(a)
            | Command::EigenScan(a)
            | Command::Duration(a)
            | Command::Interact(a)
            | Command::PauliShift(a)
            | Command::Leakage(a) => a,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Flat key=value config file; flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Tick spacing tau
    #[arg(long)]
    tau: Option<f64>,
    /// Truncation half-width N (window is 2N+1 ticks)
    #[arg(long)]
    half_width: Option<u32>,
    /// Interior buffer B; defaults to N/2
    #[arg(long)]
    buffer: Option<u32>,
    /// Gauss-Legendre nodes for the time-operator quadrature
    #[arg(long)]
    quad_nodes: Option<u32>,
    /// Seed for randomized state families
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated probe times, in units of tau
    #[arg(long)]
    t_grid: Option<String>,
    /// Comma-separated shift frequencies, in units of W
    #[arg(long)]
    k_grid: Option<String>,
    /// Overlap admixture or family, e.g. tick:1:0.1 or geometric:2
    #[arg(long)]
    overlap: Option<String>,
    /// External system, e.g. two-level:0.8 or ladder:5:0.8
    #[arg(long)]
    system_d: Option<String>,
    /// Clock state, e.g. tick:0 or gaussian:0:3
    #[arg(long)]
    state: Option<String>,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
}

fn build_config(tag: &str, args: &CommonArgs) -> Result<ExperimentConfig, LabError> {
    let mut cfg = ExperimentConfig::new(tag)?;
    if let Some(path) = &args.config {
        cfg.apply_file(path)?;
    }
    // the subcommand always wins over a config-file experiment key
    cfg.set("experiment", tag)?;
    if let Some(v) = args.tau {
        cfg.set("tau", &v.to_string())?;
    }
    if let Some(v) = args.half_width {
        cfg.set("half-width", &v.to_string())?;
    }
    if let Some(v) = args.buffer {
        cfg.set("buffer", &v.to_string())?;
    }
    if let Some(v) = args.quad_nodes {
        cfg.set("quad-nodes", &v.to_string())?;
    }
    if let Some(v) = args.seed {
        cfg.set("seed", &v.to_string())?;
    }
    if let Some(v) = &args.t_grid {
        cfg.set("t-grid", v)?;
    }
    if let Some(v) = &args.k_grid {
        cfg.set("k-grid", v)?;
    }
    if let Some(v) = &args.overlap {
        cfg.set("overlap", v)?;
    }
    if let Some(v) = &args.system_d {
        cfg.set("system-d", v)?;
    }
    if let Some(v) = &args.state {
        cfg.set("state", v)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Write via a temporary file in the same directory, then rename, so readers
/// never observe a half-written report.
fn write_atomic(path: &Path, contents: &str) -> Result<(), LabError> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("report"),
        std::process::id()
    ));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn run(cli: &Cli) -> Result<(), LabError> {
    let args = cli.command.args();
    let cfg = build_config(cli.command.tag(), args)?;
    let started = Instant::now();
    let report = experiments::run(&cfg)?;
    eprintln!("wall-time: {:.3}s", started.elapsed().as_secs_f64());

    let rendered = match args.format.as_str() {
        "json" => report.to_json(),
        "csv" => report.to_csv()?,
        other => return Err(LabError::Config(format!("unknown format '{other}'"))),
    };
    match &args.out {
        Some(path) => write_atomic(path, &rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error[{}]: {e}", e.category());
        std::process::exit(e.exit_code());
    }
}
