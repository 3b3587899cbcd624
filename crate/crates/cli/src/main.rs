use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use moonshine_cli::config::DEFAULT_SEED;
use moonshine_cli::{run, CliError, Format, RunConfig, Verb};
use moonshine_core::Precision;

/// Mathieu moonshine: twined mock modular forms, cusp expansions,
/// exponential sums and Rademacher sums.
#[derive(Debug, Parser)]
#[command(name = "moonshine", version)]
struct Cli {
    verb: Verb,
    /// Conjugacy class label; repeat for several.
    #[arg(long = "class")]
    classes: Vec<String>,
    /// Truncation order, e.g. `10` or `7/8`.
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    cmax: Option<i64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Reduced ranges for the verification suites.
    #[arg(long)]
    fast: bool,
    /// Cross-check with the brute-force Kloosterman sums.
    #[arg(long)]
    audit: bool,
    /// `classes`: print only the table hash.
    #[arg(long)]
    checksum: bool,
    #[arg(long = "n", allow_hyphen_values = true)]
    nprime: Option<i64>,
    #[arg(long = "r", allow_hyphen_values = true)]
    rprime: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<i64>,
    #[arg(long)]
    cusp: Option<String>,
}

fn config(cli: Cli) -> Result<RunConfig, CliError> {
    let precision = Precision::from_env().map_err(|e| CliError::usage(e.to_string()))?;
    Ok(RunConfig {
        verb: cli.verb,
        classes: cli.classes,
        order: cli.order.as_deref().map(RunConfig::parse_order).transpose()?,
        cmax: cli.cmax,
        tol: cli.tol,
        format: cli.format,
        out: cli.out,
        seed: cli.seed,
        fast: cli.fast,
        audit: cli.audit,
        checksum: cli.checksum,
        nprime: cli.nprime,
        rprime: cli.rprime,
        a: cli.a,
        b: cli.b,
        c: cli.c,
        cusp: cli.cusp,
        precision,
    })
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let cfg = config(cli)?;
    let report = run(&cfg)?;
    let rendered = report.render(cfg.format)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, rendered)?,
        None => std::io::stdout().write_all(rendered.as_bytes())?,
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("moonshine: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
