use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use wallcross::algebra::TruncationPolicy;

mod commands;
mod fixtures;
mod grid;
mod report;
mod verify;

pub use grid::Grid;
use report::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("FixturesMissing: no reference table at {0} (pass --fixtures or set {env})", env = fixtures::ENV_VAR)]
    FixturesMissing(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::FixturesMissing(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "wallcross", version, about = "Exact enumerative invariants of bicyclic pairs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    out: Format,
    /// Reference table: a CSV file or a directory holding p2_table.csv.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Refuse to combine truncated series of different lengths.
    #[arg(long, global = true)]
    strict_truncation: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Degrees {
    /// Degrees, e.g. `3`, `1..6` or `1,2,5`.
    #[arg(long, conflicts_with = "d_max")]
    d: Option<Grid>,
    /// Shorthand for `--d 1..N`.
    #[arg(long)]
    d_max: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form genus-zero invariants of the pair and of local P^1.
    Gw {
        #[arg(long, default_value = "1")]
        r: Grid,
        #[command(flatten)]
        degrees: Degrees,
    },
    /// Kronecker quiver DT invariants on the diagonal.
    Dt {
        #[arg(long)]
        m: i64,
        #[command(flatten)]
        degrees: Degrees,
        /// Compute the refined invariant in the quantum torus.
        #[arg(long)]
        refined: bool,
    },
    /// Complete the two-line scattering diagram to a given order.
    Scatter {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        order: i64,
        /// Read off the numerical DT invariant of degree (d,d).
        #[arg(long)]
        extract_omega: Option<i64>,
    },
    /// Gopakumar-Vafa invariants of local P^1.
    Gv {
        #[arg(long, default_value = "1")]
        r: Grid,
        #[command(flatten)]
        degrees: Degrees,
        /// All genera from refined BPS data.
        #[arg(long)]
        refined: bool,
    },
    /// Run consistency checks and report each one.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: verify::Suite,
        #[arg(long, default_value = "1..4")]
        r: Grid,
        #[arg(long, default_value = "1..4")]
        m: Grid,
        /// Largest degree checked (the refined suite stops at 3).
        #[arg(long, default_value_t = 6)]
        d_max: i64,
    },
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(CliError::Config("--jobs must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let policy = if cli.strict_truncation { TruncationPolicy::Strict } else { TruncationPolicy::Lenient };
    let table = match cli.command {
        Command::Gw { r, degrees } => commands::gw(&r, degrees.d, degrees.d_max)?,
        Command::Dt { m, degrees, refined } => commands::dt(m, degrees.d, degrees.d_max, refined)?,
        Command::Gv { r, degrees, refined } => commands::gv(&r, degrees.d, degrees.d_max, refined, policy)?,
        Command::Scatter { m, order, extract_omega } => {
            let (value, table) = match commands::scatter(m, order, extract_omega)? {
                commands::ScatterOutput::Diagram(v, t) | commands::ScatterOutput::Omega(v, t) => (v, t),
            };
            match cli.out {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value).map_err(std::io::Error::from)?)?,
                f => table.write(f, out)?,
            }
            return Ok(true);
        }
        Command::Verify { suite, r, m, d_max } => {
            let rows = if matches!(suite, verify::Suite::Table | verify::Suite::All) {
                Some(fixtures::load(&fixtures::resolve(cli.fixtures.as_deref()))?)
            } else {
                None
            };
            let args = verify::VerifyArgs { r: &r, m: &m, d_max, fixtures: rows.as_deref() };
            let report = verify::run(suite, &args)?;
            report.write(cli.out, out)?;
            return Ok(report.all_passed());
        }
    };
    table.write(cli.out, out)?;
    Ok(!table.has_errors())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out);
    let _ = out.flush();
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
