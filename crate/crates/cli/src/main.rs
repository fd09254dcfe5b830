use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polycurv::io::{Format, RunConfig};
use polycurv::mc::DEFAULT_SEED;
use polycurv::Error;

mod commands;

#[derive(Parser)]
#[command(name = "polycurv", version, about = "Discrete curvature of polygons, polyhedral surfaces and polyhedral manifolds")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for every randomized estimate (decimal or 0x-prefixed hex).
    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = parse_seed, global = true)]
    seed: u64,
    /// Monte Carlo samples per estimate.
    #[arg(long, default_value_t = 100_000, global = true)]
    samples: usize,
    /// Tolerance override, `key=value`; may be repeated.
    #[arg(long = "tol", value_name = "KEY=VALUE", global = true)]
    tol: Vec<String>,
    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv, global = true)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    match parsed {
        Ok(0) => Err("seed must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Turning angles and turning number or total curvature of a polygon (JSON).
    Curve { input: PathBuf },
    /// Angle defects, Gauss-Bonnet and total mean curvature of a closed mesh (OFF).
    Surface { input: PathBuf },
    /// Steiner polynomial of a convex polyhedron (OFF).
    Steiner { input: PathBuf },
    /// Mean width and mean projection area of a convex polyhedron (OFF).
    IntegralGeometry { input: PathBuf },
    /// Cone angles and the Regge functional of a polyhedral metric (JSON).
    Regge {
        input: PathBuf,
        /// Report the gradient of the functional instead of the cone angles.
        #[arg(long, conflicts_with = "relax")]
        grad: bool,
        /// Relax the metric towards a flat one and report the trajectory.
        #[arg(long)]
        relax: bool,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
        /// Stop relaxing once every deficit is below this.
        #[arg(long, default_value_t = 1e-6)]
        target: f64,
        #[arg(long, value_enum, default_value_t = commands::StepArg::Gradient)]
        step: commands::StepArg,
        /// Let the total volume drift instead of rescaling after each step.
        #[arg(long)]
        free_volume: bool,
        /// Write the relaxed metric here as JSON.
        #[arg(long)]
        metric_out: Option<PathBuf>,
    },
    /// Lipschitz-Killing curvatures on the faces of dimension n - 2k.
    Lk {
        input: PathBuf,
        #[arg(short, long, default_value_t = 0)]
        k: usize,
    },
    /// Compare the sum of vertex curvatures with the Euler characteristic.
    Cgb { input: PathBuf },
    /// Convergence of a discrete quantity to its smooth value.
    Converge {
        #[arg(value_enum)]
        family: commands::Family,
        /// Surface quantity; curves always use total curvature.
        #[arg(long, value_enum, default_value_t = commands::Quantity::Mean)]
        quantity: commands::Quantity,
        /// Comma-separated refinement levels (defaults depend on the family).
        #[arg(long, value_delimiter = ',')]
        schedule: Vec<usize>,
    },
}

fn run(cli: Cli) -> Result<commands::Outcome, Error> {
    let mut cfg = RunConfig {
        seed: cli.common.seed,
        samples: cli.common.samples,
        out: cli.common.out,
        format: match cli.common.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        },
        ..RunConfig::default()
    };
    cfg.apply_overrides(&cli.common.tol)?;
    cfg.validate()?;
    match cli.command {
        Command::Curve { input } => commands::curve(&input, &cfg),
        Command::Surface { input } => commands::surface(&input, &cfg),
        Command::Steiner { input } => commands::steiner(&input, &cfg),
        Command::IntegralGeometry { input } => commands::integral_geometry(&input, &cfg),
        Command::Regge { input, grad, relax, max_iters, target, step, free_volume, metric_out } => {
            if relax {
                let opts = commands::RelaxOptions { max_iters, target, step, free_volume, metric_out };
                commands::regge_relax(&input, &cfg, &opts)
            } else {
                commands::regge(&input, &cfg, grad)
            }
        }
        Command::Lk { input, k } => commands::lk(&input, &cfg, k),
        Command::Cgb { input } => commands::cgb(&input, &cfg),
        Command::Converge { family, quantity, schedule } => commands::converge(family, quantity, &schedule, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.common.out.clone();
    match run(cli) {
        Ok(outcome) => {
            for (key, value) in &outcome.summary {
                eprintln!("{key}: {value}");
            }
            let written = match &out {
                Some(path) => std::fs::write(path, &outcome.body),
                None => {
                    print!("{}", outcome.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            match outcome.failure {
                Some(msg) => {
                    eprintln!("check failed: {msg}");
                    ExitCode::from(3)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
