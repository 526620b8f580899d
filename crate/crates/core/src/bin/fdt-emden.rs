use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use fdt_emden::cli::{parse_problem_file, run, Format};

#[derive(Parser)]
#[command(
    version,
    about = "Series solutions of fractional Emden-Fowler problems"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file and write coefficient, solution, residual and
    /// convergence tables.
    Solve {
        problem_file: PathBuf,
        /// Truncation index K (grid steps)
        #[arg(long)]
        order: Option<usize>,
        /// Right end of the evaluation grid
        #[arg(long)]
        tmax: Option<f64>,
        /// Number of evaluation points on [0, tmax]
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Output formats; repeat or comma-separate for both
        #[arg(long, value_delimiter = ',', default_value = "csv")]
        format: Vec<Format>,
    },
}

fn main() -> ExitCode {
    match execute(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn execute(args: Args) -> Result<()> {
    match args.command {
        Command::Solve {
            problem_file,
            order,
            tmax,
            points,
            out,
            format,
        } => {
            let mut config = parse_problem_file(&problem_file)?;
            if let Some(k) = order {
                config.order = k;
            }
            if let Some(t) = tmax {
                config.t_max = t;
            }
            if let Some(n) = points {
                config.grid_points = n;
            }
            config.output_dir = out;
            config.formats = format;
            let report = run(&config)?;
            println!(
                "beta = {}, alpha = {}, K = {}: max |residual| = {:e}, wrote {}",
                report.metadata.beta,
                report.metadata.alpha,
                report.metadata.order,
                report.max_abs_residual,
                config.output_dir.display()
            );
            Ok(())
        }
    }
}
