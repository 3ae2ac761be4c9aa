use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eigdeg::commands::{self, ContinueArgs};
use eigdeg::{problem_file, CliError, Format};
use eigdeg_core::perturbed::EigenpairGrid;
use eigdeg_core::poly::ROOT_TOL;
use eigdeg_core::TraceOptions;

#[derive(Parser)]
#[command(name = "eigdeg", version, about = "Degrees of sphere eigenvalue problems and continuation of perturbed branches")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Eigensets of L with multiplicities, kernel bases and degrees.
    Eigen {
        file: PathBuf,
        #[arg(long, default_value_t = ROOT_TOL)]
        tol: f64,
    },
    /// Degree of the eigenset over λ, and of one eigenpoint with --point.
    Degree {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        point: Option<Vec<f64>>,
    },
    /// sign P(b) − sign P(a) for the characteristic polynomial P of L.
    IntervalDegree {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
    },
    /// Continues the solution set of Lv + sN(v) = λv from a trivial solution.
    Continue {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        start_lambda: f64,
        #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
        start_v: Vec<f64>,
        /// Largest predictor step.
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        /// Box |s|, |λ| ≤ bound beyond which a branch counts as unbounded.
        #[arg(long, default_value_t = 10.0)]
        bound: f64,
        #[arg(long, default_value_t = 200_000)]
        max_points: usize,
        /// Branch record path; further branches go to `stem-2.ext`, ….
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Samples of det(L + sN − λI) = 0 on a grid, as CSV `s,lambda`.
    Eigenpairs {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        smin: f64,
        #[arg(long, allow_negative_numbers = true)]
        smax: f64,
        #[arg(long, allow_negative_numbers = true)]
        lmin: f64,
        #[arg(long, allow_negative_numbers = true)]
        lmax: f64,
        #[arg(long, default_value_t = 200)]
        res: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks the built-in examples against their closed-form solutions.
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        example: Option<u32>,
        #[arg(long)]
        all: bool,
    },
    /// Interval degree over (a, b) under random perturbations of L.
    Probe {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, default_value_t = 1e-3)]
        radius: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Writes the problem file of a built-in example.
    Example {
        id: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Runs `f` against `path`, or stdout when absent.
fn with_output(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<(), CliError>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut w = std::io::BufWriter::new(
                std::fs::File::create(p).map_err(|e| CliError::io(p.display().to_string(), e))?,
            );
            f(&mut w)?;
            w.flush().map_err(|e| CliError::io(p.display().to_string(), e))
        }
        None => f(&mut std::io::stdout().lock()),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    match cli.cmd {
        Cmd::Eigen { file, tol } => commands::eigen(&problem_file::load(&file)?, tol, &mut stdout),
        Cmd::Degree { file, lambda, point } => {
            commands::degree(&problem_file::load(&file)?, lambda, point.as_deref(), &mut stdout)
        }
        Cmd::IntervalDegree { file, a, b } => {
            commands::interval_degree(&problem_file::load(&file)?, a, b, &mut stdout)
        }
        Cmd::Continue { file, start_lambda, start_v, step, bound, max_points, out, format } => {
            if !(step > 0.0) || !(bound > 0.0) || max_points < 2 {
                return Err(CliError::input("--step and --bound must be positive, --max-points at least 2"));
            }
            let defaults = TraceOptions::default();
            let opts = TraceOptions {
                h0: defaults.h0.min(step),
                max_step: step,
                min_step: defaults.min_step.min(step),
                bound,
                max_points,
                ..defaults
            };
            let args = ContinueArgs { start_lambda, start_v: &start_v, opts, out: out.as_deref(), format };
            commands::continue_branch(&problem_file::load(&file)?, &args, &mut stdout)
        }
        Cmd::Eigenpairs { file, smin, smax, lmin, lmax, res, out } => {
            let prob = problem_file::load(&file)?;
            let grid = EigenpairGrid { s_min: smin, s_max: smax, lambda_min: lmin, lambda_max: lmax, resolution: res };
            drop(stdout);
            with_output(out.as_deref(), |w| commands::eigenpairs(&prob, &grid, w))
        }
        Cmd::Verify { example, all } => {
            let ids: Vec<u32> = if all { (1..=6).collect() } else { example.into_iter().collect() };
            commands::verify(&ids, &mut stdout)
        }
        Cmd::Probe { file, a, b, radius, trials, seed } => {
            commands::probe(&problem_file::load(&file)?, a, b, radius, trials, seed, &mut stdout)
        }
        Cmd::Example { id, out } => {
            drop(stdout);
            with_output(out.as_deref(), |w| commands::example(id, w))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
