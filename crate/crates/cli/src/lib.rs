//! The `pucc` command line: instance generation, solving, verification,
//! rendering, vacancy listing, benchmark campaigns and run-time
//! distributions.

pub mod bench;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand};
use pucc_core::driver::{rtd, solve, success_times, RunLog};
use pucc_core::model::{
    generate_instance, read_instance, read_solution, render_svg, verify_solution, write_instance, write_solution,
    Solution,
};
use pucc_core::optimizer::ContainerStatus;
use pucc_core::search::Budget;
use pucc_core::vacancy::detect_all;
use pucc_core::{Error, Instance, Result, SolverParams};

pub use bench::{bench_run, summarize, BenchRow, BenchSummary};

/// Exit status for success.
pub const EXIT_OK: u8 = 0;
/// Exit status for an infeasible verification or a solver fallback.
pub const EXIT_INFEASIBLE: u8 = 1;
/// Exit status for usage, parse and I/O errors.
pub const EXIT_USAGE: u8 = 2;

/// Absolute radius tolerance for "reached the target".
pub const TARGET_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "pucc", version, about = "Pack unequal circles into the smallest circular container")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a benchmark instance.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search for a small container and write the best packing.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        time_limit: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Greedy local search only (no hash-deduplicated core).
        #[arg(long)]
        no_shs_core: bool,
        /// Replace the wall clock by a budget of K layout optimizations;
        /// makes runs reproducible.
        #[arg(long, value_name = "K")]
        iter_budget: Option<u64>,
    },
    /// Check a solution for overlaps.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        /// Largest admissible overlap depth; without it the penalty energy
        /// must be at most 1e-25.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Draw a solution as SVG.
    Render {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the holes of a solution, largest first.
    Vacancies {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run several seeds on a range of instance sizes.
    Bench {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        runs: usize,
        #[arg(long)]
        time_limit: f64,
        #[arg(long)]
        threads: usize,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Fraction of runs in a log that reached a target radius over time.
    Rtd {
        #[arg(long)]
        log: PathBuf,
        #[arg(long)]
        target: f64,
        #[arg(long)]
        n_runs: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run_cli<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn load_solution(instance: &Instance, path: &Path) -> Result<Solution> {
    let solution = read_solution(path)?;
    solution.check_matches(instance)?;
    Ok(solution)
}

fn duration(seconds: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(seconds).map_err(|_| Error::usage(format!("invalid time limit {seconds}")))
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Gen { family, n, out } => {
            write_instance(&out, &generate_instance(&family, n)?)?;
            Ok(EXIT_OK)
        }
        Command::Solve { instance, time_limit, seed, out, svg, no_shs_core, iter_budget } => {
            let instance = read_instance(&instance)?;
            let params = SolverParams { enable_shs_core: !no_shs_core, ..SolverParams::default() };
            let budget = match iter_budget {
                Some(k) => Budget::optimizations(k),
                None => Budget::time(duration(time_limit)?),
            };
            let result = solve(&instance, &params, budget, seed);
            write_solution(&out, &instance, &result.best_configuration)?;
            if let Some(path) = svg {
                fs::write(path, render_svg(&instance, &result.best_configuration))?;
            }
            println!(
                "{} R={:.10} time={:.3}s time_to_best={:.3}s",
                instance.name(),
                result.best_radius,
                result.elapsed_seconds,
                result.time_to_best
            );
            if result.status == ContainerStatus::Fallback {
                eprintln!("warning: the container shrink did not converge; the layout was inflated to fit");
                return Ok(EXIT_INFEASIBLE);
            }
            Ok(EXIT_OK)
        }
        Command::Verify { instance, solution, tol } => {
            let instance = read_instance(&instance)?;
            let solution = load_solution(&instance, &solution)?;
            let params = SolverParams::default();
            let report = verify_solution(&instance, &solution.config, tol, params.eps1)?;
            println!("R = {}", solution.config.container_radius);
            println!("max_pair_depth = {:e}", report.max_pair_depth);
            println!("max_boundary_depth = {:e}", report.max_boundary_depth);
            println!("energy = {:e}", report.energy);
            println!("feasible = {}", report.feasible);
            Ok(if report.feasible { EXIT_OK } else { EXIT_INFEASIBLE })
        }
        Command::Render { instance, solution, out } => {
            let instance = read_instance(&instance)?;
            let solution = load_solution(&instance, &solution)?;
            fs::write(out, render_svg(&instance, &solution.config))?;
            Ok(EXIT_OK)
        }
        Command::Vacancies { instance, solution, out } => {
            let instance = read_instance(&instance)?;
            let solution = load_solution(&instance, &solution)?;
            let vacancies = detect_all(&instance, &solution.config, SolverParams::default().eps0);
            let sink: Box<dyn Write> = match out {
                Some(path) => Box::new(fs::File::create(path)?),
                None => Box::new(std::io::stdout().lock()),
            };
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(["center_x", "center_y", "radius"]).map_err(Error::from)?;
            for v in vacancies {
                w.write_record([v.center[0].to_string(), v.center[1].to_string(), v.radius.to_string()])
                    .map_err(Error::from)?;
            }
            w.flush()?;
            Ok(EXIT_OK)
        }
        Command::Bench { family, n_min, n_max, runs, time_limit, threads, csv } => {
            if runs == 0 || threads == 0 || n_min == 0 || n_min > n_max {
                return Err(Error::usage("bench needs runs >= 1, threads >= 1 and 1 <= n-min <= n-max"));
            }
            let instances = (n_min..=n_max).map(|n| generate_instance(&family, n)).collect::<Result<Vec<_>>>()?;
            let report = bench_run(&instances, runs, duration(time_limit)?, threads, &SolverParams::default())?;
            report.write(&csv)?;
            for s in &report.summary {
                println!(
                    "{} best={:.8} avg={:.8} worst={:.8} sr={}/{}",
                    s.instance, s.best, s.avg, s.worst, s.successes, s.runs
                );
            }
            Ok(EXIT_OK)
        }
        Command::Rtd { log, target, n_runs, out } => {
            let log = RunLog::read_csv(fs::File::open(&log)?)?;
            let dist = rtd(&success_times(&log, target, TARGET_TOLERANCE), n_runs)?;
            let mut w = csv::Writer::from_path(&out).map_err(Error::from)?;
            w.write_record(["t_seconds", "probability"]).map_err(Error::from)?;
            for (t, p) in dist.steps() {
                w.write_record([t.to_string(), p.to_string()]).map_err(Error::from)?;
            }
            w.flush()?;
            Ok(EXIT_OK)
        }
    }
}
