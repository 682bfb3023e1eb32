//! Multi-seed benchmark campaigns.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use pucc_core::driver::{solve, RunLog};
use pucc_core::model::verify_solution;
use pucc_core::search::Budget;
use pucc_core::{Error, Instance, Result, SolverParams};
use rayon::prelude::*;

use crate::TARGET_TOLERANCE;

/// Overlap depth a benchmark result may have and still count as feasible.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub seed: u64,
    pub r_best: f64,
    pub feasible: bool,
    pub elapsed_seconds: f64,
    pub time_to_best: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSummary {
    pub instance: String,
    pub runs: usize,
    pub best: f64,
    pub avg: f64,
    pub worst: f64,
    /// Runs within the target tolerance of `best`.
    pub successes: usize,
    pub success_rate: f64,
    pub mean_time_to_best: f64,
}

#[derive(Debug, Clone, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub summary: Vec<BenchSummary>,
    pub log: RunLog,
}

/// Runs `runs` seeds (`0..runs`) of every instance on `threads` workers.
/// Rows come back in instance order, then seed order.
pub fn bench_run(
    instances: &[Instance],
    runs: usize,
    time_limit: Duration,
    threads: usize,
    params: &SolverParams,
) -> Result<BenchReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::usage(format!("cannot start {threads} worker threads: {e}")))?;
    let jobs: Vec<(usize, u64)> = (0..instances.len()).flat_map(|k| (0..runs as u64).map(move |s| (k, s))).collect();
    let results: Vec<_> = pool.install(|| {
        jobs.par_iter()
            .map(|&(k, seed)| {
                let instance = &instances[k];
                let res = solve(instance, params, Budget::time(time_limit), seed);
                let report = verify_solution(instance, &res.best_configuration, Some(FEASIBILITY_TOLERANCE), params.eps1)?;
                Ok((k, res, report.feasible))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut report = BenchReport::default();
    for (run_id, (k, res, feasible)) in results.into_iter().enumerate() {
        report.log.push_run(run_id as u64, res.seed, &res.improvements);
        report.rows.push(BenchRow {
            instance: instances[k].name().to_string(),
            seed: res.seed,
            r_best: res.best_radius,
            feasible,
            elapsed_seconds: res.elapsed_seconds,
            time_to_best: res.time_to_best,
        });
    }
    report.summary = summarize(&report.rows);
    Ok(report)
}

/// Per-instance statistics, in order of first appearance.
pub fn summarize(rows: &[BenchRow]) -> Vec<BenchSummary> {
    let mut names: Vec<&str> = Vec::new();
    for r in rows {
        if !names.contains(&r.instance.as_str()) {
            names.push(&r.instance);
        }
    }
    names
        .into_iter()
        .map(|name| {
            let group: Vec<&BenchRow> = rows.iter().filter(|r| r.instance == name).collect();
            let runs = group.len();
            let best = group.iter().map(|r| r.r_best).fold(f64::INFINITY, f64::min);
            let worst = group.iter().map(|r| r.r_best).fold(f64::NEG_INFINITY, f64::max);
            let avg = group.iter().map(|r| r.r_best).sum::<f64>() / runs as f64;
            let successes = group.iter().filter(|r| r.r_best - best <= TARGET_TOLERANCE).count();
            let mean_time_to_best = group.iter().map(|r| r.time_to_best).sum::<f64>() / runs as f64;
            BenchSummary {
                instance: name.to_string(),
                runs,
                best,
                avg,
                worst,
                successes,
                success_rate: successes as f64 / runs as f64,
                mean_time_to_best,
            }
        })
        .collect()
}

/// `out/bench.csv` -> `out/bench.<suffix>.csv`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}.csv"))
}

pub fn write_rows(path: &Path, rows: &[BenchRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["instance", "seed", "r_best", "feasible", "elapsed_seconds", "time_to_best"])?;
    for r in rows {
        w.write_record([
            r.instance.clone(),
            r.seed.to_string(),
            r.r_best.to_string(),
            r.feasible.to_string(),
            r.elapsed_seconds.to_string(),
            r.time_to_best.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows(path: &Path) -> Result<Vec<BenchRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut rows = Vec::new();
    for (k, record) in r.records().enumerate() {
        let record = record?;
        let line = k + 2;
        let field = |i: usize| {
            record.get(i).ok_or_else(|| Error::Parse { line, msg: format!("missing column {}", i + 1) })
        };
        let bad = |what: &str| Error::Parse { line, msg: format!("invalid {what}") };
        rows.push(BenchRow {
            instance: field(0)?.to_string(),
            seed: field(1)?.parse().map_err(|_| bad("seed"))?,
            r_best: field(2)?.parse().map_err(|_| bad("r_best"))?,
            feasible: field(3)?.parse().map_err(|_| bad("feasible"))?,
            elapsed_seconds: field(4)?.parse().map_err(|_| bad("elapsed_seconds"))?,
            time_to_best: field(5)?.parse().map_err(|_| bad("time_to_best"))?,
        });
    }
    Ok(rows)
}

pub fn write_summary(path: &Path, summary: &[BenchSummary]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["instance", "runs", "best", "avg", "worst", "success_rate", "mean_time_to_best"])?;
    for s in summary {
        w.write_record([
            s.instance.clone(),
            s.runs.to_string(),
            s.best.to_string(),
            s.avg.to_string(),
            s.worst.to_string(),
            s.success_rate.to_string(),
            s.mean_time_to_best.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

impl BenchReport {
    /// Writes the rows to `path` and the summary and improvement log next to it.
    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        write_rows(path, &self.rows)?;
        write_summary(&sibling(path, "summary"), &self.summary)?;
        self.log.write_csv(fs::File::create(sibling(path, "log"))?)
    }
}
