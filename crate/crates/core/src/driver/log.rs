use std::collections::BTreeMap;
use std::io::{Read, Write};

use crate::error::{Error, Result};

const HEADER: [&str; 4] = ["run_id", "seed", "t_seconds", "radius"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogEvent {
    pub run_id: u64,
    pub seed: u64,
    pub t_seconds: f64,
    pub radius: f64,
}

/// Improvement events of one or more runs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunLog {
    pub events: Vec<LogEvent>,
}

impl RunLog {
    pub fn new() -> Self {
        RunLog::default()
    }

    pub fn push_run(&mut self, run_id: u64, seed: u64, improvements: &[(f64, f64)]) {
        self.events
            .extend(improvements.iter().map(|&(t_seconds, radius)| LogEvent { run_id, seed, t_seconds, radius }));
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(HEADER)?;
        for e in &self.events {
            w.write_record([e.run_id.to_string(), e.seed.to_string(), e.t_seconds.to_string(), e.radius.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        if r.headers()?.iter().ne(HEADER) {
            return Err(Error::parse(1, format!("expected header {}", HEADER.join(","))));
        }
        let mut events = Vec::new();
        for (k, record) in r.records().enumerate() {
            let record = record?;
            let line = k + 2;
            let field = |i: usize| record.get(i).ok_or_else(|| Error::parse(line, "missing field"));
            let bad = |what: &str| Error::parse(line, format!("invalid {what}"));
            events.push(LogEvent {
                run_id: field(0)?.trim().parse().map_err(|_| bad("run_id"))?,
                seed: field(1)?.trim().parse().map_err(|_| bad("seed"))?,
                t_seconds: field(2)?.trim().parse().map_err(|_| bad("t_seconds"))?,
                radius: field(3)?.trim().parse().map_err(|_| bad("radius"))?,
            });
        }
        Ok(RunLog { events })
    }
}

/// Earliest time each run reached a radius at most `target + tol`.
pub fn success_times(log: &RunLog, target: f64, tol: f64) -> Vec<f64> {
    let mut first: BTreeMap<u64, f64> = BTreeMap::new();
    for e in log.events.iter().filter(|e| e.radius <= target + tol) {
        first.entry(e.run_id).and_modify(|t| *t = t.min(e.t_seconds)).or_insert(e.t_seconds);
    }
    first.into_values().collect()
}
