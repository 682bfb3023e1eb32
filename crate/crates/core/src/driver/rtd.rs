use crate::error::{Error, Result};

/// Empirical run-time distribution: the fraction of runs that reached the
/// target by time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rtd {
    times: Vec<f64>,
    runs: usize,
}

pub fn rtd(success_times: &[f64], runs: usize) -> Result<Rtd> {
    if runs == 0 {
        return Err(Error::usage("run count must be at least 1"));
    }
    if success_times.len() > runs {
        return Err(Error::usage(format!("{} successes for {runs} runs", success_times.len())));
    }
    let mut times = success_times.to_vec();
    times.sort_by(f64::total_cmp);
    Ok(Rtd { times, runs })
}

impl Rtd {
    pub fn runs(&self) -> usize {
        self.runs
    }

    pub fn probability(&self, t: f64) -> f64 {
        let hits = self.times.partition_point(|&s| s <= t);
        hits as f64 / self.runs as f64
    }

    /// `(t, P(t))` at every jump, in increasing `t`.
    pub fn steps(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for (k, &t) in self.times.iter().enumerate() {
            let p = (k + 1) as f64 / self.runs as f64;
            match out.last_mut() {
                Some(last) if last.0 == t => last.1 = p,
                _ => out.push((t, p)),
            }
        }
        out
    }
}
