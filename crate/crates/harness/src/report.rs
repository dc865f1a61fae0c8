use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Aggregates that are a pure function of an experiment's config and trial records.
pub trait Recompute: Sized {
    type Config;
    type Trial;

    fn recompute(config: &Self::Config, trials: &[Self::Trial]) -> Self;
}

/// Experiment output: config echo, per-trial records, aggregates.
///
/// Everything except `wall_clock_ms` is a deterministic function of `config`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<C, T, A> {
    pub id: String,
    pub version: String,
    pub config: C,
    pub trials: Vec<T>,
    pub aggregates: A,
    pub wall_clock_ms: u64,
}

impl<C, T, A> Report<C, T, A>
where
    A: Recompute<Config = C, Trial = T> + PartialEq,
{
    pub(crate) fn assemble(id: String, config: C, trials: Vec<T>, start: Instant) -> Self {
        let aggregates = A::recompute(&config, &trials);
        Report {
            id,
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            trials,
            aggregates,
            wall_clock_ms: start.elapsed().as_millis() as u64,
        }
    }

    /// True iff the stored aggregates equal a recomputation from the trial records.
    pub fn audit(&self) -> bool {
        A::recompute(&self.config, &self.trials) == self.aggregates
    }
}

impl<C: Serialize, T: Serialize, A: Serialize> Report<C, T, A> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report types serialize");
        s.push('\n');
        s
    }

    /// JSON with the wall clock zeroed, for byte comparisons between reruns.
    pub fn canonical_json(&self) -> String
    where
        C: Clone,
        T: Clone,
        A: Clone,
    {
        Report {
            wall_clock_ms: 0,
            id: self.id.clone(),
            version: self.version.clone(),
            config: self.config.clone(),
            trials: self.trials.clone(),
            aggregates: self.aggregates.clone(),
        }
        .to_json()
    }
}
