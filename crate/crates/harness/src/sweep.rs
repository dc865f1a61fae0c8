//! Advantage over a grid of space budgets and pass counts, one CSV row per cell.

use csplab_core::algorithms::AlgorithmSpec;
use csplab_core::generators::GeneratorSpec;
use csplab_core::stream::Ordering;
use csplab_core::Error as CoreError;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::experiment::{estimate_advantage, hoeffding_halfwidth, AdvantageConfig, DEFAULT_DELTA};

pub const CSV_HEADER: [&str; 11] = [
    "algo",
    "generator_yes",
    "generator_no",
    "n",
    "space_bits",
    "passes",
    "trials",
    "advantage",
    "ci_halfwidth",
    "master_seed",
    "error",
];

fn default_delta() -> f64 {
    DEFAULT_DELTA
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub algo: AlgorithmSpec,
    pub yes: GeneratorSpec,
    pub no: GeneratorSpec,
    #[serde(default)]
    pub ordering: Ordering,
    /// Master seed, shared by every cell.
    pub seed: u64,
    pub space_grid: Vec<u64>,
    pub pass_grid: Vec<usize>,
    pub trials: usize,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub algo: String,
    pub generator_yes: String,
    pub generator_no: String,
    pub n: usize,
    pub space_bits: u64,
    pub passes: usize,
    pub trials: usize,
    pub advantage: Option<f64>,
    pub ci_halfwidth: f64,
    pub master_seed: u64,
    pub error: Option<String>,
}

/// Runs every (space, passes) cell. A failing cell becomes a row with `error` set.
pub fn space_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    if config.space_grid.is_empty() || config.pass_grid.is_empty() {
        return Err(CoreError::Config("sweep grids must be nonempty".into()).into());
    }
    let mut rows = Vec::with_capacity(config.space_grid.len() * config.pass_grid.len());
    for &space in &config.space_grid {
        for &passes in &config.pass_grid {
            let mut algo = config.algo.clone();
            algo.space_bits = Some(space);
            let cell = AdvantageConfig {
                algo,
                yes: config.yes.clone(),
                no: config.no.clone(),
                ordering: config.ordering,
                seed: config.seed,
                passes,
                space_bits: Some(space),
                trials: config.trials,
                delta: config.delta,
                threshold: config.threshold,
            };
            let (advantage, error) = match estimate_advantage(&cell) {
                Ok(r) => (Some(r.aggregates.advantage), None),
                Err(e) => (None, Some(e.to_string())),
            };
            rows.push(SweepRow {
                algo: config.algo.algo.clone(),
                generator_yes: config.yes.label(),
                generator_no: config.no.label(),
                n: config.yes.n(),
                space_bits: space,
                passes,
                trials: config.trials,
                advantage,
                ci_halfwidth: hoeffding_halfwidth(config.trials, config.delta),
                master_seed: config.seed,
                error,
            });
        }
    }
    Ok(rows)
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.algo.clone(),
            r.generator_yes.clone(),
            r.generator_no.clone(),
            r.n.to_string(),
            r.space_bits.to_string(),
            r.passes.to_string(),
            r.trials.to_string(),
            r.advantage.map(|a| a.to_string()).unwrap_or_default(),
            r.ci_halfwidth.to_string(),
            r.master_seed.to_string(),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}
