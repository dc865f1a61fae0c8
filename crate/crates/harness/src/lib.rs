//! Batch experiments over the `csplab-core` algorithms and generators: distinguishing
//! advantage, approximation ratios, space/pass sweeps, and the `csplab` command line.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod report;
pub mod sweep;

pub use error::{Error, Result};
pub use experiment::{
    estimate_advantage, gap_experiment, hoeffding_halfwidth, ratio_experiment, trial_seed,
    AdvantageConfig, GapConfig, RatioConfig, DEFAULT_DELTA, SUCCESS_PROBABILITY,
};
pub use report::Report;
pub use sweep::{space_sweep, sweep_csv, SweepConfig, SweepRow, CSV_HEADER};
