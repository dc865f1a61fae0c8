//! Monte Carlo experiments. Trial `i` of an experiment with master seed `s` uses the
//! seed `derive(s, i)` (SplitMix64 finalizer over `s + (i + 1)·γ`), and everything in
//! the trial (instances, ordering, algorithm coins) is derived from that one value.

use std::time::Instant;

use csplab_core::algorithms::{AlgorithmSpec, Mode};
use csplab_core::generators::{gap_check, percentile, GeneratorSpec};
use csplab_core::stream::{ExecutionPlan, Ordering, Output, RunOptions, Verdict};
use csplab_core::{seed, BruteForce, Error as CoreError, Instance};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::report::{Recompute, Report};

/// Failure probability for confidence intervals unless a config says otherwise.
pub const DEFAULT_DELTA: f64 = 0.05;

/// Success probability a distinguisher is held to.
pub const SUCCESS_PROBABILITY: f64 = 2.0 / 3.0;

/// Advantage estimates need at least this many trials.
pub const MIN_ADVANTAGE_TRIALS: usize = 100;

pub fn trial_seed(master: u64, trial: u64) -> u64 {
    seed::derive(master, trial)
}

/// Hoeffding half-width `sqrt(ln(2/δ) / 2N)`.
pub fn hoeffding_halfwidth(trials: usize, delta: f64) -> f64 {
    ((2.0 / delta).ln() / (2.0 * trials as f64)).sqrt()
}

fn default_delta() -> f64 {
    DEFAULT_DELTA
}

fn default_passes() -> usize {
    1
}

fn plan(ordering: Ordering, passes: usize, space_bits: Option<u64>, seed: u64) -> ExecutionPlan {
    ExecutionPlan {
        ordering,
        seed,
        passes,
        space_bits,
    }
}

fn run_one(algo: &AlgorithmSpec, inst: &Instance, plan: &ExecutionPlan) -> Result<Output> {
    let alg = algo.build(inst, plan)?;
    Ok(alg.run(inst, plan, RunOptions::default())?.output)
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(CoreError::Config(format!("delta must lie in (0, 1), got {delta}")).into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdvantageConfig {
    pub algo: AlgorithmSpec,
    pub yes: GeneratorSpec,
    pub no: GeneratorSpec,
    #[serde(default)]
    pub ordering: Ordering,
    /// Master seed.
    pub seed: u64,
    #[serde(default = "default_passes")]
    pub passes: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space_bits: Option<u64>,
    pub trials: usize,
    #[serde(default = "default_delta")]
    pub delta: f64,
    /// Value-mode algorithms accept ("Yes") iff their output reaches this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdvantageTrial {
    pub trial: u64,
    pub seed: u64,
    pub yes_output: Output,
    pub no_output: Output,
    pub yes_accept: bool,
    pub no_accept: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdvantageAggregates {
    pub trials: usize,
    pub yes_accept_rate: f64,
    pub no_accept_rate: f64,
    pub advantage: f64,
    pub ci_halfwidth: f64,
    pub delta: f64,
}

impl Recompute for AdvantageAggregates {
    type Config = AdvantageConfig;
    type Trial = AdvantageTrial;

    fn recompute(config: &AdvantageConfig, trials: &[AdvantageTrial]) -> Self {
        let n = trials.len();
        let ya = trials.iter().filter(|t| t.yes_accept).count();
        let na = trials.iter().filter(|t| t.no_accept).count();
        AdvantageAggregates {
            trials: n,
            yes_accept_rate: ya as f64 / n as f64,
            no_accept_rate: na as f64 / n as f64,
            advantage: (ya as f64 - na as f64) / n as f64,
            ci_halfwidth: hoeffding_halfwidth(n, config.delta),
            delta: config.delta,
        }
    }
}

/// Yes iff a verdict is `Consistent` or a value/count reaches the threshold.
fn accepts(out: Output, threshold: Option<f64>) -> bool {
    match out {
        Output::Verdict(v) => v == Verdict::Consistent,
        Output::Value(x) => x >= threshold.expect("checked before the run"),
        Output::Count(c) => c as f64 >= threshold.expect("checked before the run"),
    }
}

pub fn estimate_advantage(
    config: &AdvantageConfig,
) -> Result<Report<AdvantageConfig, AdvantageTrial, AdvantageAggregates>> {
    let start = Instant::now();
    check_delta(config.delta)?;
    if config.trials < MIN_ADVANTAGE_TRIALS {
        return Err(CoreError::Config(format!(
            "advantage needs at least {MIN_ADVANTAGE_TRIALS} trials, got {}",
            config.trials
        ))
        .into());
    }
    let mode = config.algo.info()?.mode;
    if mode != Mode::Verdict && config.threshold.is_none() {
        return Err(CoreError::Config(format!(
            "`{}` outputs a {mode:?} and no verdict; supply `threshold`",
            config.algo.algo
        ))
        .into());
    }
    let trials = (0..config.trials as u64)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(config.seed, i);
            let yes = config.yes.with_seed(seed::derive(s, 0)).generate()?.instance;
            let no = config.no.with_seed(seed::derive(s, 1)).generate()?.instance;
            let p = |child| plan(config.ordering, config.passes, config.space_bits, seed::derive(s, child));
            let yes_output = run_one(&config.algo, &yes, &p(2))?;
            let no_output = run_one(&config.algo, &no, &p(3))?;
            Ok(AdvantageTrial {
                trial: i,
                seed: s,
                yes_output,
                no_output,
                yes_accept: accepts(yes_output, config.threshold),
                no_accept: accepts(no_output, config.threshold),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::assemble(
        format!("advantage/{}/{}", config.algo.algo, config.seed),
        config.clone(),
        trials,
        start,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatioConfig {
    pub algo: AlgorithmSpec,
    pub spec: GeneratorSpec,
    #[serde(default)]
    pub ordering: Ordering,
    pub seed: u64,
    #[serde(default = "default_passes")]
    pub passes: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space_bits: Option<u64>,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioTrial {
    pub trial: u64,
    pub seed: u64,
    pub output: f64,
    pub maxval: f64,
    pub ratio: f64,
    /// Output above the optimum, which only an additive-error estimator may do.
    pub violation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioAggregates {
    pub trials: usize,
    pub min_ratio: f64,
    pub mean_ratio: f64,
    pub p05_ratio: f64,
    pub mean_abs_error: f64,
    pub max_abs_error: f64,
    pub violations: usize,
}

impl Recompute for RatioAggregates {
    type Config = RatioConfig;
    type Trial = RatioTrial;

    fn recompute(_: &RatioConfig, trials: &[RatioTrial]) -> Self {
        let n = trials.len() as f64;
        let ratios: Vec<f64> = trials.iter().map(|t| t.ratio).collect();
        let errs = trials.iter().map(|t| (t.output - t.maxval).abs());
        RatioAggregates {
            trials: trials.len(),
            min_ratio: ratios.iter().copied().fold(f64::INFINITY, f64::min),
            mean_ratio: ratios.iter().sum::<f64>() / n,
            p05_ratio: percentile(&ratios, 5.0).unwrap_or(f64::NAN),
            mean_abs_error: errs.clone().sum::<f64>() / n,
            max_abs_error: errs.fold(0.0, f64::max),
            violations: trials.iter().filter(|t| t.violation).count(),
        }
    }
}

pub fn ratio_experiment(
    config: &RatioConfig,
) -> Result<Report<RatioConfig, RatioTrial, RatioAggregates>> {
    let start = Instant::now();
    if config.trials == 0 {
        return Err(CoreError::Config("ratio experiment needs at least one trial".into()).into());
    }
    if config.algo.info()?.mode != Mode::Value {
        return Err(CoreError::Config(format!(
            "`{}` does not output a value",
            config.algo.algo
        ))
        .into());
    }
    let brute = BruteForce::from_env();
    let trials = (0..config.trials as u64)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(config.seed, i);
            let inst = config.spec.with_seed(seed::derive(s, 0)).generate()?.instance;
            let (best, _) = brute.max_value(&inst)?;
            let maxval = *best.numer() as f64 / *best.denom() as f64;
            let p = plan(config.ordering, config.passes, config.space_bits, seed::derive(s, 2));
            let output = match run_one(&config.algo, &inst, &p)? {
                Output::Value(v) => v,
                other => unreachable!("value-mode algorithm returned {other:?}"),
            };
            Ok(RatioTrial {
                trial: i,
                seed: s,
                output,
                maxval,
                ratio: output / maxval,
                violation: output > maxval + 1e-12,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::assemble(
        format!("ratio/{}/{}", config.algo.algo, config.seed),
        config.clone(),
        trials,
        start,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapConfig {
    pub yes: GeneratorSpec,
    pub no: GeneratorSpec,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapTrial {
    pub trial: u64,
    pub yes_maxval: f64,
    pub no_maxval: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapAggregates {
    pub trials: usize,
    pub mean_yes: f64,
    pub mean_no: f64,
    pub yes_p05: f64,
    pub no_p95: f64,
    pub gap: f64,
}

impl Recompute for GapAggregates {
    type Config = GapConfig;
    type Trial = GapTrial;

    fn recompute(_: &GapConfig, trials: &[GapTrial]) -> Self {
        let ys: Vec<f64> = trials.iter().map(|t| t.yes_maxval).collect();
        let ns: Vec<f64> = trials.iter().map(|t| t.no_maxval).collect();
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let yes_p05 = percentile(&ys, 5.0).unwrap_or(f64::NAN);
        let no_p95 = percentile(&ns, 95.0).unwrap_or(f64::NAN);
        GapAggregates {
            trials: trials.len(),
            mean_yes: mean(&ys),
            mean_no: mean(&ns),
            yes_p05,
            no_p95,
            gap: yes_p05 - no_p95,
        }
    }
}

/// [`gap_check`] packaged as a report. Sample `t` of each side uses `spec.trial(t)`.
pub fn gap_experiment(config: &GapConfig) -> Result<Report<GapConfig, GapTrial, GapAggregates>> {
    let start = Instant::now();
    let g = gap_check(&config.yes, &config.no, config.trials, &BruteForce::from_env())?;
    let trials = g
        .yes
        .iter()
        .zip(&g.no)
        .enumerate()
        .map(|(i, (&y, &n))| GapTrial {
            trial: i as u64,
            yes_maxval: y,
            no_maxval: n,
        })
        .collect();
    Ok(Report::assemble(
        format!("gapcheck/{}/{}", config.yes.label(), config.no.label()),
        config.clone(),
        trials,
        start,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use csplab_core::generators::Mode as GenMode;

    fn chunks(mode: GenMode) -> GeneratorSpec {
        GeneratorSpec::MatchingChunks {
            n: 40,
            chunks: 4,
            alpha: 0.375,
            mode,
            eta: 0.0,
            seed: 0,
        }
    }

    #[test]
    fn halfwidth_arithmetic() {
        assert!((hoeffding_halfwidth(2000, 0.05) - 0.03039).abs() < 1e-4);
    }

    #[test]
    fn trial_seeds_do_not_collide() {
        let mut seen = std::collections::HashSet::with_capacity(1 << 20);
        for i in 0..1_000_000 {
            assert!(seen.insert(trial_seed(12345, i)));
        }
    }

    #[test]
    fn constant_algorithm_has_no_advantage() {
        let mut algo = AlgorithmSpec::new("trivial");
        algo.eps = Some(0.1);
        let cfg = AdvantageConfig {
            algo,
            yes: chunks(GenMode::Yes),
            no: chunks(GenMode::No),
            ordering: Ordering::Random,
            seed: 9,
            passes: 1,
            space_bits: None,
            trials: 100,
            delta: 0.05,
            threshold: Some(0.3),
        };
        let r = estimate_advantage(&cfg).unwrap();
        assert_eq!(r.aggregates.advantage, 0.0);
        assert!(r.audit());
    }

    #[test]
    fn value_algorithms_need_a_threshold() {
        let mut algo = AlgorithmSpec::new("trivial");
        algo.eps = Some(0.1);
        let cfg = AdvantageConfig {
            algo,
            yes: chunks(GenMode::Yes),
            no: chunks(GenMode::No),
            ordering: Ordering::Adversarial,
            seed: 0,
            passes: 1,
            space_bits: None,
            trials: 100,
            delta: 0.05,
            threshold: None,
        };
        assert!(matches!(
            estimate_advantage(&cfg),
            Err(crate::Error::Core(CoreError::Config(_)))
        ));
    }
}
