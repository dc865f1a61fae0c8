//! Concrete streaming and sketching algorithms, and the id-keyed registry the
//! harness builds them from.

pub mod bias;
pub mod components;
pub mod sparsify;
pub mod trivial;
pub mod walks;

use serde::{Deserialize, Serialize};

use crate::bits::COUNTER_BITS;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::stream::sketch::{CounterSketch, Sketched};
use crate::stream::{run_stream_with, ExecutionPlan, Output, RunOptions, StreamingAlgorithm};
use crate::value::BruteForce;

pub use bias::{
    dicut_average_bias, dicut_greedy_assignment, dicut_greedy_bias, dicut_oblivious,
    dicut_oblivious_expected, BiasProfile, BiasSketch, DicutGreedyBias, ObliviousBias, Rounding,
    RoundingFn, TieRule,
};
pub use components::{component_growing, ComponentGrowing, ParityComponents};
pub use sparsify::{sparsify_solve, SparsifySolve};
pub use trivial::{trivial_approx, TrivialApprox};
pub use walks::{random_walk_odd_cycle, RandomWalkOddCycle, WalkerSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Value,
    Count,
    Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgorithmInfo {
    pub id: &'static str,
    pub params: &'static [&'static str],
    pub state_bits: &'static str,
    pub mode: Mode,
}

pub const REGISTRY: &[AlgorithmInfo] = &[
    AlgorithmInfo {
        id: "trivial",
        params: &["eps"],
        state_bits: "0",
        mode: Mode::Value,
    },
    AlgorithmInfo {
        id: "count",
        params: &["counter_bits"],
        state_bits: "counter_bits (default 32)",
        mode: Mode::Count,
    },
    AlgorithmInfo {
        id: "sparsify",
        params: &["eps", "sample_constant"],
        state_bits: "s*(k*ceil(log2 n) + k + 32) + 32, s = ceil(sample_constant*n/eps^2)",
        mode: Mode::Value,
    },
    AlgorithmInfo {
        id: "bias-greedy",
        params: &["tie"],
        state_bits: "1 + (2n + 2)*32",
        mode: Mode::Value,
    },
    AlgorithmInfo {
        id: "bias-oblivious",
        params: &["rounding"],
        state_bits: "1 + 2n*32 + 64 + 32",
        mode: Mode::Value,
    },
    AlgorithmInfo {
        id: "component-growing",
        params: &["space_bits"],
        state_bits: "space_bits; capacity floor(space_bits/(2*ceil(log2 n) + 1)) vertices",
        mode: Mode::Verdict,
    },
    AlgorithmInfo {
        id: "random-walk",
        params: &["walkers", "walk_length", "space_bits"],
        state_bits: "1 + ceil(log2(L+1)) + W*(2*ceil(log2 n) + 1 + 32)",
        mode: Mode::Verdict,
    },
];

pub fn lookup(id: &str) -> Option<&'static AlgorithmInfo> {
    REGISTRY.iter().find(|a| a.id == id)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieSpec {
    One,
    Zero,
    Coin,
}

/// Algorithm id plus parameters, as it appears in experiment configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmSpec {
    pub algo: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space_bits: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_constant: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counter_bits: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tie: Option<TieSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounding: Option<Rounding<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub walkers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub walk_length: Option<usize>,
}

impl AlgorithmSpec {
    pub fn new(algo: &str) -> Self {
        AlgorithmSpec {
            algo: algo.to_string(),
            eps: None,
            space_bits: None,
            sample_constant: None,
            counter_bits: None,
            tie: None,
            rounding: None,
            walkers: None,
            walk_length: None,
        }
    }

    pub fn info(&self) -> Result<&'static AlgorithmInfo> {
        lookup(&self.algo).ok_or_else(|| Error::Config(format!("unknown algorithm `{}`", self.algo)))
    }

    fn require_eps(&self) -> Result<f64> {
        self.eps
            .ok_or_else(|| Error::Config(format!("`{}` needs `eps`", self.algo)))
    }

    /// Instantiates the algorithm for `instance`'s variable count. Randomness comes
    /// from the plan's algorithm seed; a plan budget stands in for `space_bits`.
    pub fn build(&self, instance: &Instance, plan: &ExecutionPlan) -> Result<AnyAlgorithm> {
        let n = instance.n();
        let seed = plan.algorithm_seed();
        let space = self.space_bits.or(plan.space_bits);
        Ok(match self.info()?.id {
            "trivial" => AnyAlgorithm::Trivial(trivial_approx(instance.family(), self.require_eps()?)?),
            "count" => {
                let width = self.counter_bits.unwrap_or(COUNTER_BITS);
                if !(1..=63).contains(&width) {
                    return Err(Error::Config(format!("counter_bits {width} not in 1..=63")));
                }
                AnyAlgorithm::Count(Sketched(CounterSketch::new(width)))
            }
            "sparsify" => AnyAlgorithm::Sparsify(
                SparsifySolve::new(
                    instance.family(),
                    n,
                    self.require_eps()?,
                    self.sample_constant.unwrap_or(sparsify::DEFAULT_SAMPLE_CONSTANT),
                    seed,
                )?
                .with_brute_force(BruteForce::from_env()),
            ),
            "bias-greedy" => {
                let tie = match self.tie.unwrap_or(TieSpec::Coin) {
                    TieSpec::One => TieRule::One,
                    TieSpec::Zero => TieRule::Zero,
                    TieSpec::Coin => TieRule::Coin(seed),
                };
                AnyAlgorithm::BiasGreedy(dicut_greedy_bias(instance, tie)?)
            }
            "bias-oblivious" => AnyAlgorithm::BiasOblivious(dicut_oblivious(
                instance,
                self.rounding.clone().unwrap_or(Rounding::Step),
            )?),
            "component-growing" => {
                let bits = space.ok_or_else(|| {
                    Error::Config("`component-growing` needs `space_bits`".into())
                })?;
                AnyAlgorithm::ComponentGrowing(component_growing(instance, bits)?)
            }
            "random-walk" => {
                let length = match self.walk_length {
                    Some(l) => l,
                    None if plan.passes >= 2 => plan.passes - 1,
                    None => {
                        return Err(Error::Config(
                            "`random-walk` needs `walk_length` or at least 2 passes".into(),
                        ))
                    }
                };
                let walkers = match (self.walkers, space) {
                    (Some(w), _) => w,
                    (None, Some(bits)) => RandomWalkOddCycle::walkers_for_budget(n, length, bits),
                    (None, None) => (n as f64).sqrt().ceil() as usize,
                };
                AnyAlgorithm::RandomWalk(random_walk_odd_cycle(instance, walkers, length, seed)?)
            }
            other => unreachable!("registry id {other} without a builder"),
        })
    }
}

/// Any registered algorithm, dispatched by variant.
#[derive(Debug, Clone)]
pub enum AnyAlgorithm {
    Trivial(TrivialApprox),
    Count(Sketched<CounterSketch>),
    Sparsify(SparsifySolve),
    BiasGreedy(DicutGreedyBias),
    BiasOblivious(ObliviousBias),
    ComponentGrowing(ComponentGrowing),
    RandomWalk(RandomWalkOddCycle),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub output: Output,
    pub peak_bits: u64,
    pub budget: u64,
    pub updates: usize,
}

macro_rules! dispatch {
    ($self:expr, $alg:ident => $body:expr) => {
        match $self {
            AnyAlgorithm::Trivial($alg) => $body,
            AnyAlgorithm::Count($alg) => $body,
            AnyAlgorithm::Sparsify($alg) => $body,
            AnyAlgorithm::BiasGreedy($alg) => $body,
            AnyAlgorithm::BiasOblivious($alg) => $body,
            AnyAlgorithm::ComponentGrowing($alg) => $body,
            AnyAlgorithm::RandomWalk($alg) => $body,
        }
    };
}

impl AnyAlgorithm {
    pub fn declared_bits(&self) -> u64 {
        dispatch!(self, a => a.declared_bits())
    }

    pub fn mode(&self) -> Mode {
        match self {
            AnyAlgorithm::Count(_) => Mode::Count,
            AnyAlgorithm::ComponentGrowing(_) | AnyAlgorithm::RandomWalk(_) => Mode::Verdict,
            _ => Mode::Value,
        }
    }

    pub fn run(
        &self,
        instance: &Instance,
        plan: &ExecutionPlan,
        opts: RunOptions,
    ) -> Result<RunSummary> {
        dispatch!(self, a => {
            let out = run_stream_with(a, instance, plan, opts)?;
            Ok(RunSummary {
                output: out.output,
                peak_bits: out.peak_bits,
                budget: out.budget,
                updates: out.updates,
            })
        })
    }
}
