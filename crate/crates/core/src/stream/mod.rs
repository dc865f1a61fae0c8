//! Space-bounded streaming execution.
//!
//! An algorithm is fixed for a given `n` and keeps a state between constraint arrivals.
//! The runner charges that state by its serialized length in bits after every step and
//! aborts with [`Error::BudgetExceeded`] the first time it is over budget. Working
//! memory inside a single `update` is not charged.
//!
//! Randomized algorithms are seed-indexed families of deterministic ones; the seed is
//! public and not charged.

pub mod sketch;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result, Step};
use crate::instance::{Constraint, Instance};
use crate::seed;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ordering {
    #[default]
    Adversarial,
    Random,
}

impl Ordering {
    pub fn name(self) -> &'static str {
        match self {
            Ordering::Adversarial => "adversarial",
            Ordering::Random => "random",
        }
    }
}

/// How to feed an instance to an algorithm.
///
/// `seed` drives both the random ordering (child 0) and the algorithm's own
/// randomness (child 1). A random ordering is drawn once and reused on every pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExecutionPlan {
    pub ordering: Ordering,
    pub seed: u64,
    pub passes: usize,
    /// Optional tighter budget than the algorithm declares.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space_bits: Option<u64>,
}

impl Default for ExecutionPlan {
    fn default() -> Self {
        ExecutionPlan {
            ordering: Ordering::Adversarial,
            seed: 0,
            passes: 1,
            space_bits: None,
        }
    }
}

impl ExecutionPlan {
    pub fn adversarial(passes: usize) -> Self {
        ExecutionPlan {
            passes,
            ..Self::default()
        }
    }

    pub fn random(seed: u64, passes: usize) -> Self {
        ExecutionPlan {
            ordering: Ordering::Random,
            seed,
            passes,
            space_bits: None,
        }
    }

    pub fn ordering_seed(&self) -> u64 {
        seed::derive(self.seed, 0)
    }

    pub fn algorithm_seed(&self) -> u64 {
        seed::derive(self.seed, 1)
    }
}

/// Constraint indices in stream order.
pub fn stream_order(instance: &Instance, ordering: Ordering, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..instance.m()).collect();
    if ordering == Ordering::Random {
        order.shuffle(&mut seed::rng(seed));
    }
    order
}

/// The constraint sequence an algorithm sees in one pass.
pub fn order_stream(instance: &Instance, ordering: Ordering, seed: u64) -> Vec<&Constraint> {
    let cs = instance.constraints();
    stream_order(instance, ordering, seed)
        .into_iter()
        .map(|i| &cs[i])
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    OddCycleFound,
    Consistent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Value(f64),
    Count(u64),
    Verdict(Verdict),
}

impl std::fmt::Display for Output {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Output::Value(v) => write!(f, "{v}"),
            Output::Count(c) => write!(f, "{c}"),
            Output::Verdict(Verdict::OddCycleFound) => f.write_str("odd-cycle-found"),
            Output::Verdict(Verdict::Consistent) => f.write_str("consistent"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Passes {
    Any,
    Exactly(usize),
}

/// A space-bounded streaming algorithm for a fixed number of variables.
pub trait StreamingAlgorithm {
    type State: Clone + PartialEq + std::fmt::Debug;

    /// Declared space `s(n)` in bits.
    fn declared_bits(&self) -> u64;

    fn passes(&self) -> Passes {
        Passes::Any
    }

    fn init(&self) -> Self::State;

    fn begin_pass(&self, _state: &mut Self::State, _pass: usize) {}

    fn update(&self, state: &mut Self::State, constraint: &Constraint);

    fn end_pass(&self, _state: &mut Self::State, _pass: usize) {}

    fn output(&self, state: &Self::State) -> Result<Output>;

    fn encode(&self, state: &Self::State) -> BitString;

    fn decode(&self, bits: &BitString) -> Self::State;

    /// Length of [`encode`](Self::encode)'s output, computed without building it.
    fn encoded_len(&self, state: &Self::State) -> u64 {
        self.encode(state).len() as u64
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Replace the state by `decode(encode(state))` after every step and fail if that
    /// changes it.
    pub verify_roundtrip: bool,
}

#[derive(Debug, Clone)]
pub struct RunOutcome<S> {
    pub output: Output,
    pub final_state: S,
    pub peak_bits: u64,
    pub budget: u64,
    pub updates: usize,
}

pub fn run_stream<A: StreamingAlgorithm>(
    alg: &A,
    instance: &Instance,
    plan: &ExecutionPlan,
) -> Result<RunOutcome<A::State>> {
    run_stream_with(alg, instance, plan, RunOptions::default())
}

pub fn run_stream_with<A: StreamingAlgorithm>(
    alg: &A,
    instance: &Instance,
    plan: &ExecutionPlan,
    opts: RunOptions,
) -> Result<RunOutcome<A::State>> {
    instance.require_nonempty()?;
    if plan.passes == 0 {
        return Err(Error::Config("passes must be positive".into()));
    }
    if let Passes::Exactly(p) = alg.passes() {
        if plan.passes != p {
            return Err(Error::Config(format!(
                "algorithm needs exactly {p} passes, plan has {}",
                plan.passes
            )));
        }
    }
    let declared = alg.declared_bits();
    let budget = plan.space_bits.map_or(declared, |b| b.min(declared));
    let order = order_stream(instance, plan.ordering, plan.ordering_seed());

    let mut peak = 0u64;
    let mut check = |state: &mut A::State, step: Step| -> Result<()> {
        let bits = alg.encoded_len(state);
        if bits > budget {
            return Err(Error::BudgetExceeded { step, bits, budget });
        }
        peak = peak.max(bits);
        if opts.verify_roundtrip {
            let encoded = alg.encode(state);
            debug_assert_eq!(encoded.len() as u64, bits);
            let restored = alg.decode(&encoded);
            if restored != *state {
                return Err(Error::StateLeak { step });
            }
            *state = restored;
        }
        Ok(())
    };

    let mut state = alg.init();
    check(&mut state, Step::Init)?;
    let mut updates = 0;
    for pass in 0..plan.passes {
        alg.begin_pass(&mut state, pass);
        check(&mut state, Step::BeginPass { pass })?;
        for (index, c) in order.iter().enumerate() {
            alg.update(&mut state, c);
            updates += 1;
            check(&mut state, Step::Update { pass, index })?;
        }
        alg.end_pass(&mut state, pass);
        check(&mut state, Step::EndPass { pass })?;
    }
    let output = alg.output(&state)?;
    Ok(RunOutcome {
        output,
        final_state: state,
        peak_bits: peak,
        budget,
        updates,
    })
}
