mod common;

use common::*;
use csplab_core::algorithms::{sparsify::next_replacement, BiasSketch, SparsifySolve};
use csplab_core::bits::{push_uint, BitString};
use csplab_core::error::Step;
use csplab_core::stream::sketch::{
    check_sketch_associativity, BrokenCounterSketch, CounterSketch, SketchingAlgorithm, Sketched,
};
use csplab_core::stream::{
    order_stream, run_stream, run_stream_with, ExecutionPlan, Ordering, Output, RunOptions,
    StreamingAlgorithm,
};
use csplab_core::{Constraint, Error, Instance, PredicateFamily};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_edge(rng: &mut ChaCha8Rng, n: u32) -> Constraint {
    let u = rng.random_range(1..=n);
    let mut v = rng.random_range(1..n);
    if v >= u {
        v += 1;
    }
    Constraint::edge(u, v)
}

#[test]
fn sketches_are_associative() {
    let counter = CounterSketch::new(8);
    assert!(check_sketch_associativity(&counter, |r| random_edge(r, 10), 1000, 1).passed());
    let bias = BiasSketch::new(10);
    assert!(check_sketch_associativity(&bias, |r| random_edge(r, 10), 1000, 2).passed());
}

#[test]
fn broken_compose_is_caught() {
    let broken = BrokenCounterSketch(CounterSketch::new(8));
    let found = check_sketch_associativity(&broken, |r| random_edge(r, 10), 1000, 3);
    assert!(!found.passed(), "{found:?}");
}

fn final_sketch<S: SketchingAlgorithm>(s: S, inst: &Instance) -> BitString {
    let alg = Sketched(s);
    let out = run_stream(&alg, inst, &ExecutionPlan::adversarial(1)).unwrap();
    alg.encode(&out.final_state)
}

#[test]
fn sketch_runs_ignore_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..5 {
        let inst = random_instance(&mut rng, 8, 20, &PredicateFamily::dicut());
        let counter = final_sketch(CounterSketch::new(8), &inst);
        let bias = final_sketch(BiasSketch::new(8), &inst);
        for _ in 0..100 {
            let mut cs = inst.constraints().to_vec();
            cs.shuffle(&mut rng);
            let shuffled = inst.with_constraints(cs).unwrap();
            assert_eq!(final_sketch(CounterSketch::new(8), &shuffled), counter);
            assert_eq!(final_sketch(BiasSketch::new(8), &shuffled), bias);
        }
    }
}

#[test]
fn counter_counts_seven() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let inst = random_instance(&mut rng, 5, 7, &PredicateFamily::cut());
    let alg = Sketched(CounterSketch::for_stream_len(7));
    assert_eq!(alg.declared_bits(), 3);
    let out = run_stream(&alg, &inst, &ExecutionPlan::adversarial(1)).unwrap();
    assert_eq!(out.output, Output::Count(7));
}

#[test]
fn ordering_modes() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let inst = random_instance(&mut rng, 6, 12, &PredicateFamily::cut());
    let adv = order_stream(&inst, Ordering::Adversarial, 99);
    assert!(adv.into_iter().eq(inst.constraints().iter()));
    assert_eq!(
        order_stream(&inst, Ordering::Random, 5),
        order_stream(&inst, Ordering::Random, 5)
    );
}

/// Records the stream it sees, one pass after another.
struct Recorder;

impl StreamingAlgorithm for Recorder {
    type State = Vec<Vec<Constraint>>;

    fn declared_bits(&self) -> u64 {
        u64::MAX
    }

    fn init(&self) -> Self::State {
        Vec::new()
    }

    fn begin_pass(&self, s: &mut Self::State, _: usize) {
        s.push(Vec::new());
    }

    fn update(&self, s: &mut Self::State, c: &Constraint) {
        s.last_mut().unwrap().push(c.clone());
    }

    fn output(&self, _: &Self::State) -> csplab_core::Result<Output> {
        Ok(Output::Count(0))
    }

    fn encode(&self, _: &Self::State) -> BitString {
        BitString::new()
    }

    fn decode(&self, _: &BitString) -> Self::State {
        Vec::new()
    }
}

#[test]
fn random_order_repeats_each_pass() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let inst = random_instance(&mut rng, 10, 30, &PredicateFamily::cut());
    for seed in 0..20 {
        let out = run_stream(&Recorder, &inst, &ExecutionPlan::random(seed, 2)).unwrap();
        let passes = out.final_state;
        assert_eq!(passes.len(), 2);
        assert_eq!(passes[0], passes[1]);
        let mut a = passes[0].clone();
        let mut b = inst.constraints().to_vec();
        a.sort_by(|x, y| x.vars().cmp(y.vars()));
        b.sort_by(|x, y| x.vars().cmp(y.vars()));
        assert_eq!(a, b);
    }
}

/// Declares `declared` bits but grows by `step` bits per update.
struct Leaky {
    declared: u64,
    step: u64,
}

impl StreamingAlgorithm for Leaky {
    type State = u64;

    fn declared_bits(&self) -> u64 {
        self.declared
    }

    fn init(&self) -> u64 {
        0
    }

    fn update(&self, s: &mut u64, _: &Constraint) {
        *s += self.step;
    }

    fn output(&self, s: &u64) -> csplab_core::Result<Output> {
        Ok(Output::Count(*s))
    }

    fn encode(&self, s: &u64) -> BitString {
        let mut out = BitString::new();
        for _ in 0..*s {
            push_uint(&mut out, 1, 1);
        }
        out
    }

    fn decode(&self, bits: &BitString) -> u64 {
        bits.len() as u64
    }
}

#[test]
fn oversized_state_names_the_step() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let inst = random_instance(&mut rng, 5, 6, &PredicateFamily::cut());
    let alg = Leaky { declared: 8, step: 3 };
    match run_stream(&alg, &inst, &ExecutionPlan::adversarial(1)) {
        Err(Error::BudgetExceeded { step, bits, budget }) => {
            assert_eq!(step, Step::Update { pass: 0, index: 2 });
            assert_eq!((bits, budget), (9, 8));
        }
        other => panic!("expected a budget error, got {other:?}"),
    }
    // the plan budget tightens the declared one
    let mut plan = ExecutionPlan::adversarial(2);
    plan.space_bits = Some(4);
    let err = run_stream(&alg, &inst, &plan).unwrap_err();
    assert!(err.to_string().contains("update 1 of pass 0"), "{err}");
    assert!(run_stream(&Leaky { declared: 18, step: 3 }, &inst, &ExecutionPlan::adversarial(1)).is_ok());
}

fn replay(seed: u64, sample_size: usize, inst: &Instance) -> Instance {
    let m = inst.m() as u64;
    let picks = (0..sample_size)
        .map(|r| {
            let mut taken = 1;
            loop {
                let next = next_replacement(seed, r, taken);
                if next > m {
                    break;
                }
                taken = next;
            }
            inst.constraints()[taken as usize - 1].clone()
        })
        .collect();
    inst.with_constraints(picks).unwrap()
}

#[test]
fn sparsify_matches_scripted_replay() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let fam = PredicateFamily::cut();
    let inst = random_instance(&mut rng, 6, 20, &fam);
    let plan = ExecutionPlan::adversarial(1);
    let alg = SparsifySolve::new(&fam, 6, 0.5, 4.0, 42).unwrap();
    let out = run_stream_with(&alg, &inst, &plan, RunOptions { verify_roundtrip: true }).unwrap();
    let sample = replay(42, alg.sample_size(), &inst);
    let want = *oracle_max(&sample).numer() as f64 / *oracle_max(&sample).denom() as f64;
    assert_eq!(out.output, Output::Value(want));
    let got: Vec<_> = out.final_state.sample().cloned().collect();
    assert_eq!(got, sample.constraints());
}

#[test]
fn next_replacement_is_uniform() {
    // reservoir position after m items should be uniform on 1..=m
    let m = 10u64;
    let mut hits = vec![0u32; m as usize];
    for r in 0..20_000 {
        let mut taken = 1;
        loop {
            let next = next_replacement(77, r, taken);
            if next > m {
                break;
            }
            taken = next;
        }
        hits[taken as usize - 1] += 1;
    }
    for h in hits {
        assert!((1800..=2200).contains(&h), "{h}");
    }
}
