//! Sparsify-and-solve: keep an i.i.d. uniform sample of the stream, solve it exactly.
//!
//! The sample is `s = ⌈c·n/ε²⌉` independent single-item reservoirs. Reservoir `r`
//! takes item 1; after taking item `t` it next replaces at `⌊t/U⌋ + 1` with
//! `U = unit_interval(derive_path(seed, [r, t]))`, since `Pr[next > j] = t/j` for a
//! single-item reservoir. Each reservoir therefore ends holding a uniform item,
//! independently of the others.

use crate::bits::{bits_for, push_uint, BitReader, BitString, COUNTER_BITS};
use crate::error::{Error, Result};
use crate::instance::{Constraint, Instance};
use crate::predicate::PredicateFamily;
use crate::seed;
use crate::stream::{Output, StreamingAlgorithm};
use crate::value::BruteForce;

pub const DEFAULT_SAMPLE_CONSTANT: f64 = 4.0;

const NEVER: u64 = (1u64 << COUNTER_BITS) - 1;

#[derive(Debug, Clone)]
pub struct SparsifySolve {
    family: PredicateFamily,
    n: usize,
    seed: u64,
    sample_size: usize,
    brute: BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsifyState {
    seen: u64,
    slots: Vec<Option<Constraint>>,
    next: Vec<u64>,
}

impl SparsifyState {
    pub fn sample(&self) -> impl Iterator<Item = &Constraint> {
        self.slots.iter().flatten()
    }
}

/// Position of the next replacement after reservoir `r` took item `t`.
pub fn next_replacement(seed: u64, reservoir: usize, t: u64) -> u64 {
    let u = seed::unit_interval(seed::derive_path(seed, &[reservoir as u64, t]));
    let next = (t as f64 / u).floor() + 1.0;
    if next >= NEVER as f64 {
        NEVER
    } else {
        next as u64
    }
}

pub fn sparsify_solve(
    family: &PredicateFamily,
    n: usize,
    eps: f64,
    seed: u64,
) -> Result<SparsifySolve> {
    SparsifySolve::new(family, n, eps, DEFAULT_SAMPLE_CONSTANT, seed)
}

impl SparsifySolve {
    pub fn new(
        family: &PredicateFamily,
        n: usize,
        eps: f64,
        sample_constant: f64,
        seed: u64,
    ) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::Domain(format!("eps must lie in (0, 1), got {eps}")));
        }
        if !(sample_constant > 0.0 && sample_constant.is_finite()) {
            return Err(Error::Domain(format!(
                "sample constant must be positive, got {sample_constant}"
            )));
        }
        let sample_size = (sample_constant * n as f64 / (eps * eps)).ceil() as usize;
        Ok(SparsifySolve {
            family: family.clone(),
            n,
            seed,
            sample_size: sample_size.max(1),
            brute: BruteForce::default(),
        })
    }

    pub fn with_brute_force(mut self, brute: BruteForce) -> Self {
        self.brute = brute;
        self
    }

    pub fn sample_size(&self) -> usize {
        self.sample_size
    }

    fn slot_bits(&self) -> u64 {
        let k = self.family.arity() as u64;
        k * bits_for(self.n) as u64 + k
    }
}

impl StreamingAlgorithm for SparsifySolve {
    type State = SparsifyState;

    /// `s·(k⌈log2 n⌉ + k)` for the sample, plus one next-replacement counter per
    /// reservoir and the stream position.
    fn declared_bits(&self) -> u64 {
        self.sample_size as u64 * (self.slot_bits() + COUNTER_BITS as u64) + COUNTER_BITS as u64
    }

    fn init(&self) -> SparsifyState {
        SparsifyState {
            seen: 0,
            slots: vec![None; self.sample_size],
            next: vec![1; self.sample_size],
        }
    }

    fn update(&self, state: &mut SparsifyState, c: &Constraint) {
        state.seen += 1;
        let t = state.seen;
        for r in 0..self.sample_size {
            if state.next[r] == t {
                state.slots[r] = Some(c.clone());
                state.next[r] = next_replacement(self.seed, r, t);
            }
        }
    }

    fn output(&self, state: &SparsifyState) -> Result<Output> {
        let sample: Vec<Constraint> = state.sample().cloned().collect();
        let inst = Instance::new(self.n, self.family.clone(), sample)?;
        let v = self.brute.max_value_on_support(&inst)?;
        Ok(Output::Value(*v.numer() as f64 / *v.denom() as f64))
    }

    fn encode(&self, state: &SparsifyState) -> BitString {
        let width = bits_for(self.n);
        let k = self.family.arity() as u32;
        let mut out = BitString::with_capacity(self.declared_bits() as usize);
        push_uint(&mut out, state.seen, COUNTER_BITS);
        for (slot, &next) in state.slots.iter().zip(&state.next) {
            match slot {
                Some(c) => {
                    for &j in c.vars() {
                        push_uint(&mut out, (j - 1) as u64, width);
                    }
                    push_uint(&mut out, c.mask() as u64, k);
                }
                None => push_uint(&mut out, 0, self.slot_bits() as u32),
            }
            push_uint(&mut out, next, COUNTER_BITS);
        }
        out
    }

    fn decode(&self, bits: &BitString) -> SparsifyState {
        let width = bits_for(self.n);
        let k = self.family.arity();
        let mut r = BitReader::new(bits);
        let seen = r.read_uint(COUNTER_BITS);
        let mut slots = Vec::with_capacity(self.sample_size);
        let mut next = Vec::with_capacity(self.sample_size);
        for _ in 0..self.sample_size {
            let vars: Vec<u32> = (0..k).map(|_| r.read_uint(width) as u32 + 1).collect();
            let mask = r.read_uint(k as u32) as u32;
            // every reservoir fills on the first item
            slots.push((seen > 0).then(|| Constraint::new(vars, mask)));
            next.push(r.read_uint(COUNTER_BITS));
        }
        SparsifyState { seen, slots, next }
    }

    fn encoded_len(&self, _: &SparsifyState) -> u64 {
        self.declared_bits()
    }
}
