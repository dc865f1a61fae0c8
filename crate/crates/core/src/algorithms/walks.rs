//! Multi-pass random walks that look for odd closed walks through endpoint collisions.
//!
//! All walkers start at the first endpoint of the first streamed edge (pass 0). Each
//! later pass is one lazy step: with probability 1/2 a walker holds, otherwise it moves
//! along an incident edge chosen by a one-edge reservoir over that pass and flips its
//! parity. After the last pass, two walkers on one vertex with different parities
//! trace an odd closed walk from the start, which certifies an odd cycle. In a
//! bipartite graph parity is a function of the vertex, so the verdict is sound.
//!
//! The lazy hold is what lets parities disagree at all: walkers that all move every
//! pass share the parity `L mod 2`.

use std::collections::HashMap;

use crate::bits::{bits_for, push_uint, BitReader, BitString, COUNTER_BITS};
use crate::error::{Error, Result};
use crate::instance::{Constraint, Instance};
use crate::predicate::Family;
use crate::seed;
use crate::stream::{Output, Passes, StreamingAlgorithm, Verdict};

const COUNTER_MAX: u64 = (1u64 << COUNTER_BITS) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Walker {
    pub at: u32,
    /// Number of moves taken, mod 2.
    pub parity: bool,
    seen: u64,
    candidate: u32,
}

impl Walker {
    fn parked() -> Self {
        Walker {
            at: 1,
            parity: false,
            seen: 0,
            candidate: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkerSet {
    started: bool,
    pass: u64,
    walkers: Vec<Walker>,
}

impl WalkerSet {
    pub fn walkers(&self) -> &[Walker] {
        &self.walkers
    }

    /// Pair of walkers at one vertex with different parities, if any.
    pub fn collision(&self) -> Option<(usize, usize)> {
        let mut first: HashMap<(u32, bool), usize> = HashMap::new();
        for (i, w) in self.walkers.iter().enumerate() {
            if let Some(&j) = first.get(&(w.at, !w.parity)) {
                return Some((j, i));
            }
            first.entry((w.at, w.parity)).or_insert(i);
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomWalkOddCycle {
    n: usize,
    walkers: usize,
    length: usize,
    seed: u64,
}

pub fn random_walk_odd_cycle(
    instance: &Instance,
    walkers: usize,
    length: usize,
    seed: u64,
) -> Result<RandomWalkOddCycle> {
    instance.require_binary(Family::Cut)?;
    RandomWalkOddCycle::new(instance.n(), walkers, length, seed)
}

impl RandomWalkOddCycle {
    pub fn new(n: usize, walkers: usize, length: usize, seed: u64) -> Result<Self> {
        if walkers == 0 || length == 0 {
            return Err(Error::Domain(
                "random walks need at least one walker and one step".into(),
            ));
        }
        Ok(RandomWalkOddCycle {
            n,
            walkers,
            length,
            seed,
        })
    }

    /// Largest walker count whose state fits in `space_bits`.
    pub fn walkers_for_budget(n: usize, length: usize, space_bits: u64) -> usize {
        let header = 1 + bits_for(length + 1) as u64;
        (space_bits.saturating_sub(header) / Self::walker_bits_for(n)) as usize
    }

    fn walker_bits_for(n: usize) -> u64 {
        2 * bits_for(n) as u64 + 1 + COUNTER_BITS as u64
    }

    fn pass_bits(&self) -> u32 {
        bits_for(self.length + 1)
    }

    fn holds(&self, walker: usize, pass: u64) -> bool {
        seed::derive_path(self.seed, &[walker as u64, pass, 0]) & 1 == 1
    }
}

impl StreamingAlgorithm for RandomWalkOddCycle {
    type State = WalkerSet;

    /// `1 + ⌈log2(L+1)⌉ + W·(⌈log2 n⌉ + 1 + ⌈log2 n⌉ + 32)`: start flag, pass index,
    /// and per walker its vertex, parity and reservoir (candidate, count).
    fn declared_bits(&self) -> u64 {
        1 + self.pass_bits() as u64 + self.walkers as u64 * Self::walker_bits_for(self.n)
    }

    fn passes(&self) -> Passes {
        Passes::Exactly(self.length + 1)
    }

    fn init(&self) -> WalkerSet {
        WalkerSet {
            started: false,
            pass: 0,
            walkers: vec![Walker::parked(); self.walkers],
        }
    }

    fn begin_pass(&self, state: &mut WalkerSet, pass: usize) {
        state.pass = pass as u64;
    }

    fn update(&self, state: &mut WalkerSet, c: &Constraint) {
        let (a, b) = c.endpoints();
        if state.pass == 0 {
            if !state.started {
                state.started = true;
                for w in &mut state.walkers {
                    w.at = a;
                }
            }
            return;
        }
        let pass = state.pass;
        for (i, w) in state.walkers.iter_mut().enumerate() {
            let other = if w.at == a {
                b
            } else if w.at == b {
                a
            } else {
                continue;
            };
            w.seen = (w.seen + 1).min(COUNTER_MAX);
            let h = seed::derive_path(self.seed, &[i as u64, pass, w.seen]);
            if seed::one_in(h, w.seen) {
                w.candidate = other;
            }
        }
    }

    fn end_pass(&self, state: &mut WalkerSet, pass: usize) {
        if pass == 0 {
            return;
        }
        for (i, w) in state.walkers.iter_mut().enumerate() {
            if w.seen > 0 && !self.holds(i, pass as u64) {
                w.at = w.candidate;
                w.parity = !w.parity;
            }
            w.seen = 0;
            w.candidate = 1;
        }
    }

    fn output(&self, state: &WalkerSet) -> Result<Output> {
        Ok(Output::Verdict(if state.collision().is_some() {
            Verdict::OddCycleFound
        } else {
            Verdict::Consistent
        }))
    }

    fn encode(&self, state: &WalkerSet) -> BitString {
        let w = bits_for(self.n);
        let mut out = BitString::with_capacity(self.declared_bits() as usize);
        out.push(state.started);
        push_uint(&mut out, state.pass, self.pass_bits());
        for walker in &state.walkers {
            push_uint(&mut out, (walker.at - 1) as u64, w);
            out.push(walker.parity);
            push_uint(&mut out, (walker.candidate - 1) as u64, w);
            push_uint(&mut out, walker.seen, COUNTER_BITS);
        }
        out
    }

    fn decode(&self, bits: &BitString) -> WalkerSet {
        let w = bits_for(self.n);
        let mut r = BitReader::new(bits);
        let started = r.read_bool();
        let pass = r.read_uint(self.pass_bits());
        let walkers = (0..self.walkers)
            .map(|_| Walker {
                at: r.read_uint(w) as u32 + 1,
                parity: r.read_bool(),
                candidate: r.read_uint(w) as u32 + 1,
                seen: r.read_uint(COUNTER_BITS),
            })
            .collect();
        WalkerSet {
            started,
            pass,
            walkers,
        }
    }

    fn encoded_len(&self, _: &WalkerSet) -> u64 {
        self.declared_bits()
    }
}
