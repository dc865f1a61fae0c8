//! Component growing: remember bipartitely labelled components of the graph seen so
//! far and report an odd cycle when an edge joins two equally labelled vertices of one
//! component.

use std::collections::{BTreeMap, BTreeSet};

use crate::bits::{bits_for, push_uint, BitReader, BitString};
use crate::error::{Error, Result};
use crate::instance::{Constraint, Instance};
use crate::predicate::Family;
use crate::stream::{Output, StreamingAlgorithm, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Node {
    root: u32,
    /// Parity of the path to `root`.
    parity: bool,
}

/// Parity-labelled components over a bounded set of tracked vertices.
///
/// Every vertex points directly at its component's root, the smallest vertex id in
/// the component, so an edge whose endpoints share a root and a parity closes an odd
/// cycle. Merging relabels the component whose root is given up. Member lists and
/// the size index are derived from `nodes` and excluded from equality.
#[derive(Debug, Clone, Default)]
pub struct ParityComponents {
    nodes: BTreeMap<u32, Node>,
    members: BTreeMap<u32, Vec<u32>>,
    by_size: BTreeSet<(usize, u32)>,
    odd_cycle: bool,
}

impl PartialEq for ParityComponents {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.odd_cycle == other.odd_cycle
    }
}

impl Eq for ParityComponents {}

impl ParityComponents {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.nodes.contains_key(&v)
    }

    pub fn odd_cycle_found(&self) -> bool {
        self.odd_cycle
    }

    /// Root of tracked `v` and the parity of `v` relative to it.
    pub fn find(&self, v: u32) -> (u32, bool) {
        let n = self.nodes[&v];
        (n.root, n.parity)
    }

    /// Component sizes keyed by root.
    pub fn components(&self) -> BTreeMap<u32, usize> {
        self.members.iter().map(|(&r, m)| (r, m.len())).collect()
    }

    fn insert(&mut self, v: u32, root: u32, parity: bool) {
        self.nodes.insert(v, Node { root, parity });
        let m = self.members.entry(root).or_default();
        if !m.is_empty() {
            self.by_size.remove(&(m.len(), root));
        }
        m.push(v);
        self.by_size.insert((m.len(), root));
    }

    /// Joins two components; `parity` is that of `b`'s root relative to `a`'s.
    fn merge(&mut self, a: u32, b: u32, parity: bool) {
        let (keep, gone) = if a < b { (a, b) } else { (b, a) };
        let moved = self.members.remove(&gone).expect("tracked root");
        self.by_size.remove(&(moved.len(), gone));
        for w in moved {
            let p = self.nodes[&w].parity ^ parity;
            self.insert(w, keep, p);
        }
    }

    fn evict(&mut self, root: u32) {
        let doomed = self.members.remove(&root).expect("tracked root");
        self.by_size.remove(&(doomed.len(), root));
        for v in doomed {
            self.nodes.remove(&v);
        }
    }

    fn clear(&mut self) {
        self.nodes.clear();
        self.members.clear();
        self.by_size.clear();
    }

    /// Evicts smallest components (ties: lowest root) other than `protect` until
    /// `need` free slots exist. Returns false if that is impossible.
    fn make_room(&mut self, capacity: usize, need: usize, protect: Option<u32>) -> bool {
        while capacity - self.nodes.len() < need {
            let victim = self
                .by_size
                .iter()
                .map(|&(_, r)| r)
                .find(|&r| Some(r) != protect);
            match victim {
                Some(r) => self.evict(r),
                None => return false,
            }
        }
        true
    }

    /// Processes one edge under a vertex capacity.
    pub fn add_edge(&mut self, u: u32, v: u32, capacity: usize) {
        if self.odd_cycle {
            return;
        }
        match (self.contains(u), self.contains(v)) {
            (true, true) => {
                let (ru, pu) = self.find(u);
                let (rv, pv) = self.find(v);
                if ru == rv {
                    if pu == pv {
                        self.odd_cycle = true;
                        self.clear();
                    }
                } else {
                    self.merge(ru, rv, pu ^ pv ^ true);
                }
            }
            (true, false) | (false, true) => {
                let (t, new) = if self.contains(u) { (u, v) } else { (v, u) };
                let (root, pt) = self.find(t);
                if self.make_room(capacity, 1, Some(root)) {
                    if new < root {
                        self.insert(new, new, false);
                        self.merge(new, root, !pt);
                    } else {
                        self.insert(new, root, !pt);
                    }
                }
            }
            (false, false) => {
                if self.make_room(capacity, 2, None) {
                    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
                    self.insert(lo, lo, false);
                    self.insert(hi, lo, true);
                }
            }
        }
    }
}

/// Streaming odd-cycle detector that tracks at most
/// `⌊space_bits / (2⌈log2 n⌉ + 1)⌋` vertices.
///
/// Each tracked vertex costs its id, its root's id and one parity bit. After an odd
/// cycle is found the state collapses to a single root record with parity 1, a record
/// that cannot occur otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentGrowing {
    n: usize,
    space_bits: u64,
    capacity: usize,
}

pub fn component_growing(instance: &Instance, space_bits: u64) -> Result<ComponentGrowing> {
    instance.require_binary(Family::Cut)?;
    ComponentGrowing::new(instance.n(), space_bits)
}

impl ComponentGrowing {
    pub fn new(n: usize, space_bits: u64) -> Result<Self> {
        let record = Self::record_bits_for(n);
        let capacity = (space_bits / record).min(n as u64) as usize;
        if capacity < 2 {
            return Err(Error::Domain(format!(
                "{space_bits} bits cannot hold two vertices of {record} bits each"
            )));
        }
        Ok(ComponentGrowing {
            n,
            space_bits,
            capacity,
        })
    }

    fn record_bits_for(n: usize) -> u64 {
        2 * bits_for(n) as u64 + 1
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }
}

impl StreamingAlgorithm for ComponentGrowing {
    type State = ParityComponents;

    fn declared_bits(&self) -> u64 {
        self.space_bits
    }

    fn init(&self) -> ParityComponents {
        ParityComponents::default()
    }

    fn update(&self, state: &mut ParityComponents, c: &Constraint) {
        let (u, v) = c.endpoints();
        state.add_edge(u, v, self.capacity);
    }

    fn output(&self, state: &ParityComponents) -> Result<Output> {
        Ok(Output::Verdict(if state.odd_cycle {
            Verdict::OddCycleFound
        } else {
            Verdict::Consistent
        }))
    }

    fn encode(&self, state: &ParityComponents) -> BitString {
        let w = bits_for(self.n);
        let mut out = BitString::new();
        let mut record = |v: u32, root: u32, parity: bool| {
            push_uint(&mut out, (v - 1) as u64, w);
            push_uint(&mut out, (root - 1) as u64, w);
            out.push(parity);
        };
        if state.odd_cycle {
            record(1, 1, true);
        } else {
            for (&v, node) in &state.nodes {
                record(v, node.root, node.parity);
            }
        }
        out
    }

    fn decode(&self, bits: &BitString) -> ParityComponents {
        let w = bits_for(self.n);
        let mut r = BitReader::new(bits);
        let mut state = ParityComponents::default();
        while r.remaining() > 0 {
            let v = r.read_uint(w) as u32 + 1;
            let root = r.read_uint(w) as u32 + 1;
            let parity = r.read_bool();
            if v == root && parity {
                state.odd_cycle = true;
            } else {
                state.insert(v, root, parity);
            }
        }
        state
    }

    fn encoded_len(&self, state: &ParityComponents) -> u64 {
        let records = if state.odd_cycle { 1 } else { state.nodes.len() };
        records as u64 * Self::record_bits_for(self.n)
    }
}
