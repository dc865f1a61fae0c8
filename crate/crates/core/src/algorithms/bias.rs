//! Degree-bias primitives for Max-DiCut.
//!
//! A digraph is perfectly satisfiable iff every vertex is all-outgoing or all-incoming,
//! which can be checked vertex by vertex. The primitives here measure how close each
//! vertex is to that condition and turn it into assignments.

use serde::{Deserialize, Serialize};

use crate::bits::{push_uint, BitReader, BitString, COUNTER_BITS};
use crate::error::{Error, Result};
use crate::instance::{Assignment, Constraint, Instance};
use crate::predicate::Family;
use crate::seed;
use crate::stream::sketch::SketchingAlgorithm;
use crate::stream::{Output, Passes, StreamingAlgorithm};
use crate::value::expected_value_product;
use crate::Scalar;

const COUNTER_MAX: u64 = (1u64 << COUNTER_BITS) - 1;

/// Per-vertex out- and in-degrees of a digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiasProfile {
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl BiasProfile {
    pub fn zeros(n: usize) -> Self {
        BiasProfile {
            out: vec![0; n],
            inn: vec![0; n],
        }
    }

    pub fn of(instance: &Instance) -> Result<Self> {
        instance.require_binary(Family::Dicut)?;
        let mut p = Self::zeros(instance.n());
        for c in instance.constraints() {
            p.add_edge(c);
        }
        Ok(p)
    }

    pub fn add_edge(&mut self, c: &Constraint) {
        let (u, v) = c.endpoints();
        let (u, v) = (u as usize - 1, v as usize - 1);
        self.out[u] = (self.out[u] + 1).min(COUNTER_MAX);
        self.inn[v] = (self.inn[v] + 1).min(COUNTER_MAX);
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn out_degree(&self, v: u32) -> u64 {
        self.out[v as usize - 1]
    }

    pub fn in_degree(&self, v: u32) -> u64 {
        self.inn[v as usize - 1]
    }

    /// `(out − in)/(out + in)`, or `None` for an isolated vertex.
    pub fn bias<T: Scalar>(&self, v: u32) -> Option<T> {
        let (o, i) = (self.out_degree(v), self.in_degree(v));
        if o + i == 0 {
            return None;
        }
        let num = T::from_count(o as usize) - T::from_count(i as usize);
        Some(num / T::from_count((o + i) as usize))
    }

    /// `Σ_v |out_v − in_v| / Σ_v (out_v + in_v)`.
    pub fn average_bias<T: Scalar>(&self) -> Result<T> {
        let total: u64 = self.out.iter().chain(&self.inn).sum();
        if total == 0 {
            return Err(Error::UndefinedValue("digraph has no edges".into()));
        }
        let imbalance: u64 = self.out.iter().zip(&self.inn).map(|(o, i)| o.abs_diff(*i)).sum();
        Ok(T::from_count(imbalance as usize) / T::from_count(total as usize))
    }
}

/// Average bias of a Max-DiCut instance; equals 1 iff every vertex with edges is
/// all-outgoing or all-incoming.
pub fn dicut_average_bias<T: Scalar>(instance: &Instance) -> Result<T> {
    instance.require_binary(Family::Dicut)?;
    BiasProfile::of(instance)?.average_bias()
}

/// How a vertex with equal in- and out-degree is assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieRule {
    One,
    Zero,
    /// Independent fair coin per vertex, drawn from the seed.
    Coin(u64),
}

impl TieRule {
    fn resolve(self, v: u32) -> bool {
        match self {
            TieRule::One => true,
            TieRule::Zero => false,
            TieRule::Coin(s) => seed::derive(s, v as u64) & 1 == 1,
        }
    }
}

/// `x_v = 1` iff `out_v > in_v`, ties per `tie`.
pub fn greedy_assignment(profile: &BiasProfile, tie: TieRule) -> Assignment {
    let mut x = Assignment::zeros(profile.n());
    for v in 1..=profile.n() as u32 {
        let bit = match profile.out_degree(v).cmp(&profile.in_degree(v)) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => tie.resolve(v),
        };
        x.set(v, bit);
    }
    x
}

pub fn dicut_greedy_assignment(instance: &Instance, tie: TieRule) -> Result<Assignment> {
    Ok(greedy_assignment(&BiasProfile::of(instance)?, tie))
}

/// Two-pass greedy-bias algorithm: degrees in pass 0, value of the greedy assignment
/// in pass 1. Its output is the value of an actual assignment, so never above maxval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DicutGreedyBias {
    n: usize,
    tie: TieRule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyState {
    evaluating: bool,
    profile: BiasProfile,
    satisfied: u64,
    seen: u64,
}

pub fn dicut_greedy_bias(instance: &Instance, tie: TieRule) -> Result<DicutGreedyBias> {
    instance.require_binary(Family::Dicut)?;
    Ok(DicutGreedyBias {
        n: instance.n(),
        tie,
    })
}

fn encode_profile(out: &mut BitString, p: &BiasProfile) {
    for (&o, &i) in p.out.iter().zip(&p.inn) {
        push_uint(out, o, COUNTER_BITS);
        push_uint(out, i, COUNTER_BITS);
    }
}

fn decode_profile(r: &mut BitReader<'_>, n: usize) -> BiasProfile {
    let mut p = BiasProfile::zeros(n);
    for v in 0..n {
        p.out[v] = r.read_uint(COUNTER_BITS);
        p.inn[v] = r.read_uint(COUNTER_BITS);
    }
    p
}

impl DicutGreedyBias {
    fn side(&self, p: &BiasProfile, v: u32) -> bool {
        match p.out_degree(v).cmp(&p.in_degree(v)) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => self.tie.resolve(v),
        }
    }
}

impl StreamingAlgorithm for DicutGreedyBias {
    type State = GreedyState;

    fn declared_bits(&self) -> u64 {
        1 + (2 * self.n as u64 + 2) * COUNTER_BITS as u64
    }

    fn passes(&self) -> Passes {
        Passes::Exactly(2)
    }

    fn init(&self) -> GreedyState {
        GreedyState {
            evaluating: false,
            profile: BiasProfile::zeros(self.n),
            satisfied: 0,
            seen: 0,
        }
    }

    fn begin_pass(&self, state: &mut GreedyState, pass: usize) {
        state.evaluating = pass == 1;
    }

    fn update(&self, state: &mut GreedyState, c: &Constraint) {
        if !state.evaluating {
            state.profile.add_edge(c);
            return;
        }
        let (u, v) = c.endpoints();
        if self.side(&state.profile, u) && !self.side(&state.profile, v) {
            state.satisfied = (state.satisfied + 1).min(COUNTER_MAX);
        }
        state.seen = (state.seen + 1).min(COUNTER_MAX);
    }

    fn output(&self, state: &GreedyState) -> Result<Output> {
        if state.seen == 0 {
            return Err(Error::UndefinedValue("no constraints evaluated".into()));
        }
        Ok(Output::Value(state.satisfied as f64 / state.seen as f64))
    }

    fn encode(&self, state: &GreedyState) -> BitString {
        let mut out = BitString::with_capacity(self.declared_bits() as usize);
        out.push(state.evaluating);
        encode_profile(&mut out, &state.profile);
        push_uint(&mut out, state.satisfied, COUNTER_BITS);
        push_uint(&mut out, state.seen, COUNTER_BITS);
        out
    }

    fn decode(&self, bits: &BitString) -> GreedyState {
        let mut r = BitReader::new(bits);
        let evaluating = r.read_bool();
        let profile = decode_profile(&mut r, self.n);
        GreedyState {
            evaluating,
            profile,
            satisfied: r.read_uint(COUNTER_BITS),
            seen: r.read_uint(COUNTER_BITS),
        }
    }

    fn encoded_len(&self, _: &GreedyState) -> u64 {
        self.declared_bits()
    }
}

/// Maps a vertex bias in `[−1, 1]` to the probability of assigning it 1.
pub trait RoundingFn<T> {
    fn round(&self, bias: &T) -> T;
}

impl<T, F: Fn(&T) -> T> RoundingFn<T> for F {
    fn round(&self, bias: &T) -> T {
        self(bias)
    }
}

/// Rounding rules for oblivious algorithms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Rounding<T> {
    /// Same probability for every vertex.
    Constant { p: T },
    /// 1 for positive bias, 0 for negative, 1/2 at zero.
    Step,
    /// Linear interpolation through `(bias, p)` breakpoints on `[0, 1]`, extended to
    /// negative bias by `r(−b) = 1 − r(b)`. Flat beyond the outermost breakpoints.
    PiecewiseLinear { breakpoints: Vec<(T, T)> },
}

impl<T: Scalar> Rounding<T> {
    pub fn validate(&self) -> Result<()> {
        match self {
            Rounding::Constant { p } if !p.is_probability() => {
                Err(Error::Domain(format!("constant rounding {p:?} outside [0, 1]")))
            }
            Rounding::PiecewiseLinear { breakpoints } => {
                if breakpoints.is_empty() {
                    return Err(Error::Domain("piecewise rounding needs breakpoints".into()));
                }
                for w in breakpoints.windows(2) {
                    if w[0].0 >= w[1].0 {
                        return Err(Error::Domain("breakpoints must increase in bias".into()));
                    }
                }
                for (b, p) in breakpoints {
                    if !b.is_probability() || !p.is_probability() {
                        return Err(Error::Domain(format!(
                            "breakpoint ({b:?}, {p:?}) outside [0, 1]^2"
                        )));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    fn nonnegative(breakpoints: &[(T, T)], b: &T) -> T {
        let first = &breakpoints[0];
        if *b <= first.0 {
            return first.1.clone();
        }
        for w in breakpoints.windows(2) {
            let ((b0, p0), (b1, p1)) = (&w[0], &w[1]);
            if *b <= *b1 {
                let t = (b.clone() - b0.clone()) / (b1.clone() - b0.clone());
                return p0.clone() + t * (p1.clone() - p0.clone());
            }
        }
        breakpoints[breakpoints.len() - 1].1.clone()
    }
}

impl<T: Scalar> RoundingFn<T> for Rounding<T> {
    fn round(&self, bias: &T) -> T {
        match self {
            Rounding::Constant { p } => p.clone(),
            Rounding::Step => {
                if bias.is_positive() {
                    T::one()
                } else if bias.is_negative() {
                    T::zero()
                } else {
                    T::half()
                }
            }
            Rounding::PiecewiseLinear { breakpoints } => {
                if bias.is_negative() {
                    T::one() - Self::nonnegative(breakpoints, &-bias.clone())
                } else {
                    Self::nonnegative(breakpoints, bias)
                }
            }
        }
    }
}

fn rounded_probability<T: Scalar, R: RoundingFn<T>>(
    rounding: &R,
    profile: &BiasProfile,
    v: u32,
) -> Result<T> {
    let b = profile.bias(v).unwrap_or_else(T::zero);
    let p = rounding.round(&b);
    if p.is_probability() {
        Ok(p)
    } else {
        Err(Error::Domain(format!(
            "rounding maps bias {b:?} of vertex {v} to {p:?}, outside [0, 1]"
        )))
    }
}

/// Expected value of the oblivious assignment `x_v ~ Bern(rounding(bias_v))`.
/// Isolated vertices get `rounding(0)`.
pub fn dicut_oblivious_expected<T: Scalar, R: RoundingFn<T>>(
    rounding: &R,
    instance: &Instance,
) -> Result<T> {
    let profile = BiasProfile::of(instance)?;
    let probs = (1..=instance.n() as u32)
        .map(|v| rounded_probability(rounding, &profile, v))
        .collect::<Result<Vec<T>>>()?;
    expected_value_product(instance, &probs)
}

/// Two-pass streaming form of [`dicut_oblivious_expected`] in double precision: pass 0
/// collects degrees, pass 1 sums `Pr[x_u = 1]·Pr[x_v = 0]` over edges.
#[derive(Debug, Clone, PartialEq)]
pub struct ObliviousBias {
    n: usize,
    rounding: Rounding<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObliviousState {
    evaluating: bool,
    profile: BiasProfile,
    sum: f64,
    seen: u64,
}

pub fn dicut_oblivious(instance: &Instance, rounding: Rounding<f64>) -> Result<ObliviousBias> {
    instance.require_binary(Family::Dicut)?;
    rounding.validate()?;
    Ok(ObliviousBias {
        n: instance.n(),
        rounding,
    })
}

impl ObliviousBias {
    fn prob(&self, p: &BiasProfile, v: u32) -> f64 {
        let b: f64 = p.bias(v).unwrap_or(0.0);
        self.rounding.round(&b).clamp(0.0, 1.0)
    }
}

impl StreamingAlgorithm for ObliviousBias {
    type State = ObliviousState;

    fn declared_bits(&self) -> u64 {
        1 + 2 * self.n as u64 * COUNTER_BITS as u64 + 64 + COUNTER_BITS as u64
    }

    fn passes(&self) -> Passes {
        Passes::Exactly(2)
    }

    fn init(&self) -> ObliviousState {
        ObliviousState {
            evaluating: false,
            profile: BiasProfile::zeros(self.n),
            sum: 0.0,
            seen: 0,
        }
    }

    fn begin_pass(&self, state: &mut ObliviousState, pass: usize) {
        state.evaluating = pass == 1;
    }

    fn update(&self, state: &mut ObliviousState, c: &Constraint) {
        if !state.evaluating {
            state.profile.add_edge(c);
            return;
        }
        let (u, v) = c.endpoints();
        state.sum += self.prob(&state.profile, u) * (1.0 - self.prob(&state.profile, v));
        state.seen = (state.seen + 1).min(COUNTER_MAX);
    }

    fn output(&self, state: &ObliviousState) -> Result<Output> {
        if state.seen == 0 {
            return Err(Error::UndefinedValue("no constraints evaluated".into()));
        }
        Ok(Output::Value(state.sum / state.seen as f64))
    }

    fn encode(&self, state: &ObliviousState) -> BitString {
        let mut out = BitString::with_capacity(self.declared_bits() as usize);
        out.push(state.evaluating);
        encode_profile(&mut out, &state.profile);
        push_uint(&mut out, state.sum.to_bits(), 64);
        push_uint(&mut out, state.seen, COUNTER_BITS);
        out
    }

    fn decode(&self, bits: &BitString) -> ObliviousState {
        let mut r = BitReader::new(bits);
        let evaluating = r.read_bool();
        let profile = decode_profile(&mut r, self.n);
        ObliviousState {
            evaluating,
            profile,
            sum: f64::from_bits(r.read_uint(64)),
            seen: r.read_uint(COUNTER_BITS),
        }
    }

    fn encoded_len(&self, _: &ObliviousState) -> u64 {
        self.declared_bits()
    }
}

/// Per-vertex degree counters as a sketch: compress an edge to its two unit
/// increments, compose by coordinate-wise saturating sum. Outputs the average bias.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BiasSketch {
    n: usize,
}

impl BiasSketch {
    pub fn new(n: usize) -> Self {
        BiasSketch { n }
    }
}

impl SketchingAlgorithm for BiasSketch {
    type Sketch = BiasProfile;

    fn declared_bits(&self) -> u64 {
        2 * self.n as u64 * COUNTER_BITS as u64
    }

    fn empty(&self) -> BiasProfile {
        BiasProfile::zeros(self.n)
    }

    fn compress(&self, c: &Constraint) -> BiasProfile {
        let mut p = BiasProfile::zeros(self.n);
        p.add_edge(c);
        p
    }

    fn compose(&self, left: &BiasProfile, right: &BiasProfile) -> BiasProfile {
        let add = |a: &[u64], b: &[u64]| -> Vec<u64> {
            a.iter().zip(b).map(|(x, y)| (x + y).min(COUNTER_MAX)).collect()
        };
        BiasProfile {
            out: add(&left.out, &right.out),
            inn: add(&left.inn, &right.inn),
        }
    }

    fn output(&self, sketch: &BiasProfile) -> Result<Output> {
        Ok(Output::Value(sketch.average_bias::<f64>()?))
    }

    fn encode(&self, sketch: &BiasProfile) -> BitString {
        let mut out = BitString::with_capacity(self.declared_bits() as usize);
        encode_profile(&mut out, sketch);
        out
    }

    fn decode(&self, bits: &BitString) -> BiasProfile {
        decode_profile(&mut BitReader::new(bits), self.n)
    }

    fn encoded_len(&self, _: &BiasProfile) -> u64 {
        self.declared_bits()
    }
}
