//! Sketching algorithms: per-constraint `compress` plus an associative `compose`.

use rand_chacha::ChaCha8Rng;

use crate::bits::{push_uint, BitReader, BitString};
use crate::error::Result;
use crate::instance::Constraint;
use crate::seed;
use crate::stream::{Output, StreamingAlgorithm};

pub trait SketchingAlgorithm {
    type Sketch: Clone + PartialEq + std::fmt::Debug;

    fn declared_bits(&self) -> u64;

    /// Sketch of the empty stream, the initial streaming state.
    fn empty(&self) -> Self::Sketch;

    fn compress(&self, constraint: &Constraint) -> Self::Sketch;

    fn compose(&self, left: &Self::Sketch, right: &Self::Sketch) -> Self::Sketch;

    fn output(&self, sketch: &Self::Sketch) -> Result<Output>;

    fn encode(&self, sketch: &Self::Sketch) -> BitString;

    fn decode(&self, bits: &BitString) -> Self::Sketch;

    fn encoded_len(&self, sketch: &Self::Sketch) -> u64 {
        self.encode(sketch).len() as u64
    }
}

/// The streaming algorithm a sketch induces: `update(S, C) = compose(S, compress(C))`.
#[derive(Debug, Clone)]
pub struct Sketched<S>(pub S);

impl<S: SketchingAlgorithm> StreamingAlgorithm for Sketched<S> {
    type State = S::Sketch;

    fn declared_bits(&self) -> u64 {
        self.0.declared_bits()
    }

    fn init(&self) -> Self::State {
        self.0.empty()
    }

    fn update(&self, state: &mut Self::State, constraint: &Constraint) {
        *state = self.0.compose(state, &self.0.compress(constraint));
    }

    fn output(&self, state: &Self::State) -> Result<Output> {
        self.0.output(state)
    }

    fn encode(&self, state: &Self::State) -> BitString {
        self.0.encode(state)
    }

    fn decode(&self, bits: &BitString) -> Self::State {
        self.0.decode(bits)
    }

    fn encoded_len(&self, state: &Self::State) -> u64 {
        self.0.encoded_len(state)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssociativityCheck {
    Pass { trials: usize },
    Counterexample { trial: usize, triple: [Constraint; 3] },
}

impl AssociativityCheck {
    pub fn passed(&self) -> bool {
        matches!(self, AssociativityCheck::Pass { .. })
    }
}

/// Samples constraint triples and compares
/// `compose(c1, compose(c2, c3))` with `compose(compose(c1, c2), c3)` as bit strings.
pub fn check_sketch_associativity<S, F>(
    alg: &S,
    mut sampler: F,
    trials: usize,
    seed: u64,
) -> AssociativityCheck
where
    S: SketchingAlgorithm,
    F: FnMut(&mut ChaCha8Rng) -> Constraint,
{
    let mut rng = seed::rng(seed);
    for trial in 0..trials {
        let triple = [sampler(&mut rng), sampler(&mut rng), sampler(&mut rng)];
        let [a, b, c] = [0, 1, 2].map(|i| alg.compress(&triple[i]));
        let right = alg.compose(&a, &alg.compose(&b, &c));
        let left = alg.compose(&alg.compose(&a, &b), &c);
        if alg.encode(&right) != alg.encode(&left) {
            return AssociativityCheck::Counterexample { trial, triple };
        }
    }
    AssociativityCheck::Pass { trials }
}

/// Constraint counter: `compress ↦ 1`, `compose` is a saturating sum in `width` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterSketch {
    pub width: u32,
}

impl CounterSketch {
    pub fn new(width: u32) -> Self {
        assert!((1..=63).contains(&width));
        CounterSketch { width }
    }

    /// Counter just wide enough for streams of up to `m` constraints.
    pub fn for_stream_len(m: usize) -> Self {
        Self::new(crate::bits::bits_for_count(m).max(1))
    }

    fn max(&self) -> u64 {
        (1u64 << self.width) - 1
    }
}

impl SketchingAlgorithm for CounterSketch {
    type Sketch = u64;

    fn declared_bits(&self) -> u64 {
        self.width as u64
    }

    fn empty(&self) -> u64 {
        0
    }

    fn compress(&self, _: &Constraint) -> u64 {
        1
    }

    fn compose(&self, left: &u64, right: &u64) -> u64 {
        left.saturating_add(*right).min(self.max())
    }

    fn output(&self, sketch: &u64) -> Result<Output> {
        Ok(Output::Count(*sketch))
    }

    fn encode(&self, sketch: &u64) -> BitString {
        let mut out = BitString::with_capacity(self.width as usize);
        push_uint(&mut out, *sketch, self.width);
        out
    }

    fn decode(&self, bits: &BitString) -> u64 {
        BitReader::new(bits).read_uint(self.width)
    }

    fn encoded_len(&self, _: &u64) -> u64 {
        self.width as u64
    }
}

/// A counter whose compose keeps the left operand when the operands differ. Not
/// associative; it exists to show that the associativity check finds violations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BrokenCounterSketch(pub CounterSketch);

impl SketchingAlgorithm for BrokenCounterSketch {
    type Sketch = u64;

    fn declared_bits(&self) -> u64 {
        self.0.declared_bits()
    }

    fn empty(&self) -> u64 {
        0
    }

    fn compress(&self, c: &Constraint) -> u64 {
        self.0.compress(c)
    }

    fn compose(&self, left: &u64, right: &u64) -> u64 {
        if left != right {
            *left
        } else {
            self.0.compose(left, right)
        }
    }

    fn output(&self, sketch: &u64) -> Result<Output> {
        self.0.output(sketch)
    }

    fn encode(&self, sketch: &u64) -> BitString {
        self.0.encode(sketch)
    }

    fn decode(&self, bits: &BitString) -> u64 {
        self.0.decode(bits)
    }
}
