//! Trivial approximation ratio as the best worst-case product-distribution expectation:
//! `max_{p ∈ [0,1]} min_{π ∈ Π} E_{x ~ Bern(p)^k}[π(x)]`.

use num_traits::Float;

use crate::predicate::PredicateFamily;

const GRID_POINTS: usize = 10_000;
const REFINE_ITERS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrivialRatio<F> {
    pub value: F,
    /// Bias of the maximizing product distribution.
    pub p: F,
}

/// Acceptance polynomial of one predicate: `E(p) = Σ_w counts[w] p^w (1-p)^(k-w)`.
#[derive(Debug, Clone)]
struct WeightPolynomial {
    counts: Vec<u64>,
}

impl WeightPolynomial {
    fn eval<F: Float>(&self, p: F) -> F {
        let k = self.counts.len() - 1;
        let q = F::one() - p;
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .fold(F::zero(), |acc, (w, &c)| {
                acc + F::from(c).unwrap() * p.powi(w as i32) * q.powi((k - w) as i32)
            })
    }
}

fn polynomials(family: &PredicateFamily) -> Vec<WeightPolynomial> {
    let k = family.arity();
    (0..family.mask_count())
        .map(|mask| {
            let mut counts = vec![0u64; k + 1];
            for idx in 0..1usize << k {
                if family.accepts_index(idx, mask) {
                    counts[idx.count_ones() as usize] += 1;
                }
            }
            WeightPolynomial { counts }
        })
        .collect()
}

/// Computes the trivial ratio by grid search over `p` followed by ternary refinement
/// around the best grid point.
pub fn trivial_ratio<F: Float>(family: &PredicateFamily) -> TrivialRatio<F> {
    let polys = polynomials(family);
    let worst = |p: F| {
        polys
            .iter()
            .map(|poly| poly.eval(p))
            .fold(F::infinity(), F::min)
    };
    let steps = F::from(GRID_POINTS).unwrap();
    let mut best = TrivialRatio {
        value: worst(F::zero()),
        p: F::zero(),
    };
    for i in 1..=GRID_POINTS {
        let p = F::from(i).unwrap() / steps;
        let v = worst(p);
        if v > best.value {
            best = TrivialRatio { value: v, p };
        }
    }
    let h = F::one() / steps;
    let (mut lo, mut hi) = (
        (best.p - h).max(F::zero()),
        (best.p + h).min(F::one()),
    );
    let three = F::from(3).unwrap();
    for _ in 0..REFINE_ITERS {
        let a = lo + (hi - lo) / three;
        let b = hi - (hi - lo) / three;
        if worst(a) < worst(b) {
            lo = a;
        } else {
            hi = b;
        }
    }
    let p = (lo + hi) / F::from(2).unwrap();
    let v = worst(p);
    if v > best.value {
        best = TrivialRatio { value: v, p };
    }
    best
}
