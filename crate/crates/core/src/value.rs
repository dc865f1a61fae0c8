//! Assignment values, exhaustive optima and product-distribution expectations.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{Assignment, Constraint, Instance};
use crate::predicate::PredicateFamily;
use crate::{Rational, Scalar};

pub const DEFAULT_BRUTE_CAP: usize = 24;

/// Environment variable that overrides the brute-force cap.
pub const BRUTE_CAP_ENV: &str = "CSPLAB_BRUTE_CAP";

/// Hard ceiling: assignments are enumerated as `u64` codes.
const MAX_ENUMERABLE: usize = 62;

/// Below this many assignments the enumeration stays on the calling thread.
const PARALLEL_THRESHOLD_LOG2: usize = 14;
const CHUNK_LOG2: usize = 12;

/// `val_Φ(x)`: fraction of constraints satisfied by `x`, as an exact rational.
pub fn value(instance: &Instance, x: &Assignment) -> Result<Rational> {
    let sat = satisfied_count(instance, x)?;
    Ok(Rational::new(sat as i64, instance.m() as i64))
}

/// Number of constraints satisfied by `x`.
pub fn satisfied_count(instance: &Instance, x: &Assignment) -> Result<usize> {
    instance.require_nonempty()?;
    if x.len() != instance.n() {
        return Err(Error::InputShape(format!(
            "assignment has length {}, instance has n = {}",
            x.len(),
            instance.n()
        )));
    }
    let fam = instance.family();
    Ok(instance
        .constraints()
        .iter()
        .filter(|c| fam.accepts_index(c.local_index(x), c.mask()))
        .count())
}

/// `maxval(Φ)` and its lexicographically smallest argmax, with the default cap.
pub fn max_value(instance: &Instance) -> Result<(Rational, Assignment)> {
    BruteForce::default().max_value(instance)
}

/// Exhaustive Max-CSP solver with a cap on the number of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForce {
    pub cap: usize,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce {
            cap: DEFAULT_BRUTE_CAP,
        }
    }
}

/// Constraints merged by identity, with multiplicities, in enumeration-friendly form.
struct Compiled {
    shifts: Vec<Vec<u32>>,
    masks: Vec<u32>,
    weights: Vec<usize>,
}

impl Compiled {
    fn new(n: usize, constraints: &[Constraint], relabel: impl Fn(u32) -> u32) -> Self {
        let mut counts: HashMap<(Vec<u32>, u32), usize> = HashMap::new();
        for c in constraints {
            let shifts = c.vars().iter().map(|&j| (n as u32) - relabel(j)).collect();
            *counts.entry((shifts, c.mask())).or_default() += 1;
        }
        let mut entries: Vec<_> = counts.into_iter().collect();
        entries.sort_unstable();
        let mut out = Compiled {
            shifts: Vec::with_capacity(entries.len()),
            masks: Vec::with_capacity(entries.len()),
            weights: Vec::with_capacity(entries.len()),
        };
        for ((s, m), w) in entries {
            out.shifts.push(s);
            out.masks.push(m);
            out.weights.push(w);
        }
        out
    }

    #[inline]
    fn count(&self, fam: &PredicateFamily, code: u64) -> usize {
        let mut total = 0;
        for ((shifts, &mask), &w) in self.shifts.iter().zip(&self.masks).zip(&self.weights) {
            let idx = shifts
                .iter()
                .enumerate()
                .fold(0usize, |acc, (i, &s)| acc | ((((code >> s) & 1) as usize) << i));
            if fam.accepts_index(idx, mask) {
                total += w;
            }
        }
        total
    }
}

impl BruteForce {
    pub fn with_cap(cap: usize) -> Self {
        BruteForce { cap }
    }

    /// Default cap, overridden by `CSPLAB_BRUTE_CAP` when it parses as an integer.
    pub fn from_env() -> Self {
        std::env::var(BRUTE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map_or_else(Self::default, Self::with_cap)
    }

    fn check_cap(&self, vars: usize) -> Result<()> {
        if vars > self.cap || vars > MAX_ENUMERABLE {
            Err(Error::Capacity {
                vars,
                cap: self.cap.min(MAX_ENUMERABLE),
            })
        } else {
            Ok(())
        }
    }

    /// `maxval(Φ)` and the lexicographically smallest argmax.
    pub fn max_value(&self, instance: &Instance) -> Result<(Rational, Assignment)> {
        instance.require_nonempty()?;
        let n = instance.n();
        self.check_cap(n)?;
        let compiled = Compiled::new(n, instance.constraints(), |j| j);
        let (best, code) = enumerate(&compiled, instance.family(), n);
        Ok((
            Rational::new(best as i64, instance.m() as i64),
            Assignment::from_code(code, n),
        ))
    }

    /// `maxval(Φ)` computed over only the variables that occur in some constraint.
    ///
    /// The cap applies to that support, so a sparse sample over many variables can
    /// still be solved exactly.
    pub fn max_value_on_support(&self, instance: &Instance) -> Result<Rational> {
        instance.require_nonempty()?;
        let mut support: Vec<u32> = instance
            .constraints()
            .iter()
            .flat_map(|c| c.vars().iter().copied())
            .collect();
        support.sort_unstable();
        support.dedup();
        let n = support.len();
        self.check_cap(n)?;
        let relabel = |j: u32| support.binary_search(&j).expect("in support") as u32 + 1;
        let compiled = Compiled::new(n, instance.constraints(), relabel);
        let (best, _) = enumerate(&compiled, instance.family(), n);
        Ok(Rational::new(best as i64, instance.m() as i64))
    }
}

/// Best satisfied count and its smallest code.
fn enumerate(compiled: &Compiled, fam: &PredicateFamily, n: usize) -> (usize, u64) {
    let scan = |lo: u64, hi: u64| {
        let mut best = (0usize, lo);
        let mut first = true;
        for code in lo..hi {
            let c = compiled.count(fam, code);
            if first || c > best.0 {
                best = (c, code);
                first = false;
            }
        }
        best
    };
    let total = 1u64 << n;
    if n < PARALLEL_THRESHOLD_LOG2 {
        return scan(0, total);
    }
    let chunk = 1u64 << CHUNK_LOG2;
    (0..total / chunk)
        .into_par_iter()
        .map(|i| scan(i * chunk, (i + 1) * chunk))
        .reduce(
            || (0, u64::MAX),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        )
}

/// Expected value of `x ~ ⊗ Bern(probs_i)`: `(1/m) Σ_C Pr[C satisfied]`.
///
/// Each constraint's probability is the exact sum over its `2^k` local inputs, so with
/// an exact scalar the result is exact.
pub fn expected_value_product<T: Scalar>(instance: &Instance, probs: &[T]) -> Result<T> {
    instance.require_nonempty()?;
    if probs.len() != instance.n() {
        return Err(Error::InputShape(format!(
            "{} probabilities for n = {}",
            probs.len(),
            instance.n()
        )));
    }
    if let Some((i, p)) = probs.iter().enumerate().find(|(_, p)| !p.is_probability()) {
        return Err(Error::Domain(format!(
            "probability {p:?} for variable {} is outside [0, 1]",
            i + 1
        )));
    }
    let fam = instance.family();
    let k = fam.arity();
    let mut sum = T::zero();
    for c in instance.constraints() {
        for local in 0..1usize << k {
            if !fam.accepts_index(local, c.mask()) {
                continue;
            }
            let mut pr = T::one();
            for (i, &j) in c.vars().iter().enumerate() {
                let p = &probs[j as usize - 1];
                pr = if (local >> i) & 1 == 1 {
                    pr * p.clone()
                } else {
                    pr * (T::one() - p.clone())
                };
            }
            sum = sum + pr;
        }
    }
    Ok(sum / T::from_count(instance.m()))
}
