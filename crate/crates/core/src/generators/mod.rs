//! Seeded distributions over instances and streams.
//!
//! Every generator is a pure function of its [`GeneratorSpec`], seed included.

mod chunks;
mod gap;
mod graphs;

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance};
use crate::predicate::Family;
use crate::seed;

pub use chunks::gen_matching_chunks;
pub use gap::{gap_check, percentile, GapReport};
pub use graphs::{direct_edges_randomly, gen_bipartite_noisy, gen_bounded_degree, gen_random_graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Yes,
    No,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GeneratorSpec {
    /// `m` i.i.d. uniform edges over distinct pairs; `distinct` forbids repeats.
    RandomGraph {
        n: usize,
        m: usize,
        #[serde(default)]
        distinct: bool,
        seed: u64,
    },
    /// Planted balanced bipartition; each edge crosses it except with probability `eta`.
    BipartiteNoisy {
        n: usize,
        m: usize,
        #[serde(default)]
        eta: f64,
        seed: u64,
    },
    /// `T` chunks, each a partial matching of `⌊alpha·n⌋` edges.
    MatchingChunks {
        n: usize,
        #[serde(rename = "T")]
        chunks: usize,
        alpha: f64,
        mode: Mode,
        #[serde(default)]
        eta: f64,
        seed: u64,
    },
    /// A cut generator whose edges are then oriented uniformly at random.
    DirectedFromCut { base: Box<GeneratorSpec>, seed: u64 },
    /// Every variable occurs in at most `D` constraints.
    BoundedDegreeRandom {
        n: usize,
        #[serde(rename = "D")]
        max_degree: usize,
        m: usize,
        family: Family,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<usize>,
        seed: u64,
    },
}

/// A generated instance plus whatever structure the generator planted.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub instance: Instance,
    /// Hidden bipartition, for planted generators.
    pub bipartition: Option<Assignment>,
    /// Constraint index ranges of successive chunks, for chunked streams.
    pub chunks: Option<Vec<Range<usize>>>,
}

impl Generated {
    fn plain(instance: Instance) -> Self {
        Generated {
            instance,
            bipartition: None,
            chunks: None,
        }
    }
}

impl GeneratorSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            GeneratorSpec::RandomGraph { .. } => "random-graph",
            GeneratorSpec::BipartiteNoisy { .. } => "bipartite-noisy",
            GeneratorSpec::MatchingChunks { .. } => "matching-chunks",
            GeneratorSpec::DirectedFromCut { .. } => "directed-from-cut",
            GeneratorSpec::BoundedDegreeRandom { .. } => "bounded-degree-random",
        }
    }

    /// Short label including the Yes/No mode, used in CSV rows.
    pub fn label(&self) -> String {
        match self {
            GeneratorSpec::MatchingChunks { mode, .. } => format!(
                "{}:{}",
                self.kind(),
                if *mode == Mode::Yes { "yes" } else { "no" }
            ),
            GeneratorSpec::DirectedFromCut { base, .. } => format!("{}:{}", self.kind(), base.label()),
            _ => self.kind().to_string(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            GeneratorSpec::RandomGraph { n, .. }
            | GeneratorSpec::BipartiteNoisy { n, .. }
            | GeneratorSpec::MatchingChunks { n, .. }
            | GeneratorSpec::BoundedDegreeRandom { n, .. } => *n,
            GeneratorSpec::DirectedFromCut { base, .. } => base.n(),
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            GeneratorSpec::RandomGraph { seed, .. }
            | GeneratorSpec::BipartiteNoisy { seed, .. }
            | GeneratorSpec::MatchingChunks { seed, .. }
            | GeneratorSpec::DirectedFromCut { seed, .. }
            | GeneratorSpec::BoundedDegreeRandom { seed, .. } => *seed,
        }
    }

    /// Same distribution, new seed. A wrapped base spec gets a seed derived from it.
    pub fn with_seed(&self, new_seed: u64) -> Self {
        let mut out = self.clone();
        match &mut out {
            GeneratorSpec::RandomGraph { seed, .. }
            | GeneratorSpec::BipartiteNoisy { seed, .. }
            | GeneratorSpec::MatchingChunks { seed, .. }
            | GeneratorSpec::BoundedDegreeRandom { seed, .. } => *seed = new_seed,
            GeneratorSpec::DirectedFromCut { base, seed } => {
                *seed = new_seed;
                **base = base.with_seed(seed::derive(new_seed, 0));
            }
        }
        out
    }

    /// Spec for the `t`-th sample of a batch drawn from this one.
    pub fn trial(&self, t: u64) -> Self {
        self.with_seed(seed::derive(self.seed(), t))
    }

    pub fn generate(&self) -> Result<Generated> {
        match self {
            &GeneratorSpec::RandomGraph {
                n,
                m,
                distinct,
                seed,
            } => gen_random_graph(n, m, distinct, seed).map(Generated::plain),
            &GeneratorSpec::BipartiteNoisy { n, m, eta, seed } => {
                let (instance, sigma) = gen_bipartite_noisy(n, m, eta, seed)?;
                Ok(Generated {
                    instance,
                    bipartition: Some(sigma),
                    chunks: None,
                })
            }
            &GeneratorSpec::MatchingChunks {
                n,
                chunks,
                alpha,
                mode,
                eta,
                seed,
            } => gen_matching_chunks(n, chunks, alpha, mode, eta, seed),
            GeneratorSpec::DirectedFromCut { base, seed } => {
                let inner = base.generate()?;
                Ok(Generated {
                    instance: direct_edges_randomly(&inner.instance, *seed)?,
                    ..inner
                })
            }
            &GeneratorSpec::BoundedDegreeRandom {
                n,
                max_degree,
                m,
                family,
                k,
                seed,
            } => {
                let arity = k.unwrap_or(match family {
                    Family::Cut | Family::Dicut => 2,
                    Family::Kand | Family::Monarchy => 3,
                });
                let fam = crate::PredicateFamily::new(family, arity)?;
                gen_bounded_degree(n, max_degree, m, &fam, seed).map(Generated::plain)
            }
        }
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if (0.0..1.0).contains(&eta) {
        Ok(())
    } else {
        Err(Error::Domain(format!("noise eta must lie in [0, 1), got {eta}")))
    }
}
