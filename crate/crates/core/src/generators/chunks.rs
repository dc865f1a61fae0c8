use rand::seq::SliceRandom;
use rand::Rng;

use super::graphs::balanced_bipartition;
use super::{Generated, Mode};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::seed;

/// Stream of `chunks` partial matchings with `⌊alpha·n⌋` edges each.
///
/// Yes: every matching crosses a hidden balanced bipartition, except that each edge is
/// independently replaced with probability `eta` by an unused same-side pair. No: every
/// matching is uniform on all vertices.
pub fn gen_matching_chunks(
    n: usize,
    chunks: usize,
    alpha: f64,
    mode: Mode,
    eta: f64,
    seed: u64,
) -> Result<Generated> {
    super::check_eta(eta)?;
    if n < 2 || n % 2 != 0 {
        return Err(Error::Domain(format!("matching chunks need an even n >= 2, got {n}")));
    }
    if !(alpha > 0.0 && alpha <= 0.5) {
        return Err(Error::Domain(format!("alpha must lie in (0, 1/2], got {alpha}")));
    }
    let q = (alpha * n as f64).floor() as usize;
    if q == 0 || chunks == 0 {
        return Err(Error::Domain(format!(
            "empty stream: floor(alpha·n) = {q}, T = {chunks}"
        )));
    }

    let mut rng = seed::rng(seed);
    let (sigma, left, right) = balanced_bipartition(&mut rng, n);
    let mut edges = Vec::with_capacity(q * chunks);
    let mut bounds = Vec::with_capacity(chunks);
    for _ in 0..chunks {
        let start = edges.len();
        match mode {
            Mode::Yes => {
                let mut l = left.clone();
                let mut r = right.clone();
                l.shuffle(&mut rng);
                r.shuffle(&mut rng);
                for _ in 0..q {
                    let noisy = eta > 0.0 && rng.random_bool(eta);
                    let can_cross = !l.is_empty() && !r.is_empty();
                    let (u, v) = if (noisy && (l.len() >= 2 || r.len() >= 2)) || !can_cross {
                        let pool = if r.len() >= 2 && (l.len() < 2 || rng.random_bool(0.5)) {
                            &mut r
                        } else {
                            &mut l
                        };
                        (pool.pop().unwrap(), pool.pop().unwrap())
                    } else {
                        let (a, b) = (l.pop().unwrap(), r.pop().unwrap());
                        if rng.random_bool(0.5) {
                            (a, b)
                        } else {
                            (b, a)
                        }
                    };
                    edges.push((u, v));
                }
            }
            Mode::No => {
                let mut all: Vec<u32> = (1..=n as u32).collect();
                all.shuffle(&mut rng);
                edges.extend(all.chunks_exact(2).take(q).map(|p| (p[0], p[1])));
            }
        }
        bounds.push(start..edges.len());
    }
    Ok(Generated {
        instance: Instance::cut(n, &edges)?,
        bipartition: (mode == Mode::Yes).then_some(sigma),
        chunks: Some(bounds),
    })
}
