use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::error::{Error, Result};
use crate::instance::{Assignment, Constraint, Instance};
use crate::predicate::{Family, PredicateFamily};
use crate::seed;

const MAX_RESTARTS: usize = 1000;

fn distinct_pair<R: Rng>(rng: &mut R, n: usize) -> (u32, u32) {
    let u = rng.random_range(1..=n as u32);
    let mut v = rng.random_range(1..n as u32);
    if v >= u {
        v += 1;
    }
    (u, v)
}

/// `m` edges drawn i.i.d. uniformly over unordered distinct pairs (repeats allowed
/// unless `distinct`).
pub fn gen_random_graph(n: usize, m: usize, distinct: bool, seed: u64) -> Result<Instance> {
    if n < 2 {
        return Err(Error::Domain(format!("random graph needs n >= 2, got {n}")));
    }
    if m == 0 {
        return Err(Error::Domain("random graph needs m >= 1".into()));
    }
    if distinct && m > n * (n - 1) / 2 {
        return Err(Error::Domain(format!(
            "{m} distinct edges do not fit on {n} vertices"
        )));
    }
    let mut rng = seed::rng(seed);
    let mut taken = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let (u, v) = distinct_pair(&mut rng, n);
        if distinct && !taken.insert((u.min(v), u.max(v))) {
            continue;
        }
        edges.push((u, v));
    }
    Instance::cut(n, &edges)
}

/// Uniformly random balanced bipartition as an assignment with `⌊n/2⌋` ones.
pub(crate) fn balanced_bipartition<R: Rng>(rng: &mut R, n: usize) -> (Assignment, Vec<u32>, Vec<u32>) {
    let mut vs: Vec<u32> = (1..=n as u32).collect();
    vs.shuffle(rng);
    let right = vs.split_off(n - n / 2);
    let left = vs;
    let mut sigma = Assignment::zeros(n);
    for &v in &right {
        sigma.set(v, true);
    }
    let (mut left, mut right) = (left, right);
    left.sort_unstable();
    right.sort_unstable();
    (sigma, left, right)
}

/// Planted-bipartition random graph: each edge crosses the hidden bipartition, except
/// that with probability `eta` it joins two vertices of one side.
pub fn gen_bipartite_noisy(n: usize, m: usize, eta: f64, seed: u64) -> Result<(Instance, Assignment)> {
    super::check_eta(eta)?;
    if n < 2 || m == 0 {
        return Err(Error::Domain(format!("bipartite graph needs n >= 2 and m >= 1, got n = {n}, m = {m}")));
    }
    if eta > 0.0 && n < 4 {
        return Err(Error::Domain("noisy edges need n >= 4".into()));
    }
    let mut rng = seed::rng(seed);
    let (sigma, left, right) = balanced_bipartition(&mut rng, n);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let noisy = eta > 0.0 && rng.random_bool(eta);
        let (u, v) = if noisy {
            let side = if right.len() >= 2 && (left.len() < 2 || rng.random_bool(0.5)) {
                &right
            } else {
                &left
            };
            let pick: Vec<u32> = side.choose_multiple(&mut rng, 2).copied().collect();
            (pick[0], pick[1])
        } else {
            let l = *left.choose(&mut rng).expect("nonempty side");
            let r = *right.choose(&mut rng).expect("nonempty side");
            if rng.random_bool(0.5) {
                (l, r)
            } else {
                (r, l)
            }
        };
        edges.push((u, v));
    }
    Ok((Instance::cut(n, &edges)?, sigma))
}

/// Orients each undirected edge uniformly at random.
pub fn direct_edges_randomly(cut: &Instance, seed: u64) -> Result<Instance> {
    cut.require_binary(Family::Cut)?;
    let mut rng = seed::rng(seed);
    let edges: Vec<(u32, u32)> = cut
        .constraints()
        .iter()
        .map(|c| {
            let (u, v) = c.endpoints();
            if rng.random_bool(0.5) {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    Instance::dicut(cut.n(), &edges)
}

/// Uniform constraints subject to every variable occurring at most `max_degree` times.
///
/// Each constraint is uniform over the tuples that keep the bound, which is what
/// rejection sampling from all tuples would give. A run that gets stuck restarts; after
/// a bounded number of restarts the request is reported infeasible.
pub fn gen_bounded_degree(
    n: usize,
    max_degree: usize,
    m: usize,
    family: &PredicateFamily,
    seed: u64,
) -> Result<Instance> {
    let k = family.arity();
    if n < k || m == 0 || max_degree == 0 {
        return Err(Error::Domain(format!(
            "bounded-degree generator needs n >= {k}, m >= 1, D >= 1"
        )));
    }
    if m * k > n * max_degree {
        return Err(Error::Domain(format!(
            "{m} constraints of arity {k} exceed n·D = {}",
            n * max_degree
        )));
    }
    let mut rng = seed::rng(seed);
    'restart: for _ in 0..MAX_RESTARTS {
        let mut occ = vec![0usize; n + 1];
        let mut cs = Vec::with_capacity(m);
        for _ in 0..m {
            let open: Vec<u32> = (1..=n as u32)
                .filter(|&v| occ[v as usize] < max_degree)
                .collect();
            if open.len() < k {
                continue 'restart;
            }
            let mut vars: Vec<u32> = open.choose_multiple(&mut rng, k).copied().collect();
            vars.shuffle(&mut rng);
            for &v in &vars {
                occ[v as usize] += 1;
            }
            let mask = rng.random_range(0..family.mask_count());
            cs.push(Constraint::new(vars, mask));
        }
        return Instance::new(n, family.clone(), cs);
    }
    Err(Error::Domain(format!(
        "no bounded-degree instance found after {MAX_RESTARTS} restarts"
    )))
}
