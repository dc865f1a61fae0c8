//! Reference implementations written from the predicate formulas, independent of the
//! truth tables and enumeration code in the crate.
#![allow(dead_code)]

use csplab_core::{Constraint, Family, Instance, PredicateFamily};
use num_rational::Ratio;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Base predicate straight from its formula, inputs already negated.
pub fn formula(family: Family, y: &[bool]) -> bool {
    match family {
        Family::Cut => y[0] != y[1],
        Family::Dicut => y[0] && !y[1],
        Family::Kand => y.iter().all(|&b| b),
        Family::Monarchy => y[1..].iter().all(|&b| b) || (y[0] && y[1..].iter().any(|&b| b)),
    }
}

/// `mask` bit `i` negates position `i` (0-based).
pub fn satisfied(family: Family, c: &Constraint, x: &[bool]) -> bool {
    let y: Vec<bool> = c
        .vars()
        .iter()
        .enumerate()
        .map(|(i, &v)| x[v as usize - 1] ^ (c.mask() >> i & 1 == 1))
        .collect();
    formula(family, &y)
}

pub fn oracle_value(inst: &Instance, x: &[bool]) -> Ratio<i64> {
    let fam = inst.family().family();
    let sat = inst.constraints().iter().filter(|c| satisfied(fam, c, x)).count();
    Ratio::new(sat as i64, inst.m() as i64)
}

/// Exhaustive maximum, enumerating assignments in plain counting order.
pub fn oracle_max(inst: &Instance) -> Ratio<i64> {
    let n = inst.n();
    let mut best = Ratio::from_integer(0);
    for code in 0u64..(1 << n) {
        let x: Vec<bool> = (0..n).map(|i| code >> i & 1 == 1).collect();
        best = best.max(oracle_value(inst, &x));
    }
    best
}

pub fn random_family(rng: &mut ChaCha8Rng) -> PredicateFamily {
    match rng.random_range(0..4) {
        0 => PredicateFamily::cut(),
        1 => PredicateFamily::dicut(),
        2 => PredicateFamily::new(Family::Kand, rng.random_range(2..=4)).unwrap(),
        _ => PredicateFamily::new(Family::Monarchy, rng.random_range(3..=5)).unwrap(),
    }
}

pub fn random_constraint(rng: &mut ChaCha8Rng, n: usize, fam: &PredicateFamily) -> Constraint {
    let k = fam.arity();
    let mut vars: Vec<u32> = Vec::with_capacity(k);
    while vars.len() < k {
        let v = rng.random_range(1..=n as u32);
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    let mask = if fam.negation_closed() {
        rng.random_range(0..1u32 << k)
    } else {
        0
    };
    Constraint::new(vars, mask)
}

pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, m: usize, fam: &PredicateFamily) -> Instance {
    let cs = (0..m).map(|_| random_constraint(rng, n, fam)).collect();
    Instance::new(n, fam.clone(), cs).unwrap()
}
