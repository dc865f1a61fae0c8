mod common;

use common::*;
use csplab_core::format::write_instance;
use csplab_core::generators::{gap_check, GeneratorSpec, Mode};
use csplab_core::{value, BruteForce, Family, Rational};
use num_rational::Ratio;
use sha2::{Digest, Sha256};

fn digest(spec: &GeneratorSpec) -> String {
    let g = spec.generate().unwrap();
    let hash = Sha256::digest(write_instance(&g.instance).as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

fn golden_specs() -> Vec<GeneratorSpec> {
    let chunks = |n, mode, eta, seed| GeneratorSpec::MatchingChunks {
        n,
        chunks: 4,
        alpha: 0.375,
        mode,
        eta,
        seed,
    };
    let graph = |n, m, seed| GeneratorSpec::RandomGraph {
        n,
        m,
        distinct: false,
        seed,
    };
    vec![
        graph(4, 3, 1),
        graph(12, 30, 2),
        GeneratorSpec::RandomGraph { n: 8, m: 20, distinct: true, seed: 3 },
        GeneratorSpec::BipartiteNoisy { n: 10, m: 15, eta: 0.0, seed: 4 },
        GeneratorSpec::BipartiteNoisy { n: 10, m: 15, eta: 0.2, seed: 5 },
        GeneratorSpec::BipartiteNoisy { n: 30, m: 60, eta: 0.1, seed: 6 },
        chunks(16, Mode::Yes, 0.0, 7),
        chunks(16, Mode::No, 0.0, 8),
        chunks(40, Mode::Yes, 0.25, 9),
        GeneratorSpec::DirectedFromCut { base: Box::new(graph(6, 8, 10)), seed: 11 },
        GeneratorSpec::DirectedFromCut { base: Box::new(chunks(16, Mode::No, 0.0, 12)), seed: 13 },
        GeneratorSpec::DirectedFromCut { base: Box::new(graph(20, 50, 14)), seed: 15 },
        GeneratorSpec::BoundedDegreeRandom { n: 12, max_degree: 3, m: 18, family: Family::Cut, k: None, seed: 16 },
        GeneratorSpec::BoundedDegreeRandom { n: 15, max_degree: 2, m: 8, family: Family::Kand, k: Some(3), seed: 17 },
        GeneratorSpec::BoundedDegreeRandom { n: 20, max_degree: 4, m: 12, family: Family::Monarchy, k: Some(5), seed: 18 },
    ]
}

/// Recorded at first build; a change means generated streams changed.
const GOLDEN: [&str; 15] = [
    "4e807ca8719d44b7862f75686649ce2b79c5e1e72d77eebcbc24be7245cd96e1",
    "26a1abfd94aef16ae621bb5555413d8611d6428bcd2bcb09fccaaa70346e21f3",
    "614d565f2809d9b473c7a28f185c9895c4fefb6541b8d9ae07f1e26d8194bd22",
    "c4d3d82f95cf1b582e5a078d7a2fc2369e0591260a732899548881aede5027cd",
    "e8366972211c2ae24ccb9fe2458d8cc7aef1c8ef093377b4ad518bbb6bf93382",
    "d959ed0ab391ca8eeb4ab69ee3dca1fd15ceb9abded5edf000c3c387ab03a6cd",
    "90a32781fa3fe109173e0ea97dfe29300dbfa386a0c2506e7d440c895b59d87b",
    "f852e87fdb0c56f8a03d7457e45f7ed453722db0e4e3276123ecd266902e4754",
    "7257c255d422c2893a53488f7d825d6c4486f3c4847aa87d2293b2f879bd7adc",
    "ebde8e7f81c090abbf352f447b288cebdf3d45ff83d8838e2ddfd4ac10cb71ae",
    "61177d2971ee2094a2626d813b61a8bbd1d78972b7808c082ac0b7832ac9e6db",
    "cafd85308999f5e4f4b2d1cce0504760533fc24126724394f1ed809e47fa49f1",
    "32135378f940ac6863d481fa376df9211d0686ea2eead47350372ca8b9cf96e3",
    "0235c6b70b1991d102c50e604cb5d22b4d126d0ee20b2e4de0f652f4e3153215",
    "ba5c024ceee869aa95c7a75c1da89a591c7a24df10c40b94018447ce88967ed2",
];

#[test]
fn golden_digests() {
    for (spec, want) in golden_specs().iter().zip(GOLDEN) {
        assert_eq!(digest(spec), want, "{spec:?}");
        assert_eq!(digest(spec), digest(&spec.clone()));
    }
}

fn mean(xs: &[Rational]) -> f64 {
    xs.iter().map(|r| *r.numer() as f64 / *r.denom() as f64).sum::<f64>() / xs.len() as f64
}

#[test]
fn sparse_random_graphs_are_far_from_bipartite() {
    let spec = GeneratorSpec::RandomGraph { n: 14, m: 140, distinct: false, seed: 1 };
    let vals: Vec<Rational> = (0..50)
        .map(|t| oracle_max_fast(&spec.trial(t).generate().unwrap().instance))
        .collect();
    // measured 0.676 here and 0.673 in an independent simulation; the 1/2 limit is
    // far away at n = 14
    let avg = mean(&vals);
    assert!((0.6..=0.7).contains(&avg), "{avg}");
}

/// Crate brute force, cross-checked against the slow oracle on one sample per call site.
fn oracle_max_fast(inst: &csplab_core::Instance) -> Rational {
    csplab_core::max_value(inst).unwrap().0
}

#[test]
fn fast_and_slow_optimum_agree() {
    let spec = GeneratorSpec::RandomGraph { n: 10, m: 40, distinct: false, seed: 2 };
    for t in 0..5 {
        let inst = spec.trial(t).generate().unwrap().instance;
        assert_eq!(oracle_max_fast(&inst), oracle_max(&inst));
    }
}

fn chunk_spec(mode: Mode, seed: u64) -> GeneratorSpec {
    GeneratorSpec::MatchingChunks { n: 16, chunks: 8, alpha: 0.375, mode, eta: 0.0, seed }
}

#[test]
fn uniform_matching_chunks_are_rarely_near_bipartite() {
    let low = (0..50)
        .filter(|&t| {
            let inst = chunk_spec(Mode::No, 0).trial(t).generate().unwrap().instance;
            oracle_max_fast(&inst) <= Ratio::new(9, 10)
        })
        .count();
    assert!(low >= 45, "{low}");
}

#[test]
fn planted_chunks_are_satisfied_by_the_hidden_cut() {
    for t in 0..100 {
        let spec = GeneratorSpec::MatchingChunks {
            n: 40,
            chunks: 16,
            alpha: 0.5,
            mode: Mode::Yes,
            eta: 0.0,
            seed: t,
        };
        let g = spec.generate().unwrap();
        let sigma = g.bipartition.unwrap();
        assert_eq!(value(&g.instance, &sigma).unwrap(), Ratio::from_integer(1));
        let bounds = g.chunks.unwrap();
        assert_eq!(bounds.first().unwrap().start, 0);
        assert_eq!(bounds.last().unwrap().end, g.instance.m());
        assert!(bounds.windows(2).all(|w| w[0].end == w[1].start));
    }
}

#[test]
fn gap_between_planted_and_uniform_chunks() {
    let brute = BruteForce::default();
    let report = gap_check(&chunk_spec(Mode::Yes, 1), &chunk_spec(Mode::No, 2), 50, &brute).unwrap();
    assert!(report.yes.iter().all(|&v| v == 1.0));
    assert!(report.gap >= 0.05, "{}", report.gap);

    let same = gap_check(&chunk_spec(Mode::No, 3), &chunk_spec(Mode::No, 3), 30, &brute).unwrap();
    assert!(same.gap <= 0.0, "{}", same.gap);

    let big = GeneratorSpec::RandomGraph { n: 30, m: 40, distinct: false, seed: 0 };
    assert!(gap_check(&big, &big, 1, &BruteForce::with_cap(20)).is_err());
}

#[test]
fn random_direction_is_fair() {
    let base = GeneratorSpec::RandomGraph { n: 2, m: 1, distinct: false, seed: 0 };
    let forward = (0..1000)
        .filter(|&seed| {
            let spec = GeneratorSpec::DirectedFromCut { base: Box::new(base.clone()), seed };
            let inst = spec.generate().unwrap().instance;
            let (u, v) = inst.constraints()[0].endpoints();
            let undirected = base.generate().unwrap().instance;
            let (a, _) = undirected.constraints()[0].endpoints();
            assert!(u != v);
            u == a
        })
        .count();
    assert!((450..=550).contains(&forward), "{forward}");
}

#[test]
fn bounded_degree_respects_the_cap() {
    for t in 0..100 {
        for (fam, k, d) in [(Family::Cut, None, 3), (Family::Kand, Some(3), 2), (Family::Monarchy, Some(4), 5)] {
            let spec = GeneratorSpec::BoundedDegreeRandom { n: 12, max_degree: d, m: 8, family: fam, k, seed: t };
            let inst = spec.generate().unwrap().instance;
            let mut occ = vec![0; 13];
            for c in inst.constraints() {
                for &v in c.vars() {
                    occ[v as usize] += 1;
                }
            }
            assert!(occ.iter().all(|&o| o <= d));
        }
    }
    let tight = GeneratorSpec::BoundedDegreeRandom { n: 12, max_degree: 3, m: 18, family: Family::Cut, k: None, seed: 16 };
    assert_eq!(tight.generate().unwrap().instance.m(), 18);
    let over = GeneratorSpec::BoundedDegreeRandom { n: 12, max_degree: 3, m: 19, family: Family::Cut, k: None, seed: 16 };
    assert!(over.generate().is_err());
}

#[test]
fn every_generated_constraint_is_valid() {
    for spec in golden_specs() {
        for t in 0..20 {
            let inst = spec.trial(t).generate().unwrap().instance;
            for c in inst.constraints() {
                c.validate(inst.n(), inst.family()).unwrap();
            }
        }
    }
}
