use csplab::experiment::{ratio_experiment, RatioConfig};
use csplab::{estimate_advantage, space_sweep, AdvantageConfig, Report, SweepConfig};
use csplab_core::algorithms::{AlgorithmSpec, TieSpec};
use csplab_core::generators::{GeneratorSpec, Mode};
use csplab_core::stream::Ordering;

fn chunks(n: usize, mode: Mode) -> GeneratorSpec {
    GeneratorSpec::MatchingChunks { n, chunks: 8, alpha: 0.375, mode, eta: 0.0, seed: 0 }
}

fn components_config(space_bits: u64, trials: usize) -> AdvantageConfig {
    let mut algo = AlgorithmSpec::new("component-growing");
    algo.space_bits = Some(space_bits);
    AdvantageConfig {
        algo,
        yes: chunks(1000, Mode::Yes),
        no: chunks(1000, Mode::No),
        ordering: Ordering::Adversarial,
        seed: 2024,
        passes: 1,
        space_bits: None,
        trials,
        delta: 0.05,
        threshold: None,
    }
}

#[test]
fn ample_space_distinguishes() {
    let r = estimate_advantage(&components_config(32768, 400)).unwrap();
    assert!(r.aggregates.advantage >= 0.5, "{:?}", r.aggregates);
    assert!(r.audit());
}

#[test]
fn advantage_grows_with_space() {
    let cfg = SweepConfig {
        algo: AlgorithmSpec::new("component-growing"),
        yes: chunks(1000, Mode::Yes),
        no: chunks(1000, Mode::No),
        ordering: Ordering::Adversarial,
        seed: 2024,
        space_grid: vec![64, 512, 4096, 32768],
        pass_grid: vec![1],
        trials: 400,
        delta: 0.05,
        threshold: None,
    };
    let rows = space_sweep(&cfg).unwrap();
    let adv: Vec<f64> = rows.iter().map(|r| r.advantage.unwrap_or(0.0)).collect();
    assert_eq!(adv.len(), 4);
    for w in adv.windows(2) {
        assert!(w[1] >= w[0] - 0.05, "{adv:?}");
    }
    assert!(adv[3] > adv[0] + 0.5, "{adv:?}");
}

#[test]
fn greedy_never_exceeds_optimum() {
    let mut algo = AlgorithmSpec::new("bias-greedy");
    algo.tie = Some(TieSpec::One);
    let cfg = RatioConfig {
        algo,
        spec: GeneratorSpec::DirectedFromCut {
            base: Box::new(GeneratorSpec::RandomGraph { n: 12, m: 24, distinct: false, seed: 0 }),
            seed: 4,
        },
        ordering: Ordering::Random,
        seed: 11,
        passes: 2,
        space_bits: None,
        trials: 200,
    };
    let r = ratio_experiment(&cfg).unwrap();
    assert_eq!(r.aggregates.violations, 0);
    assert!(r.trials.iter().all(|t| t.output <= t.maxval + 1e-12));
    let min = r.aggregates.min_ratio;
    println!("greedy empirical min ratio over 200 digraphs: {min:.4}");
    assert!(min > 0.0 && min <= 1.0);
}

#[test]
fn sparsify_mean_error_small() {
    let mut algo = AlgorithmSpec::new("sparsify");
    algo.eps = Some(0.1);
    let cfg = RatioConfig {
        algo,
        spec: GeneratorSpec::RandomGraph { n: 12, m: 600, distinct: false, seed: 3 },
        ordering: Ordering::Random,
        seed: 8,
        passes: 1,
        space_bits: None,
        trials: 30,
    };
    let r = ratio_experiment(&cfg).unwrap();
    assert!(r.aggregates.mean_abs_error <= 0.1, "{:?}", r.aggregates);
}

#[test]
fn report_roundtrips_through_json() {
    let first = estimate_advantage(&components_config(512, 100)).unwrap();
    let parsed: Report<AdvantageConfig, serde_json::Value, serde_json::Value> =
        serde_json::from_str(&first.to_json()).unwrap();
    let again = estimate_advantage(&parsed.config).unwrap();
    assert_eq!(first.canonical_json(), again.canonical_json());
    assert!(again.audit());
}
