use rayon::prelude::*;
use serde::Serialize;

use super::GeneratorSpec;
use crate::error::{Error, Result};
use crate::value::BruteForce;

/// Nearest-rank percentile of `xs` (need not be sorted), `p` in `[0, 100]`.
pub fn percentile(xs: &[f64], p: f64) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let rank = ((p / 100.0) * v.len() as f64).ceil() as usize;
    Some(v[rank.clamp(1, v.len()) - 1])
}

#[derive(Debug, Clone, Serialize)]
pub struct GapReport {
    pub trials: usize,
    pub yes: Vec<f64>,
    pub no: Vec<f64>,
    pub mean_yes: f64,
    pub mean_no: f64,
    pub yes_p05: f64,
    pub no_p95: f64,
    /// `yes_p05 - no_p95`; positive means the two distributions separate.
    pub gap: f64,
}

fn max_values(spec: &GeneratorSpec, trials: usize, brute: &BruteForce) -> Result<Vec<f64>> {
    (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let g = spec.trial(t).generate()?;
            let v = brute.max_value_on_support(&g.instance)?;
            Ok(*v.numer() as f64 / *v.denom() as f64)
        })
        .collect()
}

/// Samples both generators and compares the exact optimum distributions.
pub fn gap_check(
    yes: &GeneratorSpec,
    no: &GeneratorSpec,
    trials: usize,
    brute: &BruteForce,
) -> Result<GapReport> {
    if trials == 0 {
        return Err(Error::Config("gap check needs at least one trial".into()));
    }
    let ys = max_values(yes, trials, brute)?;
    let ns = max_values(no, trials, brute)?;
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let yes_p05 = percentile(&ys, 5.0).unwrap();
    let no_p95 = percentile(&ns, 95.0).unwrap();
    Ok(GapReport {
        trials,
        mean_yes: mean(&ys),
        mean_no: mean(&ns),
        yes_p05,
        no_p95,
        gap: yes_p05 - no_p95,
        yes: ys,
        no: ns,
    })
}
