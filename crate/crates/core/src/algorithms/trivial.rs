use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::instance::Constraint;
use crate::predicate::PredicateFamily;
use crate::stream::{Output, StreamingAlgorithm};
use crate::trivial::trivial_ratio;

/// Zero-space algorithm that always outputs `α_triv − ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrivialApprox {
    value: f64,
}

impl TrivialApprox {
    pub fn value(&self) -> f64 {
        self.value
    }
}

pub fn trivial_approx(family: &PredicateFamily, eps: f64) -> Result<TrivialApprox> {
    let alpha = trivial_ratio::<f64>(family).value;
    if !(eps > 0.0 && eps < alpha) {
        return Err(Error::Domain(format!(
            "eps must lie in (0, {alpha}) for {}, got {eps}",
            family.family()
        )));
    }
    Ok(TrivialApprox {
        value: alpha - eps,
    })
}

impl StreamingAlgorithm for TrivialApprox {
    type State = ();

    fn declared_bits(&self) -> u64 {
        0
    }

    fn init(&self) {}

    fn update(&self, _: &mut (), _: &Constraint) {}

    fn output(&self, _: &()) -> Result<Output> {
        Ok(Output::Value(self.value))
    }

    fn encode(&self, _: &()) -> BitString {
        BitString::new()
    }

    fn decode(&self, _: &BitString) {}

    fn encoded_len(&self, _: &()) -> u64 {
        0
    }
}
