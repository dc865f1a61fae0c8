//! Boolean Max-CSP laboratory core.
//!
//! The crate is organised bottom-up:
//!
//! - [`predicate`], [`instance`], [`value`], [`trivial`] and [`format`] give the exact
//!   semantics of Boolean Max-CSPs (predicates, instances, assignment values,
//!   brute-force optima, product-distribution expectations, trivial ratios).
//! - [`stream`] executes space-bounded streaming and sketching algorithms with
//!   bit-level accounting of the state kept between constraint arrivals.
//! - [`algorithms`] packages the concrete procedures (trivial output, sparsification,
//!   bias primitives for Max-DiCut, odd-cycle detectors for Max-Cut).
//! - [`generators`] samples instances and streams, including planted Yes/No pairs.
//!
//! Numeric code that does not need floating point is generic over [`Scalar`], so the
//! same routine can be evaluated in `f64` for experiments or in exact rationals for
//! checks that must hold with equality.

pub mod algorithms;
pub mod bits;
pub mod error;
pub mod format;
pub mod generators;
pub mod instance;
pub mod predicate;
pub mod scalar;
pub mod seed;
pub mod stream;
pub mod trivial;
pub mod value;

pub use error::{Error, Result};
pub use instance::{Assignment, Constraint, Instance};
pub use predicate::{Family, PredicateFamily};
pub use scalar::Scalar;
pub use trivial::{trivial_ratio, TrivialRatio};
pub use value::{expected_value_product, max_value, value, BruteForce, DEFAULT_BRUTE_CAP};

/// Exact rational used for assignment values and exact expectation checks.
pub type Rational = num_rational::Ratio<i64>;

/// Arbitrary-precision rational, for expectations whose denominators outgrow `i64`.
pub type BigRational = num_rational::BigRational;

/// Trivial-ratio result in double precision.
pub type TrivialRatio64 = TrivialRatio<f64>;

/// Rounding rule over doubles, the form used by experiment configs.
pub type Rounding64 = algorithms::bias::Rounding<f64>;

/// Rounding rule over exact rationals.
pub type RoundingQ = algorithms::bias::Rounding<Rational>;
