//! One-dimensional Wasserstein-p and Prohorov distances between discrete
//! distributions, each paired with an independent combinatorial oracle.
//!
//! The production Wasserstein path integrates the quantile difference on the
//! merged cumulative partition; the oracle solves the transportation problem
//! over atom pairs by min-cost flow. The production Prohorov path bisects on
//! ε with a coupling-feasibility max-flow test; the oracle enumerates atom
//! subsets against the metric's definition directly.

mod flow;
mod prohorov;
mod wasserstein;

pub use prohorov::{prohorov, prohorov_bruteforce, prohorov_tol};
pub use wasserstein::{wasserstein, wasserstein_lp_oracle, wasserstein_pow_int, Coupling};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricError {
    #[error("support too large: {got} atoms exceeds the oracle limit {limit}")]
    SupportTooLarge { got: usize, limit: usize },
    #[error("internal invariant breach: {0}")]
    Internal(String),
}
