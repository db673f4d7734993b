//! Exact piecewise-function kernel.
//!
//! Two representations cover everything the library manipulates: right
//! continuous step functions ([`StepFn`], distribution and survival
//! functions) and continuous piecewise-linear functions ([`Plf`], integrated
//! survival functions and quantile tail integrals). All coordinates are
//! rationals, so envelopes, derivatives and integrals are computed without
//! rounding and canonical forms compare structurally.

mod plf;
mod step;

pub use plf::{max_envelope_convex, Plf};
pub use step::{min_envelope, StepFn};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PwError {
    #[error("integral over an infinite interval diverges: tail is not eventually zero")]
    DivergentIntegral,
}
