//! Stochastic orders on the positive half-line.
//!
//! The crate decides strong (`≤st`) and increasing convex (`≤icx`) stochastic
//! order between finitely supported distributions, constructs least dominating
//! distributions in both orders, implements the Hardy-Littlewood maximal
//! transform and the one-dimensional Wasserstein and Prohorov metrics, runs
//! family-level integrability diagnostics, and mechanically verifies the
//! implication diagram relating all of these properties together with the
//! counterexamples showing its sharpness.
//!
//! Everything that feeds an order decision is exact rational arithmetic;
//! floating point appears only where values are genuinely transcendental
//! (logarithmic moments, fractional powers) or as verbatim promotions.
//!
//! The two orders genuinely differ, and the crate decides both exactly:
//!
//! ```
//! use stochord::dist::DiscreteDist;
//! use stochord::orders::{icx_le, st_le};
//! use stochord::rational::{q, qi};
//!
//! // mass 1/n at n, the rest at zero
//! let two = DiscreteDist::new(vec![(qi(0), q(1, 2)), (qi(2), q(1, 2))]).unwrap();
//! let four = DiscreteDist::new(vec![(qi(0), q(3, 4)), (qi(4), q(1, 4))]).unwrap();
//!
//! assert!(icx_le(&two, &four).holds()); // increasing convex order holds
//! assert!(!st_le(&two, &four).holds()); // strong order fails
//! ```

pub mod diagram;
pub mod dist;
pub mod families;
pub mod metrics;
pub mod orders;
pub mod pwfun;
pub mod rational;
pub mod rng;
