//! Exact bounds on the Winsorized-tilted mean.
//!
//! The Winsorized-tilted mean of a random variable `X` at tilt strength `h`
//! and Winsorization level `w` is
//!
//! ```text
//!     E[X e^{h (X ∧ w)}] / E[e^{h (X ∧ w)}]
//! ```
//!
//! Over all zero-mean distributions with variance at most `σ²` this quantity
//! has a finite supremum `S(h, w, σ)`, attained by a unique two-point
//! distribution, and `S(h, w, σ) < K_w(h) σ²` with an optimal constant
//! `K_w(h)` expressible through the Lambert W₋₁ function. This crate computes
//! the supremum, its maximizer, and the constant factors exactly (up to
//! floating-point rounding), and ships an independent brute-force oracle that
//! certifies every closed-form result by grid search over two-point laws and
//! random discrete distributions.
//!
//! Module map:
//!
//! - [`dist`] — discrete distribution types and tilted-mean evaluation
//! - [`roots`] — bracketed root-finders for the characteristic roots and
//!   the Lambert W₋₁ branch
//! - [`bounds`] — the suprema, maximizers, and optimal `K_w(h)` factors
//! - [`oracle`] — brute-force and property-based verification suites
//! - [`bayes`] — optimal prior bounds on the Bayes posterior mean for
//!   one-parameter exponential families
//! - [`cli`] — the command-line front end used by the `tiltbound` binary
//!
//! See the crate examples for runnable demonstrations of each capability:
//!
//! ```bash
//! cargo run --example bound_query
//! cargo run --example ratio_curves
//! cargo run --example verify_against_oracle
//! cargo run --example bayes_posterior_bound
//! cargo run --example monotonicity
//! ```

pub mod bayes;
pub mod bounds;
pub mod cli;
pub mod dist;
pub mod oracle;
pub mod roots;

pub use bounds::{supremum, BoundResult, Branch};
pub use dist::{tilted_mean, DiscreteDist, Params, TwoPointDist};
pub use roots::RootConfig;

/// Errors reported by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A distribution failed its construction invariants.
    #[error("invalid distribution: {0}")]
    InvalidDist(String),
    /// A parameter triple failed validation.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A root-finder exhausted its iteration budget.
    #[error("root-finder failed to converge: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
