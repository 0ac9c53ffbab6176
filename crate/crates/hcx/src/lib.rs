//! Certified solvers for trust-region subproblems coupled with convex terms.
//!
//! The problem family:
//!
//! ```text
//! minimize   (1/2) xᵀHx + cᵀx + f₀(y)      x ∈ ℝⁿ, y ∈ ℝᵐ
//! subject to xᵀx + f(y) ≤ 0
//! ```
//!
//! with H symmetric indefinite and f₀, f convex — the classical trust-region
//! subproblem joined with a convex program through the shared constraint.
//! The joint problem is hidden convex: globally solvable through the
//! λ₁-shifted convex reformulation, yet it can carry any prescribed number
//! of local non-global minimizers.
//!
//! What this crate does:
//!
//! - [`global::solve_global`] computes certified global minimizers of the
//!   scalar linearly coupled form (constraint xᵀx − ay − b ≤ 0) via the
//!   secular-equation root on (−λ₁, ∞), hard case included;
//! - [`global::check_global_certificate`] verifies the KKT + PSD global
//!   certificate for the general multi-constraint form;
//! - [`local::enumerate_roots`] finds every candidate multiplier in
//!   (max{0, −λ₂}, −λ₁) by scanning the gap φ − ψ, and
//!   [`certify::certify_local`] settles each candidate through the reduced
//!   Hessian on the constraint tangent space;
//! - [`local::uniqueness_report`] decides when at most one local non-global
//!   minimizer can exist (log-concavity of the slack curve);
//! - [`builder::build_psi`] / [`builder::psi_to_f0`] construct instances
//!   with any prescribed number of local non-global minimizers, plus canned
//!   reproduction instances;
//! - [`format`] reads and writes the JSON instance files used by the `hcx`
//!   binary (`solve`, `local`, `verify`, `generate`, `sample`).
//!
//! Start with the runnable examples in `examples/` — one per capability.

pub mod builder;
pub mod certify;
pub mod cli;
pub mod convex;
pub mod error;
pub mod format;
pub mod global;
pub mod local;
pub mod spectral;

pub use convex::{ConvexOracle, ConvexScalar, TrscInstance, TrslInstance};
pub use error::{HcxError, Result};
pub use spectral::Spectrum;

#[cfg(test)]
pub(crate) mod test_util;
