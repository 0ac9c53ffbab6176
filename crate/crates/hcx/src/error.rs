//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the solver, certifier and instance-file layers.
#[derive(Debug, Error)]
pub enum HcxError {
    #[error("matrix is not symmetric: asymmetry {residual:.3e} exceeds tolerance {tol:.3e}")]
    NonSymmetric { residual: f64, tol: f64 },

    #[error("secular evaluation at mu = {mu} is within {dist:.3e} of a pole")]
    PoleAt { mu: f64, dist: f64 },

    #[error("argument {value} lies outside the domain ({lo}, {hi})")]
    OutOfDomain { value: f64, lo: f64, hi: f64 },

    #[error("no preimage: {target} is outside the range of the first derivative")]
    NoPreimage { target: f64 },

    #[error("inner Newton did not converge after {iters} steps (gradient norm {residual:.3e})")]
    InnerNoConverge { iters: usize, residual: f64 },

    #[error("smallest eigenvalue {lambda1} is nonnegative; the instance is convex, use a plain convex method")]
    ConvexInstance { lambda1: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("g1 = {g1:.3e} is below the zero-coefficient threshold; the tangent basis is degenerate")]
    DegenerateG1 { g1: f64 },

    #[error("inner Hessian block is not positive definite (smallest eigenvalue {min_eig:.3e})")]
    NotPositiveDefinite { min_eig: f64 },

    #[error("bad generator sequence: {0}")]
    BadSequence(String),

    #[error("the secular function is not increasing at mu1 = {mu1} (derivative {phi_d1:.3e})")]
    PhiNotIncreasing { mu1: f64, phi_d1: f64 },

    #[error("piecewise function is not strictly increasing near mu = {mu}")]
    NonMonotonePsi { mu: f64 },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, HcxError>;
