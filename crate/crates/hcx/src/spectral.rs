//! Eigendecomposition of the quadratic term and the secular function.
//!
//! Everything downstream works in the rotated basis g = Vᵀc where
//! H = V·Diag(λ₁,…,λₙ)·Vᵀ with λ₁ ≤ … ≤ λₙ. The secular function
//!
//! ```text
//! φ(μ) = Σᵢ gᵢ²/(λᵢ+μ)²
//! ```
//!
//! is the squared norm of the stationary point x(μ) = −(H+μI)⁻¹c as a
//! function of the multiplier; its monotonicity and convexity drive both the
//! global solver and the enumeration of local non-global candidates.

use nalgebra::{DMatrix, DVector};

use crate::error::{HcxError, Result};

/// Relative gap under which an eigenvalue is counted into the λ₁ cluster.
pub const EIGENGAP_TOL: f64 = 1e-9;
/// Rotated coefficients with |gᵢ| ≤ `ZERO_COEFF_TOL`·‖c‖ are treated as absent
/// and their poles removed from φ.
pub const ZERO_COEFF_TOL: f64 = 1e-12;
/// Absolute guard distance around the active poles of φ.
pub const POLE_TOL: f64 = 1e-8;
/// Relative tolerance for accepting an input matrix as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Eigendecomposition of H together with the rotated linear term.
///
/// Immutable after construction; all evaluations are pure.
#[derive(Debug, Clone)]
pub struct Spectrum {
    lambdas: DVector<f64>,
    eigvecs: DMatrix<f64>,
    g: DVector<f64>,
    c_norm: f64,
    lambda1_multiplicity: usize,
    g1_block_norm: f64,
}

/// Maximum absolute asymmetry ‖M − Mᵀ‖_max.
pub fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

/// Decompose a symmetric `h` and rotate `c` into its eigenbasis.
pub fn decompose(h: &DMatrix<f64>, c: &DVector<f64>) -> Result<Spectrum> {
    let n = h.nrows();
    if n == 0 {
        return Err(HcxError::DimensionMismatch("empty matrix".into()));
    }
    if h.ncols() != n {
        return Err(HcxError::DimensionMismatch(format!(
            "H is {}x{}, expected square",
            h.nrows(),
            h.ncols()
        )));
    }
    if c.len() != n {
        return Err(HcxError::DimensionMismatch(format!(
            "c has length {}, expected {}",
            c.len(),
            n
        )));
    }
    let scale = h.amax().max(1.0);
    let resid = asymmetry(h);
    let tol = SYMMETRY_TOL * scale;
    if resid > tol {
        return Err(HcxError::NonSymmetric { residual: resid, tol });
    }

    // Symmetrize before factoring so the tiny admissible asymmetry cannot
    // leak into the eigenvectors.
    let hs = (h + h.transpose()) * 0.5;
    let eig = hs.symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let lambdas = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut eigvecs = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigvecs.set_column(dst, &eig.eigenvectors.column(src));
    }
    let g = eigvecs.transpose() * c;

    let gap_tol = EIGENGAP_TOL * lambdas[0].abs().max(1.0);
    let lambda1_multiplicity = (0..n).take_while(|&i| lambdas[i] - lambdas[0] <= gap_tol).count();
    let g1_block_norm = (0..lambda1_multiplicity).map(|i| g[i] * g[i]).sum::<f64>().sqrt();

    Ok(Spectrum {
        lambdas,
        eigvecs,
        g,
        c_norm: c.norm(),
        lambda1_multiplicity,
        g1_block_norm,
    })
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    /// Eigenvalues, ascending.
    pub fn lambdas(&self) -> &DVector<f64> {
        &self.lambdas
    }

    pub fn lambda1(&self) -> f64 {
        self.lambdas[0]
    }

    /// Second smallest eigenvalue counting multiplicity, if n ≥ 2.
    pub fn lambda2(&self) -> Option<f64> {
        if self.n() >= 2 {
            Some(self.lambdas[1])
        } else {
            None
        }
    }

    /// Orthogonal eigenvector matrix V, columns matching `lambdas`.
    pub fn eigvecs(&self) -> &DMatrix<f64> {
        &self.eigvecs
    }

    /// Rotated linear term g = Vᵀc.
    pub fn g(&self) -> &DVector<f64> {
        &self.g
    }

    pub fn c_norm(&self) -> f64 {
        self.c_norm
    }

    pub fn lambda1_multiplicity(&self) -> usize {
        self.lambda1_multiplicity
    }

    /// Norm of the g-entries belonging to the λ₁ cluster.
    pub fn g1_block_norm(&self) -> f64 {
        self.g1_block_norm
    }

    /// Whether the λ₁ cluster carries a nonzero coefficient (the "easy case").
    pub fn g1_active(&self) -> bool {
        self.g1_block_norm > ZERO_COEFF_TOL * self.c_norm
    }

    /// Whether component i participates in φ.
    pub fn active(&self, i: usize) -> bool {
        self.g[i].abs() > ZERO_COEFF_TOL * self.c_norm
    }

    /// Candidate interval (max{0, −λ₂}, −λ₁) for local non-global multipliers.
    pub fn local_multiplier_interval(&self) -> (f64, f64) {
        let lo = match self.lambda2() {
            Some(l2) => (-l2).max(0.0),
            None => 0.0,
        };
        (lo, -self.lambda1())
    }

    fn check_poles(&self, mu: f64) -> Result<()> {
        for i in 0..self.n() {
            if self.active(i) {
                let dist = (self.lambdas[i] + mu).abs();
                if dist <= POLE_TOL {
                    return Err(HcxError::PoleAt { mu, dist });
                }
            }
        }
        Ok(())
    }

    /// φ(μ) = Σ gᵢ²/(λᵢ+μ)² over the active components.
    pub fn phi(&self, mu: f64) -> Result<f64> {
        self.check_poles(mu)?;
        Ok((0..self.n())
            .filter(|&i| self.active(i))
            .map(|i| (self.g[i] / (self.lambdas[i] + mu)).powi(2))
            .sum())
    }

    /// φ′(μ) = −Σ 2gᵢ²/(λᵢ+μ)³.
    pub fn phi_d1(&self, mu: f64) -> Result<f64> {
        self.check_poles(mu)?;
        Ok((0..self.n())
            .filter(|&i| self.active(i))
            .map(|i| -2.0 * self.g[i] * self.g[i] / (self.lambdas[i] + mu).powi(3))
            .sum())
    }

    /// φ″(μ) = Σ 6gᵢ²/(λᵢ+μ)⁴.
    pub fn phi_d2(&self, mu: f64) -> Result<f64> {
        self.check_poles(mu)?;
        Ok((0..self.n())
            .filter(|&i| self.active(i))
            .map(|i| 6.0 * self.g[i] * self.g[i] / (self.lambdas[i] + mu).powi(4))
            .sum())
    }

    /// Stationary point x(μ) = −(H+μI)⁻¹c, with inactive components dropped
    /// so that ‖x(μ)‖² equals φ(μ) exactly as computed in the rotated basis.
    pub fn x_of_mu(&self, mu: f64) -> Result<DVector<f64>> {
        self.check_poles(mu)?;
        let mut xrot = DVector::zeros(self.n());
        for i in 0..self.n() {
            if self.active(i) {
                xrot[i] = -self.g[i] / (self.lambdas[i] + mu);
            }
        }
        Ok(&self.eigvecs * xrot)
    }

    /// Minimum-norm stationary point at μ = −λ₁ over the complement of the
    /// λ₁ cluster (used by the hard-case branch of the global solver).
    pub fn hard_case_min_norm_x(&self) -> DVector<f64> {
        let mu = -self.lambdas[0];
        let mut xrot = DVector::zeros(self.n());
        for i in self.lambda1_multiplicity..self.n() {
            if self.active(i) {
                xrot[i] = -self.g[i] / (self.lambdas[i] + mu);
            }
        }
        &self.eigvecs * xrot
    }

    /// A unit λ₁ eigenvector with the sign chosen so that cᵀv₁ ≤ 0.
    pub fn lambda1_ray(&self) -> DVector<f64> {
        let v1 = self.eigvecs.column(0).clone_owned();
        if self.g[0] > 0.0 {
            -v1
        } else {
            v1
        }
    }

    /// V·Diag(λ)·Vᵀ, for reconstruction checks.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.eigvecs * DMatrix::from_diagonal(&self.lambdas) * self.eigvecs.transpose()
    }
}
