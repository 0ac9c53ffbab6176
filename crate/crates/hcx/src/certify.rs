//! Second-order certificates for local non-global candidates.
//!
//! At a KKT point with multiplier μ strictly inside (−λ₂, −λ₁), the columns
//! of the tangent-basis matrix W(μ) span the hyperplane
//! xᵀs + ½∇f(y)ᵀt = 0, and the reduced Hessian
//!
//! ```text
//! B(μ) = W(μ)ᵀ · blkdiag(H + μI, ∇²f₀ + (μ/2)∇²f) · W(μ)
//! ```
//!
//! decides local optimality: B ≻ 0 certifies a strict local minimizer,
//! an eigenvalue below zero refutes it. B admits the rank-one splitting
//! B = B̄ + σūūᵀ with σ = λ₁ + μ, which yields the determinant identity
//!
//! ```text
//! det B(μ) = −(σ³/2g₁²)·det B̄(μ)·[φ′(μ) − ½∇fᵀ(∇²f₀ + (μ/2)∇²f)⁻¹∇f]
//! ```
//!
//! computed here along both routes as a cross-check of the machinery.

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::convex::{TrscInstance, TrslInstance};
use crate::error::{HcxError, Result};
use crate::global::{self, CheckOutcome};
use crate::local::{CandidatePoint, NoLocalReason};
use crate::spectral::{Spectrum, POLE_TOL, ZERO_COEFF_TOL};

/// PSD decision threshold, relative to the matrix scale.
const PSD_TOL: f64 = 1e-9;

/// Reduced Hessian at a candidate multiplier, with the determinant computed
/// both directly and through the rank-one identity.
#[derive(Debug, Clone)]
pub struct ReducedHessian {
    pub mu: f64,
    pub b: DMatrix<f64>,
    pub min_eig: f64,
    pub det_direct: f64,
    pub det_formula: f64,
}

/// The rotated tangent-basis coefficient matrix M with W = blkdiag(V, I)·M.
fn rotated_basis(s: &Spectrum, mu: f64, grad_f: &DVector<f64>) -> Result<DMatrix<f64>> {
    let n = s.n();
    let m = grad_f.len();
    let g = s.g();
    let g1 = g[0];
    if g1.abs() <= ZERO_COEFF_TOL * s.c_norm() {
        return Err(HcxError::DegenerateG1 { g1 });
    }
    for i in 0..n {
        let dist = (s.lambdas()[i] + mu).abs();
        if dist <= POLE_TOL {
            return Err(HcxError::PoleAt { mu, dist });
        }
    }
    let pivot = -g1 / (s.lambdas()[0] + mu);
    let mut w = DMatrix::zeros(n + m, n + m - 1);
    for j in 0..n - 1 {
        w[(0, j)] = g[j + 1] / (s.lambdas()[j + 1] + mu);
        w[(j + 1, j)] = pivot;
    }
    for j in 0..m {
        w[(0, n - 1 + j)] = -0.5 * grad_f[j];
        w[(n + j, n - 1 + j)] = pivot;
    }
    Ok(w)
}

/// Basis of the tangent hyperplane at the stationary point x(μ):
/// an (n+m)×(n+m−1) matrix of rank n+m−1 with [x(μ)ᵀ, ½∇fᵀ]·W = 0.
pub fn tangent_basis(s: &Spectrum, mu: f64, grad_f: &DVector<f64>) -> Result<DMatrix<f64>> {
    let n = s.n();
    let m = grad_f.len();
    let rot = rotated_basis(s, mu, grad_f)?;
    let mut w = DMatrix::zeros(n + m, n + m - 1);
    w.rows_mut(0, n).copy_from(&(s.eigvecs() * rot.rows(0, n)));
    w.rows_mut(n, m).copy_from(&rot.rows(n, m));
    Ok(w)
}

/// Assemble the reduced Hessian for inner Hessian block `hess_term`
/// (= ∇²f₀(y) + (μ/2)∇²f(y), which must be positive definite).
pub fn reduced_hessian(
    s: &Spectrum,
    mu: f64,
    grad_f: &DVector<f64>,
    hess_term: &DMatrix<f64>,
) -> Result<ReducedHessian> {
    let n = s.n();
    let m = grad_f.len();
    if hess_term.nrows() != m || hess_term.ncols() != m {
        return Err(HcxError::DimensionMismatch(format!(
            "inner Hessian is {}x{}, expected {m}x{m}",
            hess_term.nrows(),
            hess_term.ncols()
        )));
    }
    let hess_min = hess_term.clone().symmetric_eigen().eigenvalues.min();
    if hess_min <= 1e-12 * (1.0 + hess_term.amax()) {
        return Err(HcxError::NotPositiveDefinite { min_eig: hess_min });
    }

    let rot = rotated_basis(s, mu, grad_f)?;
    // direct route: M' diag(lambda + mu, hess) M in the rotated coordinates
    let mut gblk = DMatrix::zeros(n + m, n + m);
    for i in 0..n {
        gblk[(i, i)] = s.lambdas()[i] + mu;
    }
    gblk.view_mut((n, n), (m, m)).copy_from(hess_term);
    let b = rot.transpose() * &gblk * &rot;
    let det_direct = b.clone().lu().determinant();

    // rank-one route for the determinant identity
    let g = s.g();
    let g1 = g[0];
    let sigma = s.lambdas()[0] + mu;
    let mut det_bbar = (g1 * g1 / (sigma * sigma)).powi(m as i32)
        * hess_term.clone().lu().determinant();
    for i in 1..n {
        det_bbar *= g1 * g1 * (s.lambdas()[i] + mu) / (sigma * sigma);
    }
    let ch = Cholesky::new(hess_term.clone())
        .ok_or(HcxError::NotPositiveDefinite { min_eig: hess_min })?;
    let quad = 0.5 * grad_f.dot(&ch.solve(grad_f));
    let phi_d1 = s.phi_d1(mu)?;
    let det_formula = -sigma.powi(3) / (2.0 * g1 * g1) * det_bbar * (phi_d1 - quad);

    let min_eig = ((&b + b.transpose()) * 0.5).symmetric_eigen().eigenvalues.min();
    Ok(ReducedHessian { mu, b, min_eig, det_direct, det_formula })
}

/// How a candidate failed the local certificate.
#[derive(Debug, Clone)]
pub enum RejectReason {
    /// First-order (KKT) residuals exceed tolerance.
    Kkt(String),
    /// μ is outside the open candidate interval and the global certificate
    /// does not hold either.
    MultiplierOutsideInterval,
    /// The instance admits no local non-global minimizer at all.
    Excluded(NoLocalReason),
    /// The reduced Hessian has a negative eigenvalue.
    NegativeCurvature(f64),
    /// x = 0 but the global conditions fail, so the point is not even a
    /// local minimizer.
    ZeroXNotGlobal,
}

impl std::fmt::Display for RejectReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RejectReason::Kkt(d) => write!(f, "KKT residuals too large: {d}"),
            RejectReason::MultiplierOutsideInterval => {
                write!(f, "multiplier outside (max{{0, -lambda2}}, -lambda1)")
            }
            RejectReason::Excluded(r) => write!(f, "no local non-global minimizer exists: {r}"),
            RejectReason::NegativeCurvature(e) => {
                write!(f, "reduced Hessian has eigenvalue {e:.3e} < 0")
            }
            RejectReason::ZeroXNotGlobal => {
                write!(f, "x = 0 but the global certificate fails")
            }
        }
    }
}

/// Certificate produced for a candidate point.
#[derive(Debug)]
pub enum Certificate {
    /// The candidate satisfies the global KKT certificate.
    GlobalMin { mu: f64, check: CheckOutcome },
    /// Second-order sufficient conditions hold on the tangent space.
    StrictLocalNonGlobal { mu: f64, reduced: ReducedHessian },
    NotLocalMin { mu: f64, reason: RejectReason, reduced: Option<ReducedHessian> },
    /// The reduced Hessian is singular to tolerance; the strict/non-strict
    /// gap of the second-order conditions is genuine, so neither verdict is
    /// claimed.
    Indeterminate { mu: f64, reduced: Option<ReducedHessian> },
}

impl Certificate {
    pub fn reduced(&self) -> Option<&ReducedHessian> {
        match self {
            Certificate::StrictLocalNonGlobal { reduced, .. } => Some(reduced),
            Certificate::NotLocalMin { reduced, .. } => reduced.as_ref(),
            Certificate::Indeterminate { reduced, .. } => reduced.as_ref(),
            Certificate::GlobalMin { .. } => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Certificate::GlobalMin { .. } => "global-min",
            Certificate::StrictLocalNonGlobal { .. } => "strict-local-nonglobal",
            Certificate::NotLocalMin { .. } => "not-local-min",
            Certificate::Indeterminate { .. } => "indeterminate",
        }
    }
}

fn classify_reduced(mu: f64, reduced: ReducedHessian) -> Certificate {
    let thr = PSD_TOL * (1.0 + reduced.b.amax());
    if reduced.min_eig > thr {
        Certificate::StrictLocalNonGlobal { mu, reduced }
    } else if reduced.min_eig < -thr {
        let e = reduced.min_eig;
        Certificate::NotLocalMin {
            mu,
            reason: RejectReason::NegativeCurvature(e),
            reduced: Some(reduced),
        }
    } else {
        Certificate::Indeterminate { mu, reduced: Some(reduced) }
    }
}

struct KktView<'a> {
    x: &'a DVector<f64>,
    stat_x: f64,
    stat_y: f64,
    constraint: f64,
}

fn certify_pipeline(
    inst_spectrum: &Spectrum,
    kkt: KktView<'_>,
    mu: f64,
    c_norm: f64,
    grad_scale: f64,
    b_scale: f64,
    check_global: impl FnOnce() -> Result<CheckOutcome>,
    build_reduced: impl FnOnce() -> Result<ReducedHessian>,
) -> Result<Certificate> {
    // (1) first-order residuals
    let tol_x = 1e-8 * (1.0 + c_norm);
    let tol_y = 1e-8 * (1.0 + grad_scale);
    let tol_c = 1e-8 * (1.0 + b_scale);
    if kkt.stat_x > tol_x || kkt.stat_y > tol_y || kkt.constraint.abs() > tol_c {
        return Ok(Certificate::NotLocalMin {
            mu,
            reason: RejectReason::Kkt(format!(
                "|grad_x L| = {:.3e}, |grad_y L| = {:.3e}, |active constraint| = {:.3e}",
                kkt.stat_x, kkt.stat_y, kkt.constraint
            )),
            reduced: None,
        });
    }

    // (2) x = 0 candidates are either global or nothing
    if kkt.x.norm() <= 1e-10 * (1.0 + c_norm) {
        let check = check_global()?;
        return Ok(if check.is_valid() {
            Certificate::GlobalMin { mu, check }
        } else {
            Certificate::NotLocalMin {
                mu,
                reason: RejectReason::ZeroXNotGlobal,
                reduced: None,
            }
        });
    }

    // (3) the multiplier interval; at or beyond the pole the point can only
    // be global
    let (lo, hi) = inst_spectrum.local_multiplier_interval();
    let margin = 1e-12 * hi.abs().max(1.0);
    if mu >= hi - margin {
        let check = check_global()?;
        return Ok(if check.is_valid() {
            Certificate::GlobalMin { mu, check }
        } else {
            Certificate::NotLocalMin {
                mu,
                reason: RejectReason::MultiplierOutsideInterval,
                reduced: None,
            }
        });
    }
    if mu <= lo + margin {
        return Ok(Certificate::NotLocalMin {
            mu,
            reason: RejectReason::MultiplierOutsideInterval,
            reduced: None,
        });
    }
    if inst_spectrum.lambda1_multiplicity() > 1 {
        return Ok(Certificate::NotLocalMin {
            mu,
            reason: RejectReason::Excluded(NoLocalReason::RepeatedLambda1),
            reduced: None,
        });
    }
    if !inst_spectrum.g1_active() {
        return Ok(Certificate::NotLocalMin {
            mu,
            reason: RejectReason::Excluded(NoLocalReason::OrthogonalC),
            reduced: None,
        });
    }

    // (4) second-order decision on the tangent space
    let reduced = build_reduced()?;
    Ok(classify_reduced(mu, reduced))
}

/// Certify a scalar-instance candidate (coupling xᵀx − ay − b ≤ 0).
pub fn certify_local(inst: &TrslInstance, cand: &CandidatePoint) -> Result<Certificate> {
    if cand.y.len() != 1 {
        return Err(HcxError::DimensionMismatch("scalar instance expects scalar y".into()));
    }
    let y = cand.y[0];
    let mu = cand.mu;
    let s = inst.spectrum();
    let stat_x = (inst.h() * &cand.x + &cand.x * mu + inst.c()).norm();
    let stat_y = (inst.f0().d1(y)? - inst.a() * mu / 2.0).abs();
    let constraint = inst.constraint(&cand.x, y);
    let kkt = KktView { x: &cand.x, stat_x, stat_y, constraint };
    certify_pipeline(
        s,
        kkt,
        mu,
        inst.c().norm(),
        (inst.a() * mu / 2.0).abs(),
        inst.b().abs(),
        || global::check_global_trsl(inst, &cand.x, y, mu),
        || {
            let grad_f = DVector::from_element(1, -inst.a());
            let hess_term = DMatrix::from_element(1, 1, inst.f0().d2(y)?);
            reduced_hessian(s, mu, &grad_f, &hess_term)
        },
    )
}

/// Certify a general single-constraint candidate (coupling xᵀx + f(y) ≤ 0).
pub fn certify_local_general(inst: &TrscInstance, cand: &CandidatePoint) -> Result<Certificate> {
    if cand.y.len() != inst.m() {
        return Err(HcxError::DimensionMismatch(format!(
            "candidate y has length {}, instance expects {}",
            cand.y.len(),
            inst.m()
        )));
    }
    let mu = cand.mu;
    let s = inst.spectrum();
    let grad_f0 = inst.f0().gradient(&cand.y);
    let grad_f = inst.f().gradient(&cand.y);
    let stat_x = (inst.h() * &cand.x + &cand.x * mu + inst.c()).norm();
    let stat_y = (&grad_f0 + &grad_f * (mu / 2.0)).norm();
    let constraint = inst.constraint(&cand.x, &cand.y);
    let kkt = KktView { x: &cand.x, stat_x, stat_y, constraint };
    certify_pipeline(
        s,
        kkt,
        mu,
        inst.c().norm(),
        grad_f0.norm(),
        inst.f().value(&cand.y).abs(),
        || {
            global::check_global_certificate(
                inst.h(),
                inst.c(),
                inst.f0(),
                &[inst.f()],
                &cand.x,
                &cand.y,
                &[mu],
            )
        },
        || {
            let hess_term = inst.inner_hessian(mu, &cand.y);
            reduced_hessian(s, mu, &grad_f, &hess_term)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{canned_example, CannedExample};
    use crate::local::{self, Classification};
    use crate::spectral::decompose;
    use crate::test_util::{random_spd, seeded_rng, spectrum_with_gap};
    use rand::Rng;

    #[test]
    fn tangent_basis_annihilates_the_constraint_normal() {
        let inst = canned_example(CannedExample::Example1);
        let s = inst.spectrum();
        let mu = 3.72;
        let grad_f = DVector::from_element(1, -1.0);
        let w = tangent_basis(s, mu, &grad_f).unwrap();
        assert_eq!((w.nrows(), w.ncols()), (3, 2));
        let x = s.x_of_mu(mu).unwrap();
        let mut normal = DVector::zeros(3);
        normal.rows_mut(0, 2).copy_from(&x);
        normal[2] = 0.5 * grad_f[0];
        let resid = (w.transpose() * normal).norm();
        assert!(resid <= 1e-10, "tangency residual {resid}");
        let sv = w.svd(false, false).singular_values;
        assert!(sv.min() > 1e-10 * sv.max(), "rank deficiency");
    }

    #[test]
    fn tangent_basis_trs_case_last_column() {
        // with grad f = 0 the y-column reduces to (0, ..., 0, -g1/(l1+mu))
        let h = DMatrix::from_diagonal(&DVector::from_vec(vec![-3.0, -1.0]));
        let c = DVector::from_vec(vec![1.0, 0.5]);
        let s = decompose(&h, &c).unwrap();
        let mu = 2.0;
        let w = tangent_basis(&s, mu, &DVector::zeros(1)).unwrap();
        let pivot = -s.g()[0] / (s.lambdas()[0] + mu);
        assert!(w[(0, 1)].abs() < 1e-15);
        assert!(w[(1, 1)].abs() < 1e-15);
        assert!((w[(2, 1)] - pivot).abs() < 1e-15);
    }

    #[test]
    fn tangent_basis_rank_random() {
        let mut rng = seeded_rng(5);
        for _ in 0..20 {
            let s = spectrum_with_gap(4, &mut rng);
            let (lo, hi) = (-s.lambdas()[1], -s.lambdas()[0]);
            let mu = lo + 0.3 * (hi - lo);
            let grad_f = DVector::from_fn(2, |_, _| rng.random_range(-2.0..2.0));
            let w = tangent_basis(&s, mu, &grad_f).unwrap();
            let sv = w.svd(false, false).singular_values;
            assert!(sv.min() > 1e-10 * sv.max());
        }
    }

    #[test]
    fn degenerate_g1_is_rejected() {
        let h = DMatrix::from_diagonal(&DVector::from_vec(vec![-3.0, -1.0]));
        let c = DVector::from_vec(vec![0.0, 1.0]);
        let s = decompose(&h, &c).unwrap();
        assert!(matches!(
            tangent_basis(&s, 2.0, &DVector::zeros(1)),
            Err(HcxError::DegenerateG1 { .. })
        ));
    }

    #[test]
    fn example1_reduced_hessians_match_frozen_values() {
        let inst = canned_example(CannedExample::Example1);
        let s = inst.spectrum();
        // frozen oracle roots
        let grad_f = DVector::from_element(1, -1.0);
        let mu2 = 3.7176496261972760;
        let y2 = inst.y_of_mu(mu2).unwrap();
        let rh2 = reduced_hessian(
            s,
            mu2,
            &grad_f,
            &DMatrix::from_element(1, 1, inst.f0().d2(y2).unwrap()),
        )
        .unwrap();
        let expect2 = [[1.4790188, -0.23593004], [-0.23593004, 0.23609979]];
        for i in 0..2 {
            for j in 0..2 {
                assert!(
                    (rh2.b[(i, j)] - expect2[i][j]).abs() < 1e-6,
                    "B(mu2)[{i}{j}] = {}",
                    rh2.b[(i, j)]
                );
            }
        }
        assert!(rh2.min_eig > 0.0);

        let mu4 = 4.2537619538838119;
        let y4 = inst.y_of_mu(mu4).unwrap();
        let rh4 = reduced_hessian(
            s,
            mu4,
            &grad_f,
            &DMatrix::from_element(1, 1, inst.f0().d2(y4).unwrap()),
        )
        .unwrap();
        let expect4 = [[5.7724478, -0.11467312], [-0.11467312, 0.36006374]];
        for i in 0..2 {
            for j in 0..2 {
                assert!(
                    (rh4.b[(i, j)] - expect4[i][j]).abs() < 1e-6,
                    "B(mu4)[{i}{j}] = {}",
                    rh4.b[(i, j)]
                );
            }
        }
        assert!(rh4.min_eig > 0.0);
    }

    #[test]
    fn determinant_identity_random_draws() {
        let mut rng = seeded_rng(6);
        for _ in 0..200 {
            let n = rng.random_range(2..=6);
            let m = rng.random_range(1..=3);
            let s = spectrum_with_gap(n, &mut rng);
            let (lo, hi) = (-s.lambdas()[1], -s.lambdas()[0]);
            let mu = lo + rng.random_range(0.1..0.9) * (hi - lo);
            let grad_f = DVector::from_fn(m, |_, _| rng.random_range(-2.0..2.0));
            let hess = random_spd(m, &mut rng);
            let rh = reduced_hessian(&s, mu, &grad_f, &hess).unwrap();
            let denom = rh.det_direct.abs().max(rh.det_formula.abs()).max(1e-300);
            assert!(
                (rh.det_direct - rh.det_formula).abs() / denom <= 1e-8,
                "det mismatch: {} vs {}",
                rh.det_direct,
                rh.det_formula
            );
            // symmetry of the assembled matrix
            let asym = (&rh.b - rh.b.transpose()).amax();
            assert!(asym <= 1e-12 * rh.b.amax().max(1.0));
        }
    }

    #[test]
    fn determinant_sign_matches_transversality_sign() {
        // sign(det B) = sign(phi'(mu) - quad) since -sigma^3/(2 g1^2) > 0
        let mut rng = seeded_rng(7);
        for _ in 0..100 {
            let s = spectrum_with_gap(3, &mut rng);
            let (lo, hi) = (-s.lambdas()[1], -s.lambdas()[0]);
            let mu = lo + rng.random_range(0.1..0.9) * (hi - lo);
            let grad_f = DVector::from_fn(1, |_, _| rng.random_range(-2.0..2.0));
            let hess = random_spd(1, &mut rng);
            let rh = reduced_hessian(&s, mu, &grad_f, &hess).unwrap();
            let quad = 0.5 * grad_f[0] * grad_f[0] / hess[(0, 0)];
            let sign_expected = (s.phi_d1(mu).unwrap() - quad).signum();
            if rh.det_direct.abs() > 1e-12 {
                assert_eq!(rh.det_direct.signum(), sign_expected);
            }
        }
    }

    #[test]
    fn reduced_hessian_positive_near_pole() {
        // all eigenvalues of B strictly positive when mu approaches -lambda1
        let mut rng = seeded_rng(8);
        for _ in 0..30 {
            let s = spectrum_with_gap(4, &mut rng);
            let hi = -s.lambdas()[0];
            let mu = hi - 1e-3;
            let grad_f = DVector::from_fn(2, |_, _| rng.random_range(-1.0..1.0));
            let hess = random_spd(2, &mut rng);
            let rh = reduced_hessian(&s, mu, &grad_f, &hess).unwrap();
            assert!(rh.min_eig > 0.0, "min_eig = {} at mu near pole", rh.min_eig);
        }
    }

    #[test]
    fn indefinite_inner_hessian_is_rejected() {
        let inst = canned_example(CannedExample::Example1);
        let s = inst.spectrum();
        let grad_f = DVector::from_element(1, -1.0);
        let bad = DMatrix::from_element(1, 1, -0.5);
        assert!(matches!(
            reduced_hessian(s, 3.72, &grad_f, &bad),
            Err(HcxError::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn certify_example1_candidates() {
        let inst = canned_example(CannedExample::Example1);
        let roots = local::enumerate_roots(&inst, 4096).unwrap();
        assert_eq!(roots.len(), 4);
        // mu2 and mu4 certify strictly; mu1 and mu3 are refuted
        for (i, r) in roots.iter().enumerate() {
            let cand = local::materialize(&inst, r).unwrap();
            let cert = certify_local(&inst, &cand).unwrap();
            match i {
                1 | 3 => assert!(
                    matches!(cert, Certificate::StrictLocalNonGlobal { .. }),
                    "root {i} should certify, got {}",
                    cert.label()
                ),
                _ => assert!(
                    matches!(
                        cert,
                        Certificate::NotLocalMin {
                            reason: RejectReason::NegativeCurvature(_),
                            ..
                        }
                    ),
                    "root {i} should be refuted, got {}",
                    cert.label()
                ),
            }
        }
        let strict = roots.iter().filter(|r| r.classification == Classification::StrictLocal);
        assert_eq!(strict.count(), 2);
    }

    #[test]
    fn certify_routes_global_candidate() {
        let inst = canned_example(CannedExample::Example1);
        let sol = crate::global::solve_global(&inst).unwrap();
        let cand = CandidatePoint {
            x: sol.x.clone(),
            y: DVector::from_element(1, sol.y),
            mu: sol.mu,
            stationarity_x: 0.0,
            stationarity_y: 0.0,
            constraint_residual: 0.0,
            tag: Classification::Indeterminate,
        };
        let cert = certify_local(&inst, &cand).unwrap();
        assert!(matches!(cert, Certificate::GlobalMin { .. }), "got {}", cert.label());
    }

    #[test]
    fn certify_rejects_non_kkt_point() {
        let inst = canned_example(CannedExample::Example1);
        let cand = CandidatePoint {
            x: DVector::from_vec(vec![0.3, 0.3]),
            y: DVector::from_element(1, 0.5),
            mu: 3.5,
            stationarity_x: 1.0,
            stationarity_y: 1.0,
            constraint_residual: 1.0,
            tag: Classification::Indeterminate,
        };
        let cert = certify_local(&inst, &cand).unwrap();
        assert!(matches!(
            cert,
            Certificate::NotLocalMin { reason: RejectReason::Kkt(_), .. }
        ));
    }

    #[test]
    fn certify_zero_x_candidate_routes_to_global_check() {
        // c = 0: the point (0, 0) with mu = 0 is a KKT point, so it goes
        // through the global certificate, which fails on PSD because H is
        // indefinite; a zero x that is not global is not local either
        let h = DMatrix::from_diagonal(&DVector::from_vec(vec![-3.0, -1.0]));
        let c = DVector::zeros(2);
        let inst = TrslInstance::new(
            h,
            c,
            1.0,
            0.0,
            crate::convex::ConvexScalar::Quadratic { alpha: 1.0, beta: 0.0 },
        )
        .unwrap();
        let cand = CandidatePoint {
            x: DVector::zeros(2),
            y: DVector::from_element(1, 0.0),
            mu: 0.0,
            stationarity_x: 0.0,
            stationarity_y: 0.0,
            constraint_residual: 0.0,
            tag: Classification::Indeterminate,
        };
        let cert = certify_local(&inst, &cand).unwrap();
        assert!(
            matches!(
                cert,
                Certificate::NotLocalMin { reason: RejectReason::ZeroXNotGlobal, .. }
            ),
            "got {}",
            cert.label()
        );
    }
}
