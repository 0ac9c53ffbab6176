//! Global solver for the linearly coupled scalar form and the KKT-based
//! global certificate checker for the general multi-constraint form.
//!
//! Globality rests on the hidden convexity of the problem: shifting the
//! quadratic by λ₁ along the active constraint turns it into a convex
//! program, so the KKT system with H + μ₁I ⪰ 0 is necessary *and*
//! sufficient. For the scalar form the KKT system collapses to the secular
//! equation φ(μ) = ψ(μ) on (−λ₁, ∞), where φ is strictly decreasing and ψ
//! nondecreasing, so a bracketing bisection is exact and pole-safe.

use nalgebra::{DMatrix, DVector};

use crate::convex::{ConvexOracle, ScalarOracle, TrslInstance};
use crate::error::{HcxError, Result};

/// Bisection iteration cap for the global secular root.
const BISECT_MAX: usize = 200;

/// A certified global minimizer of a scalar instance.
#[derive(Debug, Clone)]
pub struct GlobalSolution {
    pub x: DVector<f64>,
    pub y: f64,
    /// Multiplier μ₁* ≥ −λ₁ of the coupling constraint.
    pub mu: f64,
    /// Whether the boundary-ray completion at μ = −λ₁ was used.
    pub hard_case: bool,
    pub objective: f64,
}

/// Solve the scalar instance to certified global optimality.
///
/// Easy case (the λ₁ cluster carries weight): the unique root of φ = ψ on
/// (−λ₁, ∞). Hard case: pin μ = −λ₁, complete the minimum-norm stationary
/// point along the λ₁ ray when the slack allows it, otherwise the pole-free
/// φ still admits an interior root.
pub fn solve_global(inst: &TrslInstance) -> Result<GlobalSolution> {
    let s = inst.spectrum();
    if s.lambda1() >= 0.0 {
        return Err(HcxError::ConvexInstance { lambda1: s.lambda1() });
    }
    let pole = -s.lambda1();

    if !s.g1_active() {
        // hard case: multiplier pinned at -lambda1
        let x_hat = s.hard_case_min_norm_x();
        let slack = inst.psi(pole)?;
        let base = x_hat.norm_squared();
        if base <= slack {
            let tau = (slack - base).sqrt();
            let x = &x_hat + s.lambda1_ray() * tau;
            let y = inst.y_of_mu(pole)?;
            let objective = inst.objective(&x, y)?;
            return Ok(GlobalSolution { x, y, mu: pole, hard_case: true, objective });
        }
        // the slack is too small for the ray; phi has no pole at -lambda1
        // here, so an interior root exists and the easy-case search applies
    }

    let scale = pole.abs().max(1.0);
    let gap = |mu: f64| -> Result<f64> { Ok(inst.psi(mu)? - s.phi(mu)?) };

    // expand toward the pole until psi - phi < 0
    let mut lo = pole + 1e-3 * scale;
    let mut expanded = false;
    for _ in 0..60 {
        match gap(lo) {
            Ok(v) if v < 0.0 => {
                expanded = true;
                break;
            }
            Ok(_) => lo = pole + (lo - pole) * 0.5,
            Err(HcxError::PoleAt { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    if !expanded {
        return Err(HcxError::InvalidInstance(
            "could not bracket the global secular root near the pole".into(),
        ));
    }
    // expand upward until psi - phi > 0
    let mut hi = pole + scale;
    let mut bracketed = false;
    for _ in 0..60 {
        if gap(hi)? > 0.0 {
            bracketed = true;
            break;
        }
        hi = pole + (hi - pole) * 2.0;
    }
    if !bracketed {
        return Err(HcxError::InvalidInstance(
            "could not bracket the global secular root from above".into(),
        ));
    }

    let mut mu = 0.5 * (lo + hi);
    for _ in 0..BISECT_MAX {
        mu = 0.5 * (lo + hi);
        let v = gap(mu)?;
        if v.abs() <= 1e-10 * inst.psi(mu)?.abs().max(1.0) {
            break;
        }
        if v < 0.0 {
            lo = mu;
        } else {
            hi = mu;
        }
        if hi - lo <= f64::EPSILON * scale {
            break;
        }
    }

    let x = s.x_of_mu(mu)?;
    let y = inst.y_of_mu(mu)?;
    let objective = inst.objective(&x, y)?;
    Ok(GlobalSolution { x, y, mu, hard_case: false, objective })
}

/// A single failed condition of the global KKT certificate.
#[derive(Debug, Clone)]
pub struct Violation {
    pub condition: CertCondition,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertCondition {
    StationarityX,
    StationarityY,
    ActiveFirstConstraint,
    Complementarity,
    PrimalFeasibility,
    MultiplierSign,
    PsdShift,
}

impl std::fmt::Display for CertCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CertCondition::StationarityX => "stationarity in x",
            CertCondition::StationarityY => "stationarity in y",
            CertCondition::ActiveFirstConstraint => "first constraint active",
            CertCondition::Complementarity => "complementary slackness",
            CertCondition::PrimalFeasibility => "primal feasibility",
            CertCondition::MultiplierSign => "multiplier nonnegativity",
            CertCondition::PsdShift => "H + mu1 I positive semidefinite",
        };
        f.write_str(s)
    }
}

/// Outcome of the global certificate check.
#[derive(Debug, Clone)]
pub enum CheckOutcome {
    /// All conditions hold; the point is a global minimizer. `unchecked`
    /// lists hypotheses the checker cannot verify for black-box oracles
    /// (strict feasibility of the convex constraints).
    Valid { unchecked: Vec<&'static str> },
    Violated(Vec<Violation>),
}

impl CheckOutcome {
    pub fn is_valid(&self) -> bool {
        matches!(self, CheckOutcome::Valid { .. })
    }
}

/// Check the global KKT certificate for the multi-constraint form
///
///   minimize ½xᵀHx + cᵀx + f₀(y)
///   s.t.     xᵀx + f₁(y) ≤ 0,  fⱼ(y) ≤ 0 (j = 2..k)
///
/// at (x, y) with multipliers `mus` (μ₁ first). Valid implies global
/// minimality; the Slater hypothesis is reported as unchecked.
pub fn check_global_certificate(
    h: &DMatrix<f64>,
    c: &DVector<f64>,
    f0: &dyn ConvexOracle,
    constraints: &[&dyn ConvexOracle],
    x: &DVector<f64>,
    y: &DVector<f64>,
    mus: &[f64],
) -> Result<CheckOutcome> {
    let n = h.nrows();
    if h.ncols() != n || c.len() != n || x.len() != n {
        return Err(HcxError::DimensionMismatch("x/c/H sizes disagree".into()));
    }
    if constraints.is_empty() {
        return Err(HcxError::DimensionMismatch("need at least the coupling constraint".into()));
    }
    if mus.len() != constraints.len() {
        return Err(HcxError::DimensionMismatch(format!(
            "{} multipliers for {} constraints",
            mus.len(),
            constraints.len()
        )));
    }
    let m = f0.dim();
    if y.len() != m || constraints.iter().any(|f| f.dim() != m) {
        return Err(HcxError::DimensionMismatch("y/oracle dimensions disagree".into()));
    }

    let mut violations = Vec::new();

    for (j, &mu) in mus.iter().enumerate() {
        if mu < 0.0 {
            violations.push(Violation {
                condition: CertCondition::MultiplierSign,
                detail: format!("mu_{} = {mu} is negative", j + 1),
            });
        }
    }

    let mu1 = mus[0];
    let tol_x = 1e-8 * (1.0 + c.norm());
    let r_x = (h * x + x * mu1 + c).norm();
    if r_x > tol_x {
        violations.push(Violation {
            condition: CertCondition::StationarityX,
            detail: format!("residual {r_x:.3e} exceeds {tol_x:.3e}"),
        });
    }

    let mut grad = f0.gradient(y) + constraints[0].gradient(y) * (mu1 / 2.0);
    for (j, f) in constraints.iter().enumerate().skip(1) {
        grad += f.gradient(y) * mus[j];
    }
    let tol_y = 1e-8 * (1.0 + f0.gradient(y).norm());
    if grad.norm() > tol_y {
        violations.push(Violation {
            condition: CertCondition::StationarityY,
            detail: format!("residual {:.3e} exceeds {tol_y:.3e}", grad.norm()),
        });
    }

    let f1 = constraints[0].value(y);
    let active = x.norm_squared() + f1;
    let tol_c = 1e-8 * (1.0 + x.norm_squared());
    if active.abs() > tol_c {
        violations.push(Violation {
            condition: CertCondition::ActiveFirstConstraint,
            detail: format!("x'x + f1(y) = {active:.3e}"),
        });
    }
    for (j, f) in constraints.iter().enumerate().skip(1) {
        let v = f.value(y);
        if v > tol_c {
            violations.push(Violation {
                condition: CertCondition::PrimalFeasibility,
                detail: format!("f_{}(y) = {v:.3e} > 0", j + 1),
            });
        }
        if (mus[j] * v).abs() > tol_c * (1.0 + mus[j].abs()) {
            violations.push(Violation {
                condition: CertCondition::Complementarity,
                detail: format!("mu_{} * f_{}(y) = {:.3e}", j + 1, j + 1, mus[j] * v),
            });
        }
    }

    // smallest eigenvalue of H + mu1 I
    let lambda1 = crate::spectral::decompose(h, c)?.lambda1();
    let shifted = lambda1 + mu1;
    if shifted < -1e-9 * (1.0 + lambda1.abs()) {
        violations.push(Violation {
            condition: CertCondition::PsdShift,
            detail: format!("lambda_min(H + mu1 I) = {shifted:.3e} < 0"),
        });
    }

    if violations.is_empty() {
        Ok(CheckOutcome::Valid {
            unchecked: vec!["Slater condition (a strictly feasible y) assumed, not verified"],
        })
    } else {
        Ok(CheckOutcome::Violated(violations))
    }
}

/// Convenience wrapper: check a scalar-instance candidate.
pub fn check_global_trsl(
    inst: &TrslInstance,
    x: &DVector<f64>,
    y: f64,
    mu: f64,
) -> Result<CheckOutcome> {
    let f0 = ScalarOracle(inst.f0().clone());
    let coupling = crate::convex::AffineOracle {
        w: DVector::from_element(1, -inst.a()),
        q: -inst.b(),
    };
    check_global_certificate(
        inst.h(),
        inst.c(),
        &f0,
        &[&coupling],
        x,
        &DVector::from_element(1, y),
        &[mu],
    )
}
