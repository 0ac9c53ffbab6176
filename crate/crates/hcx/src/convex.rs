//! Convex scalar objectives f₀, the constraint-slack function ψ(μ), and the
//! single-constraint instance types.
//!
//! The scalar families form a closed enum because the uniqueness analysis
//! needs third derivatives and the inverse of f₀′ in closed form. Vector-y
//! objectives go through the [`ConvexOracle`] trait instead, which only has
//! to provide value/gradient/Hessian.

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::builder::PsiConvex;
use crate::error::{HcxError, Result};
use crate::spectral::{self, Spectrum};

/// A member of the closed family of convex scalar objectives.
///
/// Every variant is strongly convex on its open domain, with derivatives up
/// to third order and an invertible first derivative.
#[derive(Debug, Clone)]
pub enum ConvexScalar {
    /// αy² + βy with α > 0, on all of ℝ.
    Quadratic { alpha: f64, beta: f64 },
    /// αy^d with α > 0, d > 1, on (0, ∞).
    PowerLaw { alpha: f64, exponent: f64 },
    /// c₃y³ + c₂y² + c₁y with c₃ > 0, c₂ > 0, on (0, ∞).
    CubicPoly { c3: f64, c2: f64, c1: f64 },
    /// The canned quartic with two coexisting local non-global minimizers
    /// (see `builder::canned_example`). Strongly convex on all of ℝ.
    QuarticExample1,
    /// f₀ recovered from a piecewise-linear/quadratic slack curve ψ by
    /// integrating ψ⁻¹ (see `builder::psi_to_f0`). Defined on all of ℝ.
    PiecewiseFromPsi(PsiConvex),
}

/// Coefficients of the canned quartic, highest degree first, computed once
/// from the literal rational expressions so reproduction is bit-stable.
pub fn quartic_example1_coeffs() -> [f64; 4] {
    let s = 210.0f64.sqrt();
    [
        12377.0 / 51072.0 - 25.0 * s / 3648.0,
        5.0 * s / 228.0 - 9257.0 / 7980.0,
        1366171.0 / 638400.0 - 35.0 * s / 1824.0,
        s / 190.0 + 4667.0 / 26600.0,
    ]
}

impl ConvexScalar {
    /// Open interval of validity.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            ConvexScalar::Quadratic { .. }
            | ConvexScalar::QuarticExample1
            | ConvexScalar::PiecewiseFromPsi(_) => (f64::NEG_INFINITY, f64::INFINITY),
            ConvexScalar::PowerLaw { .. } | ConvexScalar::CubicPoly { .. } => (0.0, f64::INFINITY),
        }
    }

    /// Validate the family parameters (strong convexity on the domain).
    pub fn validate(&self) -> Result<()> {
        match self {
            ConvexScalar::Quadratic { alpha, .. } => {
                if *alpha <= 0.0 {
                    return Err(HcxError::InvalidInstance(format!(
                        "quadratic f0 needs alpha > 0, got {alpha}"
                    )));
                }
            }
            ConvexScalar::PowerLaw { alpha, exponent } => {
                if *alpha <= 0.0 || *exponent <= 1.0 {
                    return Err(HcxError::InvalidInstance(format!(
                        "power-law f0 needs alpha > 0 and exponent > 1, got alpha={alpha}, d={exponent}"
                    )));
                }
            }
            ConvexScalar::CubicPoly { c3, c2, .. } => {
                // f0'' = 6 c3 y + 2 c2 must stay positive on (0, inf)
                if *c3 <= 0.0 || *c2 <= 0.0 {
                    return Err(HcxError::InvalidInstance(format!(
                        "cubic f0 needs c3 > 0 and c2 > 0 for strong convexity on (0, inf), got c3={c3}, c2={c2}"
                    )));
                }
            }
            ConvexScalar::QuarticExample1 => {}
            ConvexScalar::PiecewiseFromPsi(_) => {}
        }
        Ok(())
    }

    fn check_domain(&self, y: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if y <= lo || y >= hi || !y.is_finite() {
            return Err(HcxError::OutOfDomain { value: y, lo, hi });
        }
        Ok(())
    }

    /// f₀(y).
    pub fn eval(&self, y: f64) -> Result<f64> {
        self.check_domain(y)?;
        Ok(match self {
            ConvexScalar::Quadratic { alpha, beta } => alpha * y * y + beta * y,
            ConvexScalar::PowerLaw { alpha, exponent } => alpha * y.powf(*exponent),
            ConvexScalar::CubicPoly { c3, c2, c1 } => ((c3 * y + c2) * y + c1) * y,
            ConvexScalar::QuarticExample1 => {
                let [a, b, c, d] = quartic_example1_coeffs();
                (((a * y + b) * y + c) * y + d) * y
            }
            ConvexScalar::PiecewiseFromPsi(p) => p.eval(y),
        })
    }

    /// f₀′(y).
    pub fn d1(&self, y: f64) -> Result<f64> {
        self.check_domain(y)?;
        Ok(match self {
            ConvexScalar::Quadratic { alpha, beta } => 2.0 * alpha * y + beta,
            ConvexScalar::PowerLaw { alpha, exponent } => alpha * exponent * y.powf(exponent - 1.0),
            ConvexScalar::CubicPoly { c3, c2, c1 } => (3.0 * c3 * y + 2.0 * c2) * y + c1,
            ConvexScalar::QuarticExample1 => {
                let [a, b, c, d] = quartic_example1_coeffs();
                ((4.0 * a * y + 3.0 * b) * y + 2.0 * c) * y + d
            }
            ConvexScalar::PiecewiseFromPsi(p) => p.d1(y),
        })
    }

    /// f₀″(y).
    pub fn d2(&self, y: f64) -> Result<f64> {
        self.check_domain(y)?;
        Ok(match self {
            ConvexScalar::Quadratic { alpha, .. } => 2.0 * alpha,
            ConvexScalar::PowerLaw { alpha, exponent } => {
                alpha * exponent * (exponent - 1.0) * y.powf(exponent - 2.0)
            }
            ConvexScalar::CubicPoly { c3, c2, .. } => 6.0 * c3 * y + 2.0 * c2,
            ConvexScalar::QuarticExample1 => {
                let [a, b, c, _] = quartic_example1_coeffs();
                (12.0 * a * y + 6.0 * b) * y + 2.0 * c
            }
            ConvexScalar::PiecewiseFromPsi(p) => p.d2(y),
        })
    }

    /// f₀‴(y).
    pub fn d3(&self, y: f64) -> Result<f64> {
        self.check_domain(y)?;
        Ok(match self {
            ConvexScalar::Quadratic { .. } => 0.0,
            ConvexScalar::PowerLaw { alpha, exponent } => {
                alpha * exponent * (exponent - 1.0) * (exponent - 2.0) * y.powf(exponent - 3.0)
            }
            ConvexScalar::CubicPoly { c3, .. } => 6.0 * c3,
            ConvexScalar::QuarticExample1 => {
                let [a, b, ..] = quartic_example1_coeffs();
                24.0 * a * y + 6.0 * b
            }
            ConvexScalar::PiecewiseFromPsi(p) => p.d3(y),
        })
    }

    /// (f₀′)⁻¹(t): closed form where available, safeguarded Newton otherwise.
    pub fn inv_d1(&self, t: f64) -> Result<f64> {
        match self {
            ConvexScalar::Quadratic { alpha, beta } => Ok((t - beta) / (2.0 * alpha)),
            ConvexScalar::PowerLaw { alpha, exponent } => {
                let s = t / (alpha * exponent);
                if s <= 0.0 {
                    return Err(HcxError::NoPreimage { target: t });
                }
                Ok(s.powf(1.0 / (exponent - 1.0)))
            }
            ConvexScalar::CubicPoly { c1, .. } => {
                if t <= *c1 {
                    return Err(HcxError::NoPreimage { target: t });
                }
                invert_increasing(|y| self.d1(y).unwrap(), |y| self.d2(y).unwrap(), self.domain(), t)
            }
            ConvexScalar::QuarticExample1 => {
                invert_increasing(|y| self.d1(y).unwrap(), |y| self.d2(y).unwrap(), self.domain(), t)
            }
            ConvexScalar::PiecewiseFromPsi(p) => Ok(p.inv_d1(t)),
        }
    }
}

/// Solve f(y) = t for a strictly increasing f on the open interval (lo, hi)
/// by bracket expansion followed by Newton with a bisection safeguard.
fn invert_increasing(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    (lo, hi): (f64, f64),
    t: f64,
) -> Result<f64> {
    // starting point inside the domain
    let mut a = if lo.is_finite() { lo + 1.0 } else { 0.0 };
    if a >= hi {
        a = 0.5 * (lo + hi);
    }
    let mut b = a;
    let mut fa = f(a);
    let mut fb = fa;
    // expand downward until f(a) <= t
    let mut step = 1.0;
    let mut tries = 0usize;
    while fa > t {
        b = a;
        fb = fa;
        a = if lo.is_finite() { lo + (a - lo) / 2.0 } else { a - step };
        step *= 2.0;
        fa = f(a);
        tries += 1;
        if tries > 200 || !fa.is_finite() {
            return Err(HcxError::NoPreimage { target: t });
        }
    }
    // expand upward until f(b) >= t
    step = 1.0;
    tries = 0;
    while fb < t {
        b = if hi.is_finite() { hi - (hi - b) / 2.0 } else { b + step };
        step *= 2.0;
        fb = f(b);
        tries += 1;
        if tries > 200 || !fb.is_finite() {
            return Err(HcxError::NoPreimage { target: t });
        }
    }

    let tol = 1e-13 * t.abs().max(1.0);
    let mut y = 0.5 * (a + b);
    for _ in 0..200 {
        let fy = f(y) - t;
        if fy.abs() <= tol {
            return Ok(y);
        }
        if fy > 0.0 {
            b = y;
        } else {
            a = y;
        }
        let d = df(y);
        let newton = y - fy / d;
        y = if d > 0.0 && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        if b - a <= f64::EPSILON * y.abs().max(1.0) {
            return Ok(y);
        }
    }
    Ok(y)
}

/// Problem data for the linearly coupled scalar form:
/// minimize ½xᵀHx + cᵀx + f₀(y) subject to xᵀx − ay − b ≤ 0, a > 0.
#[derive(Debug, Clone)]
pub struct TrslInstance {
    h: DMatrix<f64>,
    c: DVector<f64>,
    a: f64,
    b: f64,
    f0: ConvexScalar,
    spectrum: Spectrum,
}

impl TrslInstance {
    pub fn new(h: DMatrix<f64>, c: DVector<f64>, a: f64, b: f64, f0: ConvexScalar) -> Result<Self> {
        if !(a > 0.0) {
            return Err(HcxError::InvalidInstance(format!(
                "constraint coefficient a must be positive, got {a}"
            )));
        }
        f0.validate()?;
        let spectrum = spectral::decompose(&h, &c)?;
        if spectrum.lambda1() >= 0.0 {
            log::warn!(
                "instance is convex (lambda1 = {}); the local enumerator will report no candidates",
                spectrum.lambda1()
            );
        }
        Ok(TrslInstance { h, c, a, b, f0, spectrum })
    }

    pub fn h(&self) -> &DMatrix<f64> {
        &self.h
    }

    pub fn c(&self) -> &DVector<f64> {
        &self.c
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn f0(&self) -> &ConvexScalar {
        &self.f0
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    /// Eigendecomposition computed once at construction.
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// ½xᵀHx + cᵀx + f₀(y).
    pub fn objective(&self, x: &DVector<f64>, y: f64) -> Result<f64> {
        Ok(0.5 * (x.transpose() * &self.h * x)[(0, 0)] + self.c.dot(x) + self.f0.eval(y)?)
    }

    /// Constraint value ‖x‖² − ay − b (feasible iff ≤ 0).
    pub fn constraint(&self, x: &DVector<f64>, y: f64) -> f64 {
        x.norm_squared() - self.a * y - self.b
    }

    /// Stationary y for multiplier μ: the solution of f₀′(y) = aμ/2.
    pub fn y_of_mu(&self, mu: f64) -> Result<f64> {
        self.f0.inv_d1(self.a * mu / 2.0)
    }

    /// Constraint slack ψ(μ) = a·(f₀′)⁻¹(aμ/2) + b.
    pub fn psi(&self, mu: f64) -> Result<f64> {
        Ok(self.a * self.y_of_mu(mu)? + self.b)
    }

    /// ψ′(μ) = a²/(2 f₀″(y(μ))), by the inverse-function rule.
    pub fn psi_d1(&self, mu: f64) -> Result<f64> {
        let y = self.y_of_mu(mu)?;
        Ok(self.a * self.a / (2.0 * self.f0.d2(y)?))
    }
}

/// Outcome of the log-concavity test for ψ on an interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogConcavity {
    /// Established analytically for the whole family.
    Proven,
    /// Held at every sampled point.
    SampledTrue,
    /// Violated at the reported multiplier.
    FalsifiedAt(f64),
}

/// Decide whether ln ψ is concave on `interval`.
///
/// Proven analytically for the three families with closed third-derivative
/// positivity (strongly convex quadratics with a > 0, b ≥ 0; power laws and
/// strongly convex cubics under the a = 1, b = 0 normalization). Everything
/// else is sampled through the equivalent pointwise test
/// f₀‴(y(μ)) + a·f₀″(y(μ))/(a·y(μ)+b) ≥ 0.
pub fn log_concavity_holds(
    inst: &TrslInstance,
    interval: (f64, f64),
    samples: usize,
) -> Result<LogConcavity> {
    match inst.f0() {
        ConvexScalar::Quadratic { .. } if inst.a() > 0.0 && inst.b() >= 0.0 => {
            return Ok(LogConcavity::Proven)
        }
        ConvexScalar::PowerLaw { .. } | ConvexScalar::CubicPoly { .. }
            if inst.a() == 1.0 && inst.b() == 0.0 =>
        {
            return Ok(LogConcavity::Proven)
        }
        _ => {}
    }
    let (lo, hi) = interval;
    if !(hi > lo) {
        return Ok(LogConcavity::SampledTrue);
    }
    let m = samples.max(2);
    for k in 0..m {
        // stay strictly inside the open interval
        let mu = lo + (hi - lo) * (k as f64 + 0.5) / m as f64;
        let y = inst.y_of_mu(mu)?;
        let denom = inst.a() * y + inst.b();
        if denom <= 0.0 {
            return Err(HcxError::OutOfDomain {
                value: y,
                lo: -inst.b() / inst.a(),
                hi: f64::INFINITY,
            });
        }
        let d2 = inst.f0().d2(y)?;
        let d3 = inst.f0().d3(y)?;
        let term = inst.a() / denom * d2;
        if d3 + term < -1e-9 * term.abs().max(1.0) {
            return Ok(LogConcavity::FalsifiedAt(mu));
        }
    }
    Ok(LogConcavity::SampledTrue)
}

/// Value/gradient/Hessian oracle for a convex function of y ∈ ℝᵐ.
///
/// Implementations may return `f64::INFINITY` outside their effective
/// domain; the inner Newton treats such points as rejected line-search trial
/// points.
pub trait ConvexOracle: Send + Sync {
    fn dim(&self) -> usize;
    fn value(&self, y: &DVector<f64>) -> f64;
    fn gradient(&self, y: &DVector<f64>) -> DVector<f64>;
    fn hessian(&self, y: &DVector<f64>) -> DMatrix<f64>;
}

/// Oracle built from closures.
pub struct FnOracle<V, G, Hs> {
    dim: usize,
    value: V,
    gradient: G,
    hessian: Hs,
}

impl<V, G, Hs> FnOracle<V, G, Hs>
where
    V: Fn(&DVector<f64>) -> f64 + Send + Sync,
    G: Fn(&DVector<f64>) -> DVector<f64> + Send + Sync,
    Hs: Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync,
{
    pub fn new(dim: usize, value: V, gradient: G, hessian: Hs) -> Self {
        FnOracle { dim, value, gradient, hessian }
    }
}

impl<V, G, Hs> ConvexOracle for FnOracle<V, G, Hs>
where
    V: Fn(&DVector<f64>) -> f64 + Send + Sync,
    G: Fn(&DVector<f64>) -> DVector<f64> + Send + Sync,
    Hs: Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }
    fn value(&self, y: &DVector<f64>) -> f64 {
        (self.value)(y)
    }
    fn gradient(&self, y: &DVector<f64>) -> DVector<f64> {
        (self.gradient)(y)
    }
    fn hessian(&self, y: &DVector<f64>) -> DMatrix<f64> {
        (self.hessian)(y)
    }
}

/// Affine oracle wᵀy + q (convex with zero curvature); covers linear
/// couplings and, with w = 0, constant constraints.
pub struct AffineOracle {
    pub w: DVector<f64>,
    pub q: f64,
}

impl ConvexOracle for AffineOracle {
    fn dim(&self) -> usize {
        self.w.len()
    }
    fn value(&self, y: &DVector<f64>) -> f64 {
        self.w.dot(y) + self.q
    }
    fn gradient(&self, _y: &DVector<f64>) -> DVector<f64> {
        self.w.clone()
    }
    fn hessian(&self, _y: &DVector<f64>) -> DMatrix<f64> {
        DMatrix::zeros(self.w.len(), self.w.len())
    }
}

/// One-dimensional oracle over a [`ConvexScalar`]; out-of-domain points map
/// to +∞ so line searches back off instead of panicking.
pub struct ScalarOracle(pub ConvexScalar);

impl ConvexOracle for ScalarOracle {
    fn dim(&self) -> usize {
        1
    }
    fn value(&self, y: &DVector<f64>) -> f64 {
        self.0.eval(y[0]).unwrap_or(f64::INFINITY)
    }
    fn gradient(&self, y: &DVector<f64>) -> DVector<f64> {
        DVector::from_element(1, self.0.d1(y[0]).unwrap_or(f64::NAN))
    }
    fn hessian(&self, y: &DVector<f64>) -> DMatrix<f64> {
        DMatrix::from_element(1, 1, self.0.d2(y[0]).unwrap_or(f64::NAN))
    }
}

/// General single-constraint instance with vector y:
/// minimize ½xᵀHx + cᵀx + f₀(y) subject to xᵀx + f(y) ≤ 0.
pub struct TrscInstance {
    h: DMatrix<f64>,
    c: DVector<f64>,
    f0: Box<dyn ConvexOracle>,
    f: Box<dyn ConvexOracle>,
    spectrum: Spectrum,
}

/// Iteration cap for the inner Newton solve.
const INNER_NEWTON_MAX: usize = 100;

impl TrscInstance {
    pub fn new(
        h: DMatrix<f64>,
        c: DVector<f64>,
        f0: Box<dyn ConvexOracle>,
        f: Box<dyn ConvexOracle>,
    ) -> Result<Self> {
        if f0.dim() != f.dim() {
            return Err(HcxError::DimensionMismatch(format!(
                "objective oracle has dim {}, constraint oracle {}",
                f0.dim(),
                f.dim()
            )));
        }
        let spectrum = spectral::decompose(&h, &c)?;
        Ok(TrscInstance { h, c, f0, f, spectrum })
    }

    /// View of a scalar instance through the oracle interface, for
    /// cross-checking the two code paths.
    pub fn from_trsl(inst: &TrslInstance) -> Self {
        let f = AffineOracle {
            w: DVector::from_element(1, -inst.a()),
            q: -inst.b(),
        };
        TrscInstance {
            h: inst.h().clone(),
            c: inst.c().clone(),
            f0: Box::new(ScalarOracle(inst.f0().clone())),
            f: Box::new(f),
            spectrum: inst.spectrum().clone(),
        }
    }

    pub fn h(&self) -> &DMatrix<f64> {
        &self.h
    }

    pub fn c(&self) -> &DVector<f64> {
        &self.c
    }

    pub fn f0(&self) -> &dyn ConvexOracle {
        self.f0.as_ref()
    }

    pub fn f(&self) -> &dyn ConvexOracle {
        self.f.as_ref()
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn m(&self) -> usize {
        self.f0.dim()
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn objective(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        0.5 * (x.transpose() * &self.h * x)[(0, 0)] + self.c.dot(x) + self.f0.value(y)
    }

    /// Constraint value ‖x‖² + f(y).
    pub fn constraint(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        x.norm_squared() + self.f.value(y)
    }

    /// ∇²f₀(y) + (μ/2)∇²f(y), the inner Hessian block.
    pub fn inner_hessian(&self, mu: f64, y: &DVector<f64>) -> DMatrix<f64> {
        self.f0.hessian(y) + self.f.hessian(y) * (mu / 2.0)
    }

    /// argmin_y f₀(y) + (μ/2) f(y), by damped Newton from `y0`.
    ///
    /// Stops when ‖∇f₀(y) + (μ/2)∇f(y)‖ ≤ 1e−10·max(1, ‖∇f₀(y0)‖).
    pub fn y_of_mu(&self, mu: f64, y0: &DVector<f64>) -> Result<DVector<f64>> {
        let m = self.m();
        if y0.len() != m {
            return Err(HcxError::DimensionMismatch(format!(
                "warm start has length {}, expected {}",
                y0.len(),
                m
            )));
        }
        let tol = 1e-10 * self.f0.gradient(y0).norm().max(1.0);
        let merit = |y: &DVector<f64>| self.f0.value(y) + 0.5 * mu * self.f.value(y);
        let grad = |y: &DVector<f64>| self.f0.gradient(y) + self.f.gradient(y) * (mu / 2.0);

        let mut y = y0.clone();
        let mut fy = merit(&y);
        let mut gy = grad(&y);
        for _ in 0..INNER_NEWTON_MAX {
            if gy.norm() <= tol {
                return Ok(y);
            }
            let hess = self.inner_hessian(mu, &y);
            let dir = match Cholesky::new(hess) {
                Some(ch) => -ch.solve(&gy),
                // strong convexity can fail only marginally at trial points;
                // fall back to steepest descent for this step
                None => -gy.clone(),
            };
            // full Newton step first: near the solution the merit decrease
            // drops below f64 resolution, but the gradient norm still
            // contracts and certifies progress
            let full = &y + &dir;
            let gf = grad(&full);
            if merit(&full).is_finite() && gf.norm() <= 0.9 * gy.norm() {
                fy = merit(&full);
                y = full;
                gy = gf;
                continue;
            }
            let slope = gy.dot(&dir);
            let mut alpha = 1.0;
            let mut accepted = false;
            for _ in 0..60 {
                let trial = &y + &dir * alpha;
                let ft = merit(&trial);
                if ft.is_finite() && ft <= fy + 1e-4 * alpha * slope {
                    y = trial;
                    fy = ft;
                    gy = grad(&y);
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        if gy.norm() <= tol {
            Ok(y)
        } else {
            Err(HcxError::InnerNoConverge { iters: INNER_NEWTON_MAX, residual: gy.norm() })
        }
    }

    /// ψ(μ) = −f(y(μ)) and ψ′(μ) = ½∇fᵀ[∇²f₀ + (μ/2)∇²f]⁻¹∇f, the latter by
    /// one linear solve against the inner Hessian.
    pub fn psi(&self, mu: f64, y0: &DVector<f64>) -> Result<(f64, f64, DVector<f64>)> {
        let y = self.y_of_mu(mu, y0)?;
        let psi = -self.f.value(&y);
        let gf = self.f.gradient(&y);
        let hess = self.inner_hessian(mu, &y);
        let ch = Cholesky::new(hess.clone()).ok_or_else(|| {
            let min_eig = hess.symmetric_eigen().eigenvalues.min();
            HcxError::NotPositiveDefinite { min_eig }
        })?;
        let d1 = 0.5 * gf.dot(&ch.solve(&gf));
        Ok((psi, d1, y))
    }

    /// Midpoint-convexity spot checks of both oracles plus the positive
    /// definiteness of ∇²f₀ + ½∇²f at sampled points with f(y) < 0.
    pub fn spot_check(&self, seed: u64, samples: usize) -> Result<()> {
        let m = self.m();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let u = DVector::from_fn(m, |_, _| rng.random_range(-3.0..3.0));
            let v = DVector::from_fn(m, |_, _| rng.random_range(-3.0..3.0));
            let mid = (&u + &v) * 0.5;
            for (name, orc) in [("f0", self.f0.as_ref()), ("f", self.f.as_ref())] {
                let (fu, fv, fm) = (orc.value(&u), orc.value(&v), orc.value(&mid));
                if fu.is_finite() && fv.is_finite() && fm.is_finite() {
                    let slack = 1e-9 * (fu.abs() + fv.abs()).max(1.0);
                    if fm > 0.5 * (fu + fv) + slack {
                        return Err(HcxError::InvalidInstance(format!(
                            "{name} fails midpoint convexity at a sampled pair"
                        )));
                    }
                }
            }
            if self.f.value(&u) < 0.0 {
                let hess = self.inner_hessian(1.0, &u);
                if hess.iter().all(|v| v.is_finite()) {
                    let min_eig = hess.symmetric_eigen().eigenvalues.min();
                    if min_eig <= 0.0 {
                        return Err(HcxError::NotPositiveDefinite { min_eig });
                    }
                }
            }
        }
        Ok(())
    }
}
