//! Enumeration of local non-global candidates.
//!
//! Candidates live at roots of the scalar gap ϕ(μ) = φ(μ) − ψ(μ) on the open
//! interval (max{0, −λ₂}, −λ₁): upward-crossing roots (ϕ′ > 0) are strict
//! local minimizers, downward crossings violate the second-order necessary
//! condition, and tangencies sit in the genuine gap between the necessary
//! and sufficient conditions, so they are reported as indeterminate.

use nalgebra::DVector;

use crate::convex::{log_concavity_holds, LogConcavity, TrscInstance, TrslInstance};
use crate::error::{HcxError, Result};
use crate::spectral::Spectrum;

/// Default number of grid points for root scanning: resolves root gaps down
/// to about 1e−3 of the interval with margin to spare.
pub const DEFAULT_GRID: usize = 4096;

/// Margin kept from the pole at −λ₁, where φ blows up in the easy case.
const POLE_MARGIN: f64 = 1e-6;
/// Margin kept from the left interval end. The left end can itself be the
/// pole at −λ₂, so the margin must clear the pole evaluation guard.
const LEFT_MARGIN: f64 = 2.0 * crate::spectral::POLE_TOL;

/// Second-order classification of a gap root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// ϕ′ > 0: certified strict local non-global minimizer.
    StrictLocal,
    /// ϕ′ < 0: violates the second-order necessary condition.
    RejectedNecessary,
    /// |ϕ′| below tolerance: the necessary/sufficient gap is genuine, no
    /// verdict is forced.
    Indeterminate,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::StrictLocal => "strict-local",
            Classification::RejectedNecessary => "rejected-necessary",
            Classification::Indeterminate => "indeterminate",
        };
        f.write_str(s)
    }
}

/// A refined root of ϕ = φ − ψ.
#[derive(Debug, Clone)]
pub struct RootRecord {
    pub mu: f64,
    /// ϕ′(μ) = φ′(μ) − ψ′(μ) at the root.
    pub gap_d1: f64,
    /// Final bisection bracket.
    pub bracket: (f64, f64),
    pub classification: Classification,
    /// |φ(μ) − ψ(μ)| at the refined root.
    pub residual: f64,
}

/// Why no local non-global minimizer can exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoLocalReason {
    /// λ₁ ≥ 0: the instance is convex.
    ConvexProblem,
    /// λ₁ has multiplicity above one.
    RepeatedLambda1,
    /// c is orthogonal to the λ₁ eigenspace (g₁ = 0).
    OrthogonalC,
    /// (max{0, −λ₂}, −λ₁) is empty.
    EmptyInterval,
    /// The constraint admits no strictly feasible y.
    NoInteriorConstraint,
}

impl std::fmt::Display for NoLocalReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            NoLocalReason::ConvexProblem => "lambda1 >= 0 (convex instance)",
            NoLocalReason::RepeatedLambda1 => "lambda1 multiplicity > 1",
            NoLocalReason::OrthogonalC => "g1 = 0 (c orthogonal to the lambda1 eigenspace)",
            NoLocalReason::EmptyInterval => "empty multiplier interval",
            NoLocalReason::NoInteriorConstraint => "constraint has no strictly feasible point",
        };
        f.write_str(s)
    }
}

/// Outcome of the structural pre-checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Precheck {
    /// Search the open interval (lo, hi).
    Proceed { lo: f64, hi: f64 },
    NoLocalNonGlobal(NoLocalReason),
}

fn precheck_spectrum(s: &Spectrum) -> Precheck {
    if s.lambda1() >= 0.0 {
        return Precheck::NoLocalNonGlobal(NoLocalReason::ConvexProblem);
    }
    if s.lambda1_multiplicity() > 1 {
        return Precheck::NoLocalNonGlobal(NoLocalReason::RepeatedLambda1);
    }
    if !s.g1_active() {
        return Precheck::NoLocalNonGlobal(NoLocalReason::OrthogonalC);
    }
    let (lo, hi) = s.local_multiplier_interval();
    // an interval thinner than the scan margins cannot hold a usable root
    if hi - POLE_MARGIN <= lo + LEFT_MARGIN {
        return Precheck::NoLocalNonGlobal(NoLocalReason::EmptyInterval);
    }
    Precheck::Proceed { lo, hi }
}

/// Structural pre-checks for a scalar instance. The linear coupling with
/// a > 0 always has strictly feasible points, so only the spectral
/// dichotomies apply.
pub fn precheck(inst: &TrslInstance) -> Precheck {
    precheck_spectrum(inst.spectrum())
}

/// Structural pre-checks for a general instance. Additionally detects
/// constant constraints without strictly feasible points.
pub fn precheck_general(inst: &TrscInstance) -> Precheck {
    // probe for a constant constraint: equal values and zero gradients at a
    // few deterministic points
    let m = inst.m();
    let mut constant = true;
    let base = inst.f().value(&DVector::zeros(m));
    'outer: for k in 0..4u32 {
        let scale = [0.5, -1.0, 2.0, -3.5][k as usize];
        let y = DVector::from_fn(m, |i, _| scale * (i as f64 + 1.0));
        if (inst.f().value(&y) - base).abs() > 1e-14 * base.abs().max(1.0)
            || inst.f().gradient(&y).norm() > 1e-14
        {
            constant = false;
            break 'outer;
        }
    }
    if constant && base >= 0.0 {
        return Precheck::NoLocalNonGlobal(NoLocalReason::NoInteriorConstraint);
    }
    precheck_spectrum(inst.spectrum())
}

/// ψ evaluator with the signature the scanner needs: value and derivative,
/// or `None` where no stationary y exists (no preimage of the multiplier).
trait SlackCurve {
    fn eval(&mut self, mu: f64) -> Result<Option<(f64, f64)>>;
}

struct TrslCurve<'a>(&'a TrslInstance);

impl SlackCurve for TrslCurve<'_> {
    fn eval(&mut self, mu: f64) -> Result<Option<(f64, f64)>> {
        match (self.0.psi(mu), self.0.psi_d1(mu)) {
            (Ok(v), Ok(d)) => Ok(Some((v, d))),
            (Err(HcxError::NoPreimage { .. }), _)
            | (_, Err(HcxError::NoPreimage { .. }))
            | (Err(HcxError::OutOfDomain { .. }), _)
            | (_, Err(HcxError::OutOfDomain { .. })) => Ok(None),
            (Err(e), _) => Err(e),
            (_, Err(e)) => Err(e),
        }
    }
}

struct TrscCurve<'a> {
    inst: &'a TrscInstance,
    warm: DVector<f64>,
}

impl SlackCurve for TrscCurve<'_> {
    fn eval(&mut self, mu: f64) -> Result<Option<(f64, f64)>> {
        match self.inst.psi(mu, &self.warm) {
            Ok((v, d, y)) => {
                self.warm = y;
                Ok(Some((v, d)))
            }
            Err(HcxError::InnerNoConverge { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

fn scan_roots(
    s: &Spectrum,
    curve: &mut dyn SlackCurve,
    lo: f64,
    hi: f64,
    grid_points: usize,
) -> Result<Vec<RootRecord>> {
    let a = lo + LEFT_MARGIN;
    let b = hi - POLE_MARGIN;
    if !(b > a) {
        return Ok(Vec::new());
    }
    let n = grid_points.max(16);
    let span = b - a;
    let step = span / (n - 1) as f64;

    let gap_at = |curve: &mut dyn SlackCurve, mu: f64| -> Result<Option<(f64, f64)>> {
        Ok(match curve.eval(mu)? {
            Some((psi, psi_d1)) => Some((s.phi(mu)? - psi, s.phi_d1(mu)? - psi_d1)),
            None => None,
        })
    };

    let mut samples: Vec<Option<(f64, f64)>> = Vec::with_capacity(n);
    for k in 0..n {
        let mu = a + step * k as f64;
        samples.push(gap_at(curve, mu)?);
    }

    let classify_tol = |phi_d1: f64| 1e-7 * (1.0 + phi_d1.abs());
    let mut roots: Vec<RootRecord> = Vec::new();
    let mut push_root = |curve: &mut dyn SlackCurve, mut lo_b: f64, mut hi_b: f64| -> Result<()> {
        let target = 1e-12 * span;
        let mut glo = match gap_at(curve, lo_b)? {
            Some(v) => v.0,
            None => return Ok(()),
        };
        while hi_b - lo_b > target {
            let mid = 0.5 * (lo_b + hi_b);
            let gm = match gap_at(curve, mid)? {
                Some(v) => v.0,
                None => return Ok(()),
            };
            if gm == 0.0 {
                lo_b = mid;
                hi_b = mid;
                break;
            }
            if (gm > 0.0) == (glo > 0.0) {
                lo_b = mid;
                glo = gm;
            } else {
                hi_b = mid;
            }
        }
        let mu = 0.5 * (lo_b + hi_b);
        if let Some((resid, d1)) = gap_at(curve, mu)? {
            let tol = classify_tol(s.phi_d1(mu)?);
            let classification = if d1 > tol {
                Classification::StrictLocal
            } else if d1 < -tol {
                Classification::RejectedNecessary
            } else {
                Classification::Indeterminate
            };
            roots.push(RootRecord {
                mu,
                gap_d1: d1,
                bracket: (lo_b, hi_b),
                classification,
                residual: resid.abs(),
            });
        }
        Ok(())
    };

    // simple roots: sign changes between consecutive valid samples
    for k in 1..n {
        let (prev, cur) = (samples[k - 1], samples[k]);
        let (mu_prev, mu_cur) = (a + step * (k - 1) as f64, a + step * k as f64);
        if let (Some((vp, _)), Some((vc, _))) = (prev, cur) {
            if vp == 0.0 {
                continue; // handled as an exact grid root below
            }
            if vc != 0.0 && (vp > 0.0) != (vc > 0.0) {
                push_root(curve, mu_prev, mu_cur)?;
            }
        }
    }
    // exact grid hits
    for (k, sample) in samples.iter().enumerate() {
        if let Some((v, d1)) = sample {
            if *v == 0.0 {
                let mu = a + step * k as f64;
                let tol = classify_tol(s.phi_d1(mu)?);
                let classification = if *d1 > tol {
                    Classification::StrictLocal
                } else if *d1 < -tol {
                    Classification::RejectedNecessary
                } else {
                    Classification::Indeterminate
                };
                roots.push(RootRecord {
                    mu,
                    gap_d1: *d1,
                    bracket: (mu, mu),
                    classification,
                    residual: 0.0,
                });
            }
        }
    }

    // tangential (non-crossing) roots: bracket sign changes of the gap
    // derivative and inspect the gap value at the critical point
    for k in 1..n {
        if let (Some((_, dp)), Some((_, dc))) = (samples[k - 1], samples[k]) {
            if dp != 0.0 && dc != 0.0 && (dp > 0.0) != (dc > 0.0) {
                let (mut lo_b, mut hi_b) = (a + step * (k - 1) as f64, a + step * k as f64);
                let mut dlo = dp;
                let target = 1e-12 * span;
                let mut valid = true;
                while hi_b - lo_b > target {
                    let mid = 0.5 * (lo_b + hi_b);
                    match gap_at(curve, mid)? {
                        Some((_, dm)) => {
                            if (dm > 0.0) == (dlo > 0.0) {
                                lo_b = mid;
                                dlo = dm;
                            } else {
                                hi_b = mid;
                            }
                        }
                        None => {
                            valid = false;
                            break;
                        }
                    }
                }
                if !valid {
                    continue;
                }
                let mu = 0.5 * (lo_b + hi_b);
                if let Some((v, d1)) = gap_at(curve, mu)? {
                    if v.abs() <= 1e-9 * s.phi(mu)?.abs().max(1.0) {
                        roots.push(RootRecord {
                            mu,
                            gap_d1: d1,
                            bracket: (lo_b, hi_b),
                            classification: Classification::Indeterminate,
                            residual: v.abs(),
                        });
                    }
                }
            }
        }
    }

    // dedup: merge anything closer than 1e-8 of the span, preferring the
    // record with the smaller residual
    roots.sort_by(|p, q| p.mu.total_cmp(&q.mu));
    let mut out: Vec<RootRecord> = Vec::new();
    for r in roots {
        match out.last() {
            Some(last) if (r.mu - last.mu).abs() <= 1e-8 * span => {
                if r.residual < out.last().unwrap().residual {
                    *out.last_mut().unwrap() = r;
                }
            }
            _ => out.push(r),
        }
    }
    Ok(out)
}

/// Enumerate all gap roots of a scalar instance on the candidate interval.
///
/// Returns an empty list when the pre-checks exclude local non-global
/// minimizers. Grid points where ψ is undefined (the multiplier has no
/// stationary y) cannot carry candidates and are skipped.
pub fn enumerate_roots(inst: &TrslInstance, grid_points: usize) -> Result<Vec<RootRecord>> {
    let (lo, hi) = match precheck(inst) {
        Precheck::Proceed { lo, hi } => (lo, hi),
        Precheck::NoLocalNonGlobal(_) => return Ok(Vec::new()),
    };
    let mut curve = TrslCurve(inst);
    scan_roots(inst.spectrum(), &mut curve, lo, hi, grid_points)
}

/// Enumerate gap roots for a general single-constraint instance, sweeping
/// the inner solver with warm starts.
pub fn enumerate_roots_general(
    inst: &TrscInstance,
    grid_points: usize,
    y0: &DVector<f64>,
) -> Result<Vec<RootRecord>> {
    let (lo, hi) = match precheck_general(inst) {
        Precheck::Proceed { lo, hi } => (lo, hi),
        Precheck::NoLocalNonGlobal(_) => return Ok(Vec::new()),
    };
    let mut curve = TrscCurve { inst, warm: y0.clone() };
    scan_roots(inst.spectrum(), &mut curve, lo, hi, grid_points)
}

/// A materialized candidate: the point behind a root record, with its
/// first-order residuals.
#[derive(Debug, Clone)]
pub struct CandidatePoint {
    pub x: DVector<f64>,
    pub y: DVector<f64>,
    pub mu: f64,
    /// ‖(H+μI)x + c‖.
    pub stationarity_x: f64,
    /// ‖∇f₀(y) + (μ/2)∇f(y)‖ (for the scalar coupling, |f₀′(y) − aμ/2|).
    pub stationarity_y: f64,
    /// Active-constraint residual.
    pub constraint_residual: f64,
    pub tag: Classification,
}

/// Materialize the candidate of a scalar-instance root.
pub fn materialize(inst: &TrslInstance, record: &RootRecord) -> Result<CandidatePoint> {
    let mu = record.mu;
    let x = inst.spectrum().x_of_mu(mu)?;
    let y = inst.y_of_mu(mu)?;
    let stationarity_x = (inst.h() * &x + &x * mu + inst.c()).norm();
    let stationarity_y = (inst.f0().d1(y)? - inst.a() * mu / 2.0).abs();
    let constraint_residual = inst.constraint(&x, y);
    debug_assert!(
        constraint_residual.abs() <= 1e-8 * (1.0 + inst.b().abs()),
        "constraint residual {constraint_residual} out of tolerance"
    );
    Ok(CandidatePoint {
        x,
        y: DVector::from_element(1, y),
        mu,
        stationarity_x,
        stationarity_y,
        constraint_residual,
        tag: record.classification,
    })
}

/// Materialize the candidate of a general-instance root.
pub fn materialize_general(
    inst: &TrscInstance,
    record: &RootRecord,
    y0: &DVector<f64>,
) -> Result<CandidatePoint> {
    let mu = record.mu;
    let x = inst.spectrum().x_of_mu(mu)?;
    let y = inst.y_of_mu(mu, y0)?;
    let stationarity_x = (inst.h() * &x + &x * mu + inst.c()).norm();
    let stationarity_y =
        (inst.f0().gradient(&y) + inst.f().gradient(&y) * (mu / 2.0)).norm();
    let constraint_residual = inst.constraint(&x, &y);
    Ok(CandidatePoint {
        x,
        y,
        mu,
        stationarity_x,
        stationarity_y,
        constraint_residual,
        tag: record.classification,
    })
}

/// Basis of a uniqueness claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Proven,
    Sampled,
}

/// Whether the instance can carry more than one local non-global minimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniquenessReport {
    AtMostOne(Provenance),
    MultiplePossible,
}

impl UniquenessReport {
    /// Under a proven log-concavity bound the strict-local classification is
    /// exact (necessary and sufficient), not merely sufficient.
    pub fn classification_is_exact(&self) -> bool {
        matches!(self, UniquenessReport::AtMostOne(Provenance::Proven))
    }
}

/// Decide uniqueness of the local non-global minimizer by log-concavity of
/// the slack curve on the candidate interval.
pub fn uniqueness_report(inst: &TrslInstance, samples: usize) -> Result<UniquenessReport> {
    let (lo, hi) = match precheck(inst) {
        Precheck::Proceed { lo, hi } => (lo, hi),
        // nothing to enumerate: at most zero
        Precheck::NoLocalNonGlobal(_) => {
            return Ok(UniquenessReport::AtMostOne(Provenance::Proven))
        }
    };
    Ok(match log_concavity_holds(inst, (lo, hi), samples)? {
        LogConcavity::Proven => UniquenessReport::AtMostOne(Provenance::Proven),
        LogConcavity::SampledTrue => UniquenessReport::AtMostOne(Provenance::Sampled),
        LogConcavity::FalsifiedAt(_) => UniquenessReport::MultiplePossible,
    })
}
