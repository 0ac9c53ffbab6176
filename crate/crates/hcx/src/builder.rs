//! Adversarial instance construction.
//!
//! Given a target count d and a strictly increasing multiplier sequence
//! μ₁ < … < μ_{2d} inside the candidate interval, the builder assembles a
//! C¹, strictly increasing, piecewise linear/quadratic slack curve ψ that
//! intersects the secular curve φ exactly at the 2d chosen points, with the
//! transversality sign alternating so that exactly the even-indexed points
//! certify as strict local non-global minimizers. Integrating ψ⁻¹ recovers a
//! convex scalar objective f₀ that realizes the curve, so the output is an
//! ordinary [`TrslInstance`].
//!
//! The scheme: secant lines L_j of φ through (μ_{2j−1}, φ(μ_{2j−1})) and
//! (μ_{2j}, φ(μ_{2j})) are glued by quadratic blends tangent to both
//! neighbors, centered at consecutive line intersections o_j with halfwidth
//! ε, and extended linearly beyond the first and last line.

use nalgebra::{DMatrix, DVector};

use crate::convex::{ConvexScalar, TrslInstance};
use crate::error::{HcxError, Result};
use crate::spectral::Spectrum;

/// One polynomial piece of a slack curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PsiPiece {
    Linear { slope: f64, intercept: f64 },
    Quadratic { a2: f64, a1: f64, a0: f64 },
}

impl PsiPiece {
    pub fn value(&self, mu: f64) -> f64 {
        match *self {
            PsiPiece::Linear { slope, intercept } => slope * mu + intercept,
            PsiPiece::Quadratic { a2, a1, a0 } => (a2 * mu + a1) * mu + a0,
        }
    }

    pub fn d1(&self, mu: f64) -> f64 {
        match *self {
            PsiPiece::Linear { slope, .. } => slope,
            PsiPiece::Quadratic { a2, a1, .. } => 2.0 * a2 * mu + a1,
        }
    }

    pub fn d2(&self) -> f64 {
        match *self {
            PsiPiece::Linear { .. } => 0.0,
            PsiPiece::Quadratic { a2, .. } => 2.0 * a2,
        }
    }
}

/// C¹, strictly increasing piecewise linear/quadratic function of μ.
///
/// `breakpoints` holds the markers r₀, l₁, r₁, …, l_d; the first and last
/// entries only mark the interval of interest, while the interior entries are
/// the switch points between pieces. The first and last pieces extend to ∓∞,
/// so the function is a C¹ bijection of ℝ.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePsi {
    breakpoints: Vec<f64>,
    pieces: Vec<PsiPiece>,
}

const C1_TOL: f64 = 1e-10;

impl PiecewisePsi {
    /// Validate and assemble: breakpoints ascending, one piece per gap, first
    /// and last pieces linear, every piece strictly increasing on its span,
    /// and values/derivatives C¹-matched at each interior switch point.
    pub fn from_parts(breakpoints: Vec<f64>, pieces: Vec<PsiPiece>) -> Result<Self> {
        if breakpoints.len() < 2 || pieces.len() + 1 != breakpoints.len() {
            return Err(HcxError::BadSequence(format!(
                "{} breakpoints and {} pieces are inconsistent",
                breakpoints.len(),
                pieces.len()
            )));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(HcxError::BadSequence("breakpoints are not strictly ascending".into()));
        }
        // quadratic pieces with zero curvature behave linearly
        let pieces: Vec<PsiPiece> = pieces
            .into_iter()
            .map(|p| match p {
                PsiPiece::Quadratic { a2, a1, a0 } if a2 == 0.0 => {
                    PsiPiece::Linear { slope: a1, intercept: a0 }
                }
                other => other,
            })
            .collect();
        for p in [&pieces[0], &pieces[pieces.len() - 1]] {
            if !matches!(p, PsiPiece::Linear { .. }) {
                return Err(HcxError::BadSequence(
                    "first and last pieces must be linear so the curve extends to a bijection of R"
                        .into(),
                ));
            }
        }
        for (i, p) in pieces.iter().enumerate() {
            for mu in [breakpoints[i], breakpoints[i + 1]] {
                if p.d1(mu) <= 0.0 {
                    return Err(HcxError::NonMonotonePsi { mu });
                }
            }
        }
        for i in 1..pieces.len() {
            let mu = breakpoints[i];
            let (vl, vr) = (pieces[i - 1].value(mu), pieces[i].value(mu));
            let (dl, dr) = (pieces[i - 1].d1(mu), pieces[i].d1(mu));
            if (vl - vr).abs() > C1_TOL * vl.abs().max(1.0)
                || (dl - dr).abs() > C1_TOL * dl.abs().max(1.0)
            {
                return Err(HcxError::BadSequence(format!(
                    "pieces are not C1 at breakpoint {mu}: value gap {:.3e}, slope gap {:.3e}",
                    vl - vr,
                    dl - dr
                )));
            }
        }
        Ok(PiecewisePsi { breakpoints, pieces })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[PsiPiece] {
        &self.pieces
    }

    /// Interior switch points (everything but the outer markers).
    fn switches(&self) -> &[f64] {
        &self.breakpoints[1..self.breakpoints.len() - 1]
    }

    fn piece_index(&self, mu: f64) -> usize {
        self.switches().partition_point(|&s| s < mu)
    }

    pub fn value(&self, mu: f64) -> f64 {
        self.pieces[self.piece_index(mu)].value(mu)
    }

    pub fn d1(&self, mu: f64) -> f64 {
        self.pieces[self.piece_index(mu)].d1(mu)
    }

    pub fn d2(&self, mu: f64) -> f64 {
        self.pieces[self.piece_index(mu)].d2()
    }

    /// Inverse of the curve (strictly increasing bijection of ℝ).
    pub fn inverse(&self, y: f64) -> f64 {
        // locate the piece by its y-span, then invert the polynomial
        let mut idx = self.pieces.len() - 1;
        for (i, &s) in self.switches().iter().enumerate() {
            if y <= self.pieces[i].value(s) {
                idx = i;
                break;
            }
        }
        match self.pieces[idx] {
            PsiPiece::Linear { slope, intercept } => (y - intercept) / slope,
            PsiPiece::Quadratic { a2, a1, a0 } => {
                let disc = (a1 * a1 - 4.0 * a2 * (a0 - y)).max(0.0).sqrt();
                let q = -0.5 * (a1 + a1.signum() * disc);
                let (r1, r2) = (q / a2, (a0 - y) / q);
                // the increasing branch is the root where the derivative is positive
                if 2.0 * a2 * r1 + a1 >= 0.0 {
                    r1
                } else {
                    r2
                }
            }
        }
    }
}

/// Convex scalar objective recovered from a slack curve: f₀′ = ½ψ⁻¹, values
/// by per-piece antiderivatives chained to be C¹ with f₀(0) = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiConvex {
    psi: PiecewisePsi,
    offsets: Vec<f64>,
}

impl PsiConvex {
    pub fn new(psi: PiecewisePsi) -> PsiConvex {
        let k = psi.pieces.len();
        let mut offsets = vec![0.0; k];
        for i in 1..k {
            let ys = psi.pieces[i - 1].value(psi.breakpoints[i]);
            offsets[i] =
                antiderivative(&psi.pieces[i - 1], ys) + offsets[i - 1] - antiderivative(&psi.pieces[i], ys);
        }
        // global shift so that f0(0) = 0, matching the polynomial families
        let mut out = PsiConvex { psi, offsets };
        let shift = out.eval(0.0);
        for o in &mut out.offsets {
            *o -= shift;
        }
        out
    }

    pub fn psi(&self) -> &PiecewisePsi {
        &self.psi
    }

    fn piece_for_y(&self, y: f64) -> usize {
        let mut idx = self.psi.pieces.len() - 1;
        for (i, &s) in self.psi.switches().iter().enumerate() {
            if y <= self.psi.pieces[i].value(s) {
                idx = i;
                break;
            }
        }
        idx
    }

    pub fn eval(&self, y: f64) -> f64 {
        let i = self.piece_for_y(y);
        antiderivative(&self.psi.pieces[i], y) + self.offsets[i]
    }

    pub fn d1(&self, y: f64) -> f64 {
        0.5 * self.psi.inverse(y)
    }

    pub fn d2(&self, y: f64) -> f64 {
        0.5 / self.psi.d1(self.psi.inverse(y))
    }

    pub fn d3(&self, y: f64) -> f64 {
        let mu = self.psi.inverse(y);
        let d1 = self.psi.d1(mu);
        -0.5 * self.psi.d2(mu) / (d1 * d1 * d1)
    }

    pub fn inv_d1(&self, t: f64) -> f64 {
        self.psi.value(2.0 * t)
    }
}

/// ½∫ψ⁻¹ for one piece, up to a constant. For a linear piece y = sμ + q the
/// antiderivative is (y−q)²/(4s); for a quadratic piece it picks up a 3/2
/// power of the discriminant.
fn antiderivative(piece: &PsiPiece, y: f64) -> f64 {
    match *piece {
        PsiPiece::Linear { slope, intercept } => {
            let r = y - intercept;
            r * r / (4.0 * slope)
        }
        PsiPiece::Quadratic { a2, a1, a0 } => {
            let disc = (a1 * a1 - 4.0 * a2 * (a0 - y)).max(0.0);
            -a1 * y / (4.0 * a2) + disc.powf(1.5) / (24.0 * a2 * a2)
        }
    }
}

/// Assemble the slack curve for the prescribed intersection sequence.
///
/// `mus` must be strictly increasing, have even length 2d, and lie strictly
/// inside the candidate interval of `s`, with φ nondecreasing at μ₁.
/// `o_overrides` (length d−1) pins the blend centers; each must agree with
/// the corresponding exact line intersection. `blend_halfwidth` replaces the
/// default ε = ½·min distance from the centers to the neighboring μ's.
pub fn build_psi(
    s: &Spectrum,
    mus: &[f64],
    o_overrides: Option<&[f64]>,
    blend_halfwidth: Option<f64>,
) -> Result<PiecewisePsi> {
    if mus.len() < 2 || mus.len() % 2 != 0 {
        return Err(HcxError::BadSequence(format!(
            "need an even number (2d) of intersection points, got {}",
            mus.len()
        )));
    }
    if mus.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(HcxError::BadSequence("intersection points are not strictly ascending".into()));
    }
    if !s.g1_active() {
        return Err(HcxError::DegenerateG1 { g1: s.g1_block_norm() });
    }
    let (lo, hi) = s.local_multiplier_interval();
    if mus[0] <= lo || mus[mus.len() - 1] >= hi {
        return Err(HcxError::BadSequence(format!(
            "points must lie strictly inside ({lo}, {hi})"
        )));
    }
    let d = mus.len() / 2;
    let phis = mus.iter().map(|&m| s.phi(m)).collect::<Result<Vec<_>>>()?;
    let d1_at_first = s.phi_d1(mus[0])?;
    // phi is strictly convex here, so nonnegative slope at the first point
    // means phi increases across the whole sequence
    if d1_at_first < -1e-12 * phis[0].max(1.0) {
        return Err(HcxError::PhiNotIncreasing { mu1: mus[0], phi_d1: d1_at_first });
    }

    let mut slopes = Vec::with_capacity(d);
    let mut intercepts = Vec::with_capacity(d);
    for j in 0..d {
        let (m1, m2) = (mus[2 * j], mus[2 * j + 1]);
        let slope = (phis[2 * j + 1] - phis[2 * j]) / (m2 - m1);
        if slope <= 0.0 {
            return Err(HcxError::BadSequence(format!(
                "secant slope {slope:.3e} on [{m1}, {m2}] is not positive"
            )));
        }
        slopes.push(slope);
        intercepts.push(phis[2 * j] - slope * m1);
    }
    for j in 1..d {
        if slopes[j] <= slopes[j - 1] {
            return Err(HcxError::BadSequence(
                "secant slopes must be strictly increasing".into(),
            ));
        }
    }

    // intersections of consecutive lines
    let mut centers = Vec::with_capacity(d.saturating_sub(1));
    for j in 0..d.saturating_sub(1) {
        let o = (intercepts[j + 1] - intercepts[j]) / (slopes[j] - slopes[j + 1]);
        let (left, right) = (mus[2 * j + 1], mus[2 * j + 2]);
        if !(o > left && o < right) {
            return Err(HcxError::BadSequence(format!(
                "line intersection {o} is outside ({left}, {right})"
            )));
        }
        centers.push(o);
    }
    if let Some(ovr) = o_overrides {
        if ovr.len() != centers.len() {
            return Err(HcxError::BadSequence(format!(
                "expected {} blend centers, got {}",
                centers.len(),
                ovr.len()
            )));
        }
        for (j, (&o, &exact)) in ovr.iter().zip(&centers).enumerate() {
            let (left, right) = (mus[2 * j + 1], mus[2 * j + 2]);
            if !(o > left && o < right) {
                return Err(HcxError::BadSequence(format!(
                    "blend center override {o} is outside ({left}, {right})"
                )));
            }
            // a quadratic tangent to both lines must be centered at their
            // intersection; accept overrides that name that point
            if (o - exact).abs() > 1e-6 * (right - left) {
                return Err(HcxError::BadSequence(format!(
                    "blend center override {o} does not match the line intersection {exact}"
                )));
            }
        }
    }

    let eps = match blend_halfwidth {
        Some(e) => {
            if !(e > 0.0) {
                return Err(HcxError::BadSequence("blend halfwidth must be positive".into()));
            }
            e
        }
        None => {
            let mut m = f64::INFINITY;
            for (j, &o) in centers.iter().enumerate() {
                m = m.min((o - mus[2 * j + 1]).abs().min((mus[2 * j + 2] - o).abs()));
            }
            0.5 * m
        }
    };
    for (j, &o) in centers.iter().enumerate() {
        if !(o - eps > mus[2 * j + 1] && o + eps < mus[2 * j + 2]) {
            return Err(HcxError::BadSequence(format!(
                "blend [{}, {}] is not strictly between the neighboring intersection points",
                o - eps,
                o + eps
            )));
        }
    }

    let mut breakpoints = Vec::with_capacity(2 * d);
    let mut pieces = Vec::with_capacity(2 * d - 1);
    breakpoints.push(lo);
    pieces.push(PsiPiece::Linear { slope: slopes[0], intercept: intercepts[0] });
    for (j, &o) in centers.iter().enumerate() {
        let (l, r) = (o - eps, o + eps);
        let (sl, sr) = (slopes[j], slopes[j + 1]);
        let a2 = (sr - sl) / (4.0 * eps);
        let a1 = sl - 2.0 * a2 * l;
        let a0 = sl * l + intercepts[j] - a1 * l - a2 * l * l;
        breakpoints.push(l);
        breakpoints.push(r);
        pieces.push(PsiPiece::Quadratic { a2, a1, a0 });
        pieces.push(PsiPiece::Linear { slope: slopes[j + 1], intercept: intercepts[j + 1] });
    }
    breakpoints.push(hi);
    let psi = PiecewisePsi::from_parts(breakpoints, pieces)?;

    // The lines intersect phi transversally by convexity, so spurious roots
    // can only hide inside a blend. Reject any blend that touches phi.
    for (j, &o) in centers.iter().enumerate() {
        let (l, r) = (o - eps, o + eps);
        let floor = 1e-8 * s.phi(o)?.max(1.0);
        for k in 0..=128 {
            let mu = l + (r - l) * k as f64 / 128.0;
            if s.phi(mu)? - psi.value(mu) < floor {
                return Err(HcxError::BadSequence(format!(
                    "blend {j} touches the secular curve near mu = {mu}; \
                     reduce the blend halfwidth or separate the points"
                )));
            }
        }
    }
    // transversality at the even-indexed points (guaranteed by convexity,
    // checked to catch degenerate inputs)
    for j in 0..d {
        if s.phi_d1(mus[2 * j + 1])? - slopes[j] <= 0.0 {
            return Err(HcxError::BadSequence(format!(
                "no strict transversality at mu = {}",
                mus[2 * j + 1]
            )));
        }
    }
    Ok(psi)
}

/// Draw a random admissible multiplier sequence for [`build_psi`]: 2d sorted
/// points inside the increasing part of the secular curve, separated by at
/// least 1% of the interval, redrawn until the builder accepts them.
pub fn draw_admissible_sequence(spectrum: &Spectrum, d: usize, seed: u64) -> Result<Vec<f64>> {
    use rand::{Rng, SeedableRng};

    if d == 0 {
        return Err(HcxError::BadSequence("d must be at least 1".into()));
    }
    let (lo, hi) = spectrum.local_multiplier_interval();
    if !(hi > lo) {
        return Err(HcxError::BadSequence("empty candidate interval".into()));
    }
    // phi is strictly convex between the poles, so phi' has at most one sign
    // change; bisect for it to find where phi starts increasing
    let mut a = lo + 1e-6 * (hi - lo);
    let b = hi - 1e-6 * (hi - lo);
    if spectrum.phi_d1(a)? < 0.0 {
        let (mut l, mut r) = (a, b);
        for _ in 0..80 {
            let mid = 0.5 * (l + r);
            if spectrum.phi_d1(mid)? < 0.0 {
                l = mid;
            } else {
                r = mid;
            }
        }
        a = r;
    }
    let span = b - a;
    if span <= 0.0 {
        return Err(HcxError::BadSequence("secular curve never increases on the interval".into()));
    }
    let min_gap = 0.01 * span;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let mut pts: Vec<f64> = (0..2 * d)
            .map(|_| a + 0.02 * span + rng.random_range(0.0..0.96 * span))
            .collect();
        pts.sort_by(f64::total_cmp);
        if pts.windows(2).all(|w| w[1] - w[0] >= min_gap)
            && build_psi(spectrum, &pts, None, None).is_ok()
        {
            return Ok(pts);
        }
    }
    Err(HcxError::BadSequence(
        "could not draw an admissible sequence; try fewer minimizers".into(),
    ))
}

/// Recover the convex objective realizing a slack curve under the a = 1,
/// b = 0 normalization (ψ = y then, so f₀′ = ½ψ⁻¹).
pub fn psi_to_f0(psi: &PiecewisePsi, a: f64, b: f64) -> Result<ConvexScalar> {
    if a != 1.0 || b != 0.0 {
        return Err(HcxError::Unsupported(format!(
            "slack-curve inversion is defined for the a = 1, b = 0 normalization, got a = {a}, b = {b}"
        )));
    }
    Ok(ConvexScalar::PiecewiseFromPsi(PsiConvex::new(psi.clone())))
}

/// Canned reproduction instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CannedExample {
    /// n = 2 quartic instance with two local non-global minimizers.
    Example1,
    /// n = 2 piecewise instance with three local non-global minimizers.
    Example2d3,
}

impl std::str::FromStr for CannedExample {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "example1" => Ok(CannedExample::Example1),
            "example2d3" => Ok(CannedExample::Example2d3),
            other => Err(format!("unknown canned instance '{other}'")),
        }
    }
}

/// The base quadratic data shared by both canned instances:
/// H = Diag(−5, −1), c = (1, 1), a = 1, b = 0.
pub fn canned_base() -> (DMatrix<f64>, DVector<f64>, f64, f64) {
    (
        DMatrix::from_diagonal(&DVector::from_vec(vec![-5.0, -1.0])),
        DVector::from_vec(vec![1.0, 1.0]),
        1.0,
        0.0,
    )
}

/// The exact slack curve of the canned piecewise instance (d = 3).
pub fn example2d3_psi() -> PiecewisePsi {
    let breakpoints = vec![1.0, 37.0 / 10.0, 39.0 / 10.0, 42.0 / 10.0, 44.0 / 10.0, 5.0];
    let pieces = vec![
        PsiPiece::Linear { slope: 0.25, intercept: -0.25 },
        PsiPiece::Quadratic { a2: 39.0 / 8.0, a1: -1433.0 / 40.0, a0: 53191.0 / 800.0 },
        PsiPiece::Linear { slope: 11.0 / 5.0, intercept: -383.0 / 50.0 },
        PsiPiece::Quadratic { a2: 21.0, a1: -871.0 / 5.0, a0: 18139.0 / 50.0 },
        PsiPiece::Linear { slope: 53.0 / 5.0, intercept: -2189.0 / 50.0 },
    ];
    PiecewisePsi::from_parts(breakpoints, pieces).expect("canned slack curve is consistent")
}

/// Construct a canned instance.
pub fn canned_example(which: CannedExample) -> TrslInstance {
    let (h, c, a, b) = canned_base();
    let f0 = match which {
        CannedExample::Example1 => ConvexScalar::QuarticExample1,
        CannedExample::Example2d3 => {
            psi_to_f0(&example2d3_psi(), a, b).expect("canned normalization is a = 1, b = 0")
        }
    };
    TrslInstance::new(h, c, a, b, f0).expect("canned instance is valid")
}
