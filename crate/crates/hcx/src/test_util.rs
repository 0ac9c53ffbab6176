//! Shared helpers for unit tests.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spectral::{decompose, Spectrum};

/// Deterministic RNG, mixed with `HCX_SEED` when set.
pub fn seeded_rng(stream: u64) -> ChaCha8Rng {
    let base: u64 =
        std::env::var("HCX_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed);
    ChaCha8Rng::seed_from_u64(base.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(stream))
}

/// Central finite difference with the spec step h = 1e-5 scaled.
pub fn finite_diff(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-5 * x.abs().max(1.0);
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Example-1 quadratic data: H = Diag(-5, -1), c = (1, 1).
pub fn example1_hc() -> (DMatrix<f64>, DVector<f64>) {
    (
        DMatrix::from_diagonal(&DVector::from_vec(vec![-5.0, -1.0])),
        DVector::from_vec(vec![1.0, 1.0]),
    )
}

/// Dense random symmetric matrix with entries in [-2, 2].
pub fn symmetric_random(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = rng.random_range(-2.0..2.0);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

/// Random orthogonal matrix (QR of a Gaussian sample).
pub fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let gauss = DMatrix::from_fn(n, n, |_, _| {
        // Box-Muller
        let u1: f64 = rng.random_range(1e-12..1.0);
        let u2: f64 = rng.random_range(0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    });
    let qr = gauss.qr();
    qr.q()
}

/// Spectrum with a guaranteed simple negative λ₁ (gap ≥ 0.3) and every
/// rotated coefficient bounded away from zero.
pub fn spectrum_with_gap(n: usize, rng: &mut ChaCha8Rng) -> Spectrum {
    let lambda1 = rng.random_range(-6.0..-1.0);
    let gap = rng.random_range(0.3..2.0);
    let mut lambdas = vec![lambda1, lambda1 + gap];
    for _ in 2..n {
        lambdas.push(lambda1 + gap + rng.random_range(0.1..4.0));
    }
    lambdas.sort_by(f64::total_cmp);
    let v = random_orthogonal(n, rng);
    let h = &v * DMatrix::from_diagonal(&DVector::from_vec(lambdas)) * v.transpose();
    let h = (&h + h.transpose()) * 0.5;
    let g = DVector::from_fn(n, |_, _| {
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        sign * rng.random_range(0.2..2.0)
    });
    let c = &v * g;
    decompose(&h, &c).expect("random spectrum data is symmetric")
}

/// Random symmetric positive definite matrix with eigenvalues in [0.5, 3].
pub fn random_spd(m: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let q = random_orthogonal(m, rng);
    let d = DVector::from_fn(m, |_, _| rng.random_range(0.5..3.0));
    let a = &q * DMatrix::from_diagonal(&d) * q.transpose();
    (&a + a.transpose()) * 0.5
}
