//! Shared helpers for the integration suites: seeded randomness, random
//! instance generators, and the brute-force oracles used to cross-check
//! certificates.
#![allow(dead_code)] // each test binary uses its own subset

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hcx::convex::{ConvexScalar, TrslInstance};
use hcx::spectral::{decompose, Spectrum};

/// Deterministic RNG, mixed with `HCX_SEED` when set.
pub fn seeded_rng(stream: u64) -> ChaCha8Rng {
    let base: u64 =
        std::env::var("HCX_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed);
    ChaCha8Rng::seed_from_u64(base.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(stream))
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random_range(1e-12..1.0);
    let u2: f64 = rng.random_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| gaussian(rng)).qr().q()
}

/// Random SPD matrix with eigenvalues in [0.5, 3].
pub fn random_spd(m: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let q = random_orthogonal(m, rng);
    let d = DVector::from_fn(m, |_, _| rng.random_range(0.5..3.0));
    let a = &q * DMatrix::from_diagonal(&d) * q.transpose();
    (&a + a.transpose()) * 0.5
}

/// (H, c) with simple negative lambda1 (gap >= 0.3) and all rotated
/// coefficients bounded away from zero.
pub fn random_hc_with_gap(n: usize, rng: &mut ChaCha8Rng) -> (DMatrix<f64>, DVector<f64>) {
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
    (h, c)
}

pub fn random_spectrum_with_gap(n: usize, rng: &mut ChaCha8Rng) -> Spectrum {
    let (h, c) = random_hc_with_gap(n, rng);
    decompose(&h, &c).expect("generated data is symmetric")
}

/// Central finite difference with the step h = 1e-5 scaled.
pub fn finite_diff(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    finite_diff_scaled(f, x, x.abs().max(1.0))
}

/// Central finite difference with the step scaled to an explicit length
/// scale (e.g. the distance to the nearest pole).
pub fn finite_diff_scaled(f: impl Fn(f64) -> f64, x: f64, scale: f64) -> f64 {
    let h = 1e-5 * scale;
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Uniform draw from the closed ball of radius `r` in `dim` dimensions.
pub fn ball_point(dim: usize, r: f64, rng: &mut ChaCha8Rng) -> DVector<f64> {
    let dir = DVector::from_fn(dim, |_, _| gaussian(rng));
    let norm = dir.norm().max(1e-300);
    let scale = r * rng.random_range(0.0f64..1.0).powf(1.0 / dim as f64);
    dir * (scale / norm)
}

/// Brute-force neighborhood oracle: sample `count` feasible points in the
/// radius-`r` ball around (x, y) and return the best objective found.
pub fn best_feasible_in_ball(
    inst: &TrslInstance,
    x: &DVector<f64>,
    y: f64,
    r: f64,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> f64 {
    let n = inst.n();
    let mut best = f64::INFINITY;
    let mut accepted = 0usize;
    let mut tries = 0usize;
    while accepted < count && tries < 100 * count {
        tries += 1;
        let d = ball_point(n + 1, r, rng);
        let xs = x + d.rows(0, n);
        let ys = y + d[n];
        if inst.constraint(&xs, ys) <= 0.0 {
            accepted += 1;
            if let Ok(v) = inst.objective(&xs, ys) {
                best = best.min(v);
            }
        }
    }
    assert!(accepted >= count, "could not sample enough feasible points");
    best
}

/// Brute-force global oracle: sample `count` feasible points in a box scaled
/// to the solution and return the best objective found.
pub fn best_feasible_in_box(
    inst: &TrslInstance,
    x_star: &DVector<f64>,
    y_star: f64,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> f64 {
    let n = inst.n();
    let r = 2.0 * (x_star.norm() + 1.0);
    let yspan = 2.0 * (y_star.abs() + 1.0);
    let mut best = f64::INFINITY;
    for _ in 0..count {
        let x = DVector::from_fn(n, |_, _| rng.random_range(-r..r));
        let ylo = (x.norm_squared() - inst.b()) / inst.a();
        let y = ylo + rng.random_range(0.0..yspan);
        if let Ok(v) = inst.objective(&x, y) {
            best = best.min(v);
        }
    }
    best
}

/// Dense grid oracle for n = 2 instances with quadratic f0: for each x the
/// optimal y is max((|x|^2-b)/a, argmin f0), so a 2-D refined grid search is
/// exact up to its resolution.
pub fn grid_oracle_best(inst: &TrslInstance, x_star: &DVector<f64>) -> f64 {
    assert_eq!(inst.n(), 2);
    let y_free = match inst.f0() {
        ConvexScalar::Quadratic { alpha, beta } => -beta / (2.0 * alpha),
        _ => panic!("grid oracle expects a quadratic objective term"),
    };
    let obj = |x0: f64, x1: f64| -> f64 {
        let x = DVector::from_vec(vec![x0, x1]);
        let ylo = (x.norm_squared() - inst.b()) / inst.a();
        let y = ylo.max(y_free);
        inst.objective(&x, y).unwrap()
    };
    // coarse scan, keeping several well-separated leaders so refinement
    // cannot commit to the wrong basin
    let r = x_star.norm() + 1.0;
    let steps = 160usize;
    let spacing = 2.0 * r / steps as f64;
    let mut cells: Vec<(f64, f64, f64)> = Vec::new();
    for i in 0..=steps {
        let x0 = -r + spacing * i as f64;
        for j in 0..=steps {
            let x1 = -r + spacing * j as f64;
            cells.push((obj(x0, x1), x0, x1));
        }
    }
    cells.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut seeds: Vec<(f64, f64)> = Vec::new();
    for &(_, x0, x1) in &cells {
        if seeds.iter().all(|&(sx, sy)| (x0 - sx).hypot(x1 - sy) > 6.0 * spacing) {
            seeds.push((x0, x1));
            if seeds.len() == 5 {
                break;
            }
        }
    }

    let mut best = f64::INFINITY;
    for (mut cx, mut cy) in seeds {
        let mut half = 2.0 * spacing;
        for _level in 0..3 {
            let fine = 40usize;
            let (mut bx, mut by, mut bv) = (cx, cy, f64::INFINITY);
            for i in 0..=fine {
                let x0 = cx - half + 2.0 * half * i as f64 / fine as f64;
                for j in 0..=fine {
                    let x1 = cy - half + 2.0 * half * j as f64 / fine as f64;
                    let v = obj(x0, x1);
                    if v < bv {
                        bv = v;
                        bx = x0;
                        by = x1;
                    }
                }
            }
            cx = bx;
            cy = by;
            best = best.min(bv);
            half = 4.0 * half / fine as f64;
        }
    }
    best
}
