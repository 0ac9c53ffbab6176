//! The general single-constraint path with vector y: oracles for f0 and f,
//! the inner Newton solve behind psi, enumeration, and certification.
//!
//! ```sh
//! cargo run --example general_vector_y
//! ```

use nalgebra::{DMatrix, DVector};

use hcx::certify::certify_local_general;
use hcx::convex::{FnOracle, TrscInstance};
use hcx::local::{enumerate_roots_general, materialize_general, precheck_general};

fn main() {
    // f0(y) = y1^2 + 2 y2^2 + 0.3 y1, f(y) = (y1 - 1)^2 + y2^2 - 4
    let f0 = FnOracle::new(
        2,
        |y: &DVector<f64>| y[0] * y[0] + 2.0 * y[1] * y[1] + 0.3 * y[0],
        |y: &DVector<f64>| DVector::from_vec(vec![2.0 * y[0] + 0.3, 4.0 * y[1]]),
        |_: &DVector<f64>| DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 4.0])),
    );
    let f = FnOracle::new(
        2,
        |y: &DVector<f64>| (y[0] - 1.0) * (y[0] - 1.0) + y[1] * y[1] - 4.0,
        |y: &DVector<f64>| DVector::from_vec(vec![2.0 * (y[0] - 1.0), 2.0 * y[1]]),
        |_: &DVector<f64>| DMatrix::identity(2, 2) * 2.0,
    );
    let inst = TrscInstance::new(
        DMatrix::from_diagonal(&DVector::from_vec(vec![-5.0, -1.0])),
        DVector::from_vec(vec![1.0, 1.0]),
        Box::new(f0),
        Box::new(f),
    )
    .unwrap();

    inst.spot_check(1, 128).expect("oracles pass the convexity spot checks");
    println!("precheck: {:?}", precheck_general(&inst));

    // the slack function and its derivative at one multiplier
    let y0 = DVector::zeros(2);
    let (psi, psi_d1, y) = inst.psi(3.0, &y0).unwrap();
    println!("psi(3.0) = {psi:.6}, psi'(3.0) = {psi_d1:.6}, y(3.0) = ({:.4}, {:.4})", y[0], y[1]);

    let roots = enumerate_roots_general(&inst, 4096, &y0).unwrap();
    println!("\n{} gap roots on the candidate interval:", roots.len());
    for r in &roots {
        let cand = materialize_general(&inst, r, &y0).unwrap();
        let cert = certify_local_general(&inst, &cand).unwrap();
        println!(
            "  mu = {:.6}  scan {}  certificate {}  y = ({:.4}, {:.4})",
            r.mu,
            r.classification,
            cert.label(),
            cand.y[0],
            cand.y[1]
        );
    }
}
