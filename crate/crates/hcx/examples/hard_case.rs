//! The hard case: c orthogonal to the lambda1 eigenspace. The multiplier
//! pins at -lambda1 and the solution needs a ray completion along the
//! lambda1 eigenvector.
//!
//! ```sh
//! cargo run --example hard_case
//! ```

use nalgebra::{DMatrix, DVector};

use hcx::convex::ConvexScalar;
use hcx::global::{check_global_trsl, solve_global};
use hcx::TrslInstance;

fn main() {
    // g = V'c = (0, 0.1): no weight on the lambda1 eigenvector
    let h = DMatrix::from_diagonal(&DVector::from_vec(vec![-2.0, -1.0]));
    let c = DVector::from_vec(vec![0.0, 0.1]);
    let inst = TrslInstance::new(
        h,
        c,
        1.0,
        0.0,
        ConvexScalar::Quadratic { alpha: 1.0, beta: 0.0 },
    )
    .unwrap();
    println!("g1 block norm = {:.3e} (hard case)", inst.spectrum().g1_block_norm());

    let sol = solve_global(&inst).unwrap();
    println!("mu* = {} (equals -lambda1 = 2)", sol.mu);
    println!("x = ({:.4}, {:.4}), y = {:.4}", sol.x[0], sol.x[1], sol.y);
    println!("ray completion used: {}", sol.hard_case);
    println!("|x|^2 = {:.6} matches the slack psi(2) = {:.6}", sol.x.norm_squared(), inst.psi(2.0).unwrap());
    println!(
        "certificate valid: {}",
        check_global_trsl(&inst, &sol.x, sol.y, sol.mu).unwrap().is_valid()
    );

    // with a large orthogonal component the minimum-norm point exceeds the
    // slack and the multiplier moves past -lambda1 instead
    let h = DMatrix::from_diagonal(&DVector::from_vec(vec![-2.0, -1.0]));
    let c = DVector::from_vec(vec![0.0, 1.0]);
    let inst =
        TrslInstance::new(h, c, 1.0, 0.0, ConvexScalar::Quadratic { alpha: 1.0, beta: 0.0 })
            .unwrap();
    let sol = solve_global(&inst).unwrap();
    println!("\nsecond instance: mu* = {:.6} > 2, ray completion used: {}", sol.mu, sol.hard_case);
}
