//! Solve the canned quartic instance to certified global optimality.
//!
//! ```sh
//! cargo run --example solve_global
//! ```

use hcx::builder::{canned_example, CannedExample};
use hcx::global::{check_global_trsl, solve_global};

fn main() {
    let inst = canned_example(CannedExample::Example1);
    println!("minimize 1/2 x'Hx + c'x + f0(y)  s.t.  |x|^2 - y <= 0");
    println!("H = Diag(-5, -1), c = (1, 1), f0 = canned quartic\n");

    let sol = solve_global(&inst).expect("instance is nonconvex and well posed");
    println!("multiplier  mu* = {:.9}", sol.mu);
    println!("point       x = ({:.6}, {:.6}), y = {:.6}", sol.x[0], sol.x[1], sol.y);
    println!("objective   {:.9}", sol.objective);
    println!("hard case   {}", sol.hard_case);

    // the KKT + PSD certificate is sufficient for global optimality
    let check = check_global_trsl(&inst, &sol.x, sol.y, sol.mu).unwrap();
    println!("certificate valid: {}", check.is_valid());
}
