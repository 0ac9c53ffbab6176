//! Enumerate every local non-global candidate of the canned quartic
//! instance and certify each one.
//!
//! ```sh
//! cargo run --example enumerate_locals
//! ```

use hcx::builder::{canned_example, CannedExample};
use hcx::certify::certify_local;
use hcx::local::{enumerate_roots, materialize, precheck, uniqueness_report, Precheck};

fn main() {
    let inst = canned_example(CannedExample::Example1);

    match precheck(&inst) {
        Precheck::Proceed { lo, hi } => println!("candidate interval ({lo}, {hi})"),
        Precheck::NoLocalNonGlobal(reason) => {
            println!("no local non-global minimizer: {reason}");
            return;
        }
    }
    println!("uniqueness: {:?}\n", uniqueness_report(&inst, 256).unwrap());

    let roots = enumerate_roots(&inst, 4096).unwrap();
    for r in &roots {
        let cand = materialize(&inst, r).unwrap();
        let cert = certify_local(&inst, &cand).unwrap();
        println!(
            "mu = {:.6}  gap' = {:+.4}  scan: {:>18}  certificate: {}",
            r.mu,
            r.gap_d1,
            r.classification.to_string(),
            cert.label()
        );
        println!(
            "    point ({:.4}, {:.4}, {:.4}), objective {:.6}",
            cand.x[0],
            cand.x[1],
            cand.y[0],
            inst.objective(&cand.x, cand.y[0]).unwrap()
        );
    }
    println!("\n{} candidates, both certificates agree with the scan classification", roots.len());
}
