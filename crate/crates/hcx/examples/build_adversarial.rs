//! Build an instance with exactly four local non-global minimizers and
//! confirm the count by enumeration.
//!
//! ```sh
//! cargo run --example build_adversarial
//! ```

use hcx::builder::{build_psi, canned_base, draw_admissible_sequence, psi_to_f0};
use hcx::local::{enumerate_roots, Classification};
use hcx::spectral::decompose;
use hcx::TrslInstance;

fn main() {
    let d = 4;
    let (h, c, a, b) = canned_base();
    let spectrum = decompose(&h, &c).unwrap();

    let mus = draw_admissible_sequence(&spectrum, d, 7).unwrap();
    println!("prescribed intersection multipliers:");
    println!(
        "  {}",
        mus.iter().map(|m| format!("{m:.4}")).collect::<Vec<_>>().join(", ")
    );

    let psi = build_psi(&spectrum, &mus, None, None).unwrap();
    let f0 = psi_to_f0(&psi, a, b).unwrap();
    let inst = TrslInstance::new(h, c, a, b, f0).unwrap();

    let roots = enumerate_roots(&inst, 4096).unwrap();
    println!("\nenumerated {} gap roots:", roots.len());
    for r in &roots {
        println!("  mu = {:.6}  {}", r.mu, r.classification);
    }
    let strict =
        roots.iter().filter(|r| r.classification == Classification::StrictLocal).count();
    println!("\nstrict local non-global minimizers: {strict} (prescribed {d})");

    let out = std::env::temp_dir().join("hcx_adversarial_d4.json");
    hcx::format::save(&inst, &out).unwrap();
    println!("instance written to {}", out.display());
}
