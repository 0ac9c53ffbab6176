//! Certify hand-built candidate points: a genuine strict local minimizer,
//! a KKT point that fails the second-order test, and a perturbed non-KKT
//! point.
//!
//! ```sh
//! cargo run --example certify_candidate
//! ```

use nalgebra::DVector;

use hcx::builder::{canned_example, CannedExample};
use hcx::certify::certify_local;
use hcx::local::{CandidatePoint, Classification};

fn candidate_at(inst: &hcx::TrslInstance, mu: f64) -> CandidatePoint {
    let x = inst.spectrum().x_of_mu(mu).unwrap();
    let y = inst.y_of_mu(mu).unwrap();
    CandidatePoint {
        stationarity_x: (inst.h() * &x + &x * mu + inst.c()).norm(),
        stationarity_y: (inst.f0().d1(y).unwrap() - inst.a() * mu / 2.0).abs(),
        constraint_residual: inst.constraint(&x, y),
        x,
        y: DVector::from_element(1, y),
        mu,
        tag: Classification::Indeterminate,
    }
}

fn main() {
    let inst = canned_example(CannedExample::Example1);

    // the strict local non-global minimizer near mu = 3.72
    let good = candidate_at(&inst, 3.7176496261972760);
    println!("KKT point at mu = 3.7176:      {}", certify_local(&inst, &good).unwrap().label());

    // the KKT point near mu = 4.17 is a saddle of the reduced problem
    let saddle = candidate_at(&inst, 4.1675083965699511);
    println!("KKT point at mu = 4.1675:      {}", certify_local(&inst, &saddle).unwrap().label());

    // perturbing x breaks stationarity
    let mut fake = candidate_at(&inst, 3.7176496261972760);
    fake.x[0] += 0.05;
    println!("perturbed point:               {}", certify_local(&inst, &fake).unwrap().label());

    // a multiplier beyond -lambda1 routes to the global certificate
    let global = candidate_at(&inst, 5.6313268813757533);
    println!("KKT point at mu = 5.6313:      {}", certify_local(&inst, &global).unwrap().label());
}
