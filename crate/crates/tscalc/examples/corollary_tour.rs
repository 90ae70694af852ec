//! The specializations of the Ostrowski-Gruss bound: continuous, discrete,
//! bounded-derivative, midpoint and endpoint forms, each cross-checked
//! against the general time-scale version.
//!
//! ```bash
//! cargo run -p tscalc --example corollary_tour
//! ```

use tscalc::{
    corollary_bounded, corollary_continuous, corollary_discrete, corollary_endpoint,
    corollary_midpoint, ostrowski_gruss_check, DeltaFn, QuadratureConfig, TimeScale,
};

fn main() {
    let cfg = QuadratureConfig::default();
    let sq = |t: f64| t * t;
    let dsq = |t: f64| 2.0 * t;
    let f = DeltaFn::with_slope(&sq, &dsq).named("t^2");

    // Continuous form on [0,1]: classical quadrature, correction through the
    // midpoint term (t - (a+b)/2).
    let r = corollary_continuous(&f, 0.0, 1.0, 0.0, 0.0, 2.0, &cfg).unwrap();
    println!("continuous, f = t² on [0,1] at t = 0:");
    println!("  lhs = {:.9} (= 1/6), rhs = {:.3}", r.lhs, r.rhs);

    // Discrete form: the sequence x_j = j² with the correction factor
    // (x_n - x_0)/n. It reproduces the general check on an integer window.
    let x: Vec<f64> = (0..=4).map(|j| (j * j) as f64).collect();
    let d = corollary_discrete(&x, 2).unwrap();
    println!("\ndiscrete, x_j = j², n = 4, i = 2:");
    println!("  lhs = {}, rhs = {}", d.lhs, d.rhs);
    let z = TimeScale::integers(0, 4).unwrap();
    let g = ostrowski_gruss_check(&z, &f, 2.0, None, &cfg).unwrap();
    println!("  general check on {}: lhs = {}, rhs = {}", z.summary(), g.lhs, g.rhs);

    // Bounded-derivative form: same left side, right side (b-a)M/2.
    let ts = TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0)]).unwrap();
    let b = corollary_bounded(&ts, &f, 1.0, 3.0, &cfg).unwrap();
    println!("\nbounded, |f^Δ| <= 3 on {}:", ts.summary());
    println!("  lhs = {:.6}, rhs = {:.6}", b.lhs, b.rhs);

    // Midpoint and endpoint forms specialize the evaluation point.
    let z5 = TimeScale::integers(0, 4).unwrap();
    let m = corollary_midpoint(&z5, &f, &cfg).unwrap();
    println!("\nmidpoint on {} (t = {}):", z5.summary(), m.t.unwrap());
    println!("  lhs = {:.6}, rhs = {:.6}", m.lhs, m.rhs);

    let odd = TimeScale::integers(0, 5).unwrap();
    println!(
        "midpoint on {}: {}",
        odd.summary(),
        corollary_midpoint(&odd, &f, &cfg).unwrap_err()
    );

    let e = corollary_endpoint(&TimeScale::interval(0.0, 1.0).unwrap(), &f, &cfg).unwrap();
    println!("endpoint on [0,1] (t = 1): lhs = {:.9} (= 1/6), rhs = {:.3}", e.lhs, e.rhs);
}
