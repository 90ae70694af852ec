//! The Ostrowski bound: how far a point value can sit from the integral
//! mean, in terms of sup |f^Δ| and the second monomials. Includes the
//! equality witness that makes the bound sharp.
//!
//! ```bash
//! cargo run -p tscalc --example ostrowski_bound
//! ```

use tscalc::{ostrowski_check, DeltaFn, QuadratureConfig, TimeScale};

fn main() {
    let cfg = QuadratureConfig::default();

    // Sharpness witness: f(t) = t on [0,1] at t = 1 gives lhs = rhs = 1/2.
    let r = TimeScale::interval(0.0, 1.0).unwrap();
    let ident = |t: f64| t;
    let f = DeltaFn::numeric(&ident).named("t");
    let report = ostrowski_check(&r, &f, 1.0, &cfg).unwrap();
    println!("f = t on {} at t = 1 (equality witness):", r.summary());
    println!("  lhs = {:.12}", report.lhs);
    println!("  rhs = {:.12}", report.rhs);

    // f = t² on an integer window, swept over every point.
    let z = TimeScale::integers(0, 4).unwrap();
    let sq = |t: f64| t * t;
    let g = DeltaFn::numeric(&sq).named("t^2");
    println!("\nf = t² on {}:", z.summary());
    println!("{:>4} {:>10} {:>10} {:>12}", "t", "lhs", "rhs", "slack");
    for t in 0..=4 {
        let r = ostrowski_check(&z, &g, t as f64, &cfg).unwrap();
        println!("{:>4} {:>10.4} {:>10.4} {:>12.4}", t, r.lhs, r.rhs, r.slack);
    }

    // The same function on a q-lattice; at t = 2 the bound is again tight.
    let q = TimeScale::q_lattice(2.0, 0, 2).unwrap();
    println!("\nf = t² on {}:", q.summary());
    for t in [1.0, 2.0, 4.0] {
        let r = ostrowski_check(&q, &g, t, &cfg).unwrap();
        println!(
            "  t = {t}: lhs = {:.6}, rhs = {:.6}, slack = {:+.3e}",
            r.lhs, r.rhs, r.slack
        );
    }
}
