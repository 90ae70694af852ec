//! The Montgomery identity: f(t) decomposes exactly into the mean of f^σ
//! plus a kernel-weighted integral of f^Δ. The residual of the identity is
//! numerical noise on every scale.
//!
//! ```bash
//! cargo run -p tscalc --example montgomery_identity
//! ```

use tscalc::{montgomery_kernel, montgomery_residual, DeltaFn, QuadratureConfig, TimeScale};

fn main() {
    let cfg = QuadratureConfig::default();

    // The kernel p(t,s): s - a below t, s - b from t on.
    let (a, b) = (0.0, 5.0);
    println!("kernel p(3, s) on [{a}, {b}]:");
    for s in [1.0, 2.9, 3.0, 4.0, 5.0] {
        println!("  p(3, {s}) = {}", montgomery_kernel(3.0, s, a, b).unwrap());
    }

    let cube = |t: f64| t * t * t;
    let slope = |t: f64| 3.0 * t * t;
    let f = DeltaFn::with_slope(&cube, &slope).named("t^3");

    println!("\nresiduals for f(t) = t³:");
    let scales = [
        TimeScale::integers(0, 5).unwrap(),
        TimeScale::interval(0.0, 1.0).unwrap(),
        TimeScale::q_lattice(2.0, 0, 3).unwrap(),
        TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0), (3.0, 4.0)]).unwrap(),
    ];
    for ts in &scales {
        let t = ts.rho(ts.max()).unwrap();
        let r = montgomery_residual(ts, &f, t, &cfg).unwrap();
        println!("  {:<24} t = {t:<4} residual = {r:+.3e}", ts.summary());
    }

    // On pure integer windows every quantity is an exact sum.
    let z = TimeScale::integers(0, 5).unwrap();
    println!("\nexact sums on {}:", z.summary());
    let sq = |t: f64| t * t;
    let dsq = |t: f64| 2.0 * t;
    let fsq = DeltaFn::with_slope(&sq, &dsq).named("t^2");
    for t in 0..=5 {
        let r = montgomery_residual(&z, &fsq, t as f64, &cfg).unwrap();
        println!("  t = {t}: residual = {r:+.1e}");
    }
}
