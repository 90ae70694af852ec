//! The Gruss bound: the mean of a product deviates from the product of
//! means by at most a quarter of the product of the value spreads.
//!
//! ```bash
//! cargo run -p tscalc --example gruss_bound
//! ```

use tscalc::{gruss_check, sigma_value_range, DeltaFn, QuadratureConfig, TimeScale};

fn print_report(r: &tscalc::BoundReport) {
    println!(
        "  lhs = {:.9}, rhs = {:.9}, slack = {:+.3e}, holds = {}",
        r.lhs, r.rhs, r.slack, r.holds
    );
}

fn main() {
    let cfg = QuadratureConfig::default();

    // f = g = t on [0,1] with bounds (0,1): mean of t² is 1/3, square of the
    // mean is 1/4, so the left side is 1/12 against a right side of 1/4.
    let ts = TimeScale::interval(0.0, 1.0).unwrap();
    let ident = |t: f64| t;
    let f = DeltaFn::numeric(&ident).named("t");
    println!("f = g = t on {}:", ts.summary());
    print_report(&gruss_check(&ts, &f, &f, (0.0, 1.0, 0.0, 1.0), &cfg).unwrap());

    // Same pairing on an integer window: exact sums of f^σ(j) = j + 1.
    let z = TimeScale::integers(0, 4).unwrap();
    println!("f = g = t on {}:", z.summary());
    print_report(&gruss_check(&z, &f, &f, (1.0, 4.0, 1.0, 4.0), &cfg).unwrap());

    // Different functions: value ranges estimated from the grid.
    let sq = |t: f64| t * t;
    let g = DeltaFn::numeric(&sq).named("t^2");
    let (m1, cap1) = sigma_value_range(&z, &f, &cfg).unwrap();
    let (m2, cap2) = sigma_value_range(&z, &g, &cfg).unwrap();
    println!("f = t, g = t² on {} with grid ranges [{m1},{cap1}] and [{m2},{cap2}]:", z.summary());
    print_report(&gruss_check(&z, &f, &g, (m1, cap1, m2, cap2), &cfg).unwrap());

    // Claiming a too-tight bound is caught on the verification grid.
    let err = gruss_check(&z, &f, &f, (1.0, 2.0, 1.0, 4.0), &cfg).unwrap_err();
    println!("with a false bound claim: {err}");
}
