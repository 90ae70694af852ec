//! The delta derivative across scale families: an exact forward-difference
//! quotient at scattered points, a classical one-sided limit at dense ones.
//!
//! ```bash
//! cargo run -p tscalc --example delta_derivative
//! ```

use tscalc::{delta_derivative, QuadratureConfig, TimeScale};

fn main() {
    let cfg = QuadratureConfig::default();
    let square = |t: f64| t * t;

    // Integers: f^Δ(t) = f(t+1) - f(t) = 2t + 1.
    let z = TimeScale::integers(0, 5).unwrap();
    println!("f(t) = t² on {}", z.summary());
    for t in [0.0, 1.0, 2.0, 3.0, 4.0] {
        let d = delta_derivative(&z, &square, t, &cfg).unwrap();
        println!("  f^Δ({t}) = {d}   (2t + 1 = {})", 2.0 * t + 1.0);
    }

    // q-lattice: f^Δ(t) = (f(qt) - f(t)) / ((q-1) t) = (q + 1) t for f = t².
    let q = TimeScale::q_lattice(2.0, 0, 3).unwrap();
    println!("\nf(t) = t² on {}", q.summary());
    for t in [1.0, 2.0, 4.0] {
        let d = delta_derivative(&q, &square, t, &cfg).unwrap();
        println!("  f^Δ({t}) = {d}   ((q+1)t = {})", 3.0 * t);
    }

    // Reals: the ordinary derivative, via extrapolated finite differences.
    let r = TimeScale::interval(0.0, 1.0).unwrap();
    println!("\nf(t) = t² on {}", r.summary());
    for t in [0.0, 0.25, 0.5, 1.0] {
        let d = delta_derivative(&r, &square, t, &cfg).unwrap();
        println!("  f^Δ({t}) = {d:.12}   (2t = {})", 2.0 * t);
    }

    // The scattered formula needs no quadrature config at all; it is exact:
    // here at the junction point 1 of [0,1] ∪ {2}, f^Δ(1) = (f(2)-f(1))/1.
    let mixed = TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0)]).unwrap();
    let d = delta_derivative(&mixed, &square, 1.0, &cfg).unwrap();
    println!("\non {}: f^Δ(1) = {d} (gap quotient)", mixed.summary());

    // t = 2 is a left-scattered maximum: the derivative is undefined there.
    let err = delta_derivative(&mixed, &square, 2.0, &cfg).unwrap_err();
    println!("at the left-scattered maximum: {err}");
}
