//! Delta integrals: forward sums on lattices, ordinary integrals on dense
//! segments, and the mixed decomposition in between.
//!
//! ```bash
//! cargo run -p tscalc --example delta_integral
//! ```

use tscalc::{delta_integral, delta_integral_sigma, QuadratureConfig, TimeScale};

fn main() {
    let cfg = QuadratureConfig::default();
    let square = |t: f64| t * t;

    // Integers: ∫_0^3 t² Δt = f(0) + f(1) + f(2) = 5.
    let z = TimeScale::integers(0, 5).unwrap();
    let v = delta_integral(&z, &square, 0.0, 3.0, &cfg).unwrap();
    println!("on {}: ∫_0^3 t² Δt = {v}", z.summary());

    // Reals: the Riemann integral, ∫_0^1 t² dt = 1/3.
    let r = TimeScale::interval(0.0, 1.0).unwrap();
    let v = delta_integral(&r, &square, 0.0, 1.0, &cfg).unwrap();
    println!("on {}: ∫_0^1 t² Δt = {v:.12}", r.summary());

    // Mixed: dense part plus the scattered cell mu(1)·f(1) = 1.
    let mixed = TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0)]).unwrap();
    let v = delta_integral(&mixed, &square, 0.0, 2.0, &cfg).unwrap();
    println!("on {}: ∫_0^2 t² Δt = {v:.12} (= 1/3 + 1)", mixed.summary());

    // The composition f∘sigma integrates cell-aware: the scattered cell
    // contributes mu(1)·f(sigma(1)) = f(2) = 4 instead of f(1).
    let v = delta_integral_sigma(&mixed, &square, 0.0, 2.0, &cfg).unwrap();
    println!("on {}: ∫_0^2 f^σ Δt = {v:.12} (= 1/3 + 4)", mixed.summary());

    // Orientation is exact, zero width is exactly zero.
    let fwd = delta_integral(&z, &square, 1.0, 4.0, &cfg).unwrap();
    let bwd = delta_integral(&z, &square, 4.0, 1.0, &cfg).unwrap();
    println!("\norientation: ∫_1^4 = {fwd}, ∫_4^1 = {bwd}");
    println!(
        "zero width:  ∫_2^2 = {}",
        delta_integral(&z, &square, 2.0, 2.0, &cfg).unwrap()
    );
}
