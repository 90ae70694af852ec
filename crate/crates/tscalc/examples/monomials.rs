//! Generalized monomials h_k(t, s): the defining recursion against the
//! closed forms on the three canonical scales.
//!
//! ```bash
//! cargo run -p tscalc --example monomials
//! ```

use tscalc::{
    h2_closed_form, monomial, quantum_h_closed_form, QuadratureConfig, ScaleKind, TimeScale,
};

fn main() {
    let cfg = QuadratureConfig::default();

    // h_0 = 1, h_1(t,s) = t - s on every scale; h_2 depends on the scale.
    let ts = TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0), (3.0, 4.0)]).unwrap();
    println!("on {}:", ts.summary());
    for k in 0..=3 {
        let v = monomial(&ts, k, 4.0, 0.0, &cfg).unwrap();
        println!("  h_{k}(4, 0) = {v:.12}");
    }

    // Reals: h_2(t,s) = (t-s)²/2.
    let r = TimeScale::interval(0.0, 3.0).unwrap();
    let generic = monomial(&r, 2, 3.0, 1.0, &cfg).unwrap();
    let closed = h2_closed_form(ScaleKind::Continuous, 3.0, 1.0, None).unwrap();
    println!("\ncontinuous: h_2(3,1) recursion = {generic:.12}, closed form = {closed}");

    // Integers: h_2(t,s) = (t-s)(t-s-1)/2, the binomial coefficient.
    let z = TimeScale::integers(0, 6).unwrap();
    let generic = monomial(&z, 2, 5.0, 0.0, &cfg).unwrap();
    let closed = h2_closed_form(ScaleKind::Discrete, 5.0, 0.0, None).unwrap();
    println!("discrete:   h_2(5,0) recursion = {generic}, closed form = {closed}");

    // q-lattice: h_2(t,s) = (t-s)(t-qs)/(1+q).
    let q = TimeScale::q_lattice(2.0, 0, 3).unwrap();
    let generic = monomial(&q, 2, 4.0, 1.0, &cfg).unwrap();
    let closed = h2_closed_form(ScaleKind::Quantum, 4.0, 1.0, Some(2.0)).unwrap();
    println!("quantum:    h_2(4,1) recursion = {generic}, closed form = {closed}");

    // The quantum product form extends the cross-check to k <= 3.
    println!("\nquantum product form on {}:", q.summary());
    for k in 1..=3 {
        let generic = monomial(&q, k, 8.0, 1.0, &cfg).unwrap();
        let product = quantum_h_closed_form(2.0, k, 8.0, 1.0).unwrap();
        println!("  h_{k}(8, 1): recursion = {generic:.12}, product = {product:.12}");
    }
}
