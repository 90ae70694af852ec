//! The quantum specialization is evaluated two ways: through the general
//! bound on the q-lattice (authoritative), and through a commonly printed
//! literal closed form whose correction term omits a (q^n - q^m) divisor.
//! The report keeps both left sides so the discrepancy stays visible.
//!
//! ```bash
//! cargo run -p tscalc --example quantum_misprint
//! ```

use tscalc::{corollary_quantum, DeltaFn, QuadratureConfig};

fn main() {
    let cfg = QuadratureConfig::default();
    let sq = |t: f64| t * t;
    let f = DeltaFn::numeric(&sq).named("t^2");

    println!("f(t) = t² on the lattice {{1, 2, 4}} (q = 2, m = 0, n = 2):\n");
    for t in [1.0, 2.0, 4.0] {
        let r = corollary_quantum(&f, 2.0, 0, 2, t, &cfg).unwrap();
        let literal = r.inputs.extra["lhs_literal"];
        let gap = r.inputs.extra["literal_minus_general"];
        println!("t = {t}:");
        println!("  general lhs  = {:.12}", r.lhs);
        println!("  literal lhs  = {literal:.12}");
        println!("  difference   = {gap:.12}");
        println!("  rhs          = {:.12}, holds (general) = {}\n", r.rhs, r.holds);
    }

    // For linear f both correction terms agree at one point but the literal
    // center is still off the scale's actual mean structure.
    let ident = |t: f64| t;
    let lin = DeltaFn::numeric(&ident).named("t");
    println!("f(t) = t:");
    for t in [1.0, 2.0, 4.0] {
        let r = corollary_quantum(&lin, 2.0, 0, 2, t, &cfg).unwrap();
        println!(
            "  t = {t}: general = {:.6}, literal = {:.6}",
            r.lhs, r.inputs.extra["lhs_literal"]
        );
    }

    // Larger lattices scale the discrepancy with the omitted factor q^n - q^m.
    println!("\nf(t) = t² at t = a across lattice sizes (q = 2, m = 0):");
    for n in 2..=5 {
        let r = corollary_quantum(&f, 2.0, 0, n, 1.0, &cfg).unwrap();
        println!(
            "  n = {n}: general = {:>12.6}, literal = {:>16.6}, omitted factor = {}",
            r.lhs,
            r.inputs.extra["lhs_literal"],
            2f64.powi(n) - 1.0
        );
    }
}
