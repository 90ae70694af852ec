//! Jump operators, graininess and point classification on a mixed scale.
//!
//! ```bash
//! cargo run -p tscalc --example jump_operators
//! ```

use tscalc::{Side, TimeScale};

fn side(s: Side) -> &'static str {
    match s {
        Side::Dense => "dense",
        Side::Scattered => "scattered",
    }
}

fn main() {
    // [0,1] ∪ {2} ∪ [3,4]: two dense segments around an isolated point.
    let ts = TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0), (3.0, 4.0)]).unwrap();
    println!("scale: {}", ts.summary());
    println!("min = {}, max = {}\n", ts.min(), ts.max());

    println!(
        "{:>6} {:>8} {:>8} {:>6} {:>6}  {:<10} {:<10}",
        "t", "sigma", "rho", "mu", "nu", "right", "left"
    );
    for t in [0.0, 0.5, 1.0, 2.0, 3.0, 3.7, 4.0] {
        let class = ts.classify(t).unwrap();
        println!(
            "{:>6} {:>8} {:>8} {:>6} {:>6}  {:<10} {:<10}{}{}",
            t,
            ts.sigma(t).unwrap(),
            ts.rho(t).unwrap(),
            ts.mu(t).unwrap(),
            ts.nu(t).unwrap(),
            side(class.right),
            side(class.left),
            if class.is_min { "  (min)" } else { "" },
            if class.is_max { "  (max)" } else { "" },
        );
    }

    // On the integer lattice everything is isolated with unit graininess.
    let z = TimeScale::integers(0, 5).unwrap();
    println!("\ninteger window {}: mu(3) = {}", z.summary(), z.mu(3.0).unwrap());

    // On a q-lattice the graininess grows geometrically: mu(q^k) = (q-1) q^k.
    let q = TimeScale::q_lattice(2.0, 0, 4).unwrap();
    println!("q-lattice {}:", q.summary());
    for seg in q.segments() {
        println!("  mu({}) = {}", seg.lo, q.mu(seg.lo).unwrap());
    }
}
