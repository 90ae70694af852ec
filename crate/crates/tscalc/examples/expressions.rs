//! The expression language for test functions: parsing, evaluation,
//! symbolic differentiation, and use as a delta-differentiable function.
//!
//! ```bash
//! cargo run -p tscalc --example expressions
//! ```

use tscalc::{
    classical_derivative, delta_sup_inf, eval_expr, parse, DeltaFn, QuadratureConfig,
    RealFunction, TimeScale,
};

fn main() {
    for text in ["t^2 + 1", "sin(t)*exp(t)", "-t^2", "t/(t + 2)"] {
        let e = parse(text).unwrap();
        let de = classical_derivative(&e);
        println!("f(t) = {text}");
        println!("  f(0.5)  = {}", eval_expr(&e, 0.5).unwrap());
        println!("  f'(t)   = {de}");
        println!("  f'(0.5) = {}\n", eval_expr(&de, 0.5).unwrap());
    }

    // Parse errors carry the offending position.
    println!("\"t +\"    -> {}", parse("t +").unwrap_err());
    println!("\"tan(t)\" -> {}", parse("tan(t)").unwrap_err());
    println!("\"1/t\" at 0 -> {}", eval_expr(&parse("1/t").unwrap(), 0.0).unwrap_err());

    // An Expr evaluates as a RealFunction, and pairing it with its symbolic
    // derivative gives exact dense-segment slopes to the calculus layer.
    let e = parse("t^3 - 2*t").unwrap();
    let de = classical_derivative(&e);
    let f = DeltaFn::with_slope(&e as &dyn RealFunction, &de as &dyn RealFunction);
    let ts = TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0), (3.0, 4.0)]).unwrap();
    let (lo, hi) = delta_sup_inf(&ts, &f, &QuadratureConfig::default()).unwrap();
    println!("\nrange of f^Δ for f = {e} on {}: [{lo}, {hi}]", ts.summary());
}
