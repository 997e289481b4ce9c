#![allow(dead_code)]

use proptest::prelude::*;
use rdtm_core::expr::{Bindings, Expr, Func};

/// Expressions valid on `[-2, 2]` with `kappa` and `c` bound by [`bindings`].
pub const CORPUS: &[&str] = &[
    "x",
    "x^2 + 1",
    "x^3 - 2*x + 1",
    "-x^4/24",
    "sin(x)",
    "cos(2*x)",
    "tan(x/3)",
    "sinh(x/2)",
    "cosh(x)",
    "tanh(kappa*x)",
    "exp(-x^2)",
    "ln(x^2 + 1)",
    "sqrt(x^2 + 2)",
    "1/(1 + x^2)",
    "(x + 1)/(x^2 + 3)",
    "(x^2 + 1)^1.5",
    "sin(x)*exp(x/4)",
    "tanh(x)^2 - 1",
    "c + 2*tanh(kappa*(x + 1))^3 - 9*tanh(kappa*(x + 1))",
    "exp(sin(x))*cos(x^2)",
    "x*ln(2 + cos(x))",
    "cosh(x)^(-2)",
    "2^x",
];

pub fn bindings(x: f64) -> Bindings {
    Bindings::new(x).with("kappa", 0.75).with("c", 0.1)
}

pub fn at(e: &Expr, x: f64) -> f64 {
    e.evaluate(&bindings(x)).unwrap()
}

/// Relative difference with a unit floor on the scale.
pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

pub fn ulps(a: f64, b: f64) -> u64 {
    if a == b {
        return 0;
    }
    let key = |v: f64| {
        let bits = v.to_bits() as i64;
        if bits < 0 { i64::MIN - bits } else { bits }
    };
    key(a).abs_diff(key(b))
}

/// Random expressions that are finite and smooth for every real `x` in
/// `[-2, 2]`.
pub fn smooth_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::x()),
        (0.25f64..2.0).prop_map(Expr::constant),
        Just(Expr::named("kappa")),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| a / (Expr::one() + b.clone() * b)),
            inner.clone().prop_map(|a| -a),
            (inner.clone(), 2i32..4).prop_map(|(a, n)| a.powi(n)),
            (
                prop_oneof![Just(Func::Sin), Just(Func::Cos), Just(Func::Tanh)],
                inner.clone()
            )
                .prop_map(|(f, a)| Expr::apply(f, a)),
            inner.clone().prop_map(|a| Expr::apply(Func::Exp, Expr::apply(Func::Tanh, a))),
            inner.clone().prop_map(|a| Expr::apply(Func::Sqrt, Expr::constant(2.0) + a.clone() * a)),
            inner
                .clone()
                .prop_map(|a| Expr::apply(Func::Ln, Expr::constant(2.0) + Expr::apply(Func::Sin, a))),
        ]
    })
}
