//! Symbolic differentiation with respect to `x`.
//!
//! Each pass memoizes on node identity, so a shared subtree is differentiated
//! once and its derivative is shared as well. Terms whose derivative is the
//! literal zero are dropped while building, which keeps products of
//! constants from multiplying out into dead branches.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Exponent, Expr, Func, Node};

pub(super) fn differentiate(e: &Expr, order: u32) -> Expr {
    let mut cur = e.clone();
    for _ in 0..order {
        let mut memo = BTreeMap::new();
        cur = d(&cur, &mut memo);
    }
    cur
}

fn sum(mut terms: Vec<Expr>) -> Expr {
    match terms.len() {
        0 => Expr::zero(),
        1 => terms.pop().unwrap(),
        _ => Expr::sum(terms),
    }
}

/// Product that skips unit factors.
fn product(factors: Vec<Expr>) -> Expr {
    let mut kept: Vec<Expr> = factors
        .into_iter()
        .filter(|f| f.as_constant() != Some(1.0))
        .collect();
    match kept.len() {
        0 => Expr::one(),
        1 => kept.pop().unwrap(),
        _ => Expr::product(kept),
    }
}

fn d(e: &Expr, memo: &mut BTreeMap<usize, Expr>) -> Expr {
    if let Some(done) = memo.get(&e.id()) {
        return done.clone();
    }
    let out = match e.node() {
        Node::Constant(_) | Node::NamedConstant(_) => Expr::zero(),
        Node::Variable => Expr::one(),
        Node::Negate(a) => {
            let da = d(a, memo);
            if da.is_zero() {
                da
            } else {
                -da
            }
        }
        Node::Add(terms) => sum(
            terms
                .iter()
                .map(|t| d(t, memo))
                .filter(|dt| !dt.is_zero())
                .collect(),
        ),
        Node::Multiply(factors) => {
            let mut terms = Vec::new();
            for (i, f) in factors.iter().enumerate() {
                let df = d(f, memo);
                if df.is_zero() {
                    continue;
                }
                let mut parts = factors.clone();
                parts[i] = df;
                terms.push(product(parts));
            }
            sum(terms)
        }
        Node::Divide([num, den]) => {
            let dn = d(num, memo);
            let dd = d(den, memo);
            match (dn.is_zero(), dd.is_zero()) {
                (true, true) => Expr::zero(),
                (false, true) => Expr::quotient(dn, den.clone()),
                (true, false) => -Expr::quotient(
                    product(alloc::vec![num.clone(), dd]),
                    den.clone().powi(2),
                ),
                (false, false) => Expr::quotient(
                    Expr::sum(alloc::vec![
                        product(alloc::vec![dn, den.clone()]),
                        -product(alloc::vec![num.clone(), dd]),
                    ]),
                    den.clone().powi(2),
                ),
            }
        }
        Node::Power(base, exp) => {
            let db = d(base, memo);
            match *exp {
                _ if db.is_zero() => Expr::zero(),
                Exponent::Int(0) => Expr::zero(),
                Exponent::Int(1) => db,
                Exponent::Int(n) => {
                    let lowered = if n == 2 {
                        base.clone()
                    } else {
                        base.clone().powi(n - 1)
                    };
                    product(alloc::vec![Expr::constant(n as f64), lowered, db])
                }
                Exponent::Real(r) => product(alloc::vec![
                    Expr::constant(r),
                    base.clone().powf(r - 1.0),
                    db
                ]),
            }
        }
        Node::Apply(func, arg) => {
            let da = d(arg, memo);
            if da.is_zero() {
                Expr::zero()
            } else {
                let outer = match func {
                    Func::Sin => Expr::apply(Func::Cos, arg.clone()),
                    Func::Cos => -Expr::apply(Func::Sin, arg.clone()),
                    Func::Tan => Expr::sum(alloc::vec![Expr::one(), e.clone().powi(2)]),
                    Func::Sinh => Expr::apply(Func::Cosh, arg.clone()),
                    Func::Cosh => Expr::apply(Func::Sinh, arg.clone()),
                    Func::Tanh => Expr::sum(alloc::vec![Expr::one(), -e.clone().powi(2)]),
                    Func::Exp => e.clone(),
                    Func::Ln => Expr::quotient(Expr::one(), arg.clone()),
                    Func::Sqrt => Expr::quotient(
                        Expr::one(),
                        Expr::product(alloc::vec![Expr::constant(2.0), e.clone()]),
                    ),
                };
                product(alloc::vec![outer, da])
            }
        }
    };
    memo.insert(e.id(), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use crate::expr::{parse, Bindings, Expr};

    #[test]
    fn derivative_of_x_is_one() {
        assert_eq!(Expr::x().differentiate(1), Expr::one());
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        assert_eq!(Expr::constant(5.0).differentiate(1), Expr::zero());
        assert_eq!(Expr::named("c").differentiate(3), Expr::zero());
    }

    #[test]
    fn second_derivative_of_square() {
        let e = parse("x^2").unwrap().differentiate(2);
        for x in [-3.0, 0.0, 1.5] {
            assert_eq!(e.evaluate(&Bindings::new(x)).unwrap(), 2.0);
        }
    }

    #[test]
    fn closed_forms() {
        let cases: &[(&str, fn(f64) -> f64)] = &[
            ("sin(x)", |x| libm::cos(x)),
            ("cos(x)", |x| -libm::sin(x)),
            ("tan(x)", |x| 1.0 / (libm::cos(x) * libm::cos(x))),
            ("sinh(x)", |x| libm::cosh(x)),
            ("cosh(x)", |x| libm::sinh(x)),
            ("tanh(x)", |x| 1.0 - libm::tanh(x) * libm::tanh(x)),
            ("exp(2*x)", |x| 2.0 * libm::exp(2.0 * x)),
            ("ln(x)", |x| 1.0 / x),
            ("sqrt(x)", |x| 0.5 / libm::sqrt(x)),
            ("1/x", |x| -1.0 / (x * x)),
            ("x^2.5", |x| 2.5 * libm::pow(x, 1.5)),
            ("x^(-3)", |x| -3.0 / (x * x * x * x)),
        ];
        for (src, exact) in cases {
            let de = parse(src).unwrap().differentiate(1);
            for x in [0.3, 0.9, 1.7] {
                let got = de.evaluate(&Bindings::new(x)).unwrap();
                let want = exact(x);
                assert!((got - want).abs() <= 1e-13 * want.abs().max(1.0), "{src} at {x}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn shared_subtrees_stay_shared() {
        let t = parse("tanh(kappa*(x - x0))").unwrap();
        let f = Expr::product(alloc::vec![t.clone().powi(3), t.clone()]);
        let d4 = f.differentiate(4);
        // Without sharing this tree would have thousands of nodes.
        assert!(d4.dag_size() < 2000, "{}", d4.dag_size());
    }
}
