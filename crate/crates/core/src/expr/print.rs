//! Fully parenthesized printing. The output parses back to an expression that
//! evaluates bit-for-bit identically.

use core::fmt::{self, Write};

use super::{Exponent, Expr, Node};

fn write_number(f: &mut fmt::Formatter<'_>, v: f64) -> fmt::Result {
    // `{:?}` is the shortest representation that round-trips through `str::parse`;
    // small whole numbers drop the trailing `.0`.
    let a = libm::fabs(v);
    let whole = libm::trunc(a) == a && a < 1e15;
    match (v.is_sign_negative(), whole) {
        (true, true) => write!(f, "(-{})", a),
        (true, false) => write!(f, "(-{:?})", a),
        (false, true) => write!(f, "{}", a),
        (false, false) => write!(f, "{:?}", a),
    }
}

fn write_join(f: &mut fmt::Formatter<'_>, items: &[Expr], sep: &str, empty: &str) -> fmt::Result {
    if items.is_empty() {
        return f.write_str(empty);
    }
    f.write_char('(')?;
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{}", e)?;
    }
    f.write_char(')')
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Constant(v) => write_number(f, *v),
            Node::NamedConstant(name) => f.write_str(name),
            Node::Variable => f.write_char('x'),
            Node::Negate(a) => write!(f, "(-{})", a),
            Node::Add(terms) => write_join(f, terms, " + ", "0"),
            Node::Multiply(factors) => write_join(f, factors, "*", "1"),
            Node::Divide([n, d]) => write!(f, "({}/{})", n, d),
            Node::Power(base, exp) => {
                if matches!(base.node(), Node::Power(..)) {
                    write!(f, "({})", base)?;
                } else {
                    write!(f, "{}", base)?;
                }
                match exp {
                    Exponent::Int(n) if *n >= 0 => write!(f, "^{}", n),
                    Exponent::Int(n) => write!(f, "^({})", n),
                    Exponent::Real(r) => {
                        f.write_str("^(")?;
                        write_number(f, *r)?;
                        f.write_char(')')
                    }
                }
            }
            Node::Apply(func, arg) => write!(f, "{}({})", func, arg),
        }
    }
}
