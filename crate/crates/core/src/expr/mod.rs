//! Symbolic expressions in one spatial variable `x` plus named real constants.
//!
//! An [`Expr`] is an immutable, reference-counted tree. Subtrees may be shared
//! between parents, so the structure is really a DAG; every traversal in this
//! module (differentiation, simplification, compilation for evaluation)
//! memoizes on node identity so shared subtrees are visited once.

mod diff;
mod eval;
mod parse;
mod print;
mod simplify;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

pub use eval::{evaluate, EvalError, Evaluator, Program};
pub use parse::{parse, ParseError};

/// Elementary functions understood by the parser, evaluator and differentiator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Ln,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 9] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Ln,
        Func::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == name)
    }

    /// Applies the function without domain checks.
    pub fn apply(self, v: f64) -> f64 {
        match self {
            Func::Sin => libm::sin(v),
            Func::Cos => libm::cos(v),
            Func::Tan => libm::tan(v),
            Func::Sinh => libm::sinh(v),
            Func::Cosh => libm::cosh(v),
            Func::Tanh => libm::tanh(v),
            Func::Exp => libm::exp(v),
            Func::Ln => libm::log(v),
            Func::Sqrt => libm::sqrt(v),
        }
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent of a [`Node::Power`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Int(i32),
    Real(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Constant(f64),
    NamedConstant(String),
    Variable,
    Negate(Expr),
    Add(Vec<Expr>),
    Multiply(Vec<Expr>),
    /// `[numerator, denominator]`
    Divide([Expr; 2]),
    Power(Expr, Exponent),
    Apply(Func, Expr),
}

/// Immutable symbolic expression. Cloning is cheap (reference count bump).
#[derive(Clone, PartialEq)]
pub struct Expr(Arc<Node>);

impl Expr {
    pub fn new(node: Node) -> Expr {
        if let Node::Divide([_, den]) = &node {
            debug_assert!(
                den.as_constant() != Some(0.0),
                "division by the literal constant 0"
            );
        }
        Expr(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn constant(v: f64) -> Expr {
        Expr::new(Node::Constant(v))
    }

    pub fn zero() -> Expr {
        Expr::constant(0.0)
    }

    pub fn one() -> Expr {
        Expr::constant(1.0)
    }

    pub fn x() -> Expr {
        Expr::new(Node::Variable)
    }

    pub fn named(name: impl Into<String>) -> Expr {
        Expr::new(Node::NamedConstant(name.into()))
    }

    pub fn sum(terms: Vec<Expr>) -> Expr {
        Expr::new(Node::Add(terms))
    }

    pub fn product(factors: Vec<Expr>) -> Expr {
        Expr::new(Node::Multiply(factors))
    }

    pub fn quotient(num: Expr, den: Expr) -> Expr {
        Expr::new(Node::Divide([num, den]))
    }

    pub fn powi(self, n: i32) -> Expr {
        Expr::new(Node::Power(self, Exponent::Int(n)))
    }

    pub fn powf(self, r: f64) -> Expr {
        Expr::new(Node::Power(self, Exponent::Real(r)))
    }

    pub fn apply(func: Func, arg: Expr) -> Expr {
        Expr::new(Node::Apply(func, arg))
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self.node() {
            Node::Constant(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_constant() == Some(0.0)
    }

    /// Identity of the shared node; equal for clones of the same expression.
    pub(crate) fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn ptr_eq(&self, other: &Expr) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn children(&self) -> &[Expr] {
        match self.node() {
            Node::Constant(_) | Node::NamedConstant(_) | Node::Variable => &[],
            Node::Negate(a) | Node::Power(a, _) | Node::Apply(_, a) => core::slice::from_ref(a),
            Node::Add(v) | Node::Multiply(v) => v,
            Node::Divide(nd) => nd,
        }
    }

    /// Number of distinct nodes reachable from this expression.
    pub fn dag_size(&self) -> usize {
        let mut seen = BTreeMap::new();
        let mut stack = alloc::vec![self.clone()];
        while let Some(e) = stack.pop() {
            if seen.insert(e.id(), ()).is_some() {
                continue;
            }
            stack.extend(e.children().iter().cloned());
        }
        seen.len()
    }

    /// Names of all named constants that occur in the expression, sorted.
    pub fn constant_names(&self) -> Vec<String> {
        let mut seen = BTreeMap::new();
        let mut names = BTreeMap::new();
        let mut stack = alloc::vec![self.clone()];
        while let Some(e) = stack.pop() {
            if seen.insert(e.id(), ()).is_some() {
                continue;
            }
            match e.node() {
                Node::NamedConstant(n) => {
                    names.insert(n.clone(), ());
                }
                _ => stack.extend(e.children().iter().cloned()),
            }
        }
        names.into_keys().collect()
    }

    /// `order`-th derivative with respect to `x`.
    pub fn differentiate(&self, order: u32) -> Expr {
        diff::differentiate(self, order)
    }

    pub fn simplify(&self) -> Expr {
        simplify::simplify(self)
    }

    /// Evaluates at the point given by `bindings`.
    pub fn evaluate(&self, bindings: &Bindings) -> Result<f64, EvalError> {
        eval::evaluate(self, bindings)
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self.node(), f)
    }
}

impl From<f64> for Expr {
    fn from(v: f64) -> Expr {
        Expr::constant(v)
    }
}

impl core::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::sum(alloc::vec![self, rhs])
    }
}

impl core::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::sum(alloc::vec![self, -rhs])
    }
}

impl core::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::product(alloc::vec![self, rhs])
    }
}

impl core::ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::quotient(self, rhs)
    }
}

impl core::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::new(Node::Negate(self))
    }
}

/// Numeric values for `x` and for the named constants of an expression.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Bindings {
    pub x: f64,
    pub constants: BTreeMap<String, f64>,
}

impl Bindings {
    pub fn new(x: f64) -> Bindings {
        Bindings {
            x,
            constants: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: impl Into<String>, value: f64) -> Bindings {
        self.constants.insert(name.into(), value);
        self
    }

    pub fn set(&mut self, name: impl Into<String>, value: f64) {
        self.constants.insert(name.into(), value);
    }

    pub fn at(&self, x: f64) -> Bindings {
        Bindings {
            x,
            constants: self.constants.clone(),
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.constants.get(name).copied()
    }
}

/// Integer power by binary exponentiation; negative exponents invert.
pub fn powi(base: f64, n: i32) -> f64 {
    let mut e = n.unsigned_abs();
    let mut b = base;
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= b;
        }
        e >>= 1;
        if e > 0 {
            b *= b;
        }
    }
    if n < 0 {
        1.0 / acc
    } else {
        acc
    }
}
