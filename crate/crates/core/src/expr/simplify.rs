//! Local algebraic simplification.
//!
//! Rules: constant folding of arithmetic, `0*a -> 0`, `1*a -> a`, `a+0 -> a`,
//! `a^1 -> a`, `a^0 -> 1` (a not the literal 0), `--a -> a`, `(a^m)^n -> a^(mn)`
//! for integer exponents, flattening of nested sums and products, and
//! collection of like terms (`2*M + 3*M -> 5*M`, `a * a^2 -> a^3`).
//! Function applications are never folded, so `sqrt(209)` stays symbolic.
//!
//! Rebuilt nodes are interned for the duration of one call: structurally
//! identical results come back as the same shared node.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{powi, Exponent, Expr, Func, Node};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Const(u64),
    Name(String),
    X,
    Neg(usize),
    Add(Vec<usize>),
    Mul(Vec<usize>),
    Div(usize, usize),
    PowI(usize, i32),
    PowF(usize, u64),
    Func(Func, usize),
}

#[derive(Default)]
struct Simplifier {
    memo: BTreeMap<usize, Expr>,
    interned: BTreeMap<Key, Expr>,
}

pub(super) fn simplify(e: &Expr) -> Expr {
    let mut s = Simplifier::default();
    s.run(e)
}

impl Simplifier {
    fn intern(&mut self, node: Node) -> Expr {
        let key = match &node {
            Node::Constant(v) => Key::Const(v.to_bits()),
            Node::NamedConstant(n) => Key::Name(n.clone()),
            Node::Variable => Key::X,
            Node::Negate(a) => Key::Neg(a.id()),
            Node::Add(v) => Key::Add(v.iter().map(Expr::id).collect()),
            Node::Multiply(v) => Key::Mul(v.iter().map(Expr::id).collect()),
            Node::Divide([n, d]) => Key::Div(n.id(), d.id()),
            Node::Power(b, Exponent::Int(n)) => Key::PowI(b.id(), *n),
            Node::Power(b, Exponent::Real(r)) => Key::PowF(b.id(), r.to_bits()),
            Node::Apply(f, a) => Key::Func(*f, a.id()),
        };
        self.interned
            .entry(key)
            .or_insert_with(|| Expr::new(node))
            .clone()
    }

    fn constant(&mut self, v: f64) -> Expr {
        self.intern(Node::Constant(v))
    }

    fn run(&mut self, e: &Expr) -> Expr {
        // Post-order over the DAG without recursion.
        let mut stack: Vec<(Expr, bool)> = alloc::vec![(e.clone(), false)];
        while let Some((cur, expanded)) = stack.pop() {
            if self.memo.contains_key(&cur.id()) {
                continue;
            }
            if !expanded {
                stack.push((cur.clone(), true));
                for c in cur.children() {
                    if !self.memo.contains_key(&c.id()) {
                        stack.push((c.clone(), false));
                    }
                }
                continue;
            }
            let out = self.rewrite(&cur);
            self.memo.insert(cur.id(), out);
        }
        self.memo[&e.id()].clone()
    }

    fn done(&self, e: &Expr) -> Expr {
        self.memo[&e.id()].clone()
    }

    fn rewrite(&mut self, e: &Expr) -> Expr {
        match e.node() {
            Node::Constant(v) => self.constant(*v),
            Node::NamedConstant(n) => self.intern(Node::NamedConstant(n.clone())),
            Node::Variable => self.intern(Node::Variable),
            Node::Negate(a) => {
                let a = self.done(a);
                self.negate(a)
            }
            Node::Add(terms) => {
                let terms: Vec<Expr> = terms.iter().map(|t| self.done(t)).collect();
                self.sum(terms)
            }
            Node::Multiply(factors) => {
                let factors: Vec<Expr> = factors.iter().map(|f| self.done(f)).collect();
                self.product(factors)
            }
            Node::Divide([n, d]) => {
                let n = self.done(n);
                let sd = self.done(d);
                if sd.is_zero() {
                    // keep the unfolded denominator: a literal zero may not appear there
                    return self.intern(Node::Divide([n, d.clone()]));
                }
                if n.is_zero() {
                    return n;
                }
                if sd.as_constant() == Some(1.0) {
                    return n;
                }
                if let (Some(a), Some(b)) = (n.as_constant(), sd.as_constant()) {
                    return self.constant(a / b);
                }
                self.intern(Node::Divide([n, sd]))
            }
            Node::Power(base, exp) => {
                let base = self.done(base);
                self.power(base, *exp)
            }
            Node::Apply(func, arg) => {
                let arg = self.done(arg);
                self.intern(Node::Apply(*func, arg))
            }
        }
    }

    fn negate(&mut self, a: Expr) -> Expr {
        match a.node() {
            Node::Constant(v) => self.constant(-v),
            Node::Negate(inner) => inner.clone(),
            _ => self.intern(Node::Negate(a)),
        }
    }

    /// Splits a simplified term into `(numeric coefficient, body)`.
    fn split_coefficient(&mut self, t: &Expr) -> (f64, Option<Expr>) {
        match t.node() {
            Node::Constant(v) => (*v, None),
            Node::Negate(inner) => {
                let (c, body) = self.split_coefficient(inner);
                (-c, body)
            }
            Node::Multiply(f) if f.len() >= 2 => match f[0].as_constant() {
                Some(c) if f.len() == 2 => (c, Some(f[1].clone())),
                Some(c) => (c, Some(self.intern(Node::Multiply(f[1..].to_vec())))),
                None => (1.0, Some(t.clone())),
            },
            _ => (1.0, Some(t.clone())),
        }
    }

    fn sum(&mut self, terms: Vec<Expr>) -> Expr {
        // Flatten, then collect like terms `a*M + b*M -> (a+b)*M` in order of
        // first appearance. Folded constants sit where the first one was.
        let mut constant: Option<f64> = None;
        let mut constant_at = 0;
        let mut bodies: Vec<(Expr, f64)> = Vec::new();
        let mut slot: BTreeMap<usize, usize> = BTreeMap::new();
        let mut pending = terms;
        pending.reverse();
        while let Some(t) = pending.pop() {
            if let Node::Add(inner) = t.node() {
                pending.extend(inner.iter().rev().cloned());
                continue;
            }
            match self.split_coefficient(&t) {
                (v, None) => {
                    if constant.is_none() {
                        constant_at = bodies.len();
                    }
                    constant = Some(constant.map_or(v, |c| c + v));
                }
                (c, Some(body)) => match slot.get(&body.id()) {
                    Some(&i) => bodies[i].1 += c,
                    None => {
                        slot.insert(body.id(), bodies.len());
                        bodies.push((body, c));
                    }
                },
            }
        }
        let constant = constant.filter(|&c| c != 0.0 || bodies.iter().all(|(_, k)| *k == 0.0));
        let len = bodies.len();
        let mut flat = Vec::with_capacity(len + 1);
        for (i, (body, c)) in bodies.into_iter().enumerate() {
            if i == constant_at {
                if let Some(v) = constant {
                    flat.push(self.constant(v));
                }
            }
            if c == 0.0 {
                continue;
            }
            if c == 1.0 {
                flat.push(body);
            } else {
                let k = self.constant(c);
                flat.push(self.product(alloc::vec![k, body]));
            }
        }
        if constant_at >= len {
            if let Some(v) = constant {
                flat.push(self.constant(v));
            }
        }
        match flat.len() {
            0 => self.constant(0.0),
            1 => flat.pop().unwrap(),
            _ => self.intern(Node::Add(flat)),
        }
    }

    fn product(&mut self, factors: Vec<Expr>) -> Expr {
        // Flatten and merge integer powers of equal bases: `a * a^2 -> a^3`.
        let mut bases: Vec<(Expr, Option<i32>)> = Vec::with_capacity(factors.len());
        let mut slot: BTreeMap<usize, usize> = BTreeMap::new();
        let mut constant: Option<f64> = None;
        let mut negative = false;
        let mut pending = factors;
        pending.reverse();
        while let Some(f) = pending.pop() {
            let (base, n) = match f.node() {
                Node::Multiply(inner) => {
                    pending.extend(inner.iter().rev().cloned());
                    continue;
                }
                Node::Negate(inner) => {
                    negative = !negative;
                    pending.push(inner.clone());
                    continue;
                }
                Node::Constant(v) => {
                    constant = Some(constant.map_or(*v, |c| c * v));
                    continue;
                }
                Node::Power(b, Exponent::Int(n)) => (b.clone(), Some(*n)),
                _ => (f.clone(), Some(1)),
            };
            match slot.get(&base.id()) {
                Some(&i) => {
                    let merged = bases[i].1.zip(n).and_then(|(a, b)| a.checked_add(b));
                    match merged {
                        Some(m) => bases[i].1 = Some(m),
                        None => bases.push((f.clone(), None)),
                    }
                }
                None => {
                    slot.insert(base.id(), bases.len());
                    bases.push((base, n));
                }
            }
        }
        let mut flat = Vec::with_capacity(bases.len());
        for (base, n) in bases {
            let factor = match n {
                Some(n) => self.power(base, Exponent::Int(n)),
                None => base,
            };
            match factor.node() {
                Node::Constant(v) => constant = Some(constant.map_or(*v, |c| c * v)),
                Node::Negate(inner) => {
                    negative = !negative;
                    flat.push(inner.clone());
                }
                _ => flat.push(factor),
            }
        }
        let mut c = constant.unwrap_or(1.0);
        if c == 0.0 {
            return self.constant(0.0);
        }
        if flat.is_empty() {
            return self.constant(if negative { -c } else { c });
        }
        if negative && constant.is_some() {
            c = -c;
            negative = false;
        }
        if c == -1.0 {
            c = 1.0;
            negative = true;
        }
        if c != 1.0 {
            flat.insert(0, self.constant(c));
        }
        let body = if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            self.intern(Node::Multiply(flat))
        };
        if negative {
            self.negate(body)
        } else {
            body
        }
    }

    fn power(&mut self, base: Expr, exp: Exponent) -> Expr {
        match exp {
            Exponent::Int(1) => return base,
            Exponent::Real(1.0) => return base,
            Exponent::Int(0) if !base.is_zero() => return self.constant(1.0),
            Exponent::Real(r) if r == 0.0 && !base.is_zero() => return self.constant(1.0),
            _ => {}
        }
        if let Some(b) = base.as_constant() {
            match exp {
                Exponent::Int(n) if !(b == 0.0 && n < 0) => return self.constant(powi(b, n)),
                Exponent::Real(r) if b > 0.0 => return self.constant(libm::pow(b, r)),
                _ => {}
            }
        }
        if let (Node::Power(inner, Exponent::Int(m)), Exponent::Int(n)) = (base.node(), exp) {
            if let Some(mn) = m.checked_mul(n) {
                let inner = inner.clone();
                return self.power(inner, Exponent::Int(mn));
            }
        }
        self.intern(Node::Power(base, exp))
    }
}
