//! Numeric evaluation.
//!
//! Expressions are compiled into a flat [`Program`]: a topologically ordered
//! list of instructions in which structurally identical subtrees share one
//! slot. A program can hold several roots (e.g. every coefficient of a
//! series) so common subexpressions are computed once per point.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{powi, Bindings, Exponent, Expr, Func, Node};

#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    UnboundConstant(String),
    DivisionByZero,
    /// Operation applied outside its real domain, with the offending argument.
    Domain { op: &'static str, value: f64 },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundConstant(name) => write!(f, "unbound constant `{}`", name),
            EvalError::DivisionByZero => f.write_str("division by zero"),
            EvalError::Domain { op, value } => {
                write!(f, "domain error: {} applied to {:e}", op, value)
            }
        }
    }
}

impl core::error::Error for EvalError {}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Instr {
    Const(f64),
    Name(u32),
    X,
    Neg(u32),
    Add { start: u32, len: u32 },
    Mul { start: u32, len: u32 },
    Div(u32, u32),
    PowI(u32, i32),
    PowF(u32, f64),
    Func(Func, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Const(u64),
    Name(u32),
    X,
    Neg(u32),
    Add(Vec<u32>),
    Mul(Vec<u32>),
    Div(u32, u32),
    PowI(u32, i32),
    PowF(u32, u64),
    Func(Func, u32),
}

/// Compiled form of one or more expressions.
#[derive(Debug, Clone)]
pub struct Program {
    instrs: Vec<Instr>,
    args: Vec<u32>,
    names: Vec<String>,
    roots: Vec<u32>,
}

struct Compiler {
    instrs: Vec<Instr>,
    args: Vec<u32>,
    names: Vec<String>,
    name_index: BTreeMap<String, u32>,
    by_id: BTreeMap<usize, u32>,
    by_key: BTreeMap<Key, u32>,
}

impl Compiler {
    fn emit(&mut self, key: Key) -> u32 {
        if let Some(&slot) = self.by_key.get(&key) {
            return slot;
        }
        let instr = match &key {
            Key::Const(bits) => Instr::Const(f64::from_bits(*bits)),
            Key::Name(i) => Instr::Name(*i),
            Key::X => Instr::X,
            Key::Neg(a) => Instr::Neg(*a),
            Key::Add(v) | Key::Mul(v) => {
                let start = self.args.len() as u32;
                self.args.extend_from_slice(v);
                let len = v.len() as u32;
                if matches!(key, Key::Add(_)) {
                    Instr::Add { start, len }
                } else {
                    Instr::Mul { start, len }
                }
            }
            Key::Div(a, b) => Instr::Div(*a, *b),
            Key::PowI(a, n) => Instr::PowI(*a, *n),
            Key::PowF(a, bits) => Instr::PowF(*a, f64::from_bits(*bits)),
            Key::Func(func, a) => Instr::Func(*func, *a),
        };
        let slot = self.instrs.len() as u32;
        self.instrs.push(instr);
        self.by_key.insert(key, slot);
        slot
    }

    fn name(&mut self, name: &str) -> u32 {
        if let Some(&i) = self.name_index.get(name) {
            return i;
        }
        let i = self.names.len() as u32;
        self.names.push(String::from(name));
        self.name_index.insert(String::from(name), i);
        i
    }

    fn compile(&mut self, root: &Expr) -> u32 {
        // Iterative post-order so deep trees cannot overflow the stack.
        let mut stack: Vec<(Expr, bool)> = alloc::vec![(root.clone(), false)];
        while let Some((e, expanded)) = stack.pop() {
            if self.by_id.contains_key(&e.id()) {
                continue;
            }
            if !expanded {
                stack.push((e.clone(), true));
                for c in e.children() {
                    if !self.by_id.contains_key(&c.id()) {
                        stack.push((c.clone(), false));
                    }
                }
                continue;
            }
            let slot_of = |c: &Expr, by_id: &BTreeMap<usize, u32>| by_id[&c.id()];
            let key = match e.node() {
                Node::Constant(v) => Key::Const(v.to_bits()),
                Node::NamedConstant(n) => Key::Name(self.name(n)),
                Node::Variable => Key::X,
                Node::Negate(a) => Key::Neg(slot_of(a, &self.by_id)),
                Node::Add(v) if v.is_empty() => Key::Const(0f64.to_bits()),
                Node::Multiply(v) if v.is_empty() => Key::Const(1f64.to_bits()),
                Node::Add(v) => Key::Add(v.iter().map(|c| slot_of(c, &self.by_id)).collect()),
                Node::Multiply(v) => {
                    Key::Mul(v.iter().map(|c| slot_of(c, &self.by_id)).collect())
                }
                Node::Divide([n, d]) => Key::Div(slot_of(n, &self.by_id), slot_of(d, &self.by_id)),
                Node::Power(b, Exponent::Int(n)) => Key::PowI(slot_of(b, &self.by_id), *n),
                Node::Power(b, Exponent::Real(r)) => {
                    Key::PowF(slot_of(b, &self.by_id), r.to_bits())
                }
                Node::Apply(func, a) => Key::Func(*func, slot_of(a, &self.by_id)),
            };
            let slot = self.emit(key);
            self.by_id.insert(e.id(), slot);
        }
        self.by_id[&root.id()]
    }
}

impl Program {
    pub fn compile(roots: &[Expr]) -> Program {
        let mut c = Compiler {
            instrs: Vec::new(),
            args: Vec::new(),
            names: Vec::new(),
            name_index: BTreeMap::new(),
            by_id: BTreeMap::new(),
            by_key: BTreeMap::new(),
        };
        let roots = roots.iter().map(|r| c.compile(r)).collect();
        Program {
            instrs: c.instrs,
            args: c.args,
            names: c.names,
            roots,
        }
    }

    /// Number of distinct instructions after common-subexpression merging.
    pub fn len(&self) -> usize {
        self.instrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instrs.is_empty()
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    /// Resolves named constants against `bindings` (the `x` field is ignored).
    pub fn bind(&self, bindings: &Bindings) -> Result<Evaluator<'_>, EvalError> {
        let values = self
            .names
            .iter()
            .map(|n| bindings.get(n).ok_or_else(|| EvalError::UnboundConstant(n.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Evaluator {
            program: self,
            names: values,
            slots: alloc::vec![0.0; self.instrs.len()],
        })
    }
}

/// A [`Program`] with its constants bound, reusable across points.
#[derive(Debug, Clone)]
pub struct Evaluator<'p> {
    program: &'p Program,
    names: Vec<f64>,
    slots: Vec<f64>,
}

impl Evaluator<'_> {
    /// Evaluates every root at `x`; read results with [`Evaluator::root`].
    pub fn run(&mut self, x: f64) -> Result<(), EvalError> {
        let p = self.program;
        for (i, instr) in p.instrs.iter().enumerate() {
            let s = &self.slots;
            let v = match *instr {
                Instr::Const(v) => v,
                Instr::Name(n) => self.names[n as usize],
                Instr::X => x,
                Instr::Neg(a) => -s[a as usize],
                Instr::Add { start, len } => {
                    let args = &p.args[start as usize..(start + len) as usize];
                    let mut acc = s[args[0] as usize];
                    for &a in &args[1..] {
                        acc += s[a as usize];
                    }
                    acc
                }
                Instr::Mul { start, len } => {
                    let args = &p.args[start as usize..(start + len) as usize];
                    let mut acc = s[args[0] as usize];
                    for &a in &args[1..] {
                        acc *= s[a as usize];
                    }
                    acc
                }
                Instr::Div(a, b) => {
                    let den = s[b as usize];
                    if den == 0.0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    s[a as usize] / den
                }
                Instr::PowI(a, n) => {
                    let base = s[a as usize];
                    if n < 0 && base == 0.0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    powi(base, n)
                }
                Instr::PowF(a, r) => {
                    let base = s[a as usize];
                    if base < 0.0 {
                        return Err(EvalError::Domain { op: "pow", value: base });
                    }
                    if base == 0.0 && r < 0.0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    libm::pow(base, r)
                }
                Instr::Func(func, a) => {
                    let arg = s[a as usize];
                    match func {
                        Func::Ln if arg <= 0.0 => {
                            return Err(EvalError::Domain { op: "ln", value: arg })
                        }
                        Func::Sqrt if arg < 0.0 => {
                            return Err(EvalError::Domain { op: "sqrt", value: arg })
                        }
                        _ => func.apply(arg),
                    }
                }
            };
            self.slots[i] = v;
        }
        Ok(())
    }

    /// Value of root `i` from the last successful [`Evaluator::run`].
    pub fn root(&self, i: usize) -> f64 {
        self.slots[self.program.roots[i] as usize]
    }

    pub fn eval(&mut self, x: f64) -> Result<f64, EvalError> {
        self.run(x)?;
        Ok(self.root(0))
    }
}

/// Evaluates a single expression at `bindings.x`.
pub fn evaluate(e: &Expr, bindings: &Bindings) -> Result<f64, EvalError> {
    let program = Program::compile(core::slice::from_ref(e));
    program.bind(bindings)?.eval(bindings.x)
}
