//! Recursive-descent parser for infix expressions.
//!
//! Precedence from loosest to tightest: `+ -`, `* /`, unary minus, `^`
//! (right-associative), then atoms: numbers, identifiers, `f(expr)` and
//! parenthesized groups. The identifier `x` is the spatial variable; every
//! other identifier not followed by `(` is a named constant.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{Expr, Func, Node};

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    /// Found something other than what the grammar allows here.
    Expected { expected: String, found: String },
    UnknownFunction(String),
    InvalidNumber(String),
    DivisionByLiteralZero,
}

/// Parse failure located at a byte offset of the input.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Expected { expected, found } => write!(
                f,
                "syntax error at byte {}: expected {}, found {}",
                self.offset, expected, found
            ),
            ParseErrorKind::UnknownFunction(name) => {
                write!(f, "unknown function `{}` at byte {}", name, self.offset)
            }
            ParseErrorKind::InvalidNumber(text) => {
                write!(f, "invalid number `{}` at byte {}", text, self.offset)
            }
            ParseErrorKind::DivisionByLiteralZero => {
                write!(f, "division by literal zero at byte {}", self.offset)
            }
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num { value: f64, integral: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num { .. } => "number".to_string(),
            Tok::Ident(name) => alloc::format!("identifier `{}`", name),
            Tok::Plus => "`+`".to_string(),
            Tok::Minus => "`-`".to_string(),
            Tok::Star => "`*`".to_string(),
            Tok::Slash => "`/`".to_string(),
            Tok::Caret => "`^`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
            Tok::End => "end of input".to_string(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                let mut integral = true;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    integral = false;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        integral = false;
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let s = &text[start..i];
                let value: f64 = s.parse().map_err(|_| ParseError {
                    offset: start,
                    kind: ParseErrorKind::InvalidNumber(s.to_string()),
                })?;
                toks.push((start, Tok::Num { value, integral }));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: start,
                    kind: ParseErrorKind::Expected {
                        expected: "an expression token".to_string(),
                        found: alloc::format!("`{}`", ch),
                    },
                });
            }
        };
        toks.push((start, tok));
        i += 1;
    }
    toks.push((text.len(), Tok::End));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

/// Parses infix text into an [`Expr`].
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    p.expect(Tok::End, "operator or end of input")?;
    Ok(e)
}

/// An operand plus whether it was written as an integer literal (possibly negated),
/// which decides between integer and real exponents.
struct Operand {
    expr: Expr,
    int_literal: Option<i64>,
}

impl Operand {
    fn plain(expr: Expr) -> Operand {
        Operand {
            expr,
            int_literal: None,
        }
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> ParseError {
        ParseError {
            offset: self.offset(),
            kind: ParseErrorKind::Expected {
                expected: expected.to_string(),
                found: self.peek().describe(),
            },
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(expected))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = alloc::vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(-self.term()?);
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?.expr;
        let mut factors: Vec<Expr> = Vec::new();
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    factors.push(self.unary()?.expr);
                }
                Tok::Slash => {
                    let (at, _) = self.bump();
                    let den = self.unary()?.expr;
                    if den.is_zero() {
                        return Err(ParseError {
                            offset: at,
                            kind: ParseErrorKind::DivisionByLiteralZero,
                        });
                    }
                    if !factors.is_empty() {
                        factors.insert(0, acc);
                        acc = Expr::product(core::mem::take(&mut factors));
                    }
                    acc = Expr::quotient(acc, den);
                }
                _ => break,
            }
        }
        if !factors.is_empty() {
            factors.insert(0, acc);
            acc = Expr::product(factors);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Operand, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                let inner = self.unary()?;
                Ok(Operand {
                    expr: -inner.expr,
                    int_literal: inner.int_literal.map(|n| -n),
                })
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Operand, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exp = self.unary()?;
        let expr = match (exp.int_literal, exp.expr.node()) {
            (Some(n), _) if i32::try_from(n).is_ok() => base.expr.powi(n as i32),
            _ => match literal_value(&exp.expr) {
                Some(r) => base.expr.powf(r),
                // a^b with non-constant exponent is rewritten as exp(b ln a)
                None => Expr::apply(
                    Func::Exp,
                    Expr::product(alloc::vec![exp.expr, Expr::apply(Func::Ln, base.expr)]),
                ),
            },
        };
        Ok(Operand::plain(expr))
    }

    fn atom(&mut self) -> Result<Operand, ParseError> {
        let (at, tok) = self.bump();
        match tok {
            Tok::Num { value, integral } => Ok(Operand {
                expr: Expr::constant(value),
                int_literal: if integral && value <= i64::MAX as f64 {
                    Some(value as i64)
                } else {
                    None
                },
            }),
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    let func = Func::from_name(&name).ok_or(ParseError {
                        offset: at,
                        kind: ParseErrorKind::UnknownFunction(name),
                    })?;
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Operand::plain(Expr::apply(func, arg)))
                } else if name == "x" {
                    Ok(Operand::plain(Expr::x()))
                } else {
                    Ok(Operand::plain(Expr::named(name)))
                }
            }
            Tok::LParen => {
                let inner = self.expr_operand()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => {
                self.pos -= usize::from(tok != Tok::End);
                Err(self.error_here("number, identifier or `(`"))
            }
        }
    }

    /// Like [`Parser::expr`] but keeps integer-literal information through
    /// parentheses so `x^(-2)` stays an integer power.
    fn expr_operand(&mut self) -> Result<Operand, ParseError> {
        let start = self.pos;
        let first = self.unary()?;
        if matches!(self.peek(), Tok::RParen) {
            return Ok(first);
        }
        self.pos = start;
        Ok(Operand::plain(self.expr()?))
    }
}

/// Value of a literal or negated literal.
fn literal_value(e: &Expr) -> Option<f64> {
    match e.node() {
        Node::Constant(v) => Some(*v),
        Node::Negate(a) => literal_value(a).map(|v| -v),
        _ => None,
    }
}
