use alloc::vec::Vec;

use super::EngineError;
use crate::expr::{Bindings, EvalError, Evaluator, Expr, Program};

/// Time-spectrum functions `U_0(x), …, U_n(x)` of `u(x, t) = Σ U_k(x) t^k`,
/// where `U_k = (1/k!) ∂^k u/∂t^k` at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSeries {
    coefficients: Vec<Expr>,
}

impl SpectrumSeries {
    /// Panics if `coefficients` is empty.
    pub fn new(coefficients: Vec<Expr>) -> Self {
        assert!(!coefficients.is_empty(), "a series needs at least U_0");
        SpectrumSeries { coefficients }
    }

    /// Series whose `k`-th coefficient is the constant `values[k]`.
    pub fn from_constants(values: &[f64]) -> Self {
        SpectrumSeries::new(values.iter().map(|&v| Expr::constant(v)).collect())
    }

    /// Truncation order `n`.
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Expr] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> Result<&Expr, EngineError> {
        self.coefficients.get(k).ok_or(EngineError::IndexOutOfRange {
            index: k,
            order: self.order(),
        })
    }

    /// The first `n + 1` coefficients.
    pub fn truncated(&self, n: usize) -> SpectrumSeries {
        let n = n.min(self.order());
        SpectrumSeries::new(self.coefficients[..=n].to_vec())
    }

    pub(crate) fn push(&mut self, u: Expr) {
        self.coefficients.push(u);
    }

    /// Compiles all coefficients for repeated evaluation.
    pub fn compile(&self) -> Program {
        Program::compile(&self.coefficients)
    }
}

/// Evaluates `ũ_n(x, t)` repeatedly with the constants bound once.
#[derive(Debug, Clone)]
pub struct SeriesEvaluator<'p> {
    inner: Evaluator<'p>,
    order: usize,
}

impl<'p> SeriesEvaluator<'p> {
    pub fn new(program: &'p Program, bindings: &Bindings) -> Result<Self, EvalError> {
        let order = program.root_count() - 1;
        Ok(SeriesEvaluator {
            inner: program.bind(bindings)?,
            order,
        })
    }

    /// `U_0(x), …, U_n(x)`.
    pub fn coefficients_at(&mut self, x: f64) -> Result<Vec<f64>, EvalError> {
        self.inner.run(x)?;
        Ok((0..=self.order).map(|k| self.inner.root(k)).collect())
    }

    /// Horner sum of `U_k(x) t^k`.
    pub fn eval(&mut self, x: f64, t: f64) -> Result<f64, EvalError> {
        self.inner.run(x)?;
        let mut acc = self.inner.root(self.order);
        for k in (0..self.order).rev() {
            acc = acc * t + self.inner.root(k);
        }
        Ok(acc)
    }
}

/// `ũ_n(x, t) = Σ_{k=0}^{n} U_k(x) t^k`. Named constants come from `bindings`;
/// its `x` field is ignored in favor of the argument.
pub fn assemble(s: &SpectrumSeries, x: f64, t: f64, bindings: &Bindings) -> Result<f64, EvalError> {
    let program = s.compile();
    SeriesEvaluator::new(&program, bindings)?.eval(x, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn horner_sum() {
        let s = SpectrumSeries::new(alloc::vec![
            parse("x").unwrap(),
            parse("2").unwrap(),
            parse("x^2").unwrap()
        ]);
        let b = Bindings::default();
        assert_eq!(assemble(&s, 3.0, 0.5, &b).unwrap(), 3.0 + 1.0 + 9.0 * 0.25);
    }

    #[test]
    fn t_zero_returns_first_coefficient_exactly() {
        let f = parse("c + tanh(kappa*x)^3").unwrap();
        let s = SpectrumSeries::new(alloc::vec![f.clone(), parse("1e300*x").unwrap()]);
        let b = Bindings::new(0.0).with("c", 0.1).with("kappa", 0.3);
        for x in [-2.0, 0.0, 0.7, 13.0] {
            let direct = f.evaluate(&b.at(x)).unwrap();
            assert_eq!(assemble(&s, x, 0.0, &b).unwrap().to_bits(), direct.to_bits());
        }
    }

    #[test]
    fn out_of_range_coefficient() {
        let s = SpectrumSeries::from_constants(&[1.0, 2.0]);
        assert_eq!(
            s.coefficient(2),
            Err(EngineError::IndexOutOfRange { index: 2, order: 1 })
        );
    }
}
