//! The RDTM iteration: from `u_t + Σ c_j ∂^{m_j} u + Σ a_i u^{β_i} ∂^{d_i} u = 0`
//! the transform rules give
//!
//! ```text
//! (k+1) U_{k+1} = −Σ_j c_j ∂^{m_j} U_k − Σ_i a_i Σ_{r=0}^{k} P^{(β_i)}_r ∂^{d_i} U_{k−r}
//! ```
//!
//! where `P^{(β)}` is the spectrum of `u^β`. Each new coefficient is simplified
//! once after it is assembled.

use alloc::vec::Vec;

use super::transform::power_spectrum;
use super::{EngineError, NonlinearTerm, PdeModel, SpectrumSeries, MAX_ORDER};
use crate::expr::Expr;

/// Spatial derivatives of every coefficient, computed once and reused by
/// later steps.
#[derive(Debug, Default)]
struct Derivatives {
    // by_coeff[j][m] = ∂^m U_j
    by_coeff: Vec<Vec<Expr>>,
}

impl Derivatives {
    fn get(&mut self, coeffs: &[Expr], j: usize, m: u32) -> Expr {
        while self.by_coeff.len() <= j {
            let next = self.by_coeff.len();
            self.by_coeff.push(alloc::vec![coeffs[next].clone()]);
        }
        let chain = &mut self.by_coeff[j];
        while chain.len() <= m as usize {
            let next = chain.last().unwrap().differentiate(1).simplify();
            chain.push(next);
        }
        chain[m as usize].clone()
    }
}

/// Linear terms sorted by derivative order, with `u^0` nonlinear terms folded
/// in, followed by the remaining nonlinear terms.
fn normalized(model: &PdeModel) -> (Vec<(f64, u32)>, Vec<NonlinearTerm>) {
    let mut linear: Vec<(f64, u32)> = model
        .linear
        .iter()
        .map(|t| (t.coefficient, t.derivative_order))
        .chain(
            model
                .nonlinear
                .iter()
                .filter(|t| t.u_power == 0)
                .map(|t| (t.coefficient, t.derivative_order)),
        )
        .filter(|&(c, _)| c != 0.0)
        .collect();
    linear.sort_by_key(|&(_, m)| m);
    let nonlinear = model
        .nonlinear
        .iter()
        .filter(|t| t.u_power > 0 && t.coefficient != 0.0)
        .copied()
        .collect();
    (linear, nonlinear)
}

fn step(
    coeffs: &[Expr],
    model: &PdeModel,
    k: usize,
    derivs: &mut Derivatives,
) -> Expr {
    let (linear, nonlinear) = normalized(model);
    let mut terms = Vec::new();
    for (c, m) in linear {
        terms.push(Expr::constant(c) * derivs.get(coeffs, k, m));
    }
    for term in &nonlinear {
        let powers = power_spectrum(coeffs, term.u_power, k);
        let conv: Vec<Expr> = (0..=k)
            .filter(|&r| !powers[r].is_zero())
            .map(|r| powers[r].clone() * derivs.get(coeffs, k - r, term.derivative_order))
            .collect();
        terms.push(Expr::constant(term.coefficient) * Expr::sum(conv));
    }
    let scale = Expr::constant(-1.0 / (k as f64 + 1.0));
    (scale * Expr::sum(terms)).simplify()
}

/// `U_{k+1}` from `U_0..U_k` of `u`.
pub fn recurrence_step(
    u: &SpectrumSeries,
    model: &PdeModel,
    k: usize,
) -> Result<Expr, EngineError> {
    model.validate()?;
    u.coefficient(k)?;
    Ok(step(u.coefficients(), model, k, &mut Derivatives::default()))
}

/// Series of order `n` with `U_0 = f` and `U_{k+1}` from [`recurrence_step`].
/// `U_0` is stored exactly as given.
pub fn build_series(model: &PdeModel, f: &Expr, n: usize) -> Result<SpectrumSeries, EngineError> {
    model.validate()?;
    if n > MAX_ORDER {
        return Err(EngineError::SeriesOrderTooHigh {
            order: n,
            cap: MAX_ORDER,
        });
    }
    let mut series = SpectrumSeries::new(alloc::vec![f.clone()]);
    let mut derivs = Derivatives::default();
    for k in 0..n {
        let next = step(series.coefficients(), model, k, &mut derivs);
        series.push(next);
    }
    Ok(series)
}
