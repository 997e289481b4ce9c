//! Transform rules: each function returns the `k`-th spectrum coefficient of
//! a combination of series, expressed through their coefficients.
//!
//! | function                         | `w(x, t)`            | `W_k(x)`                      |
//! |----------------------------------|----------------------|-------------------------------|
//! | [`linear_combination`]           | `u + α v`            | `U_k + α V_k`                 |
//! | [`monomial_shift`]               | `x^m t^p u`          | `x^m U_{k-p}`                 |
//! | [`cauchy_product`]               | `u v`                | `Σ_{r=0}^{k} U_r V_{k-r}`     |
//! | [`power_convolution`]            | `u^p`                | repeated Cauchy product       |
//! | [`time_derivative_transform`]    | `∂^r u / ∂t^r`       | `(k+r)!/k! · U_{k+r}`         |
//! | [`spatial_derivative`]           | `∂^m u / ∂x^m`       | `∂^m U_k / ∂x^m`              |

use alloc::vec::Vec;

use super::{EngineError, SpectrumSeries};
use crate::expr::Expr;

fn check(index: usize, order: usize) -> Result<(), EngineError> {
    if index > order {
        Err(EngineError::IndexOutOfRange { index, order })
    } else {
        Ok(())
    }
}

pub fn linear_combination(
    a: &SpectrumSeries,
    b: &SpectrumSeries,
    alpha: f64,
    k: usize,
) -> Result<Expr, EngineError> {
    let ak = a.coefficient(k)?.clone();
    let bk = b.coefficient(k)?.clone();
    Ok((ak + Expr::constant(alpha) * bk).simplify())
}

/// `Σ_{r=0}^{k} A_r B_{k-r}`, simplified.
pub fn cauchy_product(a: &SpectrumSeries, b: &SpectrumSeries, k: usize) -> Result<Expr, EngineError> {
    check(k, a.order().min(b.order()))?;
    Ok(convolve(a.coefficients(), b.coefficients(), k))
}

pub(crate) fn convolve(a: &[Expr], b: &[Expr], k: usize) -> Expr {
    let terms: Vec<Expr> = (0..=k).map(|r| a[r].clone() * b[k - r].clone()).collect();
    Expr::sum(terms).simplify()
}

/// Spectrum coefficients `0..=upto` of `u^p`.
pub(crate) fn power_spectrum(a: &[Expr], p: u32, upto: usize) -> Vec<Expr> {
    match p {
        0 => (0..=upto)
            .map(|j| if j == 0 { Expr::one() } else { Expr::zero() })
            .collect(),
        _ => {
            let mut acc: Vec<Expr> = a[..=upto].to_vec();
            for _ in 1..p {
                acc = (0..=upto).map(|j| convolve(&acc, a, j)).collect();
            }
            acc
        }
    }
}

/// `k`-th coefficient of `u^p`: `1, 0, 0, …` for `p = 0`, `A_k` for `p = 1`,
/// otherwise `p - 1` nested Cauchy products.
pub fn power_convolution(a: &SpectrumSeries, p: u32, k: usize) -> Result<Expr, EngineError> {
    check(k, a.order())?;
    Ok(power_spectrum(a.coefficients(), p, k).swap_remove(k))
}

/// `(k+r)!/k! · A_{k+r}`.
pub fn time_derivative_transform(
    a: &SpectrumSeries,
    r: u32,
    k: usize,
) -> Result<Expr, EngineError> {
    let index = k + r as usize;
    let coeff = a.coefficient(index)?.clone();
    let factor: f64 = (k + 1..=index).map(|j| j as f64).product();
    Ok((Expr::constant(factor) * coeff).simplify())
}

/// `x^m A_{k-p}`, zero when `k < p`.
pub fn monomial_shift(a: &SpectrumSeries, m: u32, p: usize, k: usize) -> Result<Expr, EngineError> {
    check(k, a.order() + p)?;
    if k < p {
        return Ok(Expr::zero());
    }
    let coeff = a.coefficient(k - p)?.clone();
    Ok((Expr::x().powi(m as i32) * coeff).simplify())
}

/// `∂^m A_k / ∂x^m`.
pub fn spatial_derivative(a: &SpectrumSeries, m: u32, k: usize) -> Result<Expr, EngineError> {
    Ok(a.coefficient(k)?.differentiate(m).simplify())
}
