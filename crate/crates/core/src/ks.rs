//! Kuramoto–Sivashinsky problem instances.
//!
//! The traveling-wave profile
//!
//! ```text
//! u(x, t) = c + A·sqrt(11/19)·(11 tanh³(κ(x − ct − x₀)) − 9 tanh(κ(x − ct − x₀)))
//! ```
//!
//! with `A = 5/19`, `c = 0.1`, `κ = sqrt(11/19)/4`, `x₀ = −30` is the
//! reference case. Note that with those values the profile is not an exact
//! solution of `u_t + u u_x + u_xx + u_xxxx = 0`; the exact soliton of that
//! equation has `A = 15/19` and `κ = sqrt(11/19)/2` (see [`KsParams::exact_soliton`]).

use alloc::vec::Vec;
use core::fmt;

use crate::engine::{LinearTerm, NonlinearTerm, PdeModel};
use crate::expr::{powi, Bindings, Expr, Func};
use crate::verify::FdSteps;

/// Preset names accepted by front ends.
pub const PRESET_KS: &str = "ks";
pub const PRESET_GENERALIZED_KS: &str = "generalized-ks";

/// Named constants used by [`ks_initial`].
pub const NAME_C: &str = "c";
pub const NAME_KAPPA: &str = "kappa";
pub const NAME_X0: &str = "x0";

#[derive(Debug, Clone, PartialEq)]
pub enum KsError {
    ZeroWaveNumber,
}

impl fmt::Display for KsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KsError::ZeroWaveNumber => f.write_str("wave number kappa must be nonzero"),
        }
    }
}

impl core::error::Error for KsError {}

/// Parameters of the traveling-wave profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsParams {
    /// Wave speed.
    pub c: f64,
    /// Wave number (nonzero).
    pub kappa: f64,
    /// Spatial offset.
    pub x0: f64,
    /// Amplitude factor in front of `sqrt(11/19)`.
    pub amplitude: f64,
}

impl Default for KsParams {
    fn default() -> Self {
        KsParams {
            c: 0.1,
            kappa: default_kappa(),
            x0: -30.0,
            amplitude: 5.0 / 19.0,
        }
    }
}

/// `sqrt(11/19)/4`
pub fn default_kappa() -> f64 {
    libm::sqrt(11.0 / 19.0) / 4.0
}

impl KsParams {
    pub fn new(c: f64, kappa: f64, x0: f64) -> Result<Self, KsError> {
        if kappa == 0.0 {
            return Err(KsError::ZeroWaveNumber);
        }
        Ok(KsParams {
            c,
            kappa,
            x0,
            ..KsParams::default()
        })
    }

    /// Amplitude `15/19` and `κ = sqrt(11/19)/2`: an exact solution of
    /// `u_t + u u_x + u_xx + u_xxxx = 0` for any `c` and `x₀`.
    pub fn exact_soliton(c: f64, x0: f64) -> Self {
        KsParams {
            c,
            kappa: libm::sqrt(11.0 / 19.0) / 2.0,
            x0,
            amplitude: 15.0 / 19.0,
        }
    }

    /// Values for the named constants of [`ks_initial`], with `x` set to `x`.
    pub fn bindings(&self, x: f64) -> Bindings {
        Bindings::new(x)
            .with(NAME_C, self.c)
            .with(NAME_KAPPA, self.kappa)
            .with(NAME_X0, self.x0)
    }

    /// Finite-difference steps matched to the profile width `1/|κ|`.
    pub fn fd_steps(&self) -> FdSteps {
        FdSteps::for_length(1.0 / self.kappa)
    }

    /// `lim_{x→+∞} u` for κ > 0.
    pub fn right_limit(&self) -> f64 {
        self.c + self.amplitude * libm::sqrt(11.0 / 19.0) * 2.0
    }
}

/// Initial profile `u(x, 0)` with `c`, `kappa`, `x0` as named constants.
pub fn ks_initial(p: &KsParams) -> Expr {
    let z = Expr::named(NAME_KAPPA) * (Expr::x() - Expr::named(NAME_X0));
    let th = Expr::apply(Func::Tanh, z);
    let shape = Expr::constant(11.0) * th.clone().powi(3) - Expr::constant(9.0) * th;
    let scale = Expr::constant(p.amplitude)
        * Expr::apply(Func::Sqrt, Expr::constant(11.0) / Expr::constant(19.0));
    Expr::named(NAME_C) + scale * shape
}

/// Closed-form traveling wave at `(x, t)`.
pub fn ks_exact(p: &KsParams, x: f64, t: f64) -> f64 {
    let th = libm::tanh(p.kappa * (x - p.c * t - p.x0));
    let shape = 11.0 * powi(th, 3) - 9.0 * th;
    p.c + p.amplitude * libm::sqrt(11.0 / 19.0) * shape
}

/// `u_t + u u_x + γ u_xx + λ u_xxxx = 0`.
pub fn ks_model(gamma: f64, lambda: f64) -> PdeModel {
    PdeModel::new(
        alloc::vec![LinearTerm::new(gamma, 2), LinearTerm::new(lambda, 4)],
        alloc::vec![NonlinearTerm::new(1.0, 1, 1)],
    )
}

/// `u_t + α u^β u_x + γ u^τ u_xx + λ ∂⁴u = 0`.
///
/// With `α = β = 1`, `τ = 0` this is [`ks_model`]`(γ, λ)`.
pub fn generalized_model(alpha: f64, beta: u32, gamma: f64, tau: u32, lambda: f64) -> PdeModel {
    PdeModel::new(
        alloc::vec![LinearTerm::new(lambda, 4)],
        alloc::vec![
            NonlinearTerm::new(alpha, beta, 1),
            NonlinearTerm::new(gamma, tau, 2)
        ],
    )
}

/// Evenly spaced points `start..=end`; a single point when `count == 1`.
pub fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => alloc::vec![start],
        _ => {
            let step = (end - start) / (count - 1) as f64;
            (0..count)
                .map(|i| if i == count - 1 { end } else { start + step * i as f64 })
                .collect()
        }
    }
}
