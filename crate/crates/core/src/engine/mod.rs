//! Reduced differential transform engine.
//!
//! A [`SpectrumSeries`] holds the time-spectrum functions `U_0..U_n` of a
//! solution `u(x, t) = Σ U_k(x) t^k`. The transform rules for sums, products,
//! powers, `x^m t^p` shifts and derivatives live in [`transform`]; the
//! recurrence that produces `U_{k+1}` from `U_0..U_k` for a [`PdeModel`] lives
//! in [`recurrence`].

mod model;
pub mod recurrence;
mod series;
pub mod transform;

use core::fmt;

use crate::expr::EvalError;

pub use model::{LinearTerm, NonlinearTerm, PdeModel, MAX_DERIVATIVE_ORDER};
pub use recurrence::{build_series, recurrence_step};
pub use series::{assemble, SeriesEvaluator, SpectrumSeries};
pub use transform::{
    cauchy_product, linear_combination, monomial_shift, power_convolution, spatial_derivative,
    time_derivative_transform,
};

/// Truncation order used when none is given.
pub const DEFAULT_ORDER: usize = 2;
/// Largest truncation order [`build_series`] accepts.
pub const MAX_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub enum EngineError {
    /// A coefficient index beyond the stored order was requested.
    IndexOutOfRange { index: usize, order: usize },
    DerivativeOrderTooHigh { order: u32, cap: u32 },
    SeriesOrderTooHigh { order: usize, cap: usize },
    Eval(EvalError),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::IndexOutOfRange { index, order } => {
                write!(f, "coefficient index {} out of range for series of order {}", index, order)
            }
            EngineError::DerivativeOrderTooHigh { order, cap } => {
                write!(f, "derivative order {} exceeds the engine cap of {}", order, cap)
            }
            EngineError::SeriesOrderTooHigh { order, cap } => {
                write!(f, "truncation order {} exceeds the cap of {}", order, cap)
            }
            EngineError::Eval(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for EngineError {}

impl From<EvalError> for EngineError {
    fn from(e: EvalError) -> Self {
        EngineError::Eval(e)
    }
}
