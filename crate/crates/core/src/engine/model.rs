use alloc::vec::Vec;

use super::EngineError;

/// Highest spatial derivative order a model may contain.
pub const MAX_DERIVATIVE_ORDER: u32 = 8;

/// `coefficient * ∂^derivative_order u / ∂x^derivative_order`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearTerm {
    pub coefficient: f64,
    pub derivative_order: u32,
}

/// `coefficient * u^u_power * ∂^derivative_order u / ∂x^derivative_order`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearTerm {
    pub coefficient: f64,
    pub u_power: u32,
    pub derivative_order: u32,
}

/// Right-hand side of `u_t + Σ linear + Σ nonlinear = 0`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PdeModel {
    pub linear: Vec<LinearTerm>,
    pub nonlinear: Vec<NonlinearTerm>,
}

impl LinearTerm {
    pub fn new(coefficient: f64, derivative_order: u32) -> Self {
        LinearTerm {
            coefficient,
            derivative_order,
        }
    }
}

impl NonlinearTerm {
    pub fn new(coefficient: f64, u_power: u32, derivative_order: u32) -> Self {
        NonlinearTerm {
            coefficient,
            u_power,
            derivative_order,
        }
    }
}

impl PdeModel {
    pub fn new(linear: Vec<LinearTerm>, nonlinear: Vec<NonlinearTerm>) -> Self {
        PdeModel { linear, nonlinear }
    }

    pub fn max_derivative_order(&self) -> u32 {
        let lin = self.linear.iter().map(|t| t.derivative_order);
        let nl = self.nonlinear.iter().map(|t| t.derivative_order);
        lin.chain(nl).max().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let order = self.max_derivative_order();
        if order > MAX_DERIVATIVE_ORDER {
            return Err(EngineError::DerivativeOrderTooHigh {
                order,
                cap: MAX_DERIVATIVE_ORDER,
            });
        }
        Ok(())
    }

    /// True when no term is nonlinear in `u`.
    pub fn is_linear(&self) -> bool {
        self.nonlinear
            .iter()
            .all(|t| t.coefficient == 0.0 || t.u_power == 0)
    }
}
