//! Reduced differential transform method (RDTM) for Kuramoto–Sivashinsky
//! type equations.
//!
//! The solution of `u_t + L_x u + N(u) = 0`, `u(x, 0) = f(x)` is expanded as
//! `u(x, t) = Σ U_k(x) t^k`. The spectrum functions `U_k` are built
//! symbolically from `U_0 = f` by a recurrence derived from the transform
//! rules in [`engine`], then summed into truncated approximations.
//!
//! * [`expr`]: symbolic expressions in `x` (parse, print, differentiate,
//!   simplify, evaluate).
//! * [`engine`]: spectrum series, PDE models, transform rules, recurrence.
//! * [`ks`]: the Kuramoto–Sivashinsky traveling-wave problem and presets.
//! * [`verify`]: independent numeric oracles and error tables.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod engine;
pub mod expr;
pub mod ks;
pub mod verify;

pub use engine::{
    assemble, build_series, EngineError, LinearTerm, NonlinearTerm, PdeModel, SeriesEvaluator,
    SpectrumSeries,
};
pub use expr::{parse, Bindings, EvalError, Expr, ParseError};
pub use ks::KsParams;
