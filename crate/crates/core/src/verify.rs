//! Numeric oracles that do not share code paths with the symbolic engine:
//! finite-difference derivatives, PDE residuals, a plain-loop series product,
//! and comparison tables against the closed-form traveling wave.

use alloc::vec::Vec;
use core::fmt;

use crate::engine::{build_series, EngineError, PdeModel, SeriesEvaluator, SpectrumSeries};
use crate::expr::EvalError;
use crate::ks::{ks_exact, ks_initial, ks_model, KsParams};

#[derive(Debug, Clone, PartialEq)]
pub enum VerifyError {
    /// Finite differences are implemented for derivative orders 1 to 4.
    UnsupportedOrder(u32),
    InvalidStep(f64),
    IndexOutOfRange { index: usize, len: usize },
    EmptyGrid,
    Eval(EvalError),
    Engine(EngineError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::UnsupportedOrder(o) => {
                write!(f, "finite differences support orders 1 to 4, got {}", o)
            }
            VerifyError::InvalidStep(h) => write!(f, "step must be positive, got {}", h),
            VerifyError::IndexOutOfRange { index, len } => {
                write!(f, "index {} out of range for {} coefficients", index, len)
            }
            VerifyError::EmptyGrid => f.write_str("evaluation grid is empty"),
            VerifyError::Eval(e) => write!(f, "{}", e),
            VerifyError::Engine(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for VerifyError {}

impl From<EvalError> for VerifyError {
    fn from(e: EvalError) -> Self {
        VerifyError::Eval(e)
    }
}

impl From<EngineError> for VerifyError {
    fn from(e: EngineError) -> Self {
        VerifyError::Engine(e)
    }
}

fn central_stencil<F>(f: &mut F, x: f64, order: u32, h: f64) -> Result<f64, VerifyError>
where
    F: FnMut(f64) -> Result<f64, EvalError>,
{
    // Differences are taken against f(x) first so constants cancel exactly.
    let v = match order {
        1 => (f(x + h)? - f(x - h)?) / (2.0 * h),
        2 => {
            let f0 = f(x)?;
            ((f(x + h)? - f0) + (f(x - h)? - f0)) / (h * h)
        }
        3 => {
            ((f(x + 2.0 * h)? - f(x - 2.0 * h)?) - 2.0 * (f(x + h)? - f(x - h)?))
                / (2.0 * h * h * h)
        }
        4 => {
            let f0 = f(x)?;
            let outer = (f(x + 2.0 * h)? - f0) + (f(x - 2.0 * h)? - f0);
            let inner = (f(x + h)? - f0) + (f(x - h)? - f0);
            (outer - 4.0 * inner) / (h * h * h * h)
        }
        o => return Err(VerifyError::UnsupportedOrder(o)),
    };
    Ok(v)
}

/// Central-difference estimate of `f^(order)(x)` with one Richardson step:
/// the `O(h²)` stencils at `h` and `h/2` are combined as `(4 D(h/2) − D(h)) / 3`,
/// leaving an `O(h⁴)` error for smooth `f`. Samples lie within `[x − 2h, x + 2h]`.
pub fn fd_derivative<F>(mut f: F, x: f64, order: u32, h: f64) -> Result<f64, VerifyError>
where
    F: FnMut(f64) -> Result<f64, EvalError>,
{
    if !(h > 0.0) {
        return Err(VerifyError::InvalidStep(h));
    }
    let coarse = central_stencil(&mut f, x, order, h)?;
    let fine = central_stencil(&mut f, x, order, h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// One-sided first derivative `(4 (f(x+h) − f(x)) − (f(x+2h) − f(x))) / 2h` with the
/// same Richardson step as [`fd_derivative`]; samples lie in `[x, x + 2h]`.
pub fn fd_forward_derivative<F>(mut f: F, x: f64, h: f64) -> Result<f64, VerifyError>
where
    F: FnMut(f64) -> Result<f64, EvalError>,
{
    if !(h > 0.0) {
        return Err(VerifyError::InvalidStep(h));
    }
    let mut d = |h: f64| -> Result<f64, VerifyError> {
        let f0 = f(x)?;
        Ok((4.0 * (f(x + h)? - f0) - (f(x + 2.0 * h)? - f0)) / (2.0 * h))
    };
    let coarse = d(h)?;
    let fine = d(h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Finite-difference step sizes for [`residual`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdSteps {
    /// Step for x-derivatives of order 1, 2, 3, 4.
    pub x: [f64; 4],
    /// Step for the t-derivative.
    pub t: f64,
}

impl Default for FdSteps {
    /// Steps for profiles varying on a unit length scale.
    fn default() -> Self {
        FdSteps::for_length(1.0)
    }
}

impl FdSteps {
    /// Steps for a profile varying on the length scale `length`: each x-step is
    /// proportional to `length`, balancing Richardson truncation error against
    /// roundoff amplified by `h^-order`.
    pub fn for_length(length: f64) -> Self {
        let l = libm::fabs(length);
        FdSteps {
            x: [1.2e-3 * l, 4e-3 * l, 8e-3 * l, 1.8e-2 * l],
            t: 1e-3,
        }
    }

    /// Step for an x-derivative of `order`; orders above 4 use the order-4 step.
    pub fn x_step(&self, order: u32) -> f64 {
        self.x[(order.clamp(1, 4) - 1) as usize]
    }
}

/// Left-hand side `u_t + Σ c ∂^m u + Σ a u^p ∂^d u` of the model evaluated on
/// `u` at `(x, t)` with every derivative taken by finite differences. The
/// t-derivative is one-sided when `t < 2 h_t`.
pub fn residual<U>(
    mut u: U,
    model: &PdeModel,
    x: f64,
    t: f64,
    steps: &FdSteps,
) -> Result<f64, VerifyError>
where
    U: FnMut(f64, f64) -> Result<f64, EvalError>,
{
    let ht = steps.t;
    let ut = if t < 2.0 * ht {
        fd_forward_derivative(|s| u(x, s), t, ht)?
    } else {
        fd_derivative(|s| u(x, s), t, 1, ht)?
    };
    let dx = |order: u32, u: &mut U| -> Result<f64, VerifyError> {
        if order == 0 {
            Ok(u(x, t)?)
        } else {
            fd_derivative(|y| u(y, t), x, order, steps.x_step(order))
        }
    };
    let mut total = ut;
    for term in &model.linear {
        total += term.coefficient * dx(term.derivative_order, &mut u)?;
    }
    if !model.nonlinear.is_empty() {
        let value = u(x, t)?;
        for term in &model.nonlinear {
            let d = dx(term.derivative_order, &mut u)?;
            total += term.coefficient * crate::expr::powi(value, term.u_power as i32) * d;
        }
    }
    Ok(total)
}

/// `Σ_{r=0}^{k} a_r b_{k−r}` on plain numbers.
pub fn series_product_oracle(a: &[f64], b: &[f64], k: usize) -> Result<f64, VerifyError> {
    let len = a.len().min(b.len());
    if k >= len {
        return Err(VerifyError::IndexOutOfRange { index: k, len });
    }
    let mut sum = 0.0;
    for r in 0..=k {
        sum += a[r] * b[k - r];
    }
    Ok(sum)
}

/// Least-squares slope of `ln |v|` against `ln t`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(t, v) in points {
        let lx = libm::log(t);
        let ly = libm::log(libm::fabs(v));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    pub x: f64,
    pub t: f64,
    pub rdtm: f64,
    pub exact: f64,
    pub abs_err: f64,
}

impl ErrorRow {
    pub fn new(x: f64, t: f64, rdtm: f64, exact: f64) -> Self {
        ErrorRow {
            x,
            t,
            rdtm,
            exact,
            abs_err: libm::fabs(rdtm - exact),
        }
    }
}

/// Truncated series against the closed-form wave on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTable {
    pub rows: Vec<ErrorRow>,
    pub params: KsParams,
    pub order: usize,
}

impl ErrorTable {
    pub fn max_abs_err(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_err).fold(0.0, f64::max)
    }
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Builds the order-`n` series for the KS preset (`γ = λ = 1`) from the
/// profile at `t = 0` and tabulates it against [`ks_exact`] on `xs × ts`.
pub fn compare_table(
    p: &KsParams,
    n: usize,
    xs: &[f64],
    ts: &[f64],
) -> Result<ErrorTable, VerifyError> {
    let series = build_series(&ks_model(1.0, 1.0), &ks_initial(p), n)?;
    compare_series(&series, p, xs, ts)
}

/// Like [`compare_table`] for an already built series. Rows are ordered by
/// `x`, then `t`.
pub fn compare_series(
    series: &SpectrumSeries,
    p: &KsParams,
    xs: &[f64],
    ts: &[f64],
) -> Result<ErrorTable, VerifyError> {
    if xs.is_empty() || ts.is_empty() {
        return Err(VerifyError::EmptyGrid);
    }
    let program = series.compile();
    let mut eval = SeriesEvaluator::new(&program, &p.bindings(0.0))?;
    let ts = sorted(ts);
    let mut rows = Vec::with_capacity(xs.len() * ts.len());
    for x in sorted(xs) {
        let coeffs = eval.coefficients_at(x)?;
        for &t in &ts {
            let mut acc = coeffs[coeffs.len() - 1];
            for c in coeffs[..coeffs.len() - 1].iter().rev() {
                acc = acc * t + c;
            }
            rows.push(ErrorRow::new(x, t, acc, ks_exact(p, x, t)));
        }
    }
    Ok(ErrorTable {
        rows,
        params: *p,
        order: series.order(),
    })
}
