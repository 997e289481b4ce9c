use std::fmt::Write as _;

use rdtm_core::engine::{build_series, SeriesEvaluator, SpectrumSeries};
use rdtm_core::expr::Expr;
use rdtm_core::ks::KsParams;
use rdtm_core::verify::{compare_series, log_log_slope, residual, ErrorTable, FdSteps};

use crate::descriptor::{Grid, Problem};
use crate::error::CliError;

pub const CSV_HEADER: &str = "x,t,rdtm,exact,abs_err";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
}

fn exact_params(problem: &Problem) -> Result<KsParams, CliError> {
    problem.exact.ok_or_else(|| {
        CliError::Invalid(
            "preset: a closed-form comparison needs the \"ks\" preset with its built-in initial profile"
                .into(),
        )
    })
}

fn series(problem: &Problem, order: usize) -> Result<SpectrumSeries, CliError> {
    Ok(build_series(&problem.model, &problem.initial, order)?)
}

pub fn run_table(problem: &Problem, grid: &Grid) -> Result<ErrorTable, CliError> {
    let p = exact_params(problem)?;
    Ok(compare_series(&series(problem, problem.order)?, &p, &grid.xs, &grid.ts)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub order: usize,
    /// `None` when no closed form is available.
    pub max_abs_err: Option<f64>,
    pub residual_slope: f64,
}

/// Times `10^-3 .. 10^-1` used for residual slopes.
pub fn slope_times() -> Vec<f64> {
    (0..9).map(|i| 10f64.powf(-3.0 + 0.25 * i as f64)).collect()
}

pub fn run_convergence(
    problem: &Problem,
    orders: &[usize],
    grid: &Grid,
    slope_x: f64,
) -> Result<Vec<ConvergenceRow>, CliError> {
    if orders.is_empty() {
        return Err(CliError::invalid("orders", "needs at least one order"));
    }
    if let Some(&n) = orders.iter().find(|&&n| n > rdtm_core::engine::MAX_ORDER) {
        return Err(CliError::invalid(
            "orders",
            format!("must be between 0 and {}, got {n}", rdtm_core::engine::MAX_ORDER),
        ));
    }
    let steps = problem.exact.map_or_else(FdSteps::default, |p| p.fd_steps());
    let mut rows = Vec::with_capacity(orders.len());
    for &n in orders {
        let s = series(problem, n)?;
        let max_abs_err = match problem.exact {
            Some(p) => Some(compare_series(&s, &p, &grid.xs, &grid.ts)?.max_abs_err()),
            None => None,
        };
        let program = s.compile();
        let mut eval = SeriesEvaluator::new(&program, &problem.bindings)?;
        let mut points = Vec::new();
        for t in slope_times() {
            let r = residual(|x, t| eval.eval(x, t), &problem.model, slope_x, t, &steps)?;
            points.push((t, r));
        }
        rows.push(ConvergenceRow {
            order: n,
            max_abs_err,
            residual_slope: log_log_slope(&points),
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientRow {
    pub k: usize,
    pub expr: Expr,
    pub value_at_origin: f64,
}

pub fn run_coefficients(problem: &Problem) -> Result<Vec<CoefficientRow>, CliError> {
    let s = series(problem, problem.order)?;
    let program = s.compile();
    let values = SeriesEvaluator::new(&program, &problem.bindings)?.coefficients_at(0.0)?;
    Ok(s
        .coefficients()
        .iter()
        .zip(values)
        .enumerate()
        .map(|(k, (e, v))| CoefficientRow {
            k,
            expr: e.clone(),
            value_at_origin: v,
        })
        .collect())
}

/// Fixed scientific notation with ten significant digits.
pub fn sci(v: f64) -> String {
    format!("{v:.9e}")
}

pub fn render_table(table: &ErrorTable, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for r in &table.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    sci(r.x),
                    sci(r.t),
                    sci(r.rdtm),
                    sci(r.exact),
                    sci(r.abs_err)
                );
            }
        }
        Format::Text => {
            let _ = writeln!(
                out,
                "{:>10} {:>10} {:>16} {:>16} {:>16}",
                "x", "t", "rdtm", "exact", "abs_err"
            );
            for r in &table.rows {
                let _ = writeln!(
                    out,
                    "{:>10.4} {:>10.4} {:>16.10} {:>16.10} {:>16.9e}",
                    r.x, r.t, r.rdtm, r.exact, r.abs_err
                );
            }
        }
    }
    out
}

pub fn render_convergence(rows: &[ConvergenceRow], format: Format) -> String {
    let mut out = String::new();
    let err = |r: &ConvergenceRow| r.max_abs_err.map_or_else(|| "nan".to_string(), sci);
    match format {
        Format::Csv => {
            out.push_str("order,max_abs_err,residual_slope\n");
            for r in rows {
                let _ = writeln!(out, "{},{},{}", r.order, err(r), sci(r.residual_slope));
            }
        }
        Format::Text => {
            let _ = writeln!(out, "{:>5} {:>16} {:>16}", "order", "max_abs_err", "residual_slope");
            for r in rows {
                let _ = writeln!(out, "{:>5} {:>16} {:>16.4}", r.order, err(r), r.residual_slope);
            }
        }
    }
    out
}

/// Expressions longer than `max_chars` are replaced by a note.
pub fn render_coefficients(rows: &[CoefficientRow], format: Format, max_chars: usize) -> String {
    let mut out = String::new();
    let text = |e: &Expr| {
        let s = e.to_string();
        if s.len() > max_chars {
            format!("<{} characters omitted, raise --max-chars>", s.len())
        } else {
            s
        }
    };
    match format {
        Format::Csv => {
            out.push_str("k,value_at_0,expression\n");
            for r in rows {
                let _ = writeln!(out, "{},{},{}", r.k, sci(r.value_at_origin), text(&r.expr));
            }
        }
        Format::Text => {
            for r in rows {
                let _ = writeln!(out, "U_{}(0) = {}", r.k, sci(r.value_at_origin));
                let _ = writeln!(out, "U_{}(x) = {}", r.k, text(&r.expr));
            }
        }
    }
    out
}
