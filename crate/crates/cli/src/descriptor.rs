//! JSON problem descriptors.
//!
//! ```json
//! {
//!   "preset": "ks",
//!   "params": { "c": 0.1, "kappa": "auto", "x0": -30 },
//!   "order": 2,
//!   "grid": { "xs": [0, 0.5, 1], "t": { "min": 0, "max": 1, "count": 3 } }
//! }
//! ```
//!
//! `preset` is `"ks"` or `"generalized-ks"`; alternatively `model` lists the
//! terms explicitly and `initial` gives `u(x, 0)` as expression text. Every
//! field is optional and the defaults reproduce the reference KS problem.

use std::collections::BTreeMap;
use std::path::Path;

use rdtm_core::engine::{LinearTerm, NonlinearTerm, PdeModel, MAX_ORDER};
use rdtm_core::expr::{parse, Bindings, Expr};
use rdtm_core::ks::{
    default_kappa, generalized_model, ks_initial, ks_model, linspace, KsParams, NAME_C, NAME_KAPPA,
    NAME_X0, PRESET_GENERALIZED_KS, PRESET_KS,
};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDescriptor {
    pub preset: Option<String>,
    pub model: Option<ModelSpec>,
    pub initial: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, ParamValue>,
    pub order: Option<i64>,
    pub grid: Option<GridSpec>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Number(f64),
    /// Only `"auto"` for `kappa`.
    Text(String),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    #[serde(default)]
    pub linear: Vec<LinearSpec>,
    #[serde(default)]
    pub nonlinear: Vec<NonlinearSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearSpec {
    pub coefficient: f64,
    pub order: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonlinearSpec {
    pub coefficient: f64,
    pub power: u32,
    pub order: u32,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub xs: Option<Vec<f64>>,
    pub ts: Option<Vec<f64>>,
    pub x: Option<RangeSpec>,
    pub t: Option<RangeSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

/// One grid axis: explicit points or an evenly spaced range.
#[derive(Debug, Clone, PartialEq)]
pub enum Axis {
    Points(Vec<f64>),
    Range(RangeSpec),
}

impl Axis {
    pub fn range(min: f64, max: f64, count: usize) -> Axis {
        Axis::Range(RangeSpec { min, max, count })
    }

    pub fn resolve(&self, field: &str) -> Result<Vec<f64>, CliError> {
        let points = match self {
            Axis::Points(p) => {
                if p.is_empty() {
                    return Err(CliError::invalid(field, "needs at least one point"));
                }
                p.clone()
            }
            Axis::Range(r) => {
                if r.count == 0 {
                    return Err(CliError::invalid(field, "count must be at least 1"));
                }
                if !(r.min <= r.max) {
                    return Err(CliError::invalid(
                        field,
                        format!("min {} exceeds max {}", r.min, r.max),
                    ));
                }
                linspace(r.min, r.max, r.count)
            }
        };
        if let Some(v) = points.iter().find(|v| !v.is_finite()) {
            return Err(CliError::invalid(field, format!("non-finite value {v}")));
        }
        Ok(points)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub xs: Vec<f64>,
    pub ts: Vec<f64>,
}

/// A validated problem ready to build.
#[derive(Debug, Clone)]
pub struct Problem {
    pub model: PdeModel,
    pub initial: Expr,
    pub bindings: Bindings,
    /// Present when the closed-form wave applies to this problem.
    pub exact: Option<KsParams>,
    pub order: usize,
    pub grid_x: Option<Axis>,
    pub grid_t: Option<Axis>,
}

impl ProblemDescriptor {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("descriptor: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }

    fn number(&self, name: &str) -> Result<Option<f64>, CliError> {
        match self.params.get(name) {
            None => Ok(None),
            Some(ParamValue::Number(v)) => Ok(Some(*v)),
            Some(ParamValue::Text(t)) if name == NAME_KAPPA && t == "auto" => Ok(Some(default_kappa())),
            Some(ParamValue::Text(t)) => Err(CliError::invalid(
                &format!("params.{name}"),
                format!("expected a number, found \"{t}\""),
            )),
        }
    }

    fn integer(&self, name: &str, default: u32) -> Result<u32, CliError> {
        match self.number(name)? {
            None => Ok(default),
            Some(v) if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 => Ok(v as u32),
            Some(v) => Err(CliError::invalid(
                &format!("params.{name}"),
                format!("must be a nonnegative integer, got {v}"),
            )),
        }
    }

    fn ks_params(&self) -> Result<KsParams, CliError> {
        let d = KsParams::default();
        let mut p = KsParams::new(
            self.number(NAME_C)?.unwrap_or(d.c),
            self.number(NAME_KAPPA)?.unwrap_or(d.kappa),
            self.number(NAME_X0)?.unwrap_or(d.x0),
        )
        .map_err(|e| CliError::invalid("params.kappa", e))?;
        if let Some(a) = self.number("amplitude")? {
            p.amplitude = a;
        }
        Ok(p)
    }

    /// Validates the descriptor.
    pub fn resolve(&self) -> Result<Problem, CliError> {
        let order = match self.order {
            None => rdtm_core::engine::DEFAULT_ORDER,
            Some(n) if (0..=MAX_ORDER as i64).contains(&n) => n as usize,
            Some(n) => {
                return Err(CliError::invalid(
                    "order",
                    format!("must be between 0 and {MAX_ORDER}, got {n}"),
                ))
            }
        };
        if self.preset.is_some() && self.model.is_some() {
            return Err(CliError::invalid("model", "give either `preset` or `model`, not both"));
        }
        let preset = match (&self.preset, &self.model) {
            (_, Some(_)) => None,
            (None, None) => Some(PRESET_KS),
            (Some(name), None) if name == PRESET_KS => Some(PRESET_KS),
            (Some(name), None) if name == PRESET_GENERALIZED_KS => Some(PRESET_GENERALIZED_KS),
            (Some(name), None) => {
                return Err(CliError::invalid(
                    "preset",
                    format!("unknown preset \"{name}\" (expected \"{PRESET_KS}\" or \"{PRESET_GENERALIZED_KS}\")"),
                ))
            }
        };
        let model = match (preset, &self.model) {
            (Some(PRESET_KS), _) => ks_model(
                self.number("gamma")?.unwrap_or(1.0),
                self.number("lambda")?.unwrap_or(1.0),
            ),
            (Some(_), _) => generalized_model(
                self.number("alpha")?.unwrap_or(1.0),
                self.integer("beta", 1)?,
                self.number("gamma")?.unwrap_or(1.0),
                self.integer("tau", 0)?,
                self.number("lambda")?.unwrap_or(1.0),
            ),
            (None, Some(spec)) => PdeModel::new(
                spec.linear.iter().map(|t| LinearTerm::new(t.coefficient, t.order)).collect(),
                spec.nonlinear
                    .iter()
                    .map(|t| NonlinearTerm::new(t.coefficient, t.power, t.order))
                    .collect(),
            ),
            (None, None) => unreachable!(),
        };
        model.validate().map_err(|e| CliError::invalid("model", e))?;

        let mut bindings = Bindings::new(0.0);
        for name in self.params.keys() {
            if let Some(v) = self.number(name)? {
                bindings.set(name.clone(), v);
            }
        }
        let (initial, exact) = match (&self.initial, preset) {
            (Some(text), _) => {
                let e = parse(text).map_err(|e| CliError::invalid("initial", e))?;
                (e, None)
            }
            (None, Some(_)) => {
                let p = self.ks_params()?;
                for (name, value) in [(NAME_C, p.c), (NAME_KAPPA, p.kappa), (NAME_X0, p.x0)] {
                    bindings.set(name, value);
                }
                let exact = (preset == Some(PRESET_KS)).then_some(p);
                (ks_initial(&p), exact)
            }
            (None, None) => {
                return Err(CliError::invalid("initial", "required when `model` is given"));
            }
        };
        for name in initial.constant_names() {
            if bindings.get(&name).is_none() {
                return Err(CliError::invalid(
                    &format!("params.{name}"),
                    "missing value for a constant used by the initial profile",
                ));
            }
        }

        let grid = self.grid.clone().unwrap_or_default();
        let axis = |points: Option<Vec<f64>>, range: Option<RangeSpec>, name: &str| match (points, range) {
            (Some(_), Some(_)) => Err(CliError::invalid(
                &format!("grid.{name}"),
                format!("give either `{name}s` or `{name}`, not both"),
            )),
            (Some(p), None) => Ok(Some(Axis::Points(p))),
            (None, Some(r)) => Ok(Some(Axis::Range(r))),
            (None, None) => Ok(None),
        };
        Ok(Problem {
            model,
            initial,
            bindings,
            exact,
            order,
            grid_x: axis(grid.xs, grid.x, "x")?,
            grid_t: axis(grid.ts, grid.t, "t")?,
        })
    }
}
