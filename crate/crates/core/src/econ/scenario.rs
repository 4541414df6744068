//! Scenario adjustments, model evaluation and sensitivity analysis.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::econ::dcf::{break_even, discounted_flows, irr, npv};
use crate::econ::model::{build_cash_flows, ModelSpec};
use crate::error::{ensure, ensure_finite, Result};

/// What an [`Adjustment`] scales: a named expense line or one of the three
/// sales parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Target {
    Units,
    Price,
    Cost,
    Line(String),
}

impl Target {
    pub fn line(name: impl Into<String>) -> Self {
        Target::Line(name.into())
    }

    pub fn label(&self) -> &str {
        match self {
            Target::Units => "Unit Sales",
            Target::Price => "Unit Price",
            Target::Cost => "Unit Production Cost",
            Target::Line(name) => name,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Units => "UNITS",
            Target::Price => "PRICE",
            Target::Cost => "COST",
            Target::Line(name) => name,
        })
    }
}

impl Serialize for Target {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Target {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        Ok(match raw.as_str() {
            "UNITS" => Target::Units,
            "PRICE" => Target::Price,
            "COST" => Target::Cost,
            _ => Target::Line(raw),
        })
    }
}

/// Scale one model value by `1 + pct`, optionally moving its period window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Adjustment {
    pub target: Target,
    /// Fractional change, e.g. `-0.30` for a 30% cut.
    pub pct: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_override: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last_override: Option<u32>,
}

impl Adjustment {
    pub fn new(target: Target, pct: f64) -> Self {
        Self {
            target,
            pct,
            first_override: None,
            last_override: None,
        }
    }

    pub fn with_window(mut self, first: u32, last: u32) -> Self {
        self.first_override = Some(first);
        self.last_override = Some(last);
        self
    }
}

/// Apply `adjustments` in order. Values not targeted are left untouched.
pub fn apply_adjustments(spec: &ModelSpec, adjustments: &[Adjustment]) -> Result<ModelSpec> {
    spec.validate()?;
    let mut out = spec.clone();
    for adj in adjustments {
        ensure_finite(adj.pct, "pct")?;
        let factor = 1.0 + adj.pct;
        let (first, last) = match &adj.target {
            Target::Line(name) => {
                let line = &mut out.expenses[spec.expense_index(name)?];
                line.rate *= factor;
                (&mut line.first, &mut line.last)
            }
            sales_target => {
                let sales = &mut out.sales;
                match sales_target {
                    Target::Units => sales.units *= factor,
                    Target::Price => sales.unit_price *= factor,
                    _ => sales.unit_cost *= factor,
                }
                (&mut sales.first, &mut sales.last)
            }
        };
        if let Some(f) = adj.first_override {
            *first = f;
        }
        if let Some(l) = adj.last_override {
            *last = l;
        }
        let (f, l) = (*first, *last);
        ensure(1 <= f && f <= l && l <= spec.horizon, "override", || {
            format!(
                "window {f}..{l} for {} must satisfy 1 <= first <= last <= {}",
                adj.target, spec.horizon
            )
        })?;
    }
    out.validate()?;
    Ok(out)
}

/// One row of the model-values table: a parameter's base and adjusted value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineDelta {
    pub name: String,
    pub first: u32,
    pub last: u32,
    pub base: f64,
    pub adjusted: f64,
    /// Fractional change; `None` when the base value is zero.
    pub pct: Option<f64>,
    pub delta: f64,
}

/// Per-parameter comparison of two models with the same line structure.
pub fn line_deltas(base: &ModelSpec, adjusted: &ModelSpec) -> Vec<LineDelta> {
    let row = |name: &str, first, last, b: f64, a: f64| LineDelta {
        name: name.to_string(),
        first,
        last,
        base: b,
        adjusted: a,
        pct: (b != 0.0).then(|| (a - b) / b),
        delta: a - b,
    };
    let mut rows: Vec<LineDelta> = base
        .expenses
        .iter()
        .zip(&adjusted.expenses)
        .map(|(b, a)| row(&b.name, a.first, a.last, b.rate, a.rate))
        .collect();
    let (bs, s) = (&base.sales, &adjusted.sales);
    rows.push(row(Target::Units.label(), s.first, s.last, bs.units, s.units));
    rows.push(row(Target::Price.label(), s.first, s.last, bs.unit_price, s.unit_price));
    rows.push(row(Target::Cost.label(), s.first, s.last, bs.unit_cost, s.unit_cost));
    rows
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EconResult {
    pub cash_flows: Vec<f64>,
    pub discounted_flows: Vec<f64>,
    pub npv: f64,
    /// Per-period IRR; `None` when undefined.
    pub irr: Option<f64>,
    pub break_even_period: Option<u32>,
    pub break_even_discounted: bool,
}

pub fn evaluate(spec: &ModelSpec, discounted_break_even: bool) -> Result<EconResult> {
    let flows = build_cash_flows(spec)?;
    let r = spec.discount_rate;
    Ok(EconResult {
        discounted_flows: discounted_flows(&flows, r),
        npv: npv(&flows, r),
        irr: irr(&flows),
        break_even_period: break_even(&flows, r, discounted_break_even),
        break_even_discounted: discounted_break_even,
        cash_flows: flows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioOutcome {
    pub base_npv: f64,
    pub result: EconResult,
    pub delta_npv: f64,
    /// `delta_npv / base_npv`; `None` when the base NPV is zero.
    pub delta_pct: Option<f64>,
    pub lines: Vec<LineDelta>,
}

/// Evaluate `base` with `adjustments` applied and compare against `base`.
pub fn run_scenario(
    base: &ModelSpec,
    adjustments: &[Adjustment],
    discounted_break_even: bool,
) -> Result<ScenarioOutcome> {
    let adjusted = apply_adjustments(base, adjustments)?;
    let base_npv = npv(&build_cash_flows(base)?, base.discount_rate);
    let result = evaluate(&adjusted, discounted_break_even)?;
    let delta_npv = result.npv - base_npv;
    Ok(ScenarioOutcome {
        base_npv,
        delta_npv,
        delta_pct: relative(delta_npv, base_npv),
        lines: line_deltas(base, &adjusted),
        result,
    })
}

fn relative(delta: f64, base: f64) -> Option<f64> {
    (base != 0.0).then(|| delta / base)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SensitivityRow {
    pub delta_npv: f64,
    pub delta_pct: Option<f64>,
}

/// NPV change caused by a single adjustment.
pub fn sensitivity_row(spec: &ModelSpec, adj: &Adjustment) -> Result<SensitivityRow> {
    let base = npv(&build_cash_flows(spec)?, spec.discount_rate);
    let adjusted = apply_adjustments(spec, std::slice::from_ref(adj))?;
    let delta_npv = npv(&build_cash_flows(&adjusted)?, spec.discount_rate) - base;
    Ok(SensitivityRow {
        delta_npv,
        delta_pct: relative(delta_npv, base),
    })
}

/// Percentage steps used for the overall sensitivity table.
pub const DEFAULT_SENSITIVITY_PCTS: [f64; 3] = [-0.30, 0.10, 0.40];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityEntry {
    pub parameter: String,
    pub target: Target,
    pub pct: f64,
    pub first: u32,
    pub last: u32,
    pub delta_npv: f64,
    pub delta_pct: Option<f64>,
}

/// Every expense line followed by units, price and cost.
pub fn all_targets(spec: &ModelSpec) -> Vec<Target> {
    spec.expenses
        .iter()
        .map(|l| Target::Line(l.name.clone()))
        .chain([Target::Units, Target::Price, Target::Cost])
        .collect()
}

/// One single-parameter row per `(target, pct)`, targets outermost.
pub fn sensitivity_grid(
    spec: &ModelSpec,
    targets: &[Target],
    pcts: &[f64],
) -> Result<Vec<SensitivityEntry>> {
    let mut rows = Vec::with_capacity(targets.len() * pcts.len());
    for target in targets {
        let (first, last) = match target {
            Target::Line(name) => {
                let line = &spec.expenses[spec.expense_index(name)?];
                (line.first, line.last)
            }
            _ => (spec.sales.first, spec.sales.last),
        };
        for &pct in pcts {
            let row = sensitivity_row(spec, &Adjustment::new(target.clone(), pct))?;
            rows.push(SensitivityEntry {
                parameter: target.label().to_string(),
                target: target.clone(),
                pct,
                first,
                last,
                delta_npv: row.delta_npv,
                delta_pct: row.delta_pct,
            });
        }
    }
    Ok(rows)
}
