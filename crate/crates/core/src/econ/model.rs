//! Period-based cash-flow model: expense lines with constant burn rates plus a
//! single sales block.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, ensure_finite, Error, Result};

/// A constant per-period amount active over an inclusive window of periods.
/// Outflows are negative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpenseLine {
    pub name: String,
    pub first: u32,
    pub last: u32,
    pub rate: f64,
}

impl ExpenseLine {
    pub fn new(name: impl Into<String>, first: u32, last: u32, rate: f64) -> Self {
        Self {
            name: name.into(),
            first,
            last,
            rate,
        }
    }

    pub fn is_active(&self, period: u32) -> bool {
        (self.first..=self.last).contains(&period)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SalesBlock {
    pub first: u32,
    pub last: u32,
    /// Units sold per period.
    pub units: f64,
    pub unit_price: f64,
    /// Production cost per unit, carried as a non-positive number.
    pub unit_cost: f64,
}

impl SalesBlock {
    pub fn is_active(&self, period: u32) -> bool {
        (self.first..=self.last).contains(&period)
    }

    /// Net contribution of one active period.
    pub fn margin_per_period(&self) -> f64 {
        self.units * (self.unit_price + self.unit_cost)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    /// Number of periods `T`; flows run over periods `1..=T`.
    pub horizon: u32,
    /// Per-period discount rate `r`.
    pub discount_rate: f64,
    pub expenses: Vec<ExpenseLine>,
    pub sales: SalesBlock,
}

fn check_window(field: &str, first: u32, last: u32, horizon: u32) -> Result<()> {
    ensure(1 <= first && first <= last && last <= horizon, field, || {
        format!("period window {first}..{last} must satisfy 1 <= first <= last <= {horizon}")
    })
}

impl ModelSpec {
    /// The 24-quarter launch plan at 2.5% per quarter used as the reference
    /// case for every scenario.
    pub fn base_case() -> Self {
        Self {
            horizon: 24,
            discount_rate: 0.025,
            expenses: vec![
                ExpenseLine::new("Development", 1, 3, -50_000.0),
                ExpenseLine::new("Testing", 1, 4, -20_000.0),
                ExpenseLine::new("Tooling and Ramp-Up Costs", 4, 5, -15_000.0),
                ExpenseLine::new("Market Introduction", 4, 5, -20_000.0),
                ExpenseLine::new("Ongoing Marketing Costs", 5, 12, -10_000.0),
            ],
            sales: SalesBlock {
                first: 5,
                last: 24,
                units: 1500.0,
                unit_price: 300.0,
                unit_cost: -92.5,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.horizon >= 1, "horizon", || "must be at least 1".into())?;
        ensure(
            self.discount_rate.is_finite() && self.discount_rate > -1.0,
            "discount_rate",
            || format!("must be finite and greater than -1, got {}", self.discount_rate),
        )?;
        for (i, line) in self.expenses.iter().enumerate() {
            let field = format!("expenses[{i}] ({})", line.name);
            check_window(&field, line.first, line.last, self.horizon)?;
            ensure_finite(line.rate, &format!("{field}.rate"))?;
        }
        let s = &self.sales;
        check_window("sales", s.first, s.last, self.horizon)?;
        ensure(s.units.is_finite() && s.units >= 0.0, "sales.units", || {
            format!("must be finite and non-negative, got {}", s.units)
        })?;
        ensure(
            s.unit_price.is_finite() && s.unit_price >= 0.0,
            "sales.unit_price",
            || format!("must be finite and non-negative, got {}", s.unit_price),
        )?;
        ensure(
            s.unit_cost.is_finite() && s.unit_cost <= 0.0,
            "sales.unit_cost",
            || format!("must be finite and non-positive, got {}", s.unit_cost),
        )
    }

    pub fn expense(&self, name: &str) -> Option<&ExpenseLine> {
        self.expenses.iter().find(|l| l.name == name)
    }

    pub(crate) fn expense_index(&self, name: &str) -> Result<usize> {
        let mut hits = self
            .expenses
            .iter()
            .enumerate()
            .filter(|(_, l)| l.name == name)
            .map(|(i, _)| i);
        match (hits.next(), hits.next()) {
            (Some(i), None) => Ok(i),
            (None, _) => Err(Error::validation(
                "target",
                format!("no expense line named {name:?}"),
            )),
            (Some(_), Some(_)) => Err(Error::validation(
                "target",
                format!("expense line name {name:?} is ambiguous"),
            )),
        }
    }
}

/// Net flow `C_t` for `t = 1..=horizon`.
pub fn build_cash_flows(spec: &ModelSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    Ok((1..=spec.horizon)
        .map(|t| {
            let burn: f64 = spec
                .expenses
                .iter()
                .filter(|l| l.is_active(t))
                .map(|l| l.rate)
                .sum();
            let sales = if spec.sales.is_active(t) {
                spec.sales.margin_per_period()
            } else {
                0.0
            };
            burn + sales
        })
        .collect())
}
