//! Top-down market sizing by scaling a reference population's affected count.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};

fn default_rounding_step() -> f64 {
    100_000.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarketParams {
    pub world_pop: f64,
    /// Population of the reference region the affected count was measured in.
    pub ref_pop: f64,
    pub ref_affected: f64,
    /// Fraction of the scaled count retained.
    pub tolerance: f64,
    /// Fraction of the affected population expected to buy.
    pub adoption_share: f64,
    pub unit_price: f64,
    pub unit_cost: f64,
    /// Granularity the affected count is rounded to before the profit step.
    #[serde(default = "default_rounding_step")]
    pub rounding_step: f64,
}

impl MarketParams {
    pub fn validate(&self) -> Result<()> {
        ensure(self.ref_pop > 0.0, "ref_pop", || format!("must be positive, got {}", self.ref_pop))?;
        ensure(self.world_pop > 0.0, "world_pop", || format!("must be positive, got {}", self.world_pop))?;
        ensure(self.ref_affected >= 0.0, "ref_affected", || {
            format!("must be non-negative, got {}", self.ref_affected)
        })?;
        for (name, v) in [("tolerance", self.tolerance), ("adoption_share", self.adoption_share)] {
            ensure((0.0..=1.0).contains(&v), name, || format!("must lie in [0, 1], got {v}"))?;
        }
        for (name, v) in [("unit_price", self.unit_price), ("unit_cost", self.unit_cost)] {
            ensure(v.is_finite(), name, || format!("must be finite, got {v}"))?;
        }
        ensure(self.rounding_step > 0.0, "rounding_step", || {
            format!("must be positive, got {}", self.rounding_step)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarketEstimate {
    /// `world_pop / ref_pop · ref_affected · tolerance`, unrounded.
    pub affected: f64,
    /// `affected` rounded to the nearest `rounding_step`.
    pub affected_rounded: f64,
    /// `(price − cost) · affected_rounded · adoption_share`.
    pub profit: f64,
    /// The same product using the unrounded count.
    pub profit_exact: f64,
}

pub fn market_size_estimate(p: &MarketParams) -> Result<MarketEstimate> {
    p.validate()?;
    let affected = p.world_pop / p.ref_pop * p.ref_affected * p.tolerance;
    let affected_rounded = (affected / p.rounding_step).round() * p.rounding_step;
    let margin = p.unit_price - p.unit_cost;
    Ok(MarketEstimate {
        affected,
        affected_rounded,
        profit: margin * affected_rounded * p.adoption_share,
        profit_exact: margin * affected * p.adoption_share,
    })
}
