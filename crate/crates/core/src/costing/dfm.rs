//! Design-for-manufacture figures and checks against printed values.

use serde::Serialize;

use crate::error::{ensure, Result};

/// Ideal handling-plus-insertion time per part, in seconds.
pub const IDEAL_SECONDS_PER_PART: f64 = 3.0;

/// `(min_parts × 3 s) / total_assembly_s`.
pub fn dfa_index(min_parts: u32, total_assembly_s: f64) -> Result<f64> {
    ensure(min_parts >= 1, "min_parts", || "must be at least 1".into())?;
    ensure(
        total_assembly_s.is_finite() && total_assembly_s > 0.0,
        "total_assembly_s",
        || format!("must be positive, got {total_assembly_s}"),
    )?;
    Ok(min_parts as f64 * IDEAL_SECONDS_PER_PART / total_assembly_s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostReduction {
    pub savings: f64,
    /// Savings as a fraction of the old total.
    pub pct: f64,
}

pub fn cost_reduction_report(old_total: f64, new_total: f64) -> Result<CostReduction> {
    ensure(old_total.is_finite() && old_total > 0.0, "old_total", || {
        format!("must be positive, got {old_total}")
    })?;
    ensure(new_total.is_finite(), "new_total", || "must be finite".into())?;
    let savings = old_total - new_total;
    Ok(CostReduction {
        savings,
        pct: savings / old_total,
    })
}

/// `(price − cost) / price`, with `cost` as a positive amount.
pub fn gross_margin(unit_price: f64, unit_cost: f64) -> Result<f64> {
    ensure(unit_price.is_finite() && unit_price > 0.0, "unit_price", || {
        format!("must be positive, got {unit_price}")
    })?;
    ensure(unit_cost.is_finite(), "unit_cost", || "must be finite".into())?;
    Ok((unit_price - unit_cost) / unit_price)
}

/// A computed figure set against the value a source document prints for it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Discrepancy {
    pub item: String,
    pub computed: f64,
    pub printed: f64,
    /// Decimal places both values are compared at.
    pub decimals: i32,
    pub flagged: bool,
}

impl Discrepancy {
    /// Flag when the two values differ after rounding to `decimals` places.
    pub fn check(item: impl Into<String>, computed: f64, printed: f64, decimals: i32) -> Self {
        let round = |v: f64| crate::money::round_to(v, decimals);
        Self {
            item: item.into(),
            computed,
            printed,
            decimals,
            flagged: round(computed) != round(printed),
        }
    }

    pub fn cents(item: impl Into<String>, computed: f64, printed: f64) -> Self {
        Self::check(item, computed, printed, 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dfa_examples() {
        assert_eq!(dfa_index(10, 30.0).unwrap(), 1.0);
        assert!((dfa_index(3, 45.0).unwrap() - 0.2).abs() < 1e-15);
        assert!((dfa_index(58, 1840.0).unwrap() - 0.0946).abs() < 1e-4);
        assert!(dfa_index(1, 0.0).unwrap_err().to_string().contains("total_assembly_s"));
        assert!(dfa_index(0, 10.0).is_err());
    }

    #[test]
    fn reduction_examples() {
        let r = cost_reduction_report(121.02, 92.50).unwrap();
        assert!((r.savings - 28.52).abs() < 0.005);
        assert!((r.pct * 100.0 - 23.57).abs() <= 0.02);
        assert_eq!(cost_reduction_report(100.0, 100.0).unwrap(), CostReduction { savings: 0.0, pct: 0.0 });
        assert_eq!(cost_reduction_report(200.0, 150.0).unwrap(), CostReduction { savings: 50.0, pct: 0.25 });
        assert!(cost_reduction_report(0.0, 1.0).is_err());
    }

    #[test]
    fn margin_examples() {
        assert!((gross_margin(300.0, 92.5).unwrap() * 100.0 - 69.2).abs() <= 0.05);
        assert_eq!(gross_margin(100.0, 0.0).unwrap(), 1.0);
        assert_eq!(gross_margin(100.0, 100.0).unwrap(), 0.0);
        assert!(gross_margin(0.0, 1.0).is_err());
    }

    #[test]
    fn discrepancy_flags_at_precision() {
        assert!(Discrepancy::cents("assembly", 1840.0 / 360.0, 5.15).flagged);
        assert!(!Discrepancy::cents("overhead", 13.541, 13.54).flagged);
        assert!(Discrepancy::check("pct", 23.566, 23.56, 2).flagged);
        assert!(!Discrepancy::check("pct", 23.566, 23.57, 2).flagged);
    }
}
