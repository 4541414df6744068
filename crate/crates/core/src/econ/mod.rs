//! Discounted-cash-flow models: building per-period flows, NPV/IRR,
//! break-even and scenario/sensitivity analysis.

pub mod dcf;
pub mod model;
pub mod scenario;

pub use dcf::{break_even, cumulative_flows, discounted_flows, irr, irr_interpolate, npv};
pub use model::{build_cash_flows, ExpenseLine, ModelSpec, SalesBlock};
pub use scenario::{
    all_targets, apply_adjustments, evaluate, line_deltas, run_scenario, sensitivity_grid,
    sensitivity_row, Adjustment, EconResult, LineDelta, ScenarioOutcome, SensitivityEntry,
    SensitivityRow, Target, DEFAULT_SENSITIVITY_PCTS,
};
