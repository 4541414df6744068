//! Single-parameter sensitivity of the base-case NPV.

use anc_toolkit::econ::{all_targets, sensitivity_grid, ModelSpec, DEFAULT_SENSITIVITY_PCTS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = ModelSpec::base_case();
    let grid = sensitivity_grid(&spec, &all_targets(&spec), &DEFAULT_SENSITIVITY_PCTS)?;
    for e in &grid {
        println!(
            "{:<28} {:>2}-{:<2} {:>+5.0}% {:>14.0} {:>+8.2}%",
            e.parameter,
            e.first,
            e.last,
            e.pct * 100.0,
            e.delta_npv,
            e.delta_pct.unwrap_or(f64::NAN) * 100.0
        );
    }
    Ok(())
}
