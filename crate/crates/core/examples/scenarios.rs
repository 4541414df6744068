//! Compare alternative scenario files against the base case.

use std::path::PathBuf;

use anc_toolkit::econ::{apply_adjustments, evaluate, Adjustment, ModelSpec};
use serde::Deserialize;

#[derive(Deserialize)]
struct Scenario {
    model: ModelSpec,
    #[serde(default)]
    adjustments: Vec<Adjustment>,
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let base_npv = evaluate(&ModelSpec::base_case(), false)?.npv;
    println!("{:<28} {:>14} {:>14} {:>10} {:>10}", "scenario", "NPV", "change", "IRR", "break-even");
    for name in [
        "base",
        "best",
        "worst",
        "bare_minimum",
        "marketing_up40",
        "marketing_units_up40",
        "marketing_units_price_up40",
        "cost_up40",
    ] {
        let text = std::fs::read_to_string(dir.join(format!("{name}.json")))?;
        let s: Scenario = serde_json::from_str(&text)?;
        let res = evaluate(&apply_adjustments(&s.model, &s.adjustments)?, false)?;
        let delta = res.npv - base_npv;
        let irr = res.irr.map_or("undefined".to_string(), |r| format!("{:.2}%", r * 100.0));
        let be = res.break_even_period.map_or("none".to_string(), |p| p.to_string());
        println!("{name:<28} {:>14.2} {delta:>14.2} {irr:>10} {be:>10}", res.npv);
    }
    Ok(())
}

