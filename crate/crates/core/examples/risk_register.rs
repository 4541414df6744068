//! Rate a few register entries and place them on the probability/impact map.

use std::collections::BTreeMap;
use std::fs::File;
use std::path::PathBuf;

use anc_toolkit::planning::{read_register_csv, risk_score_and_map, RiskItem, DEFAULT_THRESHOLD};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/risks.csv");
    let register = read_register_csv(File::open(path)?)?;
    let mut by_category: BTreeMap<&str, usize> = BTreeMap::new();
    for e in &register {
        *by_category.entry(&e.category).or_default() += 1;
    }
    println!("{} risks: {by_category:?}", register.len());

    // Illustrative ratings; the shipped register leaves them blank.
    for (e, (p, i)) in register.iter().zip([(8, 3), (2, 9), (6, 7), (3, 2)]) {
        let item = RiskItem {
            code: e.code.clone(),
            description: e.description.clone(),
            category: e.category.clone(),
            probability: p,
            impact: i,
        };
        let r = risk_score_and_map(&item, DEFAULT_THRESHOLD)?;
        println!("{:<4} p={p:<2} i={i:<2} score {:>3} {:<8} {}", e.code, r.score, r.quadrant.name(), e.description);
    }
    Ok(())
}
