//! Roll up the shipped bill of materials, cost the assembly and derive the
//! design-for-assembly figures.

use std::fs::File;
use std::path::PathBuf;

use anc_toolkit::costing::{
    assembly_cost, bom_rollup, check_printed_totals, cost_reduction_report, dfa_index, gross_margin, part_count,
    read_assembly_csv, read_bom_csv, OverheadRates, PrintedBomTotals,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let lines = read_bom_csv(File::open(dir.join("bom_initial.csv"))?)?;
    let rates = OverheadRates { materials_rate: 0.1, labor_rate: 0.8 };
    let s = bom_rollup(&lines, 0.2, &rates, 0.32, None)?;
    println!("{} rows", lines.len());
    println!("direct cost    {:>8.2}", s.direct_cost());
    println!("overhead       {:>8.2}", s.overhead);
    println!("warranty       {:>8.2}", s.warranty);
    println!("total          {:>8.2}", s.total_manufacturing);

    let printed = PrintedBomTotals { direct_cost: Some(107.16), overhead: Some(13.54), warranty: Some(0.32), total: Some(121.02) };
    for d in check_printed_totals(&s, &printed).iter().filter(|d| d.flagged) {
        println!("mismatch: {} computed {:.2}, printed {:.2}", d.item, d.computed, d.printed);
    }

    let ops = read_assembly_csv(File::open(dir.join("assembly.csv"))?)?;
    let a = assembly_cost(&ops, 10.0)?;
    let parts = part_count(&ops);
    println!("assembly {:.0} s for {parts} parts, {:.2} at $10/h", a.total_s, a.cost);
    println!("DFA index {:.3}", dfa_index(parts, a.total_s)?);

    let r = cost_reduction_report(121.02, 92.5)?;
    println!("redesign saves {:.2} ({:.2}%)", r.savings, r.pct * 100.0);
    println!("gross margin at $300: {:.1}%", gross_margin(300.0, 92.5)? * 100.0);
    Ok(())
}
