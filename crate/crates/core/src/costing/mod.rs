//! Unit manufacturing cost: BOM roll-up, assembly labor, overhead and the
//! design-for-manufacture figures derived from them.

pub mod assembly;
pub mod bom;
pub mod dfm;

pub use assembly::{assembly_cost, part_count, read_assembly_csv, AssemblyCost, AssemblyOp};
pub use bom::{
    bom_rollup, check_printed_totals, overhead_cost, read_bom_csv, write_bom_csv, BomLine,
    BomSummary, OverheadRates, PrintedBomTotals,
};
pub use dfm::{cost_reduction_report, dfa_index, gross_margin, CostReduction, Discrepancy};
