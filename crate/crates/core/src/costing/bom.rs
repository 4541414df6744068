//! Bill-of-materials roll-up.
//!
//! Each row's costs are per-device aggregates: `qty` is carried for reference
//! and does not multiply anything. A row for eight bolts lists the cost of all
//! eight.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::costing::dfm::Discrepancy;
use crate::error::{ensure, Error, Result};
use crate::money::round_cents;

pub const BOM_HEADER: [&str; 7] = [
    "Component",
    "Qty required",
    "Purchased Costs",
    "Processing",
    "Assembly (labor)",
    "Total Unit Variable",
    "Suppliers",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BomLine {
    pub component: String,
    pub qty: u32,
    pub purchased: f64,
    pub processing: f64,
    pub assembly_labor: f64,
    pub supplier: String,
}

impl BomLine {
    pub fn line_total(&self) -> f64 {
        self.purchased + self.processing + self.assembly_labor
    }

    fn validate(&self, row: usize) -> Result<()> {
        let field = |name: &str| format!("row {row} ({}) {name}", self.component);
        ensure(self.qty >= 1, &field("qty"), || "must be at least 1".into())?;
        for (name, v) in [
            ("purchased", self.purchased),
            ("processing", self.processing),
            ("assembly_labor", self.assembly_labor),
        ] {
            ensure(v.is_finite() && v >= 0.0, &field(name), || {
                format!("cost must be finite and non-negative, got {v}")
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverheadRates {
    /// Surcharge on purchased materials, as a fraction.
    pub materials_rate: f64,
    /// Surcharge on assembly labor, as a fraction.
    pub labor_rate: f64,
}

impl OverheadRates {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("materials_rate", self.materials_rate),
            ("labor_rate", self.labor_rate),
        ] {
            ensure((0.0..=10.0).contains(&v), name, || {
                format!("must lie in [0, 10], got {v}")
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct BomSummary {
    pub direct_materials: f64,
    pub direct_processing: f64,
    pub direct_labor: f64,
    pub shipment: f64,
    pub overhead: f64,
    pub warranty: f64,
    pub total_manufacturing: f64,
}

impl BomSummary {
    /// Materials, processing and labor columns.
    pub fn direct_columns(&self) -> f64 {
        self.direct_materials + self.direct_processing + self.direct_labor
    }

    /// Direct columns plus shipment: the "Total Direct Cost" line.
    pub fn direct_cost(&self) -> f64 {
        self.direct_columns() + self.shipment
    }
}

/// `materials·materials_rate + labor·labor_rate`.
pub fn overhead_cost(materials: f64, labor: f64, rates: &OverheadRates) -> Result<f64> {
    rates.validate()?;
    for (name, v) in [("materials", materials), ("labor", labor)] {
        ensure(v.is_finite() && v >= 0.0, name, || {
            format!("must be finite and non-negative, got {v}")
        })?;
    }
    Ok(materials * rates.materials_rate + labor * rates.labor_rate)
}

/// Sum the BOM columns and add shipment, overhead and warranty.
///
/// Overhead is computed from `rates` unless `overhead_override` is given.
pub fn bom_rollup(
    lines: &[BomLine],
    shipment: f64,
    rates: &OverheadRates,
    warranty: f64,
    overhead_override: Option<f64>,
) -> Result<BomSummary> {
    for (i, line) in lines.iter().enumerate() {
        line.validate(i + 1)?;
    }
    for (name, v) in [
        ("shipment", shipment),
        ("warranty", warranty),
        ("overhead_override", overhead_override.unwrap_or(0.0)),
    ] {
        ensure(v.is_finite() && v >= 0.0, name, || {
            format!("must be finite and non-negative, got {v}")
        })?;
    }

    let direct_materials: f64 = lines.iter().map(|l| l.purchased).sum();
    let direct_processing: f64 = lines.iter().map(|l| l.processing).sum();
    let direct_labor: f64 = lines.iter().map(|l| l.assembly_labor).sum();
    let overhead = match overhead_override {
        Some(v) => v,
        None => overhead_cost(direct_materials, direct_labor, rates)?,
    };
    let mut summary = BomSummary {
        direct_materials,
        direct_processing,
        direct_labor,
        shipment,
        overhead,
        warranty,
        total_manufacturing: 0.0,
    };
    summary.total_manufacturing = summary.direct_cost() + overhead + warranty;
    Ok(summary)
}

fn parse_number<T: std::str::FromStr>(raw: &str, field: &str, row: usize) -> Result<T> {
    let cleaned = raw.trim().trim_start_matches('$').trim();
    cleaned.parse().map_err(|_| {
        Error::validation(
            format!("row {row} {field}"),
            format!("expected a number, got {raw:?}"),
        )
    })
}

/// Read a BOM in the seven-column layout of [`BOM_HEADER`].
///
/// The "Total Unit Variable" column is checked against the row's three cost
/// columns at cent precision.
pub fn read_bom_csv<R: Read>(reader: R) -> Result<Vec<BomLine>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| Error::validation("header", e.to_string()))?
        .clone();
    let got: Vec<&str> = header.iter().collect();
    ensure(got == BOM_HEADER, "header", || {
        format!("expected columns {:?}, got {:?}", BOM_HEADER, got)
    })?;

    let mut lines = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = record.map_err(|e| Error::validation(format!("row {row}"), e.to_string()))?;
        let line = BomLine {
            component: rec[0].to_string(),
            qty: parse_number(&rec[1], "Qty required", row)?,
            purchased: parse_number(&rec[2], "Purchased Costs", row)?,
            processing: parse_number(&rec[3], "Processing", row)?,
            assembly_labor: parse_number(&rec[4], "Assembly (labor)", row)?,
            supplier: rec[6].to_string(),
        };
        line.validate(row)?;
        let stated: f64 = parse_number(&rec[5], "Total Unit Variable", row)?;
        ensure(
            round_cents(stated) == round_cents(line.line_total()),
            &format!("row {row} ({}) Total Unit Variable", line.component),
            || format!("{stated} does not equal the sum of cost columns {:.2}", line.line_total()),
        )?;
        lines.push(line);
    }
    Ok(lines)
}

pub fn write_bom_csv<W: Write>(writer: W, lines: &[BomLine]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| Error::validation("bom", e.to_string());
    wtr.write_record(BOM_HEADER).map_err(io)?;
    for l in lines {
        wtr.write_record([
            l.component.clone(),
            l.qty.to_string(),
            l.purchased.to_string(),
            l.processing.to_string(),
            l.assembly_labor.to_string(),
            format!("{:.2}", l.line_total()),
            l.supplier.clone(),
        ])
        .map_err(io)?;
    }
    wtr.flush()
        .map_err(|e| Error::validation("bom", e.to_string()))
}

/// Summary figures as printed in a source table, for cross-checking.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrintedBomTotals {
    pub direct_cost: Option<f64>,
    pub overhead: Option<f64>,
    pub warranty: Option<f64>,
    pub total: Option<f64>,
}

/// Compare a roll-up against printed figures, and the printed total against
/// the sum of the printed parts it should be built from.
pub fn check_printed_totals(summary: &BomSummary, printed: &PrintedBomTotals) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    if let Some(p) = printed.direct_cost {
        out.push(Discrepancy::cents("direct cost", summary.direct_cost(), p));
    }
    if let Some(p) = printed.overhead {
        out.push(Discrepancy::cents("overhead", summary.overhead, p));
    }
    if let Some(p) = printed.warranty {
        out.push(Discrepancy::cents("warranty", summary.warranty, p));
    }
    if let Some(p) = printed.total {
        out.push(Discrepancy::cents("total manufacturing cost", summary.total_manufacturing, p));
    }
    if let (Some(d), Some(o), Some(w), Some(t)) =
        (printed.direct_cost, printed.overhead, printed.warranty, printed.total)
    {
        out.push(Discrepancy::cents(
            "printed total vs printed direct + overhead + warranty",
            d + o + w,
            t,
        ));
    }
    out
}
