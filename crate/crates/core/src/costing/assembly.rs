//! Manual assembly time and labor cost.

use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

pub const ASSEMBLY_HEADER: [&str; 5] = [
    "Parts",
    "Quantity",
    "Handling Time (s)",
    "Insertion Time (s)",
    "Total Time (s)",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssemblyOp {
    pub part: String,
    pub qty: u32,
    pub handling_s: f64,
    pub insertion_s: f64,
}

impl AssemblyOp {
    pub fn total_s(&self) -> f64 {
        self.handling_s + self.insertion_s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AssemblyCost {
    pub total_s: f64,
    pub cost: f64,
}

/// Total handling plus insertion time, costed at `hourly_rate`.
pub fn assembly_cost(ops: &[AssemblyOp], hourly_rate: f64) -> Result<AssemblyCost> {
    ensure(hourly_rate.is_finite() && hourly_rate >= 0.0, "hourly_rate", || {
        format!("must be finite and non-negative, got {hourly_rate}")
    })?;
    for op in ops {
        ensure(
            op.handling_s >= 0.0 && op.insertion_s >= 0.0,
            &format!("{} time", op.part),
            || "handling and insertion times must be non-negative".into(),
        )?;
    }
    let total_s: f64 = ops.iter().map(AssemblyOp::total_s).sum();
    Ok(AssemblyCost {
        total_s,
        cost: total_s / 3600.0 * hourly_rate,
    })
}

/// Total number of parts handled across all operations.
pub fn part_count(ops: &[AssemblyOp]) -> u32 {
    ops.iter().map(|op| op.qty).sum()
}

/// Read operations in the [`ASSEMBLY_HEADER`] layout; the total column must
/// equal handling plus insertion.
pub fn read_assembly_csv<R: Read>(reader: R) -> Result<Vec<AssemblyOp>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| Error::validation("header", e.to_string()))?
        .clone();
    let got: Vec<&str> = header.iter().collect();
    ensure(got == ASSEMBLY_HEADER, "header", || {
        format!("expected columns {:?}, got {:?}", ASSEMBLY_HEADER, got)
    })?;

    let mut ops = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = record.map_err(|e| Error::validation(format!("row {row}"), e.to_string()))?;
        let num = |col: usize| -> Result<f64> {
            rec[col].parse().map_err(|_| {
                Error::validation(
                    format!("row {row} {}", ASSEMBLY_HEADER[col]),
                    format!("expected a number, got {:?}", &rec[col]),
                )
            })
        };
        let op = AssemblyOp {
            part: rec[0].to_string(),
            qty: rec[1].parse().map_err(|_| {
                Error::validation(format!("row {row} Quantity"), format!("expected an integer, got {:?}", &rec[1]))
            })?,
            handling_s: num(2)?,
            insertion_s: num(3)?,
        };
        let stated = num(4)?;
        ensure(stated == op.total_s(), &format!("row {row} Total Time (s)"), || {
            format!("{stated} does not equal handling + insertion = {}", op.total_s())
        })?;
        ops.push(op);
    }
    Ok(ops)
}
