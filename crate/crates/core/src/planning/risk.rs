//! Probability × impact risk rating and quadrant mapping.

use std::collections::HashSet;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

pub const SCALE: std::ops::RangeInclusive<u8> = 1..=10;
pub const DEFAULT_THRESHOLD: u8 = 5;

pub const REGISTER_HEADER: [&str; 5] = ["Code", "Risks Identified", "Category", "Probability", "Impact"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiskItem {
    pub code: String,
    pub description: String,
    pub category: String,
    pub probability: u8,
    pub impact: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Quadrant {
    Low,
    Monitor,
    Urgent,
    Critical,
}

impl Quadrant {
    pub fn name(self) -> &'static str {
        match self {
            Quadrant::Low => "LOW",
            Quadrant::Monitor => "MONITOR",
            Quadrant::Urgent => "URGENT",
            Quadrant::Critical => "CRITICAL",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RiskRating {
    pub score: u32,
    pub quadrant: Quadrant,
}

/// Score is `probability × impact`. The quadrant splits each axis at
/// `threshold` (inclusive): likely-but-mild risks are URGENT, unlikely-but-
/// severe ones MONITOR.
pub fn risk_score_and_map(item: &RiskItem, threshold: u8) -> Result<RiskRating> {
    for (name, v) in [("probability", item.probability), ("impact", item.impact), ("threshold", threshold)] {
        ensure(SCALE.contains(&v), &format!("{} {name}", item.code), || {
            format!("must lie in 1..=10, got {v}")
        })?;
    }
    let quadrant = match (item.probability >= threshold, item.impact >= threshold) {
        (false, false) => Quadrant::Low,
        (true, false) => Quadrant::Urgent,
        (false, true) => Quadrant::Monitor,
        (true, true) => Quadrant::Critical,
    };
    Ok(RiskRating {
        score: u32::from(item.probability) * u32::from(item.impact),
        quadrant,
    })
}

/// One register row. Probability and impact are left blank until assessed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegisterEntry {
    pub code: String,
    pub description: String,
    pub category: String,
    pub probability: Option<u8>,
    pub impact: Option<u8>,
}

impl RegisterEntry {
    pub fn rated(&self) -> Option<RiskItem> {
        Some(RiskItem {
            code: self.code.clone(),
            description: self.description.clone(),
            category: self.category.clone(),
            probability: self.probability?,
            impact: self.impact?,
        })
    }
}

fn parse_level(raw: &str, field: String) -> Result<Option<u8>> {
    if raw.is_empty() {
        return Ok(None);
    }
    let v: u8 = raw
        .parse()
        .map_err(|_| Error::validation(field.clone(), format!("expected an integer 1..=10, got {raw:?}")))?;
    ensure(SCALE.contains(&v), &field, || format!("must lie in 1..=10, got {v}"))?;
    Ok(Some(v))
}

/// Read a register in the [`REGISTER_HEADER`] layout. Codes must be unique and
/// each row either fully rated or fully blank.
pub fn read_register_csv<R: Read>(reader: R) -> Result<Vec<RegisterEntry>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| Error::validation("header", e.to_string()))?
        .clone();
    let got: Vec<&str> = header.iter().collect();
    ensure(got == REGISTER_HEADER, "header", || {
        format!("expected columns {:?}, got {:?}", REGISTER_HEADER, got)
    })?;

    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = record.map_err(|e| Error::validation(format!("row {row}"), e.to_string()))?;
        let code = rec[0].to_string();
        ensure(seen.insert(code.clone()), &format!("row {row} Code"), || {
            format!("duplicate risk code {code:?}")
        })?;
        let entry = RegisterEntry {
            description: rec[1].to_string(),
            category: rec[2].to_string(),
            probability: parse_level(&rec[3], format!("{code} probability"))?,
            impact: parse_level(&rec[4], format!("{code} impact"))?,
            code,
        };
        ensure(
            entry.probability.is_some() == entry.impact.is_some(),
            &format!("{} rating", entry.code),
            || "probability and impact must both be given or both be blank".into(),
        )?;
        entries.push(entry);
    }
    Ok(entries)
}
