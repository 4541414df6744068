//! Weighted concept scoring.

use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

pub const RATING_RANGE: std::ops::RangeInclusive<u8> = 1..=3;
const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub name: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Concept {
    pub name: String,
    /// One rating per criterion, in criterion order.
    pub ratings: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptMatrix {
    pub criteria: Vec<Criterion>,
    pub concepts: Vec<Concept>,
}

impl ConceptMatrix {
    pub fn validate(&self) -> Result<()> {
        ensure(!self.criteria.is_empty(), "criteria", || "matrix has no criteria".into())?;
        for c in &self.criteria {
            ensure(
                c.weight.is_finite() && c.weight >= 0.0,
                &format!("weight of {}", c.name),
                || format!("must be a non-negative fraction, got {}", c.weight),
            )?;
        }
        let sum: f64 = self.criteria.iter().map(|c| c.weight).sum();
        ensure((sum - 1.0).abs() <= WEIGHT_SUM_TOLERANCE, "weights", || {
            format!("must sum to 1, got {sum}")
        })?;
        for concept in &self.concepts {
            ensure(
                concept.ratings.len() == self.criteria.len(),
                &format!("ratings of {}", concept.name),
                || {
                    format!(
                        "expected {} ratings, got {}",
                        self.criteria.len(),
                        concept.ratings.len()
                    )
                },
            )?;
            for (criterion, r) in self.criteria.iter().zip(&concept.ratings) {
                ensure(
                    RATING_RANGE.contains(r),
                    &format!("rating of {} on {}", concept.name, criterion.name),
                    || format!("must lie in 1..=3, got {r}"),
                )?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConceptScore {
    pub name: String,
    pub total: f64,
    /// 1 is best.
    pub rank: u32,
}

/// Weighted total per concept, in input order, with ranks by descending total.
/// Ties keep input order.
pub fn concept_score(matrix: &ConceptMatrix) -> Result<Vec<ConceptScore>> {
    matrix.validate()?;
    let totals: Vec<f64> = matrix
        .concepts
        .iter()
        .map(|c| {
            matrix
                .criteria
                .iter()
                .zip(&c.ratings)
                .map(|(k, &r)| k.weight * f64::from(r))
                .sum()
        })
        .collect();

    let mut order: Vec<usize> = (0..totals.len()).collect();
    order.sort_by(|&a, &b| totals[b].total_cmp(&totals[a]));
    let mut ranks = vec![0u32; totals.len()];
    for (rank, &i) in order.iter().enumerate() {
        ranks[i] = rank as u32 + 1;
    }

    Ok(matrix
        .concepts
        .iter()
        .zip(totals)
        .zip(ranks)
        .map(|((c, total), rank)| ConceptScore {
            name: c.name.clone(),
            total,
            rank,
        })
        .collect())
}

/// Parse `8%` or `0.08`.
fn parse_weight(raw: &str, row: usize) -> Result<f64> {
    let raw = raw.trim();
    let bad = || Error::validation(format!("row {row} Weight"), format!("expected a fraction or percentage, got {raw:?}"));
    match raw.strip_suffix('%') {
        Some(pct) => pct.trim().parse::<f64>().map(|p| p / 100.0).map_err(|_| bad()),
        None => raw.parse::<f64>().map_err(|_| bad()),
    }
}

/// Read a matrix laid out as `Selection Criteria,Weight,<concept>...`, one row
/// per criterion holding each concept's rating.
pub fn read_concept_csv<R: Read>(reader: R) -> Result<ConceptMatrix> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| Error::validation("header", e.to_string()))?
        .clone();
    ensure(
        header.len() >= 3
            && &header[0] == "Selection Criteria"
            && &header[1] == "Weight",
        "header",
        || "expected `Selection Criteria,Weight,` followed by one column per concept".into(),
    )?;

    let mut concepts: Vec<Concept> = header
        .iter()
        .skip(2)
        .map(|name| Concept {
            name: name.to_string(),
            ratings: Vec::new(),
        })
        .collect();
    let mut criteria = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = record.map_err(|e| Error::validation(format!("row {row}"), e.to_string()))?;
        criteria.push(Criterion {
            name: rec[0].to_string(),
            weight: parse_weight(&rec[1], row)?,
        });
        for (concept, raw) in concepts.iter_mut().zip(rec.iter().skip(2)) {
            let rating = raw.parse().map_err(|_| {
                Error::validation(
                    format!("row {row} {}", concept.name),
                    format!("expected an integer rating, got {raw:?}"),
                )
            })?;
            concept.ratings.push(rating);
        }
    }
    let matrix = ConceptMatrix { criteria, concepts };
    matrix.validate()?;
    Ok(matrix)
}
