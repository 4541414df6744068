//! Report records and their table, CSV and JSON renderings.
//!
//! Currency is rounded to cents and ratios to six places before output, so
//! every format carries the same figures.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::money::{fmt_cents, fmt_dollars, round_cents, round_to};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::validation(
                "format",
                format!("expected table, csv or json, got {other:?}"),
            )),
        }
    }
}

pub(crate) fn ratio(v: f64) -> f64 {
    round_to(v, 6)
}

/// `0.6022` → `+60.22%`.
fn fmt_pct(p: f64) -> String {
    let text = format!("{:.2}", round_to(p * 100.0, 2));
    let text = text.trim_end_matches('0').trim_end_matches('.');
    let sign = if p > 0.0 { "+" } else { "" };
    format!("{sign}{text}%")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_bytes<I, R>(header: &[&str], rows: I) -> Result<Vec<u8>>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let err = |e: csv::Error| Error::validation("report", e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(row).map_err(err)?;
    }
    w.into_inner()
        .map_err(|e| Error::validation("report", e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodRow {
    pub period: u32,
    pub cash_flow: f64,
    pub discounted: f64,
    pub cumulative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChangeRow {
    pub name: String,
    pub first: u32,
    pub last: u32,
    pub base: f64,
    pub adjusted: f64,
    pub pct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EconReport {
    pub name: Option<String>,
    pub discount_rate: f64,
    pub npv: f64,
    /// Per-period IRR; `null` when undefined.
    pub irr: Option<f64>,
    /// First period with non-negative cumulative flow; `null` when never.
    pub break_even_period: Option<u32>,
    pub break_even_mode: &'static str,
    pub final_cumulative: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_npv: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_npv: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_pct: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub changes: Vec<ChangeRow>,
    /// Cumulative column follows `break_even_mode`.
    pub periods: Vec<PeriodRow>,
}

impl EconReport {
    fn table(&self) -> String {
        let mut s = String::new();
        let irr = self
            .irr
            .map_or_else(|| "UNDEFINED".to_string(), |r| format!("{:.2}%", r * 100.0));
        let be = self
            .break_even_period
            .map_or_else(|| "NONE".to_string(), |p| p.to_string());
        if let Some(name) = &self.name {
            let _ = writeln!(s, "{:<22}{}", "Scenario", name);
        }
        let _ = writeln!(s, "{:<22}{}", "Discount rate", fmt_pct(self.discount_rate).trim_start_matches('+'));
        let _ = writeln!(s, "{:<22}{}", "NPV", fmt_dollars(self.npv));
        let _ = writeln!(s, "{:<22}{}", "IRR", irr);
        let _ = writeln!(s, "{:<22}{} ({})", "Break-even period", be, self.break_even_mode);
        let _ = writeln!(s, "{:<22}{}", "Final cumulative", fmt_dollars(self.final_cumulative));
        if let (Some(base), Some(delta)) = (self.base_npv, self.delta_npv) {
            let _ = writeln!(s, "{:<22}{}", "Base NPV", fmt_dollars(base));
            let pct = self.delta_pct.map_or_else(|| "n/a".to_string(), fmt_pct);
            let _ = writeln!(s, "{:<22}{} ({})", "Change in NPV", fmt_dollars(delta), pct);
        }
        if !self.changes.is_empty() {
            let _ = writeln!(s);
            let _ = writeln!(
                s,
                "{:<28} {:>8} {:>14} {:>14} {:>9}",
                "Parameter", "Periods", "Base", "Scenario", "Change"
            );
            for c in &self.changes {
                let _ = writeln!(
                    s,
                    "{:<28} {:>8} {:>14} {:>14} {:>9}",
                    c.name,
                    format!("{}-{}", c.first, c.last),
                    fmt_cents(c.base),
                    fmt_cents(c.adjusted),
                    c.pct.map_or_else(String::new, fmt_pct)
                );
            }
        }
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:>6} {:>14} {:>14} {:>14}",
            "Period", "Cash Flow", "Discounted", "Cumulative"
        );
        for p in &self.periods {
            let _ = writeln!(
                s,
                "{:>6} {:>14} {:>14} {:>14}",
                p.period,
                fmt_dollars(p.cash_flow),
                fmt_dollars(p.discounted),
                fmt_dollars(p.cumulative)
            );
        }
        s
    }

    fn csv(&self) -> Result<Vec<u8>> {
        csv_bytes(
            &["period", "cash_flow", "discounted", "cumulative"],
            self.periods.iter().map(|p| {
                [
                    p.period.to_string(),
                    format!("{:.2}", p.cash_flow),
                    format!("{:.2}", p.discounted),
                    format!("{:.2}", p.cumulative),
                ]
            }),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityRowReport {
    pub parameter: String,
    pub pct: f64,
    pub first: u32,
    pub last: u32,
    pub delta_npv: f64,
    pub delta_pct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityReport {
    pub name: Option<String>,
    pub base_npv: f64,
    pub rows: Vec<SensitivityRowReport>,
}

impl SensitivityReport {
    fn table(&self) -> String {
        let mut s = String::new();
        if let Some(name) = &self.name {
            let _ = writeln!(s, "{:<22}{}", "Model", name);
        }
        let _ = writeln!(s, "{:<22}{}", "Base NPV", fmt_dollars(self.base_npv));
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:<28} {:>8} {:>9} {:>16} {:>12}",
            "Parameter", "Periods", "Change", "Change in NPV", "% of NPV"
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:<28} {:>8} {:>9} {:>16} {:>12}",
                r.parameter,
                format!("{}-{}", r.first, r.last),
                fmt_pct(r.pct),
                fmt_dollars(r.delta_npv),
                r.delta_pct.map_or_else(|| "n/a".to_string(), fmt_pct)
            );
        }
        s
    }

    fn csv(&self) -> Result<Vec<u8>> {
        csv_bytes(
            &["parameter", "pct", "first_period", "last_period", "delta_npv", "delta_pct"],
            self.rows.iter().map(|r| {
                [
                    r.parameter.clone(),
                    r.pct.to_string(),
                    r.first.to_string(),
                    r.last.to_string(),
                    format!("{:.2}", r.delta_npv),
                    opt(r.delta_pct),
                ]
            }),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AncReport {
    pub algorithm: &'static str,
    pub sample_rate_hz: f64,
    pub filter_length: usize,
    pub step_size: f64,
    pub duration_samples: usize,
    /// Samples processed before completion or divergence.
    pub samples_run: usize,
    pub window_samples: usize,
    pub steady_state_attenuation_db: f64,
    pub diverged: bool,
    pub attenuation_trace_db: Vec<f64>,
}

impl AncReport {
    fn end_time(&self, window: usize) -> f64 {
        let end = ((window + 1) * self.window_samples).min(self.samples_run);
        ratio(end as f64 / self.sample_rate_hz)
    }

    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<30}{}", "Algorithm", self.algorithm);
        let _ = writeln!(s, "{:<30}{}", "Filter length", self.filter_length);
        let _ = writeln!(s, "{:<30}{}", "Step size", self.step_size);
        let _ = writeln!(s, "{:<30}{} of {}", "Samples run", self.samples_run, self.duration_samples);
        let _ = writeln!(s, "{:<30}{:.2}", "Steady-state attenuation (dB)", self.steady_state_attenuation_db);
        let _ = writeln!(s, "{:<30}{}", "Diverged", if self.diverged { "yes" } else { "no" });
        let _ = writeln!(s);
        let _ = writeln!(s, "{:>6} {:>10} {:>16}", "Window", "End (s)", "Attenuation (dB)");
        for (i, db) in self.attenuation_trace_db.iter().enumerate() {
            let _ = writeln!(s, "{:>6} {:>10.3} {:>16.2}", i + 1, self.end_time(i), db);
        }
        s
    }

    fn csv(&self) -> Result<Vec<u8>> {
        csv_bytes(
            &["window", "end_time_s", "attenuation_db"],
            self.attenuation_trace_db
                .iter()
                .enumerate()
                .map(|(i, db)| [(i + 1).to_string(), self.end_time(i).to_string(), db.to_string()]),
        )
    }
}

/// One costing figure, with the printed value it was checked against.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Figure {
    pub item: String,
    pub computed: f64,
    pub printed: Option<f64>,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostReport {
    pub name: Option<String>,
    pub figures: Vec<Figure>,
}

impl CostReport {
    fn table(&self) -> String {
        let mut s = String::new();
        if let Some(name) = &self.name {
            let _ = writeln!(s, "{name}");
            let _ = writeln!(s);
        }
        let _ = writeln!(s, "{:<56} {:>12} {:>12} {:>5}", "Item", "Computed", "Printed", "Flag");
        for f in &self.figures {
            let _ = writeln!(
                s,
                "{:<56} {:>12} {:>12} {:>5}",
                f.item,
                trim_number(f.computed),
                f.printed.map(trim_number).unwrap_or_default(),
                if f.flagged { "*" } else { "" }
            );
        }
        s
    }

    fn csv(&self) -> Result<Vec<u8>> {
        csv_bytes(
            &["item", "computed", "printed", "flagged"],
            self.figures.iter().map(|f| {
                [f.item.clone(), f.computed.to_string(), opt(f.printed), f.flagged.to_string()]
            }),
        )
    }
}

fn trim_number(v: f64) -> String {
    let text = format!("{:.4}", v);
    text.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConceptRow {
    pub concept: String,
    pub total: f64,
    pub rank: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConceptReport {
    pub criteria: usize,
    pub concepts: Vec<ConceptRow>,
}

impl ConceptReport {
    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<24} {:>12} {:>8}", "Concept", "Total Score", "Ranking");
        for c in &self.concepts {
            let _ = writeln!(s, "{:<24} {:>12.2} {:>8}", c.concept, c.total, c.rank);
        }
        s
    }

    fn csv(&self) -> Result<Vec<u8>> {
        csv_bytes(
            &["concept", "total", "rank"],
            self.concepts
                .iter()
                .map(|c| [c.concept.clone(), c.total.to_string(), c.rank.to_string()]),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiskRow {
    pub code: String,
    pub description: String,
    pub category: String,
    pub probability: Option<u8>,
    pub impact: Option<u8>,
    pub score: Option<u32>,
    pub quadrant: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadrantCounts {
    pub low: usize,
    pub monitor: usize,
    pub urgent: usize,
    pub critical: usize,
    pub unrated: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiskReport {
    pub threshold: u8,
    pub counts: QuadrantCounts,
    pub risks: Vec<RiskRow>,
}

impl RiskReport {
    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<5} {:<48} {:<22} {:>4} {:>4} {:>5} {:<8}",
            "Code", "Risk", "Category", "P", "I", "Score", "Quadrant"
        );
        for r in &self.risks {
            let _ = writeln!(
                s,
                "{:<5} {:<48} {:<22} {:>4} {:>4} {:>5} {:<8}",
                r.code,
                r.description,
                r.category,
                opt(r.probability),
                opt(r.impact),
                opt(r.score),
                r.quadrant.unwrap_or("-")
            );
        }
        let c = &self.counts;
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "threshold {}: {} critical, {} urgent, {} monitor, {} low, {} unrated",
            self.threshold, c.critical, c.urgent, c.monitor, c.low, c.unrated
        );
        s
    }

    fn csv(&self) -> Result<Vec<u8>> {
        csv_bytes(
            &["code", "description", "category", "probability", "impact", "score", "quadrant"],
            self.risks.iter().map(|r| {
                [
                    r.code.clone(),
                    r.description.clone(),
                    r.category.clone(),
                    opt(r.probability),
                    opt(r.impact),
                    opt(r.score),
                    opt(r.quadrant),
                ]
            }),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarketReport {
    pub affected: f64,
    pub affected_rounded: f64,
    pub profit: f64,
    pub profit_exact: f64,
    pub printed_profit: Option<f64>,
    /// Computed profit and the printed figure differ at $0.1M.
    pub profit_flagged: bool,
}

impl MarketReport {
    fn items(&self) -> Vec<(&'static str, String)> {
        vec![
            ("affected", self.affected.to_string()),
            ("affected_rounded", self.affected_rounded.to_string()),
            ("profit", self.profit.to_string()),
            ("profit_exact", self.profit_exact.to_string()),
            ("printed_profit", opt(self.printed_profit)),
            ("profit_flagged", self.profit_flagged.to_string()),
        ]
    }

    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<34}{}", "Affected population", fmt_dollars(self.affected));
        let _ = writeln!(s, "{:<34}{}", "Affected population (rounded)", fmt_dollars(self.affected_rounded));
        let _ = writeln!(s, "{:<34}{}", "Profit", fmt_cents(self.profit));
        let _ = writeln!(s, "{:<34}{}", "Profit (unrounded population)", fmt_cents(self.profit_exact));
        if let Some(p) = self.printed_profit {
            let flag = if self.profit_flagged { " *" } else { "" };
            let _ = writeln!(s, "{:<34}{}{}", "Printed profit", fmt_cents(p), flag);
        }
        s
    }

    fn csv(&self) -> Result<Vec<u8>> {
        csv_bytes(&["item", "value"], self.items().into_iter().map(|(k, v)| [k.to_string(), v]))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Report {
    Econ(EconReport),
    Sensitivity(SensitivityReport),
    Anc(AncReport),
    Cost(CostReport),
    Concept(ConceptReport),
    Risk(RiskReport),
    Market(MarketReport),
}

/// Render `report` in `format`. JSON is pretty-printed; every format ends in
/// a newline.
pub fn emit_report(report: &Report, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report)
                .map_err(|e| Error::validation("report", e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Table => Ok(match report {
            Report::Econ(r) => r.table(),
            Report::Sensitivity(r) => r.table(),
            Report::Anc(r) => r.table(),
            Report::Cost(r) => r.table(),
            Report::Concept(r) => r.table(),
            Report::Risk(r) => r.table(),
            Report::Market(r) => r.table(),
        }
        .into_bytes()),
        Format::Csv => match report {
            Report::Econ(r) => r.csv(),
            Report::Sensitivity(r) => r.csv(),
            Report::Anc(r) => r.csv(),
            Report::Cost(r) => r.csv(),
            Report::Concept(r) => r.csv(),
            Report::Risk(r) => r.csv(),
            Report::Market(r) => r.csv(),
        },
    }
}

pub(crate) fn cents(v: f64) -> f64 {
    round_cents(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pct_formatting() {
        assert_eq!(fmt_pct(-0.3), "-30%");
        assert_eq!(fmt_pct(0.6022), "+60.22%");
        assert_eq!(fmt_pct(0.0), "0%");
    }

    #[test]
    fn unknown_format_names_field() {
        let err = "xml".parse::<Format>().unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("format"));
    }
}
