//! JSON configuration documents for each subcommand.
//!
//! Relative file paths inside a config resolve against the config's directory.

use std::fs::File;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::anc::{AncConfig, FirPath, DEFAULT_SAMPLE_RATE_HZ};
use crate::costing::{OverheadRates, PrintedBomTotals};
use crate::econ::{Adjustment, ModelSpec, Target};
use crate::error::{Error, Result};
use crate::planning::{ConceptMatrix, MarketParams, DEFAULT_THRESHOLD};

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn parse_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Resolve `file` relative to the directory holding `config`.
pub(crate) fn resolve(config: &Path, file: &Path) -> PathBuf {
    if file.is_absolute() {
        file.to_path_buf()
    } else {
        config.parent().unwrap_or(Path::new("")).join(file)
    }
}

pub(crate) fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// A cash-flow model plus optional adjustments and sensitivity settings.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EconConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub model: ModelSpec,
    #[serde(default)]
    pub adjustments: Vec<Adjustment>,
    /// Targets for `econ sensitivity`; every expense line then units, price
    /// and cost when absent.
    #[serde(default)]
    pub targets: Option<Vec<Target>>,
    #[serde(default)]
    pub pcts: Option<Vec<f64>>,
}

/// A fixed path: explicit taps, or one of `IDENTITY`, `ROOM_PRIMARY`,
/// `ROOM_SECONDARY`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PathSpec {
    Taps(FirPath),
    Named(String),
}

impl PathSpec {
    pub fn build(&self, field: &str) -> Result<FirPath> {
        match self {
            PathSpec::Taps(p) => Ok(p.clone()),
            PathSpec::Named(name) => match name.as_str() {
                "IDENTITY" => Ok(FirPath::identity()),
                "ROOM_PRIMARY" => Ok(FirPath::room_primary()),
                "ROOM_SECONDARY" => Ok(FirPath::room_secondary()),
                other => Err(Error::validation(
                    field,
                    format!("expected a list of taps or IDENTITY, ROOM_PRIMARY, ROOM_SECONDARY; got {other:?}"),
                )),
            },
        }
    }
}

fn unit() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Stimulus {
    Tone {
        freq_hz: f64,
        #[serde(default = "unit")]
        amplitude: f64,
        #[serde(default)]
        phase_rad: f64,
    },
    /// Band-limited noise drawn from the controller's `rng_seed`.
    Broadband {
        low_hz: f64,
        high_hz: f64,
        #[serde(default = "unit")]
        amplitude: f64,
    },
}

fn default_fs() -> f64 {
    DEFAULT_SAMPLE_RATE_HZ
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AncSimConfig {
    #[serde(default = "default_fs")]
    pub sample_rate_hz: f64,
    pub stimulus: Stimulus,
    pub primary: PathSpec,
    pub secondary: PathSpec,
    pub controller: AncConfig,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionConfig {
    pub old_total: f64,
    pub new_total: f64,
    /// Printed saving in percent, checked at two decimals.
    #[serde(default)]
    pub printed_pct: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarginConfig {
    pub unit_price: f64,
    pub unit_cost: f64,
    /// Printed margin in percent, checked at one decimal.
    #[serde(default)]
    pub printed: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssemblyConfig {
    pub csv: PathBuf,
    pub hourly_rate: f64,
    /// Printed labor cost to check the computed one against.
    #[serde(default)]
    pub printed_cost: Option<f64>,
    /// Theoretical minimum part count for the DFA index; defaults to the
    /// number of parts in the file.
    #[serde(default)]
    pub min_parts: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub bom_csv: PathBuf,
    pub shipment: f64,
    pub overhead_rates: OverheadRates,
    pub warranty: f64,
    #[serde(default)]
    pub overhead_override: Option<f64>,
    #[serde(default)]
    pub printed: PrintedBomTotals,
    #[serde(default)]
    pub assembly: Option<AssemblyConfig>,
    #[serde(default)]
    pub reduction: Option<ReductionConfig>,
    #[serde(default)]
    pub margin: Option<MarginConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConceptFile {
    concepts_csv: PathBuf,
}

/// A concept CSV, or JSON holding either `{"concepts_csv": path}` or the
/// matrix itself.
pub fn load_concepts(path: &Path) -> Result<ConceptMatrix> {
    if is_csv(path) {
        return crate::planning::read_concept_csv(open(path)?);
    }
    let value: serde_json::Value = parse_json(path)?;
    let parse_err = |e: serde_json::Error| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    if value.get("concepts_csv").is_some() {
        let file: ConceptFile = serde_json::from_value(value).map_err(parse_err)?;
        let csv = resolve(path, &file.concepts_csv);
        crate::planning::read_concept_csv(open(&csv)?)
    } else {
        serde_json::from_value(value).map_err(parse_err)
    }
}

fn default_threshold() -> u8 {
    DEFAULT_THRESHOLD
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RiskConfig {
    pub register_csv: PathBuf,
    #[serde(default = "default_threshold")]
    pub threshold: u8,
}

/// A register CSV (default threshold) or a [`RiskConfig`] JSON. Returns the
/// register path and threshold.
pub fn load_risk(path: &Path) -> Result<(PathBuf, u8)> {
    if is_csv(path) {
        return Ok((path.to_path_buf(), DEFAULT_THRESHOLD));
    }
    let cfg: RiskConfig = parse_json(path)?;
    Ok((resolve(path, &cfg.register_csv), cfg.threshold))
}

/// Unknown keys are rejected by the flattened [`MarketParams`].
#[derive(Debug, Clone, Deserialize)]
pub struct MarketConfig {
    #[serde(flatten)]
    pub params: MarketParams,
    /// Profit as printed in a source document, checked at $0.1M precision.
    #[serde(default)]
    pub printed_profit: Option<f64>,
}
