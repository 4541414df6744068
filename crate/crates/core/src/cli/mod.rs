//! Command-line front end: parse a config, run one engine, write a report.

mod config;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand as ClapSubcommand};

use crate::anc::{anc_run, generate_broadband, generate_tone};
use crate::costing::{
    assembly_cost, bom_rollup, check_printed_totals, cost_reduction_report, dfa_index, gross_margin,
    part_count, read_assembly_csv, read_bom_csv, Discrepancy,
};
use crate::econ::{
    all_targets, apply_adjustments, cumulative_flows, evaluate, run_scenario, sensitivity_grid, EconResult,
    ModelSpec, DEFAULT_SENSITIVITY_PCTS,
};
use crate::error::{Error, Result};
use crate::planning::{concept_score, market_size_estimate, read_register_csv, risk_score_and_map, Quadrant};

pub use config::{AncSimConfig, CostConfig, EconConfig, MarketConfig, PathSpec, RiskConfig, Stimulus};
pub use report::{
    emit_report, AncReport, ChangeRow, ConceptReport, ConceptRow, CostReport, EconReport, Figure, Format,
    MarketReport, PeriodRow, QuadrantCounts, Report, RiskReport, RiskRow, SensitivityReport,
    SensitivityRowReport,
};

use report::{cents, ratio};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    AncSimulate,
    EconNpv,
    EconScenario,
    EconSensitivity,
    CostBom,
    PlanConcept,
    PlanRisk,
    PlanMarket,
}

/// A fully parsed invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Command {
    pub subcommand: Subcommand,
    pub config_path: PathBuf,
    pub format: Format,
    pub output_path: Option<PathBuf>,
    /// Treat an undefined IRR as a numerical failure.
    pub require_irr: bool,
    /// Use discounted cumulative flow for break-even and the cumulative column.
    pub discounted_breakeven: bool,
}

impl Command {
    pub fn new(subcommand: Subcommand, config_path: impl Into<PathBuf>, format: Format) -> Self {
        Self {
            subcommand,
            config_path: config_path.into(),
            format,
            output_path: None,
            require_irr: false,
            discounted_breakeven: false,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "anc-toolkit", version, about = "Noise-control simulation and product economics")]
pub struct Cli {
    #[command(subcommand)]
    group: Group,

    /// JSON configuration file (CSV accepted by `plan concept` and `plan risk`).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Report format: table, csv or json.
    #[arg(long, global = true, default_value = "table")]
    format: String,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Exit with status 2 when the IRR is undefined.
    #[arg(long, global = true)]
    require_irr: bool,

    /// Measure break-even on discounted cumulative cash flow.
    #[arg(long, global = true)]
    discounted_breakeven: bool,
}

#[derive(Debug, ClapSubcommand)]
enum Group {
    /// Adaptive noise-cancellation simulation.
    Anc {
        #[command(subcommand)]
        action: AncAction,
    },
    /// Cash-flow models.
    Econ {
        #[command(subcommand)]
        action: EconAction,
    },
    /// Manufacturing cost.
    Cost {
        #[command(subcommand)]
        action: CostAction,
    },
    /// Concept selection, risk and market sizing.
    Plan {
        #[command(subcommand)]
        action: PlanAction,
    },
}

#[derive(Debug, ClapSubcommand)]
enum AncAction {
    /// Run a controller against a tone or broadband stimulus.
    Simulate,
}

#[derive(Debug, ClapSubcommand)]
enum EconAction {
    /// NPV, IRR and break-even of a model.
    Npv,
    /// A model with adjustments, compared with the unadjusted model.
    Scenario,
    /// Single-parameter NPV sensitivity grid.
    Sensitivity,
}

#[derive(Debug, ClapSubcommand)]
enum CostAction {
    /// Bill-of-materials roll-up with assembly and DFM figures.
    Bom,
}

#[derive(Debug, ClapSubcommand)]
enum PlanAction {
    /// Weighted concept scoring.
    Concept,
    /// Risk register scoring and quadrant mapping.
    Risk,
    /// Market size and profit estimate.
    Market,
}

impl TryFrom<Cli> for Command {
    type Error = Error;

    fn try_from(cli: Cli) -> Result<Self> {
        let subcommand = match cli.group {
            Group::Anc { action: AncAction::Simulate } => Subcommand::AncSimulate,
            Group::Econ { action } => match action {
                EconAction::Npv => Subcommand::EconNpv,
                EconAction::Scenario => Subcommand::EconScenario,
                EconAction::Sensitivity => Subcommand::EconSensitivity,
            },
            Group::Cost { action: CostAction::Bom } => Subcommand::CostBom,
            Group::Plan { action } => match action {
                PlanAction::Concept => Subcommand::PlanConcept,
                PlanAction::Risk => Subcommand::PlanRisk,
                PlanAction::Market => Subcommand::PlanMarket,
            },
        };
        let config_path = cli
            .config
            .ok_or_else(|| Error::validation("config", "--config PATH is required"))?;
        Ok(Command {
            subcommand,
            config_path,
            format: cli.format.parse()?,
            output_path: cli.output,
            require_irr: cli.require_irr,
            discounted_breakeven: cli.discounted_breakeven,
        })
    }
}

/// Parse command-line arguments into a [`Command`].
pub fn parse_args<I, T>(args: I) -> std::result::Result<Command, ParseFailure>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(ParseFailure::Clap)?;
    Command::try_from(cli).map_err(ParseFailure::Invalid)
}

#[derive(Debug)]
pub enum ParseFailure {
    /// Usage error, or a help/version request.
    Clap(clap::Error),
    Invalid(Error),
}

/// Entry point for the binary: parse, run, and return the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(args) {
        Ok(cmd) => run_command(&cmd),
        Err(ParseFailure::Clap(e)) => {
            let _ = e.print();
            if e.use_stderr() {
                1
            } else {
                0
            }
        }
        Err(ParseFailure::Invalid(e)) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// The rendered report and, if the run completed but must still fail (a
/// diverged simulation, an undefined IRR under `--require-irr`), the error.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub bytes: Vec<u8>,
    pub failure: Option<Error>,
}

/// Run `cmd` without writing anything.
pub fn execute(cmd: &Command) -> Result<Outcome> {
    let (report, failure) = match cmd.subcommand {
        Subcommand::AncSimulate => anc_simulate(cmd)?,
        Subcommand::EconNpv | Subcommand::EconScenario => econ_report(cmd)?,
        Subcommand::EconSensitivity => (econ_sensitivity(cmd)?, None),
        Subcommand::CostBom => (cost_bom(cmd)?, None),
        Subcommand::PlanConcept => (plan_concept(cmd)?, None),
        Subcommand::PlanRisk => (plan_risk(cmd)?, None),
        Subcommand::PlanMarket => (plan_market(cmd)?, None),
    };
    let bytes = emit_report(&report, cmd.format)?;
    Ok(Outcome {
        report,
        bytes,
        failure,
    })
}

/// Run `cmd`, write its report, and return the exit status: 0 on success,
/// 1 for invalid configuration, 2 for numerical failure, 3 for I/O failure.
/// Failures are described on standard error.
pub fn run_command(cmd: &Command) -> i32 {
    let outcome = match execute(cmd) {
        Ok(o) => o,
        Err(e) => return report_error(cmd, &e),
    };
    if let Err(e) = write_report(cmd, &outcome.bytes) {
        return report_error(cmd, &e);
    }
    match &outcome.failure {
        Some(e) => report_error(cmd, e),
        None => 0,
    }
}

fn report_error(cmd: &Command, e: &Error) -> i32 {
    match e {
        Error::Validation { .. } | Error::Numerical(_) => {
            eprintln!("error: {}: {e}", cmd.config_path.display())
        }
        _ => eprintln!("error: {e}"),
    }
    e.exit_code()
}

fn write_report(cmd: &Command, bytes: &[u8]) -> Result<()> {
    match &cmd.output_path {
        Some(path) => std::fs::write(path, bytes).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(bytes)
            .map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn anc_simulate(cmd: &Command) -> Result<(Report, Option<Error>)> {
    let cfg: AncSimConfig = config::parse_json(&cmd.config_path)?;
    let ctl = &cfg.controller;
    ctl.validate()?;
    let n = ctl.duration_samples;
    let fs = cfg.sample_rate_hz;
    let noise = match cfg.stimulus {
        Stimulus::Tone {
            freq_hz,
            amplitude,
            phase_rad,
        } => generate_tone(freq_hz, amplitude, phase_rad, n, fs)?,
        Stimulus::Broadband {
            low_hz,
            high_hz,
            amplitude,
        } => generate_broadband(ctl.rng_seed, low_hz, high_hz, n, fs)?.scaled(amplitude)?,
    };
    let primary = cfg.primary.build("primary")?;
    let secondary = cfg.secondary.build("secondary")?;
    let result = anc_run(ctl, &noise, &primary, &secondary)?;

    let db = |v: f64| round_db(v);
    let report = AncReport {
        algorithm: ctl.algorithm.name(),
        sample_rate_hz: fs,
        filter_length: ctl.filter_length,
        step_size: ctl.step_size,
        duration_samples: n,
        samples_run: result.residual.len(),
        window_samples: result.window_samples,
        steady_state_attenuation_db: db(result.steady_state_attenuation_db),
        diverged: result.diverged,
        attenuation_trace_db: result.attenuation_trace_db.iter().copied().map(db).collect(),
    };
    let failure = result.diverged.then(|| {
        Error::Numerical(format!(
            "adaptive filter diverged after {} of {n} samples (step_size {})",
            result.residual.len(),
            ctl.step_size
        ))
    });
    Ok((Report::Anc(report), failure))
}

fn round_db(v: f64) -> f64 {
    crate::money::round_to(v, 4)
}

fn econ_model(cmd: &Command) -> Result<(EconConfig, ModelSpec)> {
    let cfg: EconConfig = config::parse_json(&cmd.config_path)?;
    cfg.model.validate()?;
    let adjusted = apply_adjustments(&cfg.model, &cfg.adjustments)?;
    Ok((cfg, adjusted))
}

fn break_even_mode(discounted: bool) -> &'static str {
    if discounted {
        "discounted"
    } else {
        "undiscounted"
    }
}

fn econ_result_report(name: Option<String>, spec: &ModelSpec, res: &EconResult) -> EconReport {
    let cumulative = cumulative_flows(&res.cash_flows, spec.discount_rate, res.break_even_discounted);
    let periods = res
        .cash_flows
        .iter()
        .zip(&res.discounted_flows)
        .zip(&cumulative)
        .enumerate()
        .map(|(i, ((&c, &d), &cum))| PeriodRow {
            period: i as u32 + 1,
            cash_flow: cents(c),
            discounted: cents(d),
            cumulative: cents(cum),
        })
        .collect();
    EconReport {
        name,
        discount_rate: spec.discount_rate,
        npv: cents(res.npv),
        irr: res.irr.map(ratio),
        break_even_period: res.break_even_period,
        break_even_mode: break_even_mode(res.break_even_discounted),
        final_cumulative: cents(cumulative.last().copied().unwrap_or(0.0)),
        base_npv: None,
        delta_npv: None,
        delta_pct: None,
        changes: Vec::new(),
        periods,
    }
}

fn econ_report(cmd: &Command) -> Result<(Report, Option<Error>)> {
    let (cfg, adjusted) = econ_model(cmd)?;
    let report = if cmd.subcommand == Subcommand::EconNpv {
        let res = evaluate(&adjusted, cmd.discounted_breakeven)?;
        econ_result_report(cfg.name, &adjusted, &res)
    } else {
        let out = run_scenario(&cfg.model, &cfg.adjustments, cmd.discounted_breakeven)?;
        let mut r = econ_result_report(cfg.name, &adjusted, &out.result);
        r.base_npv = Some(cents(out.base_npv));
        r.delta_npv = Some(cents(out.delta_npv));
        r.delta_pct = out.delta_pct.map(ratio);
        r.changes = out
            .lines
            .iter()
            .map(|l| ChangeRow {
                name: l.name.clone(),
                first: l.first,
                last: l.last,
                base: cents(l.base),
                adjusted: cents(l.adjusted),
                pct: l.pct.map(ratio),
            })
            .collect();
        r
    };
    let failure = (cmd.require_irr && report.irr.is_none()).then(|| {
        Error::Numerical("IRR is undefined: NPV has no root in the search range".into())
    });
    Ok((Report::Econ(report), failure))
}

fn econ_sensitivity(cmd: &Command) -> Result<Report> {
    let (cfg, adjusted) = econ_model(cmd)?;
    let targets = cfg.targets.clone().unwrap_or_else(|| all_targets(&adjusted));
    let pcts = cfg.pcts.clone().unwrap_or_else(|| DEFAULT_SENSITIVITY_PCTS.to_vec());
    let grid = sensitivity_grid(&adjusted, &targets, &pcts)?;
    let base = evaluate(&adjusted, false)?.npv;
    Ok(Report::Sensitivity(SensitivityReport {
        name: cfg.name,
        base_npv: cents(base),
        rows: grid
            .into_iter()
            .map(|e| SensitivityRowReport {
                parameter: e.parameter,
                pct: e.pct,
                first: e.first,
                last: e.last,
                delta_npv: cents(e.delta_npv),
                delta_pct: e.delta_pct.map(ratio),
            })
            .collect(),
    }))
}

fn figure(item: &str, computed: f64) -> Figure {
    Figure {
        item: item.to_string(),
        computed,
        printed: None,
        flagged: false,
    }
}

fn checked(d: Discrepancy) -> Figure {
    Figure {
        item: d.item,
        computed: crate::money::round_to(d.computed, d.decimals.max(2) + 2),
        printed: Some(d.printed),
        flagged: d.flagged,
    }
}

fn cost_bom(cmd: &Command) -> Result<Report> {
    let path = &cmd.config_path;
    let cfg: CostConfig = config::parse_json(path)?;
    let bom_path = config::resolve(path, &cfg.bom_csv);
    let lines = read_bom_csv(config::open(&bom_path)?)?;
    let s = bom_rollup(&lines, cfg.shipment, &cfg.overhead_rates, cfg.warranty, cfg.overhead_override)?;

    let mut figs = vec![
        figure("direct materials", cents(s.direct_materials)),
        figure("direct processing", cents(s.direct_processing)),
        figure("direct labor", cents(s.direct_labor)),
        figure("shipment", cents(s.shipment)),
    ];
    let checks = check_printed_totals(&s, &cfg.printed);
    let push = |item: &str, value: f64, figs: &mut Vec<Figure>| {
        match checks.iter().find(|d| d.item == item) {
            Some(d) => figs.push(checked(d.clone())),
            None => figs.push(figure(item, cents(value))),
        }
    };
    push("direct cost", s.direct_cost(), &mut figs);
    push("overhead", s.overhead, &mut figs);
    push("warranty", s.warranty, &mut figs);
    push("total manufacturing cost", s.total_manufacturing, &mut figs);
    figs.extend(
        checks
            .iter()
            .filter(|d| d.item.starts_with("printed "))
            .cloned()
            .map(checked),
    );

    if let Some(asm) = &cfg.assembly {
        let ops = read_assembly_csv(config::open(&config::resolve(path, &asm.csv))?)?;
        let cost = assembly_cost(&ops, asm.hourly_rate)?;
        let parts = part_count(&ops);
        figs.push(figure("assembly time (s)", cost.total_s));
        figs.push(figure("assembly part count", f64::from(parts)));
        figs.push(match asm.printed_cost {
            Some(p) => checked(Discrepancy::cents("assembly labor cost", cost.cost, p)),
            None => figure("assembly labor cost", cents(cost.cost)),
        });
        let index = dfa_index(asm.min_parts.unwrap_or(parts), cost.total_s)?;
        figs.push(figure("DFA index", ratio(index)));
    }
    if let Some(red) = &cfg.reduction {
        let r = cost_reduction_report(red.old_total, red.new_total)?;
        figs.push(figure("cost reduction savings", cents(r.savings)));
        figs.push(match red.printed_pct {
            Some(p) => checked(Discrepancy::check("cost reduction (%)", r.pct * 100.0, p, 2)),
            None => figure("cost reduction (%)", round_db(r.pct * 100.0)),
        });
    }
    if let Some(m) = &cfg.margin {
        let g = gross_margin(m.unit_price, m.unit_cost)?;
        figs.push(match m.printed {
            Some(p) => checked(Discrepancy::check("gross margin (%)", g * 100.0, p, 1)),
            None => figure("gross margin (%)", round_db(g * 100.0)),
        });
    }
    Ok(Report::Cost(CostReport {
        name: cfg.name,
        figures: figs,
    }))
}

fn plan_concept(cmd: &Command) -> Result<Report> {
    let matrix = config::load_concepts(&cmd.config_path)?;
    let scores = concept_score(&matrix)?;
    Ok(Report::Concept(ConceptReport {
        criteria: matrix.criteria.len(),
        concepts: scores
            .into_iter()
            .map(|s| ConceptRow {
                concept: s.name,
                total: ratio(s.total),
                rank: s.rank,
            })
            .collect(),
    }))
}

fn plan_risk(cmd: &Command) -> Result<Report> {
    let (register, threshold) = config::load_risk(&cmd.config_path)?;
    let entries = read_register_csv(config::open(&register)?)?;
    let mut counts = QuadrantCounts {
        low: 0,
        monitor: 0,
        urgent: 0,
        critical: 0,
        unrated: 0,
    };
    let mut risks = Vec::with_capacity(entries.len());
    for entry in entries {
        let rating = entry
            .rated()
            .map(|item| risk_score_and_map(&item, threshold))
            .transpose()?;
        match rating.map(|r| r.quadrant) {
            None => counts.unrated += 1,
            Some(Quadrant::Low) => counts.low += 1,
            Some(Quadrant::Monitor) => counts.monitor += 1,
            Some(Quadrant::Urgent) => counts.urgent += 1,
            Some(Quadrant::Critical) => counts.critical += 1,
        }
        risks.push(RiskRow {
            code: entry.code,
            description: entry.description,
            category: entry.category,
            probability: entry.probability,
            impact: entry.impact,
            score: rating.map(|r| r.score),
            quadrant: rating.map(|r| r.quadrant.name()),
        });
    }
    Ok(Report::Risk(RiskReport {
        threshold,
        counts,
        risks,
    }))
}

fn plan_market(cmd: &Command) -> Result<Report> {
    let cfg: MarketConfig = config::parse_json(&cmd.config_path)?;
    let e = market_size_estimate(&cfg.params)?;
    let flagged = cfg
        .printed_profit
        .is_some_and(|p| Discrepancy::check("profit", e.profit / 1e6, p / 1e6, 1).flagged);
    Ok(Report::Market(MarketReport {
        affected: cents(e.affected),
        affected_rounded: e.affected_rounded,
        profit: cents(e.profit),
        profit_exact: cents(e.profit_exact),
        printed_profit: cfg.printed_profit,
        profit_flagged: flagged,
    }))
}
