//! Adaptive feed-forward noise cancellation.
//!
//! A reference microphone picks up the noise `x` upstream of the listener. The
//! same noise reaches the listener through the primary path as the disturbance
//! `d`. The controller filters `x` with adaptive weights `w` to produce the
//! speaker drive `y`; the speaker is wired in anti-phase, so what arrives at the
//! listener through the secondary path `s` is subtracted:
//!
//! ```text
//! y[n] = w[n] · x_hist[n]
//! e[n] = d[n] - (s ⊛ y)[n]
//! w[n+1] = (1 - μ·leak)·w[n] + μ_n·e[n]·x'_hist[n]
//! ```
//!
//! The update reference `x'` depends on the algorithm: the raw reference for
//! LMS, the reference filtered by the secondary-path estimate `ŝ` for FXLMS and
//! NLMS. NLMS also normalizes the step, `μ_n = μ / (‖x'_hist‖² + 1e-8)`.

use serde::{Deserialize, Serialize};

use crate::anc::metrics::window_attenuation_db;
use crate::anc::path::{convolve_path, dot, FirPath, PathFilter, TapLine};
use crate::anc::signal::{mean_square, SampleBuffer};
use crate::error::{ensure, Error, Result};

pub const DEFAULT_SAMPLE_RATE_HZ: f64 = 8000.0;
pub const DEFAULT_FILTER_LENGTH: usize = 128;
pub const DEFAULT_WINDOW_S: f64 = 0.25;
pub const NLMS_REGULARIZATION: f64 = 1e-8;

/// Residual power above this multiple of the disturbance power, within one
/// window, counts as divergence.
pub const DIVERGENCE_POWER_RATIO: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Algorithm {
    Lms,
    Nlms,
    Fxlms,
}

impl Algorithm {
    pub fn default_step_size(self) -> f64 {
        match self {
            Algorithm::Lms | Algorithm::Fxlms => 1e-3,
            Algorithm::Nlms => 0.1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Lms => "LMS",
            Algorithm::Nlms => "NLMS",
            Algorithm::Fxlms => "FXLMS",
        }
    }
}

/// The controller's model of the speaker-to-listener path.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "EstimateRepr", into = "EstimateRepr")]
pub enum PlantEstimate {
    /// Use the true secondary path.
    #[default]
    Exact,
    Taps(FirPath),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EstimateRepr {
    Marker(String),
    Taps(Vec<f64>),
}

impl TryFrom<EstimateRepr> for PlantEstimate {
    type Error = Error;

    fn try_from(repr: EstimateRepr) -> Result<Self> {
        match repr {
            EstimateRepr::Marker(m) if m == "EXACT" => Ok(PlantEstimate::Exact),
            EstimateRepr::Marker(m) => Err(Error::validation(
                "secondary_estimate",
                format!("expected \"EXACT\" or a list of taps, got {m:?}"),
            )),
            EstimateRepr::Taps(t) => FirPath::new(t).map(PlantEstimate::Taps),
        }
    }
}

impl From<PlantEstimate> for EstimateRepr {
    fn from(e: PlantEstimate) -> Self {
        match e {
            PlantEstimate::Exact => EstimateRepr::Marker("EXACT".into()),
            PlantEstimate::Taps(p) => EstimateRepr::Taps(p.into()),
        }
    }
}

fn default_window_s() -> f64 {
    DEFAULT_WINDOW_S
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AncConfig {
    pub algorithm: Algorithm,
    pub filter_length: usize,
    /// μ. Zero freezes the weights at their initial value of zero.
    pub step_size: f64,
    #[serde(default)]
    pub leak_factor: f64,
    #[serde(default)]
    pub secondary_estimate: PlantEstimate,
    pub duration_samples: usize,
    /// Seed for any stochastic stimulus paired with this run.
    pub rng_seed: u64,
    /// Length of one attenuation-trace window, in seconds.
    #[serde(default = "default_window_s")]
    pub window_s: f64,
}

impl AncConfig {
    /// Defaults for everything but the algorithm, run length and seed.
    pub fn new(algorithm: Algorithm, duration_samples: usize, rng_seed: u64) -> Self {
        Self {
            algorithm,
            filter_length: DEFAULT_FILTER_LENGTH,
            step_size: algorithm.default_step_size(),
            leak_factor: 0.0,
            secondary_estimate: PlantEstimate::Exact,
            duration_samples,
            rng_seed,
            window_s: DEFAULT_WINDOW_S,
        }
    }

    pub fn with_filter_length(mut self, filter_length: usize) -> Self {
        self.filter_length = filter_length;
        self
    }

    pub fn with_step_size(mut self, step_size: f64) -> Self {
        self.step_size = step_size;
        self
    }

    pub fn with_leak(mut self, leak_factor: f64) -> Self {
        self.leak_factor = leak_factor;
        self
    }

    pub fn with_estimate(mut self, estimate: PlantEstimate) -> Self {
        self.secondary_estimate = estimate;
        self
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.filter_length >= 1, "filter_length", || "must be at least 1".into())?;
        ensure(self.duration_samples >= 1, "duration_samples", || "must be at least 1".into())?;
        ensure(
            self.filter_length <= self.duration_samples,
            "filter_length",
            || {
                format!(
                    "{} exceeds duration_samples {}",
                    self.filter_length, self.duration_samples
                )
            },
        )?;
        ensure(
            self.step_size.is_finite() && self.step_size >= 0.0,
            "step_size",
            || format!("must be finite and non-negative, got {}", self.step_size),
        )?;
        ensure(
            (0.0..1.0).contains(&self.leak_factor),
            "leak_factor",
            || format!("must lie in [0, 1), got {}", self.leak_factor),
        )?;
        ensure(
            self.window_s.is_finite() && self.window_s > 0.0,
            "window_s",
            || format!("must be positive, got {}", self.window_s),
        )
    }

    /// Window length in samples at `fs`, never less than one.
    pub fn window_samples(&self, fs: f64) -> usize {
        ((self.window_s * fs).round() as usize).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutput {
    /// Speaker drive `y[n]`.
    pub output: f64,
    /// Error at the listener `e[n]`.
    pub residual: f64,
}

/// Sample-by-sample controller state.
#[derive(Debug, Clone)]
pub struct AncController {
    algorithm: Algorithm,
    step_size: f64,
    decay: f64,
    weights: Vec<f64>,
    reference: TapLine,
    filtered: TapLine,
    estimate: Option<PathFilter>,
    secondary: PathFilter,
}

impl AncController {
    pub fn new(cfg: &AncConfig, secondary: &FirPath) -> Result<Self> {
        cfg.validate()?;
        let estimate = match (cfg.algorithm, &cfg.secondary_estimate) {
            (Algorithm::Lms, _) => None,
            (_, PlantEstimate::Exact) => Some(PathFilter::new(secondary)),
            (_, PlantEstimate::Taps(path)) => Some(PathFilter::new(path)),
        };
        Ok(Self {
            algorithm: cfg.algorithm,
            step_size: cfg.step_size,
            decay: 1.0 - cfg.step_size * cfg.leak_factor,
            weights: vec![0.0; cfg.filter_length],
            reference: TapLine::new(cfg.filter_length),
            filtered: TapLine::new(cfg.filter_length),
            estimate,
            secondary: PathFilter::new(secondary),
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Advance one sample given the reference pickup and the disturbance that
    /// reached the listener.
    pub fn step(&mut self, reference: f64, disturbance: f64) -> StepOutput {
        self.reference.push(reference);
        let filtered = match &mut self.estimate {
            Some(est) => est.next(reference),
            None => reference,
        };
        self.filtered.push(filtered);

        let output = dot(&self.weights, self.reference.window());
        let residual = disturbance - self.secondary.next(output);

        let xf = self.filtered.window();
        let gain = match self.algorithm {
            Algorithm::Nlms => self.step_size / (dot(xf, xf) + NLMS_REGULARIZATION),
            Algorithm::Lms | Algorithm::Fxlms => self.step_size,
        } * residual;
        for (w, x) in self.weights.iter_mut().zip(xf) {
            *w = self.decay * *w + gain * x;
        }

        StepOutput { output, residual }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AncResult {
    /// Error signal at the listener.
    pub residual: SampleBuffer,
    /// Controller output driving the (anti-phase) speaker.
    pub anti_noise: SampleBuffer,
    /// Noise at the listener with the controller off.
    pub disturbance: SampleBuffer,
    pub attenuation_trace_db: Vec<f64>,
    pub window_samples: usize,
    pub steady_state_attenuation_db: f64,
    pub diverged: bool,
    pub final_weights: Vec<f64>,
}

impl AncResult {
    /// Residual mean-square power per trace window.
    pub fn window_residual_power(&self) -> Vec<f64> {
        self.residual
            .samples()
            .chunks(self.window_samples)
            .map(mean_square)
            .collect()
    }
}

/// Run the full loop over `noise`, which doubles as the reference signal.
///
/// Stops early when a sample goes non-finite or a window's residual power
/// exceeds [`DIVERGENCE_POWER_RATIO`] times its disturbance power; the result
/// is then flagged `diverged` and holds only the samples before detection.
pub fn anc_run(
    cfg: &AncConfig,
    noise: &SampleBuffer,
    primary: &FirPath,
    secondary: &FirPath,
) -> Result<AncResult> {
    cfg.validate()?;
    ensure(noise.len() == cfg.duration_samples, "duration_samples", || {
        format!(
            "{} does not match noise length {}",
            cfg.duration_samples,
            noise.len()
        )
    })?;

    let fs = noise.sample_rate_hz();
    let window = cfg.window_samples(fs);
    let disturbance = convolve_path(primary, noise);
    let d = disturbance.samples();

    let mut controller = AncController::new(cfg, secondary)?;
    let mut residual = Vec::with_capacity(d.len());
    let mut output = Vec::with_capacity(d.len());
    let mut weights = controller.weights().to_vec();
    let mut diverged = false;

    for (n, (&x, &dn)) in noise.samples().iter().zip(d).enumerate() {
        let step = controller.step(x, dn);
        if !step.residual.is_finite() || !step.output.is_finite() {
            diverged = true;
            break;
        }
        residual.push(step.residual);
        output.push(step.output);
        if controller.weights().iter().any(|w| !w.is_finite()) {
            diverged = true;
            break;
        }
        weights.copy_from_slice(controller.weights());

        if (n + 1) % window == 0 {
            let start = n + 1 - window;
            let res_power = mean_square(&residual[start..]);
            let dist_power = mean_square(&d[start..=n]);
            if !res_power.is_finite() || res_power > DIVERGENCE_POWER_RATIO * dist_power {
                diverged = true;
                break;
            }
        }
    }

    let kept = residual.len();
    let d = &d[..kept];
    let trace: Vec<f64> = d
        .chunks(window)
        .zip(residual.chunks(window))
        .map(|(dw, ew)| window_attenuation_db(dw, ew))
        .collect();
    let tail = kept.saturating_sub(window);
    let steady = if kept == 0 {
        0.0
    } else {
        window_attenuation_db(&d[tail..], &residual[tail..])
    };

    Ok(AncResult {
        residual: SampleBuffer::from_trusted(residual, fs),
        anti_noise: SampleBuffer::from_trusted(output, fs),
        disturbance: disturbance.slice(0..kept),
        attenuation_trace_db: trace,
        window_samples: window,
        steady_state_attenuation_db: steady,
        diverged,
        final_weights: weights,
    })
}
