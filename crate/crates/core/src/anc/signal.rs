//! Sampled signals and the stimulus generators used to drive simulations.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{ensure, ensure_finite, Error, Result};

/// Order of the windowed-sinc band-pass used to colour broadband noise.
pub const BROADBAND_FIR_ORDER: usize = 255;

/// A uniformly sampled, real-valued signal.
///
/// Every sample is finite and the sample rate is strictly positive; the
/// constructor is the only way in, so both hold for any value of this type.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleBuffer {
    samples: Vec<f64>,
    sample_rate_hz: f64,
}

impl SampleBuffer {
    pub fn new(samples: Vec<f64>, sample_rate_hz: f64) -> Result<Self> {
        ensure(
            sample_rate_hz.is_finite() && sample_rate_hz > 0.0,
            "sample_rate_hz",
            || format!("must be a positive finite rate, got {sample_rate_hz}"),
        )?;
        if let Some(k) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::validation(
                "samples",
                format!("sample {k} is not finite ({})", samples[k]),
            ));
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    /// A buffer of `n` zeros.
    pub fn silence(n: usize, sample_rate_hz: f64) -> Result<Self> {
        Self::new(vec![0.0; n], sample_rate_hz)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz
    }

    /// Mean square value; zero for an empty buffer.
    pub fn power(&self) -> f64 {
        mean_square(&self.samples)
    }

    pub fn rms(&self) -> f64 {
        self.power().sqrt()
    }

    pub fn mean(&self) -> f64 {
        if self.samples.is_empty() {
            0.0
        } else {
            self.samples.iter().sum::<f64>() / self.samples.len() as f64
        }
    }

    pub fn scaled(&self, gain: f64) -> Result<Self> {
        ensure_finite(gain, "gain")?;
        Self::new(
            self.samples.iter().map(|s| s * gain).collect(),
            self.sample_rate_hz,
        )
    }

    /// Sample-wise sum of two signals: acoustic superposition at one point.
    pub fn superpose(&self, other: &SampleBuffer) -> Result<Self> {
        self.check_compatible(other)?;
        Self::new(
            self.samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a + b)
                .collect(),
            self.sample_rate_hz,
        )
    }

    pub(crate) fn check_compatible(&self, other: &SampleBuffer) -> Result<()> {
        ensure(self.len() == other.len(), "length", || {
            format!("buffers differ in length ({} vs {})", self.len(), other.len())
        })?;
        ensure(
            self.sample_rate_hz == other.sample_rate_hz,
            "sample_rate_hz",
            || {
                format!(
                    "buffers differ in sample rate ({} vs {})",
                    self.sample_rate_hz, other.sample_rate_hz
                )
            },
        )
    }

    /// Borrow `range` as a new buffer with the same sample rate.
    pub fn slice(&self, range: std::ops::Range<usize>) -> SampleBuffer {
        SampleBuffer {
            samples: self.samples[range].to_vec(),
            sample_rate_hz: self.sample_rate_hz,
        }
    }

    pub(crate) fn from_trusted(samples: Vec<f64>, sample_rate_hz: f64) -> Self {
        debug_assert!(samples.iter().all(|s| s.is_finite()));
        SampleBuffer {
            samples,
            sample_rate_hz,
        }
    }
}

pub(crate) fn mean_square(samples: &[f64]) -> f64 {
    if samples.is_empty() {
        0.0
    } else {
        samples.iter().map(|s| s * s).sum::<f64>() / samples.len() as f64
    }
}

fn check_rate(fs: f64) -> Result<()> {
    ensure(fs.is_finite() && fs > 0.0, "fs", || {
        format!("sample rate must be positive and finite, got {fs}")
    })
}

/// `amplitude · sin(2π·freq·k/fs + phase)` for `k = 0..n`.
pub fn generate_tone(
    freq_hz: f64,
    amplitude: f64,
    phase_rad: f64,
    n: usize,
    fs: f64,
) -> Result<SampleBuffer> {
    check_rate(fs)?;
    ensure_finite(freq_hz, "freq_hz")?;
    ensure_finite(amplitude, "amplitude")?;
    ensure_finite(phase_rad, "phase_rad")?;
    ensure(freq_hz > 0.0 && freq_hz < fs / 2.0, "freq_hz", || {
        format!("must lie strictly between 0 and Nyquist ({} Hz), got {freq_hz}", fs / 2.0)
    })?;

    let omega = 2.0 * PI * freq_hz / fs;
    let samples = (0..n)
        .map(|k| amplitude * (omega * k as f64 + phase_rad).sin())
        .collect();
    SampleBuffer::new(samples, fs)
}

/// Seeded Gaussian white noise shaped by a Blackman-windowed sinc band-pass.
///
/// The filter is scaled so the output has roughly unit variance, its start-up
/// transient is discarded, and the sample mean is removed, so the result is
/// stationary from the first sample and has zero mean.
pub fn generate_broadband(
    seed: u64,
    low_hz: f64,
    high_hz: f64,
    n: usize,
    fs: f64,
) -> Result<SampleBuffer> {
    check_rate(fs)?;
    ensure_finite(low_hz, "low_hz")?;
    ensure_finite(high_hz, "high_hz")?;
    ensure(
        0.0 < low_hz && low_hz < high_hz && high_hz < fs / 2.0,
        "band",
        || format!("need 0 < low_hz < high_hz < {} Hz, got [{low_hz}, {high_hz}]", fs / 2.0),
    )?;

    let taps = bandpass_taps(low_hz / fs, high_hz / fs, BROADBAND_FIR_ORDER);
    let warmup = taps.len() - 1;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let white: Vec<f64> = (0..n + warmup)
        .map(|_| StandardNormal.sample(&mut rng))
        .collect();

    let mut shaped: Vec<f64> = (warmup..white.len())
        .map(|k| {
            taps.iter()
                .enumerate()
                .map(|(j, h)| h * white[k - j])
                .sum::<f64>()
        })
        .collect();

    if !shaped.is_empty() {
        let mean = shaped.iter().sum::<f64>() / shaped.len() as f64;
        shaped.iter_mut().for_each(|s| *s -= mean);
    }
    SampleBuffer::new(shaped, fs)
}

/// Linear-phase band-pass with normalized edges `lo < hi` (cycles/sample).
fn bandpass_taps(lo: f64, hi: f64, order: usize) -> Vec<f64> {
    let len = order + 1;
    let centre = order as f64 / 2.0;
    let sinc = |x: f64| {
        if x == 0.0 {
            1.0
        } else {
            (PI * x).sin() / (PI * x)
        }
    };
    let mut taps: Vec<f64> = (0..len)
        .map(|k| {
            let m = k as f64 - centre;
            let ideal = 2.0 * hi * sinc(2.0 * hi * m) - 2.0 * lo * sinc(2.0 * lo * m);
            let phase = 2.0 * PI * k as f64 / order as f64;
            let window = 0.42 - 0.5 * phase.cos() + 0.08 * (2.0 * phase).cos();
            ideal * window
        })
        .collect();

    // Unit-variance white noise through the filter has variance Σh².
    let energy: f64 = taps.iter().map(|h| h * h).sum();
    let gain = energy.sqrt().recip();
    taps.iter_mut().for_each(|h| *h *= gain);
    taps
}

/// Negate every sample: a 180° phase shift at every frequency.
pub fn invert_phase(x: &SampleBuffer) -> SampleBuffer {
    SampleBuffer::from_trusted(
        x.samples.iter().map(|s| -s).collect(),
        x.sample_rate_hz,
    )
}
