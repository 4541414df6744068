//! Acoustic propagation paths modelled as causal FIR filters.

use serde::{Deserialize, Serialize};

use crate::anc::signal::SampleBuffer;
use crate::error::{ensure, Error, Result};

/// Impulse response of an acoustic path (noise source to listener, or
/// cancelling speaker to listener).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct FirPath {
    taps: Vec<f64>,
}

impl FirPath {
    pub fn new(taps: Vec<f64>) -> Result<Self> {
        ensure(!taps.is_empty(), "taps", || "path needs at least one tap".into())?;
        if let Some(k) = taps.iter().position(|t| !t.is_finite()) {
            return Err(Error::validation(
                "taps",
                format!("tap {k} is not finite ({})", taps[k]),
            ));
        }
        Ok(Self { taps })
    }

    /// The pass-through path `[1]`.
    pub fn identity() -> Self {
        Self { taps: vec![1.0] }
    }

    /// A pure delay of `samples` samples.
    pub fn delay(samples: usize) -> Self {
        let mut taps = vec![0.0; samples + 1];
        taps[samples] = 1.0;
        Self { taps }
    }

    /// An exponentially decaying resonance that starts after `delay` samples:
    /// `gain · exp(-(k-delay)/decay) · cos(omega·(k-delay))`, truncated to `len` taps.
    pub fn damped_resonance(len: usize, delay: usize, gain: f64, decay: f64, omega: f64) -> Result<Self> {
        ensure(delay < len, "delay", || format!("delay {delay} must be shorter than {len} taps"))?;
        ensure(decay > 0.0, "decay", || format!("must be positive, got {decay}"))?;
        let taps = (0..len)
            .map(|k| {
                if k < delay {
                    0.0
                } else {
                    let m = (k - delay) as f64;
                    gain * (-m / decay).exp() * (omega * m).cos()
                }
            })
            .collect();
        Self::new(taps)
    }

    /// A 32-tap room-like noise-to-listener path: 6 samples of flight time
    /// followed by a decaying reverberant tail.
    pub fn room_primary() -> Self {
        Self::damped_resonance(32, 6, 0.8, 5.0, 0.9).expect("static path parameters are valid")
    }

    /// A 32-tap speaker-to-listener path: shorter flight time, faster decay.
    pub fn room_secondary() -> Self {
        Self::damped_resonance(32, 3, 0.6, 3.0, 1.3).expect("static path parameters are valid")
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl TryFrom<Vec<f64>> for FirPath {
    type Error = Error;

    fn try_from(taps: Vec<f64>) -> Result<Self> {
        FirPath::new(taps)
    }
}

impl From<FirPath> for Vec<f64> {
    fn from(path: FirPath) -> Self {
        path.taps
    }
}

/// Causal convolution truncated to the input length:
/// `y[k] = Σ_j taps[j]·x[k−j]` with `x[<0] = 0`.
pub fn convolve_path(path: &FirPath, x: &SampleBuffer) -> SampleBuffer {
    let xs = x.samples();
    let out = (0..xs.len())
        .map(|k| {
            path.taps
                .iter()
                .take(k + 1)
                .enumerate()
                .map(|(j, h)| h * xs[k - j])
                .sum()
        })
        .collect();
    SampleBuffer::from_trusted(out, x.sample_rate_hz())
}

/// Fixed-length history of the most recent samples, newest first.
///
/// Each sample is stored twice so the window is always one contiguous slice.
#[derive(Debug, Clone)]
pub(crate) struct TapLine {
    buf: Vec<f64>,
    len: usize,
    pos: usize,
}

impl TapLine {
    pub(crate) fn new(len: usize) -> Self {
        assert!(len > 0);
        Self {
            buf: vec![0.0; 2 * len],
            len,
            pos: 0,
        }
    }

    pub(crate) fn push(&mut self, x: f64) {
        self.pos = if self.pos == 0 { self.len - 1 } else { self.pos - 1 };
        self.buf[self.pos] = x;
        self.buf[self.pos + self.len] = x;
    }

    pub(crate) fn window(&self) -> &[f64] {
        &self.buf[self.pos..self.pos + self.len]
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Streaming form of [`convolve_path`]: one output per pushed input.
#[derive(Debug, Clone)]
pub(crate) struct PathFilter {
    taps: Vec<f64>,
    history: TapLine,
}

impl PathFilter {
    pub(crate) fn new(path: &FirPath) -> Self {
        Self {
            taps: path.taps.clone(),
            history: TapLine::new(path.len()),
        }
    }

    pub(crate) fn next(&mut self, x: f64) -> f64 {
        self.history.push(x);
        dot(&self.taps, self.history.window())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn buf(xs: &[f64]) -> SampleBuffer {
        SampleBuffer::new(xs.to_vec(), 8000.0).unwrap()
    }

    #[test]
    fn identity_path_is_transparent() {
        let x = buf(&[0.3, -1.0, 2.5, 7.0]);
        assert_eq!(convolve_path(&FirPath::identity(), &x), x);
    }

    #[test]
    fn unit_delay() {
        let path = FirPath::new(vec![0.0, 1.0]).unwrap();
        let y = convolve_path(&path, &buf(&[1.0, 2.0, 3.0]));
        assert_eq!(y.samples(), &[0.0, 1.0, 2.0]);
        assert_eq!(FirPath::delay(1), path);
    }

    #[test]
    fn hand_convolution() {
        let path = FirPath::new(vec![0.5, 0.25]).unwrap();
        let y = convolve_path(&path, &buf(&[2.0, 0.0, 0.0]));
        assert_eq!(y.samples(), &[1.0, 0.5, 0.0]);
    }

    #[test]
    fn streaming_matches_batch() {
        let path = FirPath::room_secondary();
        let x: Vec<f64> = (0..100).map(|k| ((k * 37) % 11) as f64 - 5.0).collect();
        let batch = convolve_path(&path, &buf(&x));
        let mut filt = PathFilter::new(&path);
        let stream: Vec<f64> = x.iter().map(|&v| filt.next(v)).collect();
        assert_eq!(batch.samples(), stream.as_slice());
    }

    #[test]
    fn rejects_empty_and_non_finite_taps() {
        assert!(FirPath::new(vec![]).is_err());
        assert!(FirPath::new(vec![1.0, f64::NAN]).is_err());
        assert!(serde_json::from_str::<FirPath>("[]").is_err());
    }

    #[test]
    fn room_paths_are_32_taps_and_causal() {
        let p = FirPath::room_primary();
        let s = FirPath::room_secondary();
        assert_eq!((p.len(), s.len()), (32, 32));
        assert!(p.taps()[..6].iter().all(|&t| t == 0.0));
        assert!(s.taps()[..3].iter().all(|&t| t == 0.0));
    }

    #[test]
    fn tap_line_keeps_newest_first() {
        let mut line = TapLine::new(3);
        for x in 1..=5 {
            line.push(x as f64);
        }
        assert_eq!(line.window(), &[5.0, 4.0, 3.0]);
    }
}
