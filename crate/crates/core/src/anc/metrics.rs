use crate::anc::signal::{mean_square, SampleBuffer};
use crate::error::{ensure, Result};

/// Ceiling on reported attenuation; a residual of exactly zero reports this.
pub const ATTENUATION_CAP_DB: f64 = 120.0;

/// `20·log10(rms(original) / rms(residual))`, capped at [`ATTENUATION_CAP_DB`].
pub fn attenuation_db(original: &SampleBuffer, residual: &SampleBuffer) -> Result<f64> {
    ensure(!original.is_empty(), "original", || "buffer is empty".into())?;
    ensure(original.len() == residual.len(), "residual", || {
        format!(
            "length {} does not match original length {}",
            residual.len(),
            original.len()
        )
    })?;
    let reference = original.power();
    ensure(reference > 0.0, "original", || "signal has zero power".into())?;
    Ok(power_ratio_db(reference, residual.power()))
}

/// Attenuation in dB from two mean-square powers. Clamped to ±cap so traces
/// stay finite even over silent stretches of the reference.
pub(crate) fn power_ratio_db(reference: f64, residual: f64) -> f64 {
    if residual == 0.0 {
        return if reference == 0.0 { 0.0 } else { ATTENUATION_CAP_DB };
    }
    if reference == 0.0 {
        return -ATTENUATION_CAP_DB;
    }
    (10.0 * (reference / residual).log10()).clamp(-ATTENUATION_CAP_DB, ATTENUATION_CAP_DB)
}

pub(crate) fn window_attenuation_db(reference: &[f64], residual: &[f64]) -> f64 {
    power_ratio_db(mean_square(reference), mean_square(residual))
}
