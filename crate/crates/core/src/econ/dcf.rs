//! Discounting, internal rate of return and break-even over per-period flows.
//!
//! Flows are end-of-period: `flows[0]` is period 1 and is discounted once.

use crate::error::{ensure, Result};

/// Bracket searched for the internal rate of return.
pub const IRR_SEARCH_RANGE: (f64, f64) = (0.0, 10.0);

/// Maximum |NPV| accepted at a reported IRR, in currency units.
pub const IRR_NPV_TOLERANCE: f64 = 0.01;

const IRR_SCAN_STEPS: usize = 2000;

/// `Σ_{t=1..T} C_t / (1+r)^t`.
pub fn npv(flows: &[f64], rate: f64) -> f64 {
    let base = 1.0 + rate;
    flows
        .iter()
        .zip(1..)
        .map(|(c, t)| c / base.powi(t))
        .sum()
}

/// Each flow discounted to present value.
pub fn discounted_flows(flows: &[f64], rate: f64) -> Vec<f64> {
    let base = 1.0 + rate;
    flows.iter().zip(1..).map(|(c, t)| c / base.powi(t)).collect()
}

/// Running totals of the nominal or discounted flows.
pub fn cumulative_flows(flows: &[f64], rate: f64, discounted: bool) -> Vec<f64> {
    let terms = if discounted {
        discounted_flows(flows, rate)
    } else {
        flows.to_vec()
    };
    terms
        .iter()
        .scan(0.0, |acc, c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}

/// Smallest non-negative per-period rate that zeroes the NPV, or `None` when
/// the flows never change sign or no root lies in [`IRR_SEARCH_RANGE`].
///
/// The range is scanned on a uniform grid for the first sign change and the
/// bracket is then bisected to floating-point resolution.
pub fn irr(flows: &[f64]) -> Option<f64> {
    let has_in = flows.iter().any(|&c| c > 0.0);
    let has_out = flows.iter().any(|&c| c < 0.0);
    if !(has_in && has_out) {
        return None;
    }

    let (lo_bound, hi_bound) = IRR_SEARCH_RANGE;
    let step = (hi_bound - lo_bound) / IRR_SCAN_STEPS as f64;
    let mut lo = lo_bound;
    let mut f_lo = npv(flows, lo);
    if f_lo == 0.0 {
        return Some(lo);
    }
    for k in 1..=IRR_SCAN_STEPS {
        let hi = lo_bound + step * k as f64;
        let f_hi = npv(flows, hi);
        if f_hi == 0.0 {
            return Some(hi);
        }
        if f_lo.signum() != f_hi.signum() {
            return Some(bisect(flows, lo, hi, f_lo));
        }
        lo = hi;
        f_lo = f_hi;
    }
    None
}

fn bisect(flows: &[f64], mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = npv(flows, mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    if npv(flows, lo).abs() <= npv(flows, hi).abs() {
        lo
    } else {
        hi
    }
}

/// Two-point linear estimate of the IRR:
/// `r_a + NPV_a·(r_b − r_a)/(NPV_a − NPV_b)`.
pub fn irr_interpolate(ra: f64, rb: f64, npva: f64, npvb: f64) -> Result<f64> {
    ensure(ra < rb, "rb", || format!("lower rate {ra} must be below higher rate {rb}"))?;
    ensure(npva != npvb, "npvb", || {
        format!("NPV at both rates is {npva}; the secant is undefined")
    })?;
    Ok(ra + npva * (rb - ra) / (npva - npvb))
}

/// First period (1-based) whose cumulative flow is non-negative.
pub fn break_even(flows: &[f64], rate: f64, discounted: bool) -> Option<u32> {
    cumulative_flows(flows, rate, discounted)
        .iter()
        .position(|&c| c >= 0.0)
        .map(|i| i as u32 + 1)
}
