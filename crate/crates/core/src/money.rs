//! Currency rounding and formatting. Arithmetic stays in `f64`; rounding is
//! applied only when values are displayed or serialized.

/// Round half away from zero to `decimals` places.
pub fn round_to(value: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (value * scale).round() / scale
}

pub fn round_cents(value: f64) -> f64 {
    round_to(value, 2)
}

pub fn round_dollars(value: f64) -> f64 {
    value.round()
}

/// Whole dollars with thousands separators, e.g. `-1,906,607`.
pub fn fmt_dollars(value: f64) -> String {
    group_thousands(round_dollars(value), 0)
}

/// Dollars and cents with thousands separators, e.g. `121.02`.
pub fn fmt_cents(value: f64) -> String {
    group_thousands(round_cents(value), 2)
}

fn group_thousands(value: f64, decimals: usize) -> String {
    // `value` is already rounded; -0 prints as 0.
    let value = if value == 0.0 { 0.0 } else { value };
    let text = format!("{:.*}", decimals, value.abs());
    let (int, frac) = text.split_once('.').map_or((text.as_str(), ""), |(i, f)| (i, f));
    let mut grouped = String::with_capacity(int.len() + int.len() / 3);
    for (i, ch) in int.chars().enumerate() {
        if i > 0 && (int.len() - i) % 3 == 0 {
            grouped.push(',');
        }
        grouped.push(ch);
    }
    let sign = if value < 0.0 { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{grouped}")
    } else {
        format!("{sign}{grouped}.{frac}")
    }
}
