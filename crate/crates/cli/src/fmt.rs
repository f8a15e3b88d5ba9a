//! Deterministic numeric formatting: fixed decimal, six significant digits.

/// Format with six significant digits in plain decimal notation.
///
/// The decimal count adapts to the magnitude (`356.845`, `16.3034`,
/// `0.408719`); values of 1e6 and above print with no fractional part.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0.00000".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Format an optional metric, `n/a` when absent.
pub fn sig6_opt(x: Option<f64>) -> String {
    x.map(sig6).unwrap_or_else(|| "n/a".to_string())
}
