//! Fixed-precision numeric output shared by every exporter.

/// Significant digits in exported numbers.
pub const SIG_DIGITS: usize = 12;

/// Rounds to [`SIG_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest decimal form of `x` rounded to [`SIG_DIGITS`] significant digits.
pub fn sig(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        // fold -0.0
        return "0".into();
    }
    format!("{r}")
}
