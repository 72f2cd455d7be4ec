//! Number formatting shared by the CSV and JSON emitters.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Significant digits used for every emitted real number.
pub const SIG_DIGITS: usize = 12;

/// Rounds `x` to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    sig_string(x, digits).parse().unwrap_or(x)
}

/// Plain (non-exponent) decimal rendering of `x` with `digits` significant
/// digits and trailing zeros trimmed. Independent of locale.
pub fn sig_string(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() {
            "0".into()
        } else {
            x.to_string()
        };
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    // rounding can carry into a new leading digit (9.99.. -> 10.0)
    let carried = s
        .trim_start_matches('-')
        .split('.')
        .next()
        .map(str::len)
        .unwrap_or(0);
    if magnitude >= 0 && carried as i64 > magnitude + 1 && decimals > 0 {
        s = format!("{x:.prec$}", prec = decimals - 1);
    }
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// [`sig_string`] at [`SIG_DIGITS`].
pub fn sig12(x: f64) -> String {
    sig_string(x, SIG_DIGITS)
}

/// `log2(x)` for arbitrarily large `x > 0`.
pub fn log2_big(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "log2 of zero");
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_f64().expect("64-bit value fits in f64");
    top.log2() + shift as f64
}
