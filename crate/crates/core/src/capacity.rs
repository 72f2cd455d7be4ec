//! Characteristic roots and the closed-form zero-error capacities.
//!
//! Both root families come from the multinacci polynomial
//! `p_m(z) = z^m - (z^{m-1} + ... + z + 1)`, which has exactly one root in
//! `[1, 2)`: `λ_{K1}` uses `m = K1 - 1` and `ω_{K2}` uses `m = K2 - 2`,
//! so `ω_K = λ_{K-1}`. Capacities are base-2 logarithms of these roots.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::numfmt::sig12;

/// `z^m - Σ_{j<m} z^j`, by compensated Horner evaluation. Near the root
/// the polynomial is steep for large `m`, so plain Horner rounding would
/// swamp the residual.
pub fn multinacci_poly(m: usize, z: f64) -> f64 {
    let mut s = 1.0f64;
    let mut carry = 0.0f64;
    for _ in 0..m {
        let (prod, prod_err) = two_prod(s, z);
        let (sum, sum_err) = two_sum(prod, -1.0);
        s = sum;
        carry = carry.mul_add(z, prod_err + sum_err);
    }
    s + carry
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// The root of `p_m` in `[1, 2]`. `p_m(1) = 1 - m <= 0` and `p_m(2) = 1`,
/// so bisection always has a bracket; it runs until the bracket ends are
/// adjacent doubles and returns the end with the smaller residual.
pub fn multinacci_root(m: usize) -> f64 {
    assert!(m >= 1, "degree must be positive");
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    if multinacci_poly(m, lo) == 0.0 {
        return lo;
    }
    loop {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = multinacci_poly(m, mid);
        if v == 0.0 {
            return mid;
        }
        if v > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if multinacci_poly(m, lo).abs() <= multinacci_poly(m, hi).abs() {
        lo
    } else {
        hi
    }
}

/// Largest real root of `λ^{K1-1} - Σ_{j=0}^{K1-2} λ^j`.
pub fn lambda_root(k1: usize) -> Result<f64> {
    if k1 < 2 {
        return Err(Error::InvalidArgument(format!(
            "lambda root needs k1 >= 2, got {k1}"
        )));
    }
    Ok(multinacci_root(k1 - 1))
}

/// The positive root of `ω^{K2-2} - Σ_{j=0}^{K2-3} ω^j`.
pub fn omega_root(k2: usize) -> Result<f64> {
    if k2 < 3 {
        return Err(Error::InvalidArgument(format!(
            "omega root needs k2 >= 3, got {k2}"
        )));
    }
    Ok(multinacci_root(k2 - 2))
}

/// `log2 ω_{k2}`, extended by `ω_2 = 1`.
fn log_omega(k2: usize) -> f64 {
    if k2 == 2 {
        0.0
    } else {
        omega_root(k2).expect("k2 >= 3").log2()
    }
}

fn log_lambda(k1: usize) -> f64 {
    lambda_root(k1).expect("k1 >= 2").log2()
}

/// Which closed-form case produced a [`CapacityResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CapacityCase {
    /// `(1, 1)`: the output always equals the input.
    Noiseless,
    /// `(2, 1)`: capacity 1/2, achieved by the `00`/`11` block code.
    InputMemoryPair,
    /// `(K1 >= 3, 1)`: `log2 λ_{K1}`.
    InputMemory,
    /// `(1, 2)`: every output collapses to the first symbol.
    OutputMemoryPair,
    /// `(1, K2 >= 3)`: `log2 ω_{K2}`.
    OutputMemory,
    /// `(K1 >= 2, K2 ∈ {2, 3})`: zero.
    ShortOutputMemory,
    /// `K1 >= K2 >= 4`: `log2 ω_{K2}`.
    InputSpanDominates,
    /// `(2, K2 > 3)`: between 0 and 1/2.
    InputPairBounds,
    /// `K2 > K1 >= 3`: between `log2 ω_{K1}` and `log2 λ_{K1}`.
    OutputSpanDominatesBounds,
}

impl CapacityCase {
    /// Stable identifier used in machine-readable output.
    pub fn id(self) -> &'static str {
        match self {
            CapacityCase::Noiseless => "noiseless",
            CapacityCase::InputMemoryPair => "input-memory-k1-2",
            CapacityCase::InputMemory => "input-memory-lambda",
            CapacityCase::OutputMemoryPair => "output-memory-k2-2",
            CapacityCase::OutputMemory => "output-memory-omega",
            CapacityCase::ShortOutputMemory => "short-output-memory",
            CapacityCase::InputSpanDominates => "input-span-dominates-omega",
            CapacityCase::InputPairBounds => "k1-2-bounds",
            CapacityCase::OutputSpanDominatesBounds => "output-span-dominates-bounds",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CapacityValue {
    Exact(f64),
    Bounds { lower: f64, upper: f64 },
}

/// Zero-error capacity of `M_{K1,K2}` in bits per channel use, exact or bracketed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityResult {
    pub value: CapacityValue,
    pub case: CapacityCase,
}

impl CapacityResult {
    fn exact(value: f64, case: CapacityCase) -> Self {
        CapacityResult {
            value: CapacityValue::Exact(value),
            case,
        }
    }

    fn bounds(lower: f64, upper: f64, case: CapacityCase) -> Self {
        CapacityResult {
            value: CapacityValue::Bounds { lower, upper },
            case,
        }
    }

    pub fn exact_value(&self) -> Option<f64> {
        match self.value {
            CapacityValue::Exact(v) => Some(v),
            CapacityValue::Bounds { .. } => None,
        }
    }

    /// The exact value, or the upper end of the bracket.
    pub fn upper(&self) -> f64 {
        match self.value {
            CapacityValue::Exact(v) => v,
            CapacityValue::Bounds { upper, .. } => upper,
        }
    }

    /// The exact value, or the lower end of the bracket.
    pub fn lower(&self) -> f64 {
        match self.value {
            CapacityValue::Exact(v) => v,
            CapacityValue::Bounds { lower, .. } => lower,
        }
    }
}

/// Capacity of `M_{k1,k2}` from the closed-form cases.
pub fn capacity(k1: usize, k2: usize) -> Result<CapacityResult> {
    use CapacityCase::*;
    if k1 == 0 || k2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "memory spans must be positive, got k1={k1} k2={k2}"
        )));
    }
    Ok(match (k1, k2) {
        (1, 1) => CapacityResult::exact(1.0, Noiseless),
        (2, 1) => CapacityResult::exact(0.5, InputMemoryPair),
        (_, 1) => CapacityResult::exact(log_lambda(k1), InputMemory),
        (1, 2) => CapacityResult::exact(0.0, OutputMemoryPair),
        (1, _) => CapacityResult::exact(log_omega(k2), OutputMemory),
        (_, 2 | 3) => CapacityResult::exact(log_omega(k2), ShortOutputMemory),
        _ if k1 >= k2 => CapacityResult::exact(log_omega(k2), InputSpanDominates),
        (2, _) => CapacityResult::bounds(0.0, 0.5, InputPairBounds),
        _ => CapacityResult::bounds(log_omega(k1), log_lambda(k1), OutputSpanDominatesBounds),
    })
}

/// One row of the bounds table for the `K2 > K1 >= 3` regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsRow {
    pub k1: usize,
    pub lower: f64,
    pub upper: f64,
}

/// Lower and upper capacity bounds for `k1` in `k1_min..=k1_max`, valid for any `K2 > k1`.
pub fn bounds_table(k1_min: usize, k1_max: usize) -> Result<Vec<BoundsRow>> {
    if k1_min < 3 || k1_min > k1_max {
        return Err(Error::InvalidArgument(format!(
            "bounds table needs 3 <= from <= to, got {k1_min}..{k1_max}"
        )));
    }
    Ok((k1_min..=k1_max)
        .map(|k1| BoundsRow {
            k1,
            lower: log_omega(k1),
            upper: log_lambda(k1),
        })
        .collect())
}

/// CSV with header `k1,lower_bits,upper_bits`.
pub fn bounds_csv(rows: &[BoundsRow]) -> String {
    let mut out = String::from("k1,lower_bits,upper_bits\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.k1, sig12(r.lower), sig12(r.upper));
    }
    out
}
