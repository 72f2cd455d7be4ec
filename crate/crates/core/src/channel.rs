//! The semantic channel `M_{K1,K2}`.
//!
//! The channel copies `x_t` to `y_t` unless one of two events occurs at
//! step `t`, in which case `y_t` is a fair coin:
//!
//! * (a) input break: `t >= K1`, the `K1 - 1` inputs before `x_t` are all
//!   equal and `x_t` differs from them;
//! * (b) output break: `t >= K2`, the `K2 - 1` outputs before `y_t` are all
//!   equal and `x_t` differs from them.
//!
//! Both events are vacuous when the corresponding memory span is 1. Before
//! the guards become active the channel is deterministic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequences::{Bits, Symbol};

/// Input and output memory spans `(K1, K2)`, both at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChannelParams {
    k1: usize,
    k2: usize,
}

impl ChannelParams {
    pub fn new(k1: usize, k2: usize) -> Result<Self> {
        if k1 == 0 || k2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "memory spans must be positive, got k1={k1} k2={k2}"
            )));
        }
        Ok(ChannelParams { k1, k2 })
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    pub fn is_noiseless(&self) -> bool {
        self.k1 == 1 && self.k2 == 1
    }
}

impl fmt::Display for ChannelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M_{{{},{}}}", self.k1, self.k2)
    }
}

/// Exact transition probability; the law only ever takes these three values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prob {
    Zero,
    Half,
    One,
}

impl Prob {
    /// `(numerator, denominator)` in lowest terms.
    pub fn as_ratio(self) -> (u32, u32) {
        match self {
            Prob::Zero => (0, 1),
            Prob::Half => (1, 2),
            Prob::One => (1, 1),
        }
    }

    pub fn to_f64(self) -> f64 {
        let (n, d) = self.as_ratio();
        n as f64 / d as f64
    }

    pub fn is_positive(self) -> bool {
        self != Prob::Zero
    }
}

/// The support of `y_t` at one step: either the input symbol alone, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepOutputs {
    Only(Symbol),
    Either,
}

impl StepOutputs {
    pub fn contains(self, y: Symbol) -> bool {
        match self {
            StepOutputs::Only(s) => s == y,
            StepOutputs::Either => y <= 1,
        }
    }

    pub fn symbols(self) -> &'static [Symbol] {
        match self {
            StepOutputs::Only(0) => &[0],
            StepOutputs::Only(_) => &[1],
            StepOutputs::Either => &[0, 1],
        }
    }

    pub fn len(self) -> usize {
        self.symbols().len()
    }

    pub fn is_empty(self) -> bool {
        false
    }

    /// Intersection of two supports, `None` when disjoint.
    pub fn intersect(self, other: StepOutputs) -> Option<StepOutputs> {
        match (self, other) {
            (StepOutputs::Either, o) | (o, StepOutputs::Either) => Some(o),
            (StepOutputs::Only(a), StepOutputs::Only(b)) if a == b => Some(self),
            _ => None,
        }
    }

    pub(crate) fn resolve(fires: bool, x_t: Symbol) -> StepOutputs {
        if fires {
            StepOutputs::Either
        } else {
            StepOutputs::Only(x_t)
        }
    }
}

/// True iff `sym` differs from the `span` symbols of `history` that end at
/// `history[end - 1]` and those symbols are all equal.
fn breaks_run(history: &[Symbol], end: usize, span: usize, sym: Symbol) -> bool {
    debug_assert!(span >= 1 && end >= span);
    let window = &history[end - span..end];
    window.iter().all(|&h| h == window[0]) && window[0] != sym
}

/// Input-break condition (a) at 1-based step `t` of `x`.
pub fn condition_a(params: ChannelParams, x: &Bits, t: usize) -> Result<bool> {
    let x_t = x.get(t)?;
    let k1 = params.k1;
    if k1 == 1 || t < k1 {
        return Ok(false);
    }
    Ok(breaks_run(x.symbols(), t - 1, k1 - 1, x_t))
}

/// Output-break condition (b) at step `t` with input symbol `x_t` and the
/// outputs `y_1 ... y_{t-1}` already produced.
pub fn condition_b(params: ChannelParams, x_t: Symbol, y_prefix: &Bits, t: usize) -> Result<bool> {
    if t == 0 {
        return Err(Error::IndexOutOfRange { index: 0, len: 0 });
    }
    if y_prefix.len() != t - 1 {
        return Err(Error::LengthMismatch {
            expected: t - 1,
            actual: y_prefix.len(),
        });
    }
    if x_t > 1 {
        return Err(Error::InvalidArgument(format!(
            "symbol {x_t} is not binary"
        )));
    }
    let k2 = params.k2;
    if k2 == 1 || t < k2 {
        return Ok(false);
    }
    Ok(breaks_run(y_prefix.symbols(), t - 1, k2 - 1, x_t))
}

/// Possible values of `y_t` given `x_1 ... x_t` and `y_1 ... y_{t-1}`.
pub fn step_outputs(
    params: ChannelParams,
    x_prefix: &Bits,
    y_prefix: &Bits,
) -> Result<StepOutputs> {
    let t = x_prefix.len();
    if t == 0 {
        return Err(Error::InvalidArgument(
            "input prefix must be nonempty".into(),
        ));
    }
    if y_prefix.len() + 1 != t {
        return Err(Error::LengthMismatch {
            expected: t - 1,
            actual: y_prefix.len(),
        });
    }
    let x_t = x_prefix.get(t)?;
    let fires = condition_a(params, x_prefix, t)? || condition_b(params, x_t, y_prefix, t)?;
    Ok(StepOutputs::resolve(fires, x_t))
}

/// `p_{K1,K2}(y_t | x_1..x_t, y_1..y_{t-1})`.
pub fn transition_prob(
    params: ChannelParams,
    x_prefix: &Bits,
    y_prefix: &Bits,
    y_t: Symbol,
) -> Result<Prob> {
    if y_t > 1 {
        return Err(Error::InvalidArgument(format!(
            "symbol {y_t} is not binary"
        )));
    }
    Ok(match step_outputs(params, x_prefix, y_prefix)? {
        StepOutputs::Either => Prob::Half,
        StepOutputs::Only(s) if s == y_t => Prob::One,
        StepOutputs::Only(_) => Prob::Zero,
    })
}

/// Condition (a) at every step of `x`, computed with one run-length scan.
/// Entry `t - 1` holds the flag for step `t`.
pub(crate) fn input_break_flags(k1: usize, x: &[Symbol]) -> Vec<bool> {
    let mut flags = vec![false; x.len()];
    if k1 == 1 {
        return flags;
    }
    // length of the run ending at x_{t-1}
    let mut run = 0usize;
    for t in 1..=x.len() {
        if t >= 2 {
            flags[t - 1] = run >= k1 - 1 && x[t - 1] != x[t - 2];
        }
        run = if t >= 2 && x[t - 1] == x[t - 2] {
            run + 1
        } else {
            1
        };
    }
    flags
}

/// Compressed view of an output prefix: its last symbol and trailing run
/// length, capped at `K2 - 1`. This is all condition (b) looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct OutputTail {
    pub last: Symbol,
    pub run: usize,
}

impl OutputTail {
    pub fn start(y_1: Symbol) -> Self {
        OutputTail { last: y_1, run: 1 }
    }

    pub fn push(self, y: Symbol, cap: usize) -> Self {
        if y == self.last {
            OutputTail {
                last: y,
                run: (self.run + 1).min(cap),
            }
        } else {
            OutputTail { last: y, run: 1 }
        }
    }

    /// Condition (b) for input `x_t` given this tail (`t >= 2` implied).
    pub fn output_break(self, k2: usize, x_t: Symbol) -> bool {
        k2 >= 2 && self.run >= k2 - 1 && self.last != x_t
    }
}

/// Run cap used for [`OutputTail`] under output span `k2`.
pub(crate) fn tail_cap(k2: usize) -> usize {
    k2.saturating_sub(1).max(1)
}
