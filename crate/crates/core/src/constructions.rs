//! Explicit code families and the counts of the run-constrained families.
//!
//! * The pairwise block code: words built from the blocks `00` and `11`
//!   (with one free leading symbol for odd lengths).
//! * The forbidden-run family: every run shorter than `L`. When no input
//!   or output run can reach the memory span, the channel cannot deviate,
//!   so these words have a single possible output.
//! * The no-run-break family for output span `K2`: words in which a run
//!   of length `K2 - 1` is never followed by the other symbol, i.e. such a
//!   run may only continue to the end of the word. Its size bounds optimal
//!   codes of the output-memory channel from above.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::codesearch::Code;
use crate::error::{Error, Result};
use crate::limits::DEFAULT_ENUMERATION_CAP;
use crate::numfmt::{log2_big, sig12};
use crate::sequences::{Bits, Symbol};

/// Words of length `n` made of `00`/`11` blocks, preceded by a free symbol
/// when `n` is odd. Size `2^ceil(n/2)`.
pub fn pairwise_block_code(n: usize) -> Code {
    let blocks = n / 2;
    let lead = n % 2;
    let free = blocks + lead;
    let words = (0..1u64 << free).map(|bits| {
        let mut w = Bits::empty();
        for i in (0..free).rev() {
            let s = ((bits >> i) & 1) as Symbol;
            if lead == 1 && i == free - 1 {
                w.push(s);
            } else {
                w.push(s);
                w.push(s);
            }
        }
        w
    });
    Code::new(n, words).expect("block words are distinct and of length n")
}

/// Every word of length `n` whose runs are all shorter than `max_run`,
/// in lexicographic order.
pub fn forbidden_run_code(n: usize, max_run: usize) -> Result<Code> {
    forbidden_run_code_capped(n, max_run, DEFAULT_ENUMERATION_CAP)
}

pub fn forbidden_run_code_capped(n: usize, max_run: usize, cap: usize) -> Result<Code> {
    if max_run < 2 {
        return Err(Error::InvalidArgument(format!(
            "run bound must be at least 2, got {max_run}"
        )));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "forbidden-run code length",
            requested: n,
            cap,
        });
    }
    let mut words = Vec::new();
    let mut cur = Bits::empty();
    grow_short_runs(n, max_run, &mut cur, 0, &mut words);
    Code::new(n, words)
}

fn grow_short_runs(n: usize, max_run: usize, cur: &mut Bits, run: usize, out: &mut Vec<Bits>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    let last = cur.symbols().last().copied();
    for s in [0, 1] {
        let next_run = if Some(s) == last { run + 1 } else { 1 };
        if next_run < max_run {
            cur.push(s);
            grow_short_runs(n, max_run, cur, next_run, out);
            cur.pop();
        }
    }
}

/// Number of length-`n` words whose runs are all shorter than `max_run`.
///
/// Every word shorter than `max_run` qualifies, which seeds the lengths
/// `0..max_run`; beyond that the count obeys
/// `c[n] = c[n-1] + ... + c[n-max_run+1]`, classifying words by the length
/// of their final run.
///
/// # Panics
/// If `max_run < 2`.
pub fn count_forbidden_run(n: usize, max_run: usize) -> BigUint {
    forbidden_run_counts(n, max_run)
        .pop()
        .expect("table is nonempty")
}

fn forbidden_run_counts(n_max: usize, max_run: usize) -> Vec<BigUint> {
    assert!(max_run >= 2, "run bound must be at least 2");
    let mut counts: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let c = if n == 0 {
            BigUint::one()
        } else if n < max_run {
            BigUint::one() << n
        } else {
            counts[n - (max_run - 1)..n].iter().sum()
        };
        counts.push(c);
    }
    counts
}

/// Number of length-`n` words avoiding `0^{k2-1}1` and `1^{k2-1}0`.
///
/// Dynamic program over (last symbol, trailing run length capped at
/// `k2 - 1`); a run that reaches `k2 - 1` may only be extended.
///
/// # Panics
/// If `k2 < 3`.
pub fn count_no_run_break(n: usize, k2: usize) -> BigUint {
    no_run_break_counts(n, k2).pop().expect("table is nonempty")
}

fn no_run_break_counts(n_max: usize, k2: usize) -> Vec<BigUint> {
    assert!(k2 >= 3, "output span must be at least 3");
    let cap = k2 - 1;
    let mut counts = vec![BigUint::one()];
    if n_max == 0 {
        return counts;
    }
    // words ending in 0, bucketed by trailing run length 1..=cap (index r - 1);
    // words ending in 1 are symmetric
    let mut tails = vec![BigUint::zero(); cap];
    tails[0] = BigUint::one();
    counts.push(BigUint::from(2u32));
    for _ in 2..=n_max {
        let mut next = vec![BigUint::zero(); cap];
        // a symbol change is allowed only before the run reaches the cap
        next[0] = tails[..cap - 1].iter().sum();
        for (r, c) in tails.iter().enumerate() {
            next[(r + 1).min(cap - 1)] += c;
        }
        counts.push(next.iter().sum::<BigUint>() * 2u32);
        tails = next;
    }
    counts
}

/// Which counting recurrence a [`CountTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountFamily {
    /// All runs shorter than `max_run`.
    ForbiddenRun { max_run: usize },
    /// No run of length `k2 - 1` followed by a symbol change.
    NoRunBreak { k2: usize },
}

impl CountFamily {
    fn validate(self) -> Result<()> {
        match self {
            CountFamily::ForbiddenRun { max_run } if max_run < 2 => Err(Error::InvalidArgument(
                format!("run bound must be at least 2, got {max_run}"),
            )),
            CountFamily::NoRunBreak { k2 } if k2 < 3 => Err(Error::InvalidArgument(format!(
                "output span must be at least 3, got {k2}"
            ))),
            _ => Ok(()),
        }
    }
}

/// Exact counts `c[0..=n_max]` for one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    family: CountFamily,
    counts: Vec<BigUint>,
}

impl CountTable {
    pub fn build(family: CountFamily, n_max: usize) -> Result<Self> {
        family.validate()?;
        let counts = match family {
            CountFamily::ForbiddenRun { max_run } => forbidden_run_counts(n_max, max_run),
            CountFamily::NoRunBreak { k2 } => no_run_break_counts(n_max, k2),
        };
        Ok(CountTable { family, counts })
    }

    pub fn family(&self) -> CountFamily {
        self.family
    }

    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, n: usize) -> &BigUint {
        &self.counts[n]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `log2(c[n]) / n`; requires `n >= 1` and `c[n] > 0`.
    pub fn rate(&self, n: usize) -> f64 {
        log2_big(&self.counts[n]) / n as f64
    }

    /// `c[n+1] / c[n]`.
    pub fn ratio(&self, n: usize) -> f64 {
        big_ratio(&self.counts[n + 1], &self.counts[n])
    }

    /// CSV with header `n,count,rate_bits`, one row per `n` in `1..=n_max`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count,rate_bits\n");
        for n in 1..=self.n_max() {
            let _ = writeln!(out, "{n},{},{}", self.counts[n], sig12(self.rate(n)));
        }
        out
    }
}

/// Quotient of two big integers as `f64`, exact to double precision even
/// when both exceed the `f64` range.
fn big_ratio(num: &BigUint, den: &BigUint) -> f64 {
    let shift = den.bits().saturating_sub(960);
    let (a, b) = (num >> shift, den >> shift);
    a.to_f64().unwrap_or(f64::INFINITY) / b.to_f64().unwrap_or(f64::INFINITY)
}

/// `c[n+1] / c[n]` for the family, an estimate of its dominant growth root.
pub fn growth_ratio(family: CountFamily, n: usize) -> Result<f64> {
    Ok(CountTable::build(family, n + 1)?.ratio(n))
}
