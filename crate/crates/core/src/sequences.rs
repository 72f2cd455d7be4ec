//! Binary words and the handful of scans the rest of the crate needs.
//!
//! Public positions are 1-based so that `x.get(1)` is the first symbol
//! transmitted. Words render as ASCII `0`/`1` strings, first symbol first.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::limits::DEFAULT_ENUMERATION_CAP;

/// A channel symbol, always 0 or 1.
pub type Symbol = u8;

/// A finite binary word `b_1 b_2 ... b_n`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bits {
    syms: Vec<Symbol>,
}

impl Bits {
    pub fn empty() -> Self {
        Bits { syms: Vec::new() }
    }

    pub fn from_symbols(syms: Vec<Symbol>) -> Result<Self> {
        if let Some(&bad) = syms.iter().find(|&&s| s > 1) {
            return Err(Error::InvalidArgument(format!(
                "symbol {bad} is not binary"
            )));
        }
        Ok(Bits { syms })
    }

    /// The word of length `n` whose symbols are the binary digits of `word`,
    /// most significant first. This is the lexicographic rank of the word.
    pub fn from_index(word: u64, n: usize) -> Self {
        assert!(n <= 64, "index form supports n <= 64");
        let syms = (0..n)
            .map(|i| ((word >> (n - 1 - i)) & 1) as Symbol)
            .collect();
        Bits { syms }
    }

    /// Lexicographic rank among words of the same length. Requires `len() <= 64`.
    pub fn to_index(&self) -> u64 {
        assert!(self.len() <= 64, "index form supports n <= 64");
        self.syms.iter().fold(0u64, |acc, &s| (acc << 1) | s as u64)
    }

    /// `s^len`.
    pub fn repeat(sym: Symbol, len: usize) -> Self {
        assert!(sym <= 1);
        Bits {
            syms: vec![sym; len],
        }
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.syms
    }

    /// Symbol at 1-based position `t`.
    pub fn get(&self, t: usize) -> Result<Symbol> {
        if t == 0 || t > self.len() {
            return Err(Error::IndexOutOfRange {
                index: t,
                len: self.len(),
            });
        }
        Ok(self.syms[t - 1])
    }

    /// The slice `b_{from} ... b_{to}`, defined for `1 <= from <= to <= n`.
    pub fn slice(&self, from: usize, to: usize) -> Result<Bits> {
        if from == 0 || from > to {
            return Err(Error::IndexOutOfRange {
                index: from,
                len: self.len(),
            });
        }
        if to > self.len() {
            return Err(Error::IndexOutOfRange {
                index: to,
                len: self.len(),
            });
        }
        Ok(Bits {
            syms: self.syms[from - 1..to].to_vec(),
        })
    }

    /// The prefix `b_1 ... b_t` (empty for `t = 0`).
    pub fn prefix(&self, t: usize) -> Result<Bits> {
        if t > self.len() {
            return Err(Error::IndexOutOfRange {
                index: t,
                len: self.len(),
            });
        }
        Ok(Bits {
            syms: self.syms[..t].to_vec(),
        })
    }

    pub fn push(&mut self, sym: Symbol) {
        assert!(sym <= 1);
        self.syms.push(sym);
    }

    pub fn pop(&mut self) -> Option<Symbol> {
        self.syms.pop()
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &Bits) -> Bits {
        let mut syms = self.syms.clone();
        syms.extend_from_slice(&other.syms);
        Bits { syms }
    }

    /// Lengths of the maximal runs, in order.
    pub fn runs(&self) -> Vec<usize> {
        let mut runs = Vec::new();
        let mut iter = self.syms.iter();
        let Some(mut prev) = iter.next() else {
            return runs;
        };
        let mut len = 1;
        for s in iter {
            if s == prev {
                len += 1;
            } else {
                runs.push(len);
                len = 1;
                prev = s;
            }
        }
        runs.push(len);
        runs
    }

    /// Length of the longest run (0 for the empty word).
    pub fn longest_run(&self) -> usize {
        self.runs().into_iter().max().unwrap_or(0)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.syms {
            f.write_str(if s == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syms = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidArgument(format!(
                    "'{other}' is not a binary digit"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Bits { syms })
    }
}

/// True iff `x` contains `len` consecutive equal symbols.
pub fn contains_run(x: &Bits, len: usize) -> bool {
    assert!(len >= 1, "run length must be positive");
    x.longest_run() >= len
}

/// True iff `pattern` occurs contiguously in `x`. The empty pattern occurs everywhere.
pub fn contains_pattern(x: &Bits, pattern: &Bits) -> bool {
    if pattern.is_empty() {
        return true;
    }
    x.syms
        .windows(pattern.len())
        .any(|w| w == pattern.symbols())
}

/// Every word of length `n` in lexicographic order (`0 < 1`).
#[derive(Debug, Clone)]
pub struct AllSequences {
    n: usize,
    next: u64,
    end: u64,
}

impl AllSequences {
    pub fn with_cap(n: usize, cap: usize) -> Result<Self> {
        if n > cap || n > 63 {
            return Err(Error::CapExceeded {
                what: "sequence enumeration length",
                requested: n,
                cap: cap.min(63),
            });
        }
        Ok(AllSequences {
            n,
            next: 0,
            end: 1u64 << n,
        })
    }
}

impl Iterator for AllSequences {
    type Item = Bits;

    fn next(&mut self) -> Option<Bits> {
        if self.next >= self.end {
            return None;
        }
        let word = Bits::from_index(self.next, self.n);
        self.next += 1;
        Some(word)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for AllSequences {}

/// [`AllSequences`] under the default enumeration cap.
pub fn all_sequences(n: usize) -> Result<AllSequences> {
    AllSequences::with_cap(n, DEFAULT_ENUMERATION_CAP)
}
