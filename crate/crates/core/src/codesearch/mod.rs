//! Zero-error codes: verification, exact optimal search, single-codeword
//! replacement and the plain-text code file format.

pub mod solver;

use std::collections::BTreeSet;
use std::io::{BufRead, Write};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::channel::ChannelParams;
use crate::confusability::{output_containment, ConfusabilityGraph, JointReach, PreparedInput};
use crate::error::{Error, Result};
use crate::limits::DEFAULT_SEARCH_TIMEOUT;
use crate::sequences::Bits;

/// A set of equal-length words, kept sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    n: usize,
    words: Vec<Bits>,
}

impl Code {
    /// Builds a code of block length `n`. Words must all have length `n` and
    /// be pairwise distinct.
    pub fn new(n: usize, words: impl IntoIterator<Item = Bits>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for w in words {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: w.len(),
                });
            }
            if !set.insert(w.clone()) {
                return Err(Error::InvalidArgument(format!("duplicate codeword {w}")));
            }
        }
        Ok(Code {
            n,
            words: set.into_iter().collect(),
        })
    }

    /// Builds a code from nonempty input, taking the block length from the words.
    pub fn from_words(words: impl IntoIterator<Item = Bits>) -> Result<Self> {
        let words: Vec<Bits> = words.into_iter().collect();
        let n = words.first().map(Bits::len).ok_or_else(|| {
            Error::InvalidArgument("a code needs at least one word to fix n".into())
        })?;
        Code::new(n, words)
    }

    pub fn block_len(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Bits] {
        &self.words
    }

    pub fn contains(&self, w: &Bits) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// Writes the code file: a header line then one word per line.
    pub fn write_to<W: Write>(&self, params: ChannelParams, mut out: W) -> Result<()> {
        writeln!(
            out,
            "# zecap code n={} k1={} k2={}",
            self.n,
            params.k1(),
            params.k2()
        )?;
        for w in &self.words {
            writeln!(out, "{w}")?;
        }
        Ok(())
    }

    pub fn to_file_string(&self, params: ChannelParams) -> String {
        let mut buf = Vec::new();
        self.write_to(params, &mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("code files are ASCII")
    }

    /// Parses a code file, returning the channel named in its header.
    pub fn read_from<R: BufRead>(input: R) -> Result<(ChannelParams, Code)> {
        let mut lines = input.lines();
        let header = lines.next().transpose()?.ok_or(Error::Parse {
            line: 1,
            msg: "empty code file".into(),
        })?;
        let (n, params) = parse_header(&header)?;
        let mut words = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line?;
            let line_no = i + 2;
            let word: Bits =
                line.trim_end_matches('\r')
                    .parse()
                    .map_err(|e: Error| Error::Parse {
                        line: line_no,
                        msg: e.to_string(),
                    })?;
            if word.len() != n {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("word has length {}, header says n={n}", word.len()),
                });
            }
            words.push(word);
        }
        let code = Code::new(n, words).map_err(|e| Error::Parse {
            line: 0,
            msg: e.to_string(),
        })?;
        Ok((params, code))
    }
}

fn parse_header(header: &str) -> Result<(usize, ChannelParams)> {
    let bad = |msg: &str| Error::Parse {
        line: 1,
        msg: format!("{msg}: {header:?}"),
    };
    let rest = header
        .strip_prefix("# zecap code ")
        .ok_or_else(|| bad("missing '# zecap code' header"))?;
    let mut fields = rest.split(' ');
    let mut take = |key: &str| -> Result<usize> {
        fields
            .next()
            .and_then(|f| f.strip_prefix(key))
            .and_then(|v| v.strip_prefix('='))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad(&format!("malformed {key} field")))
    };
    let n = take("n")?;
    let k1 = take("k1")?;
    let k2 = take("k2")?;
    if fields.next().is_some() {
        return Err(bad("trailing header fields"));
    }
    Ok((n, ChannelParams::new(k1, k2)?))
}

/// True iff every pair of distinct codewords is distinguishable.
pub fn verify_code(params: ChannelParams, code: &Code) -> bool {
    first_conflict(params, code).is_none()
}

/// The lexicographically first confusable pair, if any.
pub fn first_conflict(params: ChannelParams, code: &Code) -> Option<(Bits, Bits)> {
    let prepared: Vec<PreparedInput> = code
        .words
        .iter()
        .map(|w| PreparedInput::new(params, w.symbols()))
        .collect();
    let n = code.n;
    (0..prepared.len())
        .into_par_iter()
        .map_init(
            || JointReach::new(params, n),
            |scratch, i| {
                (i + 1..prepared.len())
                    .find(|&j| scratch.confusable(&prepared[i], &prepared[j]))
                    .map(|j| (i, j))
            },
        )
        .find_first(Option::is_some)
        .flatten()
        .map(|(i, j)| (code.words[i].clone(), code.words[j].clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Wall-clock budget; `None` searches to completion.
    pub timeout: Option<Duration>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            timeout: Some(DEFAULT_SEARCH_TIMEOUT),
        }
    }
}

/// A largest code found for one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub size: usize,
    pub witness: Code,
    /// True when the search ran to completion, so `size` is the optimum.
    pub optimal: bool,
}

/// Exact maximum zero-error code for the graph's channel and block length.
pub fn optimal_code(graph: &ConfusabilityGraph) -> SearchResult {
    optimal_code_with(graph, &SearchOptions::default())
}

pub fn optimal_code_with(graph: &ConfusabilityGraph, opts: &SearchOptions) -> SearchResult {
    let deadline = opts.timeout.map(|d| Instant::now() + d);
    let found = solver::max_independent_set(graph.adjacency(), deadline);
    let witness = Code::new(
        graph.block_len(),
        found.vertices.iter().map(|&i| graph.vertex(i)),
    )
    .expect("graph vertices are distinct words of the block length");
    SearchResult {
        size: witness.len(),
        witness,
        optimal: found.complete,
    }
}

/// Replaces codeword `old` by `new`, which must satisfy `O(new) ⊆ O(old)`.
/// The result is zero-error whenever `code` was.
pub fn replace_codeword(
    params: ChannelParams,
    code: &Code,
    old: &Bits,
    new: &Bits,
) -> Result<Code> {
    if !code.contains(old) {
        return Err(Error::InvalidArgument(format!("{old} is not a codeword")));
    }
    if new.len() != code.n {
        return Err(Error::LengthMismatch {
            expected: code.n,
            actual: new.len(),
        });
    }
    if let Some(offending) = output_containment(params, new, old)? {
        return Err(Error::NotContained {
            original: old.to_string(),
            offending: offending.to_string(),
        });
    }
    let words = code
        .words
        .iter()
        .filter(|w| *w != old)
        .cloned()
        .chain(std::iter::once(new.clone()));
    // O(new) is nonempty and inside O(old), so `new` cannot equal another codeword
    // of a zero-error code; for a confusable input code a collision is reported.
    Code::new(code.n, words)
}

/// `log2(size) / n` in bits per channel use.
pub fn rate(n: usize, size: usize) -> f64 {
    assert!(n >= 1 && size >= 1, "rate needs n >= 1 and size >= 1");
    (size as f64).log2() / n as f64
}
