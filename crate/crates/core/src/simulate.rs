//! Seeded channel sampling and the exhaustive zero-error decoder.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{input_break_flags, tail_cap, ChannelParams, OutputTail};
use crate::codesearch::{first_conflict, Code};
use crate::confusability::output_membership;
use crate::error::{Error, Result};
use crate::sequences::{Bits, Symbol};

/// Identifier of the generator behind every sampled output.
pub const GENERATOR: &str = "rand_chacha::ChaCha8Rng::seed_from_u64";

/// Most ambiguity examples kept in a [`TrialReport`].
pub const MAX_EXAMPLES: usize = 10;

/// One channel use over the whole word: the input symbol is copied unless a
/// break condition fires, in which case the output symbol is a fair coin.
pub fn sample_output(params: ChannelParams, x: &Bits, seed: u64) -> Bits {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_output_with(params, x, &mut rng)
}

pub fn sample_output_with<R: Rng + ?Sized>(params: ChannelParams, x: &Bits, rng: &mut R) -> Bits {
    let xs = x.symbols();
    let breaks = input_break_flags(params.k1(), xs);
    let cap = tail_cap(params.k2());
    let mut tail: Option<OutputTail> = None;
    let mut y = Bits::empty();
    for (t, &x_t) in xs.iter().enumerate() {
        let fires = breaks[t] || tail.is_some_and(|s| s.output_break(params.k2(), x_t));
        let y_t: Symbol = if fires { rng.gen_range(0..=1) } else { x_t };
        y.push(y_t);
        tail = Some(match tail {
            None => OutputTail::start(y_t),
            Some(s) => s.push(y_t, cap),
        });
    }
    y
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    Decoded(Bits),
    /// Two or more codewords can produce the output.
    Ambiguous(Vec<Bits>),
    /// No codeword can produce the output.
    NoMatch,
}

/// The unique codeword whose possible outputs contain `y`.
pub fn decode(params: ChannelParams, code: &Code, y: &Bits) -> Result<DecodeOutcome> {
    if y.len() != code.block_len() {
        return Err(Error::LengthMismatch {
            expected: code.block_len(),
            actual: y.len(),
        });
    }
    let mut matches = Vec::new();
    for w in code.words() {
        if output_membership(params, w, y)? {
            matches.push(w.clone());
        }
    }
    Ok(match matches.len() {
        0 => DecodeOutcome::NoMatch,
        1 => DecodeOutcome::Decoded(matches.pop().unwrap()),
        _ => DecodeOutcome::Ambiguous(matches),
    })
}

/// One failed trial, kept for inspection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialExample {
    pub trial: u64,
    pub codeword: String,
    pub output: String,
    /// `"ambiguous"`, `"none"` or `"wrong"`.
    pub outcome: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialReport {
    pub trials: u64,
    pub failures: u64,
    pub seed: u64,
    pub generator: &'static str,
    pub examples: Vec<TrialExample>,
}

/// Sends uniformly chosen codewords through the channel and decodes them.
/// Trial `i` draws everything from a generator seeded with `seed + i`, so a
/// batch replays bit-exactly regardless of thread count.
///
/// Refuses a code that is not zero-error unless `force` is set.
pub fn zero_error_trial(
    params: ChannelParams,
    code: &Code,
    trials: u64,
    seed: u64,
    force: bool,
) -> Result<TrialReport> {
    if code.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot simulate an empty code".into(),
        ));
    }
    if !force {
        if let Some((a, b)) = first_conflict(params, code) {
            return Err(Error::Confusable(a.to_string(), b.to_string()));
        }
    }
    let outcomes: Vec<Option<TrialExample>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
            let sent = &code.words()[rng.gen_range(0..code.len())];
            let y = sample_output_with(params, sent, &mut rng);
            let outcome = match decode(params, code, &y).expect("lengths agree") {
                DecodeOutcome::Decoded(w) if &w == sent => return None,
                DecodeOutcome::Decoded(_) => "wrong",
                DecodeOutcome::Ambiguous(_) => "ambiguous",
                DecodeOutcome::NoMatch => "none",
            };
            Some(TrialExample {
                trial: i,
                codeword: sent.to_string(),
                output: y.to_string(),
                outcome,
            })
        })
        .collect();
    let failures = outcomes.iter().flatten().count() as u64;
    let examples = outcomes.into_iter().flatten().take(MAX_EXAMPLES).collect();
    Ok(TrialReport {
        trials,
        failures,
        seed,
        generator: GENERATOR,
        examples,
    })
}
