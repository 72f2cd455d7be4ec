//! Zero-error capacity workbench for the binary semantic channel `M_{K1,K2}`,
//! a channel whose output copies the input except when the input breaks a
//! run of its last `K1 - 1` inputs or of its last `K2 - 1` outputs, in which
//! case the output symbol is a fair coin.
//!
//! The crate covers the channel law, exact possible-output sets and
//! confusability, exact optimal zero-error codes at small block lengths,
//! the run-constrained code families and their counting recurrences,
//! closed-form capacities and bounds, and a seeded Monte-Carlo harness.
//!
//! ```
//! use zecap::{build_graph, capacity, optimal_code, verify_code, ChannelParams};
//!
//! let params = ChannelParams::new(2, 1)?;
//! let best = optimal_code(&build_graph(params, 8)?);
//! assert_eq!(best.size, 16);
//! assert!(verify_code(params, &best.witness));
//! assert_eq!(capacity(2, 1)?.exact_value(), Some(0.5));
//! # Ok::<(), zecap::Error>(())
//! ```

pub mod bitset;
pub mod capacity;
pub mod channel;
pub mod cli;
pub mod codesearch;
pub mod confusability;
pub mod constructions;
pub mod error;
pub mod limits;
pub mod numfmt;
pub mod sequences;
pub mod simulate;

pub use capacity::{
    bounds_table, capacity, lambda_root, omega_root, BoundsRow, CapacityCase, CapacityResult,
};
pub use channel::{
    condition_a, condition_b, step_outputs, transition_prob, ChannelParams, Prob, StepOutputs,
};
pub use codesearch::{
    optimal_code, rate, replace_codeword, verify_code, Code, SearchOptions, SearchResult,
};
pub use confusability::{
    build_graph, confusable_dp, output_membership, possible_outputs, ConfusabilityGraph, OutputSet,
};
pub use constructions::{
    count_forbidden_run, count_no_run_break, forbidden_run_code, growth_ratio, pairwise_block_code,
    CountFamily, CountTable,
};
pub use error::{Error, Result};
pub use limits::Limits;
pub use sequences::{all_sequences, contains_pattern, contains_run, Bits, Symbol};
pub use simulate::{decode, sample_output, zero_error_trial, DecodeOutcome, TrialReport};
