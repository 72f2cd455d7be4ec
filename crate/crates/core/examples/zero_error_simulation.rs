//! Monte Carlo over a verified code: every trial decodes uniquely. Forcing an
//! unverified code through shows what the decoder reports instead.
//!
//! Usage: `cargo run --release --example zero_error_simulation -- [trials] [seed]`

use zecap::{pairwise_block_code, verify_code, zero_error_trial, ChannelParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let trials = args.first().copied().unwrap_or(10_000);
    let seed = args.get(1).copied().unwrap_or(0);

    let code = pairwise_block_code(8);
    let good = ChannelParams::new(2, 1)?;
    let bad = ChannelParams::new(1, 2)?;

    for params in [good, bad] {
        let verified = verify_code(params, &code);
        let report = zero_error_trial(params, &code, trials, seed, !verified)?;
        println!(
            "{params}: verified {verified}, {} failures in {} trials (seed {}, {})",
            report.failures, report.trials, report.seed, report.generator
        );
        for e in &report.examples {
            println!(
                "  trial {}: sent {} got {} -> {}",
                e.trial, e.codeword, e.output, e.outcome
            );
        }
    }
    Ok(())
}
