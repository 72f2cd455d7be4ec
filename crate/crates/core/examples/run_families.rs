//! Run-constrained word families: the short-run code, its size recurrence,
//! the no-run-break count, and how their growth ratios approach the roots.
//!
//! Usage: `cargo run --example run_families -- [k2] [n_max]`

use zecap::constructions::{CountFamily, CountTable};
use zecap::{forbidden_run_code, growth_ratio, omega_root, verify_code, ChannelParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let k2 = args.first().copied().unwrap_or(4);
    let n_max = args.get(1).copied().unwrap_or(20);
    if k2 < 3 {
        return Err("k2 must be at least 3".into());
    }
    let max_run = k2 - 1;

    let code = forbidden_run_code(10, max_run)?;
    let params = ChannelParams::new(1, k2)?;
    println!(
        "words of length 10 without a run of {max_run}: {} (zero-error for {params}: {})",
        code.len(),
        verify_code(params, &code)
    );

    let short = CountTable::build(CountFamily::ForbiddenRun { max_run }, n_max)?;
    let long = CountTable::build(CountFamily::NoRunBreak { k2 }, n_max)?;
    println!(
        "{:>4} {:>14} {:>14} {:>9} {:>9}",
        "n", "short-run", "no-run-break", "rate", "rate"
    );
    for n in 1..=n_max {
        println!(
            "{n:>4} {:>14} {:>14} {:>9.5} {:>9.5}",
            short.count(n),
            long.count(n),
            short.rate(n),
            long.rate(n)
        );
    }

    let omega = omega_root(k2)?;
    for n in [64, 256, 1024] {
        let ratio = growth_ratio(CountFamily::ForbiddenRun { max_run }, n)?;
        println!("count ratio at n = {n}: {ratio:.12} (root {omega:.12})");
    }
    Ok(())
}
