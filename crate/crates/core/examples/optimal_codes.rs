//! Exact optimal zero-error codes for small block lengths, with their rates
//! and the run-constrained counts that bracket them for output-memory channels.
//!
//! Usage: `cargo run --release --example optimal_codes -- [k1] [k2] [n_max]`

use std::time::Instant;

use zecap::codesearch::{optimal_code, rate, verify_code};
use zecap::{build_graph, count_forbidden_run, count_no_run_break, ChannelParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let k1 = args.first().copied().unwrap_or(2);
    let k2 = args.get(1).copied().unwrap_or(1);
    let n_max = args.get(2).copied().unwrap_or(8);
    let params = ChannelParams::new(k1, k2)?;

    println!("channel {params}");
    println!(
        "{:>3} {:>6} {:>8} {:>9}  extra",
        "n", "size", "rate", "secs"
    );
    for n in 1..=n_max {
        let start = Instant::now();
        let graph = build_graph(params, n)?;
        let best = optimal_code(&graph);
        assert!(verify_code(params, &best.witness));
        let extra = if k1 == 1 && k2 >= 4 {
            format!(
                "short-run family {} <= size <= no-run-break family {}",
                count_forbidden_run(n, k2 - 1),
                count_no_run_break(n, k2)
            )
        } else {
            String::new()
        };
        println!(
            "{n:>3} {:>6} {:>8.5} {:>9.3}  {}{extra}",
            best.size,
            rate(n, best.size),
            start.elapsed().as_secs_f64(),
            if best.optimal { "" } else { "(timed out) " },
        );
    }
    Ok(())
}
