//! Walks one input word through the channel step by step: which break
//! condition fires, the transition probabilities, and a few sampled outputs.
//!
//! Usage: `cargo run --example channel_law -- [k1] [k2] [word]`

use zecap::channel::{condition_a, condition_b, step_outputs, transition_prob};
use zecap::{sample_output, Bits, ChannelParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let k1 = args.first().map(|a| a.parse()).transpose()?.unwrap_or(2);
    let k2 = args.get(1).map(|a| a.parse()).transpose()?.unwrap_or(3);
    let x: Bits = args
        .get(2)
        .map(String::as_str)
        .unwrap_or("0011100")
        .parse()?;
    let params = ChannelParams::new(k1, k2)?;

    // follow the noiseless trace y = x; that trace is always possible
    println!("channel {params}, input {x}");
    println!(
        "{:>3} {:>3} {:>5} {:>5} {:>8} {:>8}",
        "t", "x_t", "(a)", "(b)", "P(0)", "P(1)"
    );
    for t in 1..=x.len() {
        let xp = x.prefix(t)?;
        let yp = x.prefix(t - 1)?;
        let x_t = x.get(t).unwrap();
        let a = condition_a(params, &xp, t)?;
        let b = condition_b(params, x_t, &yp, t)?;
        let p0 = transition_prob(params, &xp, &yp, 0)?;
        let p1 = transition_prob(params, &xp, &yp, 1)?;
        let support = step_outputs(params, &xp, &yp)?;
        println!(
            "{t:>3} {x_t:>3} {a:>5} {b:>5} {:>8.2} {:>8.2}  support {:?}",
            p0.to_f64(),
            p1.to_f64(),
            support.symbols()
        );
    }

    println!("samples:");
    for seed in 0..5 {
        println!("  seed {seed}: {}", sample_output(params, &x, seed));
    }
    Ok(())
}
