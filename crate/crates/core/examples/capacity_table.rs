//! Capacity over a grid of memory spans, the multinacci roots behind it and
//! the lower/upper bounds left open when the output span is longer.
//!
//! Usage: `cargo run --example capacity_table -- [k_max]`

use zecap::capacity::bounds_csv;
use zecap::{bounds_table, capacity, lambda_root, omega_root};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k_max: usize = std::env::args()
        .nth(1)
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(8);

    println!("{:>3} {:>16} {:>16}", "k", "lambda", "omega");
    for k in 2..=k_max.max(2) {
        let omega = if k >= 3 {
            format!("{:.12}", omega_root(k)?)
        } else {
            "-".into()
        };
        println!("{k:>3} {:>16.12} {omega:>16}", lambda_root(k)?);
    }

    print!("\nk1\\k2");
    for k2 in 1..=k_max {
        print!(" {k2:>11}");
    }
    println!();
    for k1 in 1..=k_max {
        print!("{k1:>5}");
        for k2 in 1..=k_max {
            let c = capacity(k1, k2)?;
            let cell = match c.exact_value() {
                Some(v) => format!("{v:.4}"),
                None => format!("{:.3}-{:.3}", c.lower(), c.upper()),
            };
            print!(" {cell:>11}");
        }
        println!();
    }

    println!("\nbounds when k2 > k1:");
    print!("{}", bounds_csv(&bounds_table(3, 12)?));
    Ok(())
}
