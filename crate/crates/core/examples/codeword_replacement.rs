//! Swapping a codeword for a word whose outputs it covers keeps a code
//! zero-error; other swaps are refused, and some of them really do break it.
//!
//! Usage: `cargo run --example codeword_replacement -- [k1] [k2] [n]`

use zecap::codesearch::optimal_code;
use zecap::confusability::output_containment;
use zecap::{
    all_sequences, build_graph, replace_codeword, verify_code, Bits, ChannelParams, Code, Error,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let k1 = args.first().copied().unwrap_or(3);
    let k2 = args.get(1).copied().unwrap_or(2);
    let n = args.get(2).copied().unwrap_or(6);
    let params = ChannelParams::new(k1, k2)?;

    let code = optimal_code(&build_graph(params, n)?).witness;
    println!("optimal code for {params}, n = {n}: {} words", code.len());

    // words whose output set sits inside O(w)
    let all: Vec<Bits> = all_sequences(n)?.collect();
    let covered = |w: &Bits| -> Vec<Bits> {
        all.iter()
            .filter(|z| *z != w && output_containment(params, z, w).unwrap().is_none())
            .cloned()
            .collect()
    };
    let old = code
        .words()
        .iter()
        .max_by_key(|w| covered(w).len())
        .unwrap()
        .clone();
    let inside = covered(&old);
    println!("{} words have outputs inside O({old})", inside.len());

    for z in &inside {
        let new_code = replace_codeword(params, &code, &old, z)?;
        assert!(verify_code(params, &new_code));
        println!("  {old} -> {z}: still zero-error");
    }

    let (mut refused, mut broken) = (0, 0);
    for z in all
        .iter()
        .filter(|z| **z != old && !inside.contains(z) && !code.contains(z))
    {
        match replace_codeword(params, &code, &old, z) {
            Err(Error::NotContained { .. }) => {
                refused += 1;
                let swapped =
                    code.words()
                        .iter()
                        .map(|w| if *w == old { z.clone() } else { w.clone() });
                if !verify_code(params, &Code::new(n, swapped)?) {
                    broken += 1;
                }
            }
            other => return Err(format!("unexpected {other:?}").into()),
        }
    }
    println!("{refused} other swaps refused; {broken} of them would make the code confusable");
    Ok(())
}
