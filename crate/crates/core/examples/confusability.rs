//! Output sets of every word at a small block length, the confusability
//! graph they induce, and its densest vertices.
//!
//! Usage: `cargo run --example confusability -- [k1] [k2] [n]`

use zecap::{all_sequences, build_graph, confusable_dp, possible_outputs, ChannelParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let k1 = args.first().copied().unwrap_or(2);
    let k2 = args.get(1).copied().unwrap_or(2);
    let n = args.get(2).copied().unwrap_or(4);
    let params = ChannelParams::new(k1, k2)?;

    println!("channel {params}, n = {n}");
    for x in all_sequences(n)? {
        let outs = possible_outputs(params, &x)?;
        let listed: Vec<String> = outs.iter().map(|y| y.to_string()).collect();
        println!("  O({x}) = {{{}}}", listed.join(", "));
    }

    let graph = build_graph(params, n)?;
    println!(
        "graph: {} vertices, {} edges",
        graph.vertex_count(),
        graph.edge_count()
    );
    let mut by_degree: Vec<usize> = (0..graph.vertex_count()).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(graph.degree(v)));
    for &v in by_degree.iter().take(5) {
        println!("  {} has degree {}", graph.vertex(v), graph.degree(v));
    }

    // the DP agrees with intersecting the enumerated sets
    let (a, b) = (graph.vertex(0), graph.vertex(graph.vertex_count() - 1));
    println!("{a} ~ {b}: {}", confusable_dp(params, &a, &b)?);
    Ok(())
}
