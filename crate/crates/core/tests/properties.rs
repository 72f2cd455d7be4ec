//! Invariants checked against brute-force oracles.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use zecap::bitset::BitSet;
use zecap::channel::{step_outputs, transition_prob, Prob, StepOutputs};
use zecap::codesearch::solver::max_independent_set;
use zecap::codesearch::{optimal_code, verify_code, Code};
use zecap::confusability::{output_containment, possible_outputs};
use zecap::constructions::{CountFamily, CountTable};
use zecap::simulate::DecodeOutcome;
use zecap::*;

fn bits_strategy(max_len: usize) -> impl Strategy<Value = Bits> {
    prop::collection::vec(0u8..=1, 0..=max_len).prop_map(|v| Bits::from_symbols(v).unwrap())
}

fn nonempty_bits(max_len: usize) -> impl Strategy<Value = Bits> {
    prop::collection::vec(0u8..=1, 1..=max_len).prop_map(|v| Bits::from_symbols(v).unwrap())
}

fn params_strategy(max_k: usize) -> impl Strategy<Value = ChannelParams> {
    (1..=max_k, 1..=max_k).prop_map(|(a, b)| ChannelParams::new(a, b).unwrap())
}

/// Equal-length pair of words.
fn word_pair(max_len: usize) -> impl Strategy<Value = (Bits, Bits)> {
    (1..=max_len).prop_flat_map(|n| {
        let w = prop::collection::vec(0u8..=1, n);
        (w.clone(), w).prop_map(|(a, b)| {
            (
                Bits::from_symbols(a).unwrap(),
                Bits::from_symbols(b).unwrap(),
            )
        })
    })
}

proptest! {
    #[test]
    fn run_detection_matches_patterns(x in bits_strategy(20), len in 1usize..6) {
        let zeros = Bits::repeat(0, len);
        let ones = Bits::repeat(1, len);
        prop_assert_eq!(
            contains_run(&x, len),
            contains_pattern(&x, &zeros) || contains_pattern(&x, &ones)
        );
        if !x.is_empty() {
            prop_assert!(contains_run(&x, 1));
        }
    }

    #[test]
    fn support_is_positive_probability_set(
        params in params_strategy(5),
        (x, y) in word_pair(10),
    ) {
        let n = x.len();
        let x_prefix = x.clone();
        let y_prefix = y.prefix(n - 1).unwrap();
        let support = step_outputs(params, &x_prefix, &y_prefix).unwrap();
        let probs: Vec<Prob> = (0..=1)
            .map(|s| transition_prob(params, &x_prefix, &y_prefix, s).unwrap())
            .collect();
        for s in 0..=1u8 {
            prop_assert_eq!(support.contains(s), probs[s as usize].is_positive());
        }
        let total: u32 = probs.iter().map(|p| { let (a, b) = p.as_ratio(); a * (2 / b) }).sum();
        prop_assert_eq!(total, 2, "probabilities must sum to one");
        if params.is_noiseless() {
            prop_assert_eq!(support, StepOutputs::Only(x.get(n).unwrap()));
        }
    }

    #[test]
    fn membership_matches_enumeration(params in params_strategy(5), (x, y) in word_pair(12)) {
        let set = possible_outputs(params, &x).unwrap();
        prop_assert_eq!(output_membership(params, &x, &y).unwrap(), set.contains(&y));
        prop_assert!(set.contains(&x), "deterministic trace must be possible");
    }

    #[test]
    fn confusability_matches_intersection(params in params_strategy(6), (x, z) in word_pair(10)) {
        let a = possible_outputs(params, &x).unwrap();
        let b = possible_outputs(params, &z).unwrap();
        prop_assert_eq!(confusable_dp(params, &x, &z).unwrap(), a.intersects(&b));
        prop_assert_eq!(confusable_dp(params, &x, &z).unwrap(), confusable_dp(params, &z, &x).unwrap());
    }

    #[test]
    fn containment_matches_enumeration(params in params_strategy(5), (x, z) in word_pair(10)) {
        let a = possible_outputs(params, &x).unwrap();
        let b = possible_outputs(params, &z).unwrap();
        let escape = output_containment(params, &x, &z).unwrap();
        prop_assert_eq!(escape.is_none(), a.is_subset(&b));
        if let Some(y) = escape {
            prop_assert!(a.contains(&y) && !b.contains(&y));
        }
    }

    #[test]
    fn short_runs_give_singleton_outputs(k1 in 2usize..6, k2 in 2usize..6, x in nonempty_bits(14)) {
        let params = ChannelParams::new(k1, k2).unwrap();
        if !contains_run(&x, k1 - 1) && !contains_run(&x, k2 - 1) {
            let set = possible_outputs(params, &x).unwrap();
            prop_assert_eq!(set.len(), 1);
        }
    }

    #[test]
    fn samples_are_possible_outputs(params in params_strategy(5), x in nonempty_bits(16), seed: u64) {
        let y = sample_output(params, &x, seed);
        prop_assert!(output_membership(params, &x, &y).unwrap());
        prop_assert_eq!(&y, &sample_output(params, &x, seed));
    }

    #[test]
    fn code_file_round_trip(params in params_strategy(6), words in prop::collection::btree_set(0u64..256, 1..20)) {
        let code = Code::new(8, words.iter().map(|&w| Bits::from_index(w, 8))).unwrap();
        let text = code.to_file_string(params);
        let (p2, c2) = Code::read_from(text.as_bytes()).unwrap();
        prop_assert_eq!(p2, params);
        prop_assert_eq!(c2, code);
    }

    #[test]
    fn solver_matches_subset_enumeration(
        n in 1usize..13,
        edges in prop::collection::vec((0usize..13, 0usize..13), 0..40),
    ) {
        let mut adj = vec![BitSet::new(n); n];
        for (a, b) in edges {
            let (a, b) = (a % n, b % n);
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        let brute = (0u32..1 << n)
            .filter(|mask| {
                (0..n).all(|i| mask & (1 << i) == 0 || adj[i].iter().all(|j| mask & (1 << j) == 0))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap();
        let found = max_independent_set(&adj, None);
        prop_assert!(found.complete);
        prop_assert_eq!(found.vertices.len(), brute);
        for &a in &found.vertices {
            for &b in &found.vertices {
                prop_assert!(!adj[a].contains(b));
            }
        }
    }
}

#[test]
fn enumeration_has_no_duplicates() {
    for n in 0..=12 {
        let all: Vec<Bits> = all_sequences(n).unwrap().collect();
        assert_eq!(all.len(), 1 << n);
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
    }
}

#[test]
fn graph_contains_marginal_channel_edges() {
    for n in 1..=6 {
        for k1 in 1..=5 {
            for k2 in 1..=5 {
                let joint = build_graph(ChannelParams::new(k1, k2).unwrap(), n).unwrap();
                let out_only = build_graph(ChannelParams::new(1, k2).unwrap(), n).unwrap();
                let in_only = build_graph(ChannelParams::new(k1, 1).unwrap(), n).unwrap();
                for (i, j) in out_only.edges().chain(in_only.edges()) {
                    assert!(joint.has_edge(i, j), "n={n} ({k1},{k2}) {i}-{j}");
                }
            }
        }
    }
}

#[test]
fn graph_is_independent_of_thread_count() {
    let params = ChannelParams::new(3, 2).unwrap();
    let parallel = build_graph(params, 9).unwrap();
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| build_graph(params, 9).unwrap());
    assert_eq!(parallel, single);
    for i in 0..parallel.vertex_count() {
        assert!(!parallel.has_edge(i, i));
        for j in parallel.neighbors(i).iter() {
            assert!(parallel.has_edge(j, i));
        }
    }
}

#[test]
fn replacement_preserves_zero_error() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for &(k1, k2, n) in &[
        (2, 1, 6),
        (1, 3, 6),
        (1, 4, 7),
        (3, 2, 6),
        (2, 3, 6),
        (3, 4, 7),
    ] {
        let params = ChannelParams::new(k1, k2).unwrap();
        let code = optimal_code(&build_graph(params, n).unwrap()).witness;
        let all: Vec<Bits> = all_sequences(n).unwrap().collect();
        for _ in 0..20 {
            let old = &code.words()[rng.gen_range(0..code.len())];
            let candidates: Vec<&Bits> = all
                .iter()
                .filter(|z| output_containment(params, z, old).unwrap().is_none())
                .collect();
            let new = candidates[rng.gen_range(0..candidates.len())];
            let replaced = zecap::replace_codeword(params, &code, old, new).unwrap();
            assert!(verify_code(params, &replaced), "({k1},{k2}) {old} -> {new}");
            assert_eq!(replaced.len(), code.len());
            checked += 1;
        }
    }
    assert_eq!(checked, 120);
}

#[test]
fn verified_codes_always_decode() {
    let cases = [
        (ChannelParams::new(2, 1).unwrap(), pairwise_block_code(7)),
        (
            ChannelParams::new(1, 5).unwrap(),
            forbidden_run_code(9, 4).unwrap(),
        ),
        (
            ChannelParams::new(3, 4).unwrap(),
            optimal_code(&build_graph(ChannelParams::new(3, 4).unwrap(), 7).unwrap()).witness,
        ),
    ];
    for (params, code) in cases {
        assert!(verify_code(params, &code));
        for w in code.words() {
            for seed in 0..40 {
                let y = sample_output(params, w, seed);
                assert_eq!(
                    decode(params, &code, &y).unwrap(),
                    DecodeOutcome::Decoded(w.clone())
                );
            }
        }
    }
}

#[test]
fn coin_steps_are_fair() {
    // x = 01 under M_{2,1}: step 2 is always a coin flip
    let params = ChannelParams::new(2, 1).unwrap();
    let x: Bits = "01".parse().unwrap();
    let trials = 20_000u64;
    let ones = (0..trials)
        .filter(|&s| sample_output(params, &x, s).get(2).unwrap() == 1)
        .count() as f64;
    let mean = trials as f64 / 2.0;
    let sigma = (trials as f64 / 4.0).sqrt();
    assert!(
        (ones - mean).abs() <= 3.0 * sigma,
        "{ones} heads of {trials}"
    );
}

fn final_run(x: &Bits) -> usize {
    *x.runs().last().unwrap()
}

#[test]
fn no_run_break_family_decomposition() {
    for k2 in 4..=6 {
        let by_n: Vec<Vec<usize>> = (1..=14)
            .map(|n| {
                let p0: Bits = format!("{}1", "0".repeat(k2 - 1)).parse().unwrap();
                let p1: Bits = format!("{}0", "1".repeat(k2 - 1)).parse().unwrap();
                let mut buckets = vec![0usize; n + 1];
                for x in all_sequences(n).unwrap() {
                    if !contains_pattern(&x, &p0) && !contains_pattern(&x, &p1) {
                        buckets[final_run(&x)] += 1;
                    }
                }
                buckets
            })
            .collect();
        for n in 1..14 {
            let cur = &by_n[n - 1];
            let next = &by_n[n];
            let total: usize = cur.iter().sum();
            assert_eq!(BigUint::from(total), count_no_run_break(n, k2));
            // a new run of length 1 starts only after a run shorter than k2 - 1
            assert_eq!(
                next[1],
                (1..=(k2 - 2).min(n)).map(|i| cur[i]).sum::<usize>()
            );
            for i in 1..=n {
                assert_eq!(cur[i], next[i + 1], "k2={k2} n={n} i={i}");
            }
            let max_bucket = *cur.iter().max().unwrap();
            assert!(cur[1] <= total && total <= n * max_bucket);
        }
    }
}

#[test]
fn short_run_family_is_inside_no_run_break_family() {
    for l in 2..=8 {
        let small = CountTable::build(CountFamily::ForbiddenRun { max_run: l }, 200).unwrap();
        let large = CountTable::build(CountFamily::NoRunBreak { k2: l + 1 }, 200).unwrap();
        for n in 0..=200 {
            assert!(small.count(n) <= large.count(n), "L={l} n={n}");
        }
        for n in 1..200 {
            assert!(small.count(n) <= small.count(n + 1));
            assert!(large.count(n) <= large.count(n + 1));
        }
    }
}

#[test]
fn family_codes_are_zero_error() {
    for n in 1..=10 {
        assert!(verify_code(
            ChannelParams::new(2, 1).unwrap(),
            &pairwise_block_code(n)
        ));
    }
    for k1 in 4..=6 {
        for k2 in 4..=6 {
            let params = ChannelParams::new(k1, k2).unwrap();
            for n in [5, 8, 10] {
                let code = forbidden_run_code(n, k1.min(k2) - 1).unwrap();
                assert!(verify_code(params, &code), "({k1},{k2}) n={n}");
            }
        }
    }
}

#[test]
fn output_memory_sandwich_for_longer_spans() {
    for k2 in 4..=5 {
        let params = ChannelParams::new(1, k2).unwrap();
        for n in 1..=10 {
            let size = BigUint::from(optimal_code(&build_graph(params, n).unwrap()).size);
            assert!(count_forbidden_run(n, k2 - 1) <= size, "k2={k2} n={n}");
            assert!(size <= count_no_run_break(n, k2), "k2={k2} n={n}");
        }
    }
}

#[test]
fn capacity_respects_marginal_bound() {
    for k1 in 2..=15 {
        for k2 in 2..=15 {
            let joint = capacity(k1, k2).unwrap();
            let bound = capacity(k1, 1)
                .unwrap()
                .upper()
                .min(capacity(1, k2).unwrap().upper());
            assert!(joint.upper() <= bound + 1e-12, "({k1},{k2})");
        }
    }
}

#[test]
fn roots_increase_toward_two() {
    let roots: Vec<f64> = (2..=20).map(|k| lambda_root(k).unwrap()).collect();
    assert!(roots.windows(2).all(|w| w[0] < w[1]));
    assert!(roots.iter().all(|&r| r < 2.0));
    assert!(lambda_root(20).unwrap().log2() > 0.999);
    for k in 4..=6 {
        let ratio = growth_ratio(CountFamily::ForbiddenRun { max_run: k - 1 }, 256).unwrap();
        assert!((ratio - omega_root(k).unwrap()).abs() < 1e-6);
    }
}

#[test]
fn recurrences_match_enumeration() {
    for l in 2..=6 {
        for n in 0..=16 {
            let listed = forbidden_run_code(n, l).map(|c| c.len()).unwrap_or(0);
            let brute = all_sequences(n)
                .unwrap()
                .filter(|x| !contains_run(x, l))
                .count();
            assert_eq!(listed, brute, "L={l} n={n}");
            assert_eq!(
                count_forbidden_run(n, l),
                BigUint::from(brute),
                "L={l} n={n}"
            );
        }
    }
    for k2 in 4..=6 {
        let p0: Bits = format!("{}1", "0".repeat(k2 - 1)).parse().unwrap();
        let p1: Bits = format!("{}0", "1".repeat(k2 - 1)).parse().unwrap();
        for n in 0..=16 {
            let brute = all_sequences(n)
                .unwrap()
                .filter(|x| !contains_pattern(x, &p0) && !contains_pattern(x, &p1))
                .count();
            assert_eq!(
                count_no_run_break(n, k2),
                BigUint::from(brute),
                "k2={k2} n={n}"
            );
        }
    }
}
