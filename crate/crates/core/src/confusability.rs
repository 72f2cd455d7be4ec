//! Possible-output sets, pairwise distinguishability and the confusability graph.
//!
//! Two inputs are confusable when some output word is possible for both.
//! Output sets can be exponentially large, so pairwise decisions go through
//! a joint forward reachability pass over a compressed output state; the
//! explicit set enumeration in [`possible_outputs`] is kept for inspection
//! and for cross-checking.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::channel::{
    input_break_flags, step_outputs, tail_cap, ChannelParams, OutputTail, StepOutputs,
};
use crate::error::{Error, Result};
use crate::limits::{DEFAULT_GRAPH_CAP, DEFAULT_OUTPUT_SET_CAP};
use crate::sequences::{AllSequences, Bits, Symbol};

/// `O(x)`: every output word reachable with positive probability from `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputSet {
    n: usize,
    members: BTreeSet<Bits>,
}

impl OutputSet {
    pub fn block_len(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, y: &Bits) -> bool {
        self.members.contains(y)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Bits> {
        self.members.iter()
    }

    pub fn intersects(&self, other: &OutputSet) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.members.iter().any(|y| large.members.contains(y))
    }

    pub fn is_subset(&self, other: &OutputSet) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// [`possible_outputs_capped`] with the default output-set cap.
pub fn possible_outputs(params: ChannelParams, x: &Bits) -> Result<OutputSet> {
    possible_outputs_capped(params, x, DEFAULT_OUTPUT_SET_CAP)
}

/// Enumerates `O(x)` by depth-first extension over the per-step supports.
pub fn possible_outputs_capped(params: ChannelParams, x: &Bits, cap: usize) -> Result<OutputSet> {
    if x.len() > cap {
        return Err(Error::CapExceeded {
            what: "output set block length",
            requested: x.len(),
            cap,
        });
    }
    let mut members = BTreeSet::new();
    let mut y = Bits::empty();
    extend_outputs(params, x, &mut y, &mut members)?;
    Ok(OutputSet {
        n: x.len(),
        members,
    })
}

fn extend_outputs(
    params: ChannelParams,
    x: &Bits,
    y: &mut Bits,
    out: &mut BTreeSet<Bits>,
) -> Result<()> {
    let t = y.len() + 1;
    if t > x.len() {
        out.insert(y.clone());
        return Ok(());
    }
    let support = step_outputs(params, &x.prefix(t)?, y)?;
    for &sym in support.symbols() {
        y.push(sym);
        extend_outputs(params, x, y, out)?;
        y.pop();
    }
    Ok(())
}

/// True iff `y ∈ O(x)`, by a single scan over the steps.
pub fn output_membership(params: ChannelParams, x: &Bits, y: &Bits) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            actual: y.len(),
        });
    }
    let (xs, ys) = (x.symbols(), y.symbols());
    let flags = input_break_flags(params.k1(), xs);
    let cap = tail_cap(params.k2());
    let mut tail: Option<OutputTail> = None;
    for t in 0..xs.len() {
        let fires = flags[t] || tail.is_some_and(|s| s.output_break(params.k2(), xs[t]));
        if !StepOutputs::resolve(fires, xs[t]).contains(ys[t]) {
            return Ok(false);
        }
        tail = Some(match tail {
            None => OutputTail::start(ys[t]),
            Some(s) => s.push(ys[t], cap),
        });
    }
    Ok(true)
}

/// True iff `O(x) ∩ O(x') ≠ ∅`.
///
/// Runs forward over the steps keeping the set of output tails reachable by
/// an output prefix that is possible for both inputs. Input breaks are
/// evaluated on each input separately, output breaks on the shared tail.
pub fn confusable_dp(params: ChannelParams, x: &Bits, x2: &Bits) -> Result<bool> {
    if x.len() != x2.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            actual: x2.len(),
        });
    }
    let a = PreparedInput::new(params, x.symbols());
    let b = PreparedInput::new(params, x2.symbols());
    let mut scratch = JointReach::new(params, x.len());
    Ok(scratch.confusable(&a, &b))
}

/// An input word together with its precomputed input-break flags.
#[derive(Debug, Clone)]
pub(crate) struct PreparedInput {
    syms: Vec<Symbol>,
    breaks: Vec<bool>,
}

impl PreparedInput {
    pub fn new(params: ChannelParams, syms: &[Symbol]) -> Self {
        PreparedInput {
            syms: syms.to_vec(),
            breaks: input_break_flags(params.k1(), syms),
        }
    }

    #[inline]
    fn support(&self, k2: usize, t: usize, tail: OutputTail) -> StepOutputs {
        let x_t = self.syms[t];
        StepOutputs::resolve(self.breaks[t] || tail.output_break(k2, x_t), x_t)
    }
}

/// Reusable buffers for the joint reachability pass.
pub(crate) struct JointReach {
    k2: usize,
    cap: usize,
    cur: Vec<bool>,
    next: Vec<bool>,
}

impl JointReach {
    pub fn new(params: ChannelParams, n: usize) -> Self {
        // runs never exceed n, so capping there loses nothing
        let cap = tail_cap(params.k2()).min(n.max(1));
        JointReach {
            k2: params.k2(),
            cap,
            cur: vec![false; 2 * cap],
            next: vec![false; 2 * cap],
        }
    }

    #[inline]
    fn index(&self, tail: OutputTail) -> usize {
        tail.last as usize * self.cap + (tail.run - 1)
    }

    #[inline]
    fn tail_at(&self, idx: usize) -> OutputTail {
        OutputTail {
            last: (idx / self.cap) as Symbol,
            run: idx % self.cap + 1,
        }
    }

    pub fn confusable(&mut self, a: &PreparedInput, b: &PreparedInput) -> bool {
        let n = a.syms.len();
        if n == 0 {
            return true;
        }
        // y_1 = x_1 for every channel in the family
        if a.syms[0] != b.syms[0] {
            return false;
        }
        self.cur.iter_mut().for_each(|v| *v = false);
        let start = self.index(OutputTail::start(a.syms[0]));
        self.cur[start] = true;
        for t in 1..n {
            self.next.iter_mut().for_each(|v| *v = false);
            let mut any = false;
            for idx in 0..self.cur.len() {
                if !self.cur[idx] {
                    continue;
                }
                let tail = self.tail_at(idx);
                let Some(shared) = a
                    .support(self.k2, t, tail)
                    .intersect(b.support(self.k2, t, tail))
                else {
                    continue;
                };
                for &y in shared.symbols() {
                    let j = self.index(tail.push(y, self.cap));
                    self.next[j] = true;
                    any = true;
                }
            }
            if !any {
                return false;
            }
            std::mem::swap(&mut self.cur, &mut self.next);
        }
        true
    }

    /// Some `y ∈ O(inner) \ O(outer)`, or `None` when `O(inner) ⊆ O(outer)`.
    pub fn escape(&mut self, inner: &PreparedInput, outer: &PreparedInput) -> Option<Vec<Symbol>> {
        let n = inner.syms.len();
        if n == 0 {
            return None;
        }
        let mut prefix = vec![inner.syms[0]];
        if inner.syms[0] != outer.syms[0] {
            prefix.extend_from_slice(&inner.syms[1..]);
            return Some(prefix);
        }
        let states = 2 * self.cap;
        let mut visited = vec![false; (n + 1) * states];
        let start = OutputTail::start(inner.syms[0]);
        if self.escape_from(inner, outer, 1, start, &mut prefix, &mut visited) {
            Some(prefix)
        } else {
            None
        }
    }

    fn escape_from(
        &self,
        inner: &PreparedInput,
        outer: &PreparedInput,
        t: usize,
        tail: OutputTail,
        prefix: &mut Vec<Symbol>,
        visited: &mut [bool],
    ) -> bool {
        let n = inner.syms.len();
        if t == n {
            return false;
        }
        let allowed_inner = inner.support(self.k2, t, tail);
        let allowed_outer = outer.support(self.k2, t, tail);
        for &y in allowed_inner.symbols() {
            prefix.push(y);
            if !allowed_outer.contains(y) {
                // the input's own symbol is always a possible output
                prefix.extend_from_slice(&inner.syms[t + 1..]);
                return true;
            }
            let next = tail.push(y, self.cap);
            let key = (t + 1) * 2 * self.cap + self.index(next);
            if !visited[key] {
                visited[key] = true;
                if self.escape_from(inner, outer, t + 1, next, prefix, visited) {
                    return true;
                }
            }
            prefix.pop();
        }
        false
    }
}

/// Decides `O(inner) ⊆ O(outer)`, returning a witness output when it fails.
pub fn output_containment(
    params: ChannelParams,
    inner: &Bits,
    outer: &Bits,
) -> Result<Option<Bits>> {
    if inner.len() != outer.len() {
        return Err(Error::LengthMismatch {
            expected: outer.len(),
            actual: inner.len(),
        });
    }
    let a = PreparedInput::new(params, inner.symbols());
    let b = PreparedInput::new(params, outer.symbols());
    let mut scratch = JointReach::new(params, inner.len());
    scratch.escape(&a, &b).map(Bits::from_symbols).transpose()
}

/// Confusability graph over `{0,1}^n`. Vertex `i` is the `i`-th word in
/// lexicographic order; `i ~ j` iff the two words share a possible output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusabilityGraph {
    n: usize,
    params: ChannelParams,
    adj: Vec<BitSet>,
}

impl ConfusabilityGraph {
    pub fn block_len(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> ChannelParams {
        self.params
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn vertex(&self, i: usize) -> Bits {
        Bits::from_index(i as u64, self.n)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> &BitSet {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count()
    }

    pub fn adjacency(&self) -> &[BitSet] {
        &self.adj
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().filter(move |&j| j > i).map(move |j| (i, j)))
    }

    /// One line `i: j1 j2 ...` per vertex.
    pub fn to_adjacency_list(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.adj.iter().enumerate() {
            let _ = write!(out, "{i}:");
            for j in row.iter() {
                let _ = write!(out, " {j}");
            }
            out.push('\n');
        }
        out
    }
}

/// [`build_graph_capped`] with the default graph cap.
pub fn build_graph(params: ChannelParams, n: usize) -> Result<ConfusabilityGraph> {
    build_graph_capped(params, n, DEFAULT_GRAPH_CAP)
}

/// Materializes the confusability graph for block length `n`. Rows are
/// computed in parallel; the result does not depend on scheduling.
pub fn build_graph_capped(
    params: ChannelParams,
    n: usize,
    cap: usize,
) -> Result<ConfusabilityGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "block length must be positive".into(),
        ));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "graph block length",
            requested: n,
            cap,
        });
    }
    let inputs: Vec<PreparedInput> = AllSequences::with_cap(n, cap)?
        .map(|x| PreparedInput::new(params, x.symbols()))
        .collect();
    let count = inputs.len();
    let upper: Vec<BitSet> = (0..count)
        .into_par_iter()
        .map_init(
            || JointReach::new(params, n),
            |scratch, i| {
                let mut row = BitSet::new(count);
                for j in i + 1..count {
                    if scratch.confusable(&inputs[i], &inputs[j]) {
                        row.insert(j);
                    }
                }
                row
            },
        )
        .collect();
    let mut adj = upper;
    for i in 0..count {
        let above: Vec<usize> = adj[i].iter().collect();
        for j in above {
            adj[j].insert(i);
        }
    }
    Ok(ConfusabilityGraph { n, params, adj })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    fn p(k1: usize, k2: usize) -> ChannelParams {
        ChannelParams::new(k1, k2).unwrap()
    }

    fn words(set: &OutputSet) -> Vec<String> {
        set.iter().map(|y| y.to_string()).collect()
    }

    #[test]
    fn possible_output_examples() {
        assert_eq!(words(&possible_outputs(p(2, 1), &b("00")).unwrap()), ["00"]);
        assert_eq!(
            words(&possible_outputs(p(2, 1), &b("01")).unwrap()),
            ["00", "01"]
        );
        assert_eq!(
            words(&possible_outputs(p(1, 2), &b("011")).unwrap()),
            ["000", "001", "011"]
        );
    }

    #[test]
    fn possible_outputs_cap() {
        let long = Bits::repeat(0, 21);
        assert!(matches!(
            possible_outputs(p(2, 1), &long),
            Err(Error::CapExceeded { cap: 20, .. })
        ));
        assert!(possible_outputs_capped(p(2, 1), &long, 21).is_ok());
    }

    #[test]
    fn membership_examples() {
        assert!(output_membership(p(2, 1), &b("0011"), &b("0001")).unwrap());
        assert!(output_membership(p(2, 1), &b("0011"), &b("0011")).unwrap());
        assert!(!output_membership(p(2, 1), &b("0011"), &b("1011")).unwrap());
        assert!(output_membership(p(2, 1), &b("0011"), &b("011")).is_err());
    }

    #[test]
    fn confusable_examples() {
        assert!(!confusable_dp(p(2, 1), &b("00"), &b("11")).unwrap());
        assert!(confusable_dp(p(2, 1), &b("00"), &b("01")).unwrap());
        assert!(confusable_dp(p(1, 2), &b("0110"), &b("0000")).unwrap());
        assert!(confusable_dp(p(1, 2), &b("01"), &b("0")).is_err());
    }

    #[test]
    fn graph_examples() {
        let g = build_graph(p(1, 1), 2).unwrap();
        assert_eq!(g.edge_count(), 0);
        for params in [p(2, 1), p(1, 2)] {
            let g = build_graph(params, 2).unwrap();
            assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
            assert_eq!(g.to_adjacency_list(), "0: 1\n1: 0\n2: 3\n3: 2\n");
        }
    }

    #[test]
    fn graph_cap() {
        assert!(matches!(
            build_graph(p(2, 1), 15),
            Err(Error::CapExceeded { cap: 14, .. })
        ));
        assert!(build_graph_capped(p(2, 1), 3, 2).is_err());
        assert!(build_graph(p(2, 1), 0).is_err());
    }

    #[test]
    fn containment() {
        assert_eq!(
            output_containment(p(2, 1), &b("00"), &b("01")).unwrap(),
            None
        );
        let escape = output_containment(p(2, 1), &b("01"), &b("00"))
            .unwrap()
            .unwrap();
        assert_eq!(escape, b("01"));
        assert!(output_membership(p(2, 1), &b("01"), &escape).unwrap());
        assert!(!output_membership(p(2, 1), &b("00"), &escape).unwrap());
    }

    #[test]
    fn containment_matches_enumeration() {
        for (k1, k2) in [(1, 2), (2, 1), (2, 3), (3, 2), (3, 3), (1, 4)] {
            let params = p(k1, k2);
            let words: Vec<Bits> = crate::sequences::all_sequences(5).unwrap().collect();
            let sets: Vec<OutputSet> = words
                .iter()
                .map(|x| possible_outputs(params, x).unwrap())
                .collect();
            for (i, x) in words.iter().enumerate() {
                for (j, z) in words.iter().enumerate() {
                    let got = output_containment(params, x, z).unwrap();
                    assert_eq!(
                        got.is_none(),
                        sets[i].is_subset(&sets[j]),
                        "{x} ⊆ {z} k=({k1},{k2})"
                    );
                    if let Some(y) = got {
                        assert!(sets[i].contains(&y) && !sets[j].contains(&y));
                    }
                }
            }
        }
    }
}
