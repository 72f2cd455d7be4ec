//! Exact maximum independent set by branch and bound.
//!
//! The graph is split into connected components. Within a component the
//! search looks for a maximum clique of the complement graph, using greedy
//! coloring of the candidate set as the upper bound and bit vectors for
//! candidate sets. Vertices are processed in order of increasing degree in
//! the original graph.

use std::time::Instant;

use crate::bitset::BitSet;

/// Outcome of [`max_independent_set`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentSet {
    /// Vertex indices, ascending.
    pub vertices: Vec<usize>,
    /// False when the deadline cut the search short.
    pub complete: bool,
}

/// Maximum independent set of the graph given by symmetric, irreflexive rows.
pub fn max_independent_set(adj: &[BitSet], deadline: Option<Instant>) -> IndependentSet {
    let mut vertices = Vec::new();
    let mut complete = true;
    for component in components(adj) {
        let (mut best, done) = solve_component(adj, &component, deadline);
        complete &= done;
        vertices.append(&mut best);
    }
    vertices.sort_unstable();
    IndependentSet { vertices, complete }
}

/// Connected components, each as ascending vertex lists, ordered by least vertex.
pub fn components(adj: &[BitSet]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut unseen = BitSet::full(n);
    let mut out = Vec::new();
    while let Some(root) = unseen.first() {
        unseen.remove(root);
        let mut members = vec![root];
        let mut frontier = vec![root];
        while let Some(v) = frontier.pop() {
            let mut fresh = adj[v].clone();
            fresh.intersect_with(&unseen);
            for u in fresh.iter() {
                unseen.remove(u);
                members.push(u);
                frontier.push(u);
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

fn solve_component(
    adj: &[BitSet],
    component: &[usize],
    deadline: Option<Instant>,
) -> (Vec<usize>, bool) {
    let m = component.len();
    if m == 1 {
        return (component.to_vec(), true);
    }

    // local numbering: increasing degree, ties by vertex index
    let mut order: Vec<usize> = component.to_vec();
    order.sort_by_key(|&v| (adj[v].count(), v));
    let mut local_of = vec![usize::MAX; adj.len()];
    for (i, &v) in order.iter().enumerate() {
        local_of[v] = i;
    }

    // complement rows restricted to the component
    let compat: Vec<BitSet> = order
        .iter()
        .map(|&v| {
            let mut row = BitSet::full(m);
            for u in adj[v].iter() {
                if local_of[u] != usize::MAX {
                    row.remove(local_of[u]);
                }
            }
            row.remove(local_of[v]);
            row
        })
        .collect();

    let mut search = CliqueSearch {
        compat: &compat,
        best: greedy_clique(&compat),
        current: Vec::new(),
        deadline,
        nodes: 0,
        timed_out: false,
    };
    search.expand(BitSet::full(m));

    let mut best: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    best.sort_unstable();
    (best, !search.timed_out)
}

/// Clique built by repeatedly taking the first remaining compatible vertex.
fn greedy_clique(compat: &[BitSet]) -> Vec<usize> {
    let mut cands = BitSet::full(compat.len());
    let mut clique = Vec::new();
    while let Some(v) = cands.first() {
        clique.push(v);
        cands.intersect_with(&compat[v]);
    }
    clique
}

struct CliqueSearch<'a> {
    compat: &'a [BitSet],
    best: Vec<usize>,
    current: Vec<usize>,
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
}

impl CliqueSearch<'_> {
    fn out_of_time(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        self.nodes += 1;
        if self.nodes % 1024 == 1 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    /// Greedy sequential coloring of `cands`; returns vertices with their
    /// color numbers, in nondecreasing color order.
    fn color(&self, cands: &BitSet) -> Vec<(usize, usize)> {
        let mut uncolored = cands.clone();
        let mut out = Vec::with_capacity(cands.count());
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut open = uncolored.clone();
            while let Some(v) = open.first() {
                open.remove(v);
                uncolored.remove(v);
                open.difference_with(&self.compat[v]);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, mut cands: BitSet) {
        if self.out_of_time() {
            return;
        }
        let colored = self.color(&cands);
        for &(v, color) in colored.iter().rev() {
            if self.current.len() + color <= self.best.len() {
                return;
            }
            self.current.push(v);
            let mut next = cands.clone();
            next.intersect_with(&self.compat[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cands.remove(v);
            if self.timed_out {
                return;
            }
        }
    }
}
