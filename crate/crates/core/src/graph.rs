//! Small simple graphs on dense vertex ids `0..n`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Fixed-capacity bitset over vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(capacity: usize) -> Self {
        VertexSet {
            words: vec![0; capacity.div_ceil(64)],
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut set = Self::empty(capacity);
        for v in 0..capacity {
            set.insert(v);
        }
        set
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Drops every element `<= v`.
    pub fn retain_above(&mut self, v: usize) {
        let word = v / 64;
        let end = word.min(self.words.len());
        for w in &mut self.words[..end] {
            *w = 0;
        }
        if let Some(w) = self.words.get_mut(word) {
            let bit = v % 64;
            *w &= if bit == 63 { 0 } else { !0u64 << (bit + 1) };
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }
}

/// Simple undirected graph: no loops, no parallel edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::empty(n); n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.insert_unchecked(u, v);
        Ok(())
    }

    pub(crate) fn insert_unchecked(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edge_count += 1;
    }

    /// Removes `uv` if present; returns whether it was.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || !self.has_edge(u, v) {
            return false;
        }
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        self.edge_count -= 1;
        true
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges().iter().all(|&(u, v)| other.has_edge(u, v))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument("permutation length mismatch".into()));
        }
        let mut seen = VertexSet::empty(self.n);
        for &p in perm {
            self.check_vertex(p)?;
            if seen.contains(p) {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            seen.insert(p);
        }
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.insert_unchecked(perm[u], perm[v]);
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }
}

/// A graph together with an explicit grouping of its vertices into parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedGraph {
    pub graph: Graph,
    pub parts: Vec<Vec<usize>>,
}

/// `K_{k_1,...,k_r}`; part `i` occupies a contiguous block of vertex ids.
pub fn build_complete_multipartite(part_sizes: &[usize]) -> Result<PartitionedGraph> {
    if part_sizes.is_empty() {
        return Err(Error::InvalidArgument("at least one part is required".into()));
    }
    if let Some(i) = part_sizes.iter().position(|&k| k == 0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "part {} has size zero",
            i + 1
        )));
    }
    let mut parts = Vec::with_capacity(part_sizes.len());
    let mut next = 0;
    for &k in part_sizes {
        parts.push((next..next + k).collect::<Vec<_>>());
        next += k;
    }
    Ok(PartitionedGraph {
        graph: complete_multipartite_on(next, &parts),
        parts,
    })
}

/// Joins every pair of vertices lying in different parts.
pub(crate) fn complete_multipartite_on(n: usize, parts: &[Vec<usize>]) -> Graph {
    let mut g = Graph::empty(n);
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            for &u in a {
                for &v in b {
                    g.insert_unchecked(u, v);
                }
            }
        }
    }
    g
}

/// Whether `g` has `size` mutually adjacent vertices.
pub fn contains_clique(g: &Graph, size: usize) -> bool {
    match size {
        0 => true,
        1 => g.vertex_count() > 0,
        2 => g.edge_count() > 0,
        _ => {
            let candidates = VertexSet::full(g.vertex_count());
            extend_clique(g, &candidates, size)
        }
    }
}

// Candidates are common neighbours of the clique so far, restricted to ids
// above its largest member so each clique is tried once.
fn extend_clique(g: &Graph, candidates: &VertexSet, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if candidates.len() < need {
        return false;
    }
    for v in candidates.iter() {
        if g.degree(v) + 1 < need {
            continue;
        }
        let mut next = candidates.intersection(g.neighbors(v));
        next.retain_above(v);
        if extend_clique(g, &next, need - 1) {
            return true;
        }
    }
    false
}

pub fn binomial2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// `C(m,2) - Σ_v C(d(v),2)`: the number of nonadjacent edge pairs, an upper
/// bound on the crossings of any legal straight-line drawing.
pub fn thrackle_bound(g: &Graph) -> u64 {
    let adjacent: u64 = (0..g.vertex_count())
        .map(|v| binomial2(g.degree(v) as u64))
        .sum();
    binomial2(g.edge_count() as u64) - adjacent
}

/// Edge count of the Turán graph `T_{n,parts}`.
pub fn turan_edge_count(n: u64, parts: u64) -> u64 {
    assert!(parts >= 1, "the Turán graph needs at least one part");
    let q = n / parts;
    let r = n % parts;
    let squares = r * (q + 1) * (q + 1) + (parts - r) * q * q;
    (n * n - squares) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5_minus_edge() -> Graph {
        let mut g = Graph::complete(5);
        g.remove_edge(0, 1);
        g
    }

    #[test]
    fn multipartite_examples() {
        let g = build_complete_multipartite(&[2, 2]).unwrap();
        assert_eq!(g.graph.edge_count(), 4);
        assert_eq!(g.parts, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(
            build_complete_multipartite(&[1, 1, 1])
                .unwrap()
                .graph
                .edge_count(),
            3
        );
        let oct = build_complete_multipartite(&[2, 2, 2]).unwrap().graph;
        assert_eq!(oct.edge_count(), 12);
        assert!((0..6).all(|v| oct.degree(v) == 4));
        assert!(build_complete_multipartite(&[2, 0]).is_err());
        assert!(build_complete_multipartite(&[]).is_err());
    }

    #[test]
    fn clique_examples() {
        let oct = build_complete_multipartite(&[2, 2, 2]).unwrap().graph;
        assert!(contains_clique(&oct, 3));
        assert!(!contains_clique(&oct, 4));
        let c4 = build_complete_multipartite(&[2, 2]).unwrap().graph;
        assert!(!contains_clique(&c4, 3));
        assert!(contains_clique(&k5_minus_edge(), 4));
        assert!(!contains_clique(&k5_minus_edge(), 5));
        assert!(contains_clique(&Graph::empty(0), 0));
        assert!(!contains_clique(&Graph::empty(0), 1));
    }

    #[test]
    fn clique_matches_subset_enumeration() {
        // every 4-subset of K5 minus an edge, checked directly
        let g = k5_minus_edge();
        let mut found = false;
        for mask in 0u32..32 {
            if mask.count_ones() != 4 {
                continue;
            }
            let vs: Vec<usize> = (0..5).filter(|v| mask & (1 << v) != 0).collect();
            let all = vs
                .iter()
                .enumerate()
                .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)));
            found |= all;
        }
        assert_eq!(found, contains_clique(&g, 4));
    }

    #[test]
    fn clique_beyond_one_word() {
        let g = build_complete_multipartite(&[30, 30, 30]).unwrap().graph;
        assert!(contains_clique(&g, 3));
        assert!(!contains_clique(&g, 4));
    }

    #[test]
    fn thrackle_examples() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(thrackle_bound(&p3), 0);
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(thrackle_bound(&star), 0);
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(thrackle_bound(&p4), 1);
    }

    #[test]
    fn turan_examples() {
        assert_eq!(turan_edge_count(4, 2), 4);
        assert_eq!(turan_edge_count(6, 3), 12);
        assert_eq!(turan_edge_count(7, 3), 16);
        assert_eq!(turan_edge_count(0, 1), 0);
        assert_eq!(turan_edge_count(5, 1), 0);
        assert_eq!(turan_edge_count(5, 9), 10);
    }

    #[test]
    fn turan_recurrence() {
        for parts in 1..=64u64 {
            for n in 1..=64u64 {
                assert_eq!(
                    turan_edge_count(n, parts),
                    turan_edge_count(n - 1, parts) + n - 1 - (n - 1) / parts,
                    "n={n} parts={parts}"
                );
            }
        }
    }

    #[test]
    fn edge_errors() {
        let mut g = Graph::empty(3);
        assert_eq!(g.add_edge(0, 0), Err(Error::SelfLoop(0)));
        assert!(matches!(g.add_edge(0, 3), Err(Error::VertexOutOfRange { .. })));
        g.add_edge(2, 1).unwrap();
        assert_eq!(g.add_edge(1, 2), Err(Error::DuplicateEdge(1, 2)));
        assert_eq!(g.edges(), vec![(1, 2)]);
    }

    #[test]
    fn vertex_set_retain_above() {
        let mut s = VertexSet::full(130);
        s.retain_above(63);
        assert_eq!(s.iter().next(), Some(64));
        assert_eq!(s.len(), 66);
        s.retain_above(129);
        assert!(s.is_empty());
    }
}
