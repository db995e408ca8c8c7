//! Brute-force ground truth for the extremal quantities.
//!
//! Every routine here enumerates edge subsets directly, depth first, with
//! incremental clique pruning and an admissible weight bound. None of them
//! relies on the partition solver or on `B_ℓ`; they are the reference the
//! closed forms are checked against. Input sizes are capped and exceeding a
//! cap is an error, never a truncated search.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{self, Magnitude, Rational};
use crate::weighted::{VertexWeighting, WeightedEdgeFunction};

pub const MAX_VERTICES: usize = 8;
pub const MAX_VERTICES_T_EDGES: usize = 7;
pub const MAX_HOST_EDGES: usize = 24;

/// `ex(n, w, K_ℓ)` by enumeration over subgraphs of `K_n`, with a maximizing
/// graph.
pub fn max_weight_clique_free(
    n: usize,
    w: &WeightedEdgeFunction,
    clique: usize,
) -> Result<(Rational, Graph)> {
    cap("vertex count", n, MAX_VERTICES)?;
    check_weighting(n, &w.base)?;
    check_clique(clique)?;
    let candidates = Graph::complete(n).edges();
    let weights: Vec<Rational> = candidates.iter().map(|&(u, v)| w.eval(u, v)).collect();
    let (value, graph) = search(n, &candidates, &weights, clique, None)
        .expect("the empty graph is always feasible");
    Ok((value, graph))
}

/// The best `w_min` weight of a `K_ℓ`-free graph on `n` vertices with exactly
/// `t` edges; `None` when no such graph exists.
pub fn max_weight_clique_free_with_t_edges(
    n: usize,
    w: &VertexWeighting,
    clique: usize,
    t: usize,
) -> Result<Option<Rational>> {
    cap("vertex count", n, MAX_VERTICES_T_EDGES)?;
    check_weighting(n, w)?;
    check_clique(clique)?;
    let candidates = Graph::complete(n).edges();
    if t > candidates.len() {
        return Err(Error::InvalidArgument(alloc::format!(
            "{t} edges requested but K_{n} has only {}",
            candidates.len()
        )));
    }
    let f = WeightedEdgeFunction::min(w.clone());
    let weights: Vec<Rational> = candidates.iter().map(|&(u, v)| f.eval(u, v)).collect();
    Ok(search(n, &candidates, &weights, clique, Some(t)).map(|(v, _)| v))
}

/// `ex(H, K_ℓ)`: the most edges in a `K_ℓ`-free spanning subgraph of `host`.
pub fn max_edges_clique_free_subgraph(host: &Graph, clique: usize) -> Result<(u64, Graph)> {
    cap("host edge count", host.edge_count(), MAX_HOST_EDGES)?;
    cap("host vertex count", host.vertex_count(), 64)?;
    check_clique(clique)?;
    let candidates = host.edges();
    let weights = vec![rational::from_int(1); candidates.len()];
    let (value, graph) = search(host.vertex_count(), &candidates, &weights, clique, None)
        .expect("the empty graph is always feasible");
    Ok((value.to_integer().to_u64().unwrap(), graph))
}

fn cap(what: &'static str, actual: usize, cap: usize) -> Result<()> {
    if actual > cap {
        return Err(Error::CapExceeded { what, actual, cap });
    }
    Ok(())
}

fn check_weighting(n: usize, w: &VertexWeighting) -> Result<()> {
    if w.len() != n {
        return Err(Error::InvalidArgument(alloc::format!(
            "weighting has {} entries for {n} vertices",
            w.len()
        )));
    }
    Ok(())
}

fn check_clique(clique: usize) -> Result<()> {
    if clique < 2 {
        return Err(Error::InvalidArgument("forbidden clique order must be at least 2".into()));
    }
    Ok(())
}

fn search(
    n: usize,
    candidates: &[(usize, usize)],
    weights: &[Rational],
    clique: usize,
    exact_edges: Option<usize>,
) -> Option<(Rational, Graph)> {
    // heaviest candidates first, ties in lexicographic edge order
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]));
    let edges: Vec<(usize, usize)> = order.iter().map(|&i| candidates[i]).collect();
    let sorted: Vec<Rational> = order.iter().map(|&i| weights[i].clone()).collect();
    let scaled = rational::scale_to_integers(&sorted);

    let total: BigUint = scaled.iter().sum();
    let chosen = match total.to_u128() {
        Some(_) => {
            let small: Vec<u128> = scaled.iter().map(|v| v.to_u128().unwrap()).collect();
            EdgeSearch::run(n, &edges, &small, clique, exact_edges)
        }
        None => EdgeSearch::run(n, &edges, &scaled, clique, exact_edges),
    }?;

    let mut graph = Graph::empty(n);
    let mut value = Rational::zero();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if chosen[i] {
            graph.insert_unchecked(u, v);
            value += &sorted[i];
        }
    }
    Some((value, graph))
}

struct EdgeSearch<'a, T> {
    edges: &'a [(usize, usize)],
    weights: &'a [T],
    /// `prefix[i]` = total weight of the first `i` edges.
    prefix: Vec<T>,
    clique: usize,
    exact_edges: Option<usize>,
    adj: Vec<u64>,
    chosen: Vec<bool>,
    count: usize,
    weight: T,
    best: Option<(T, Vec<bool>)>,
}

impl<'a, T: Magnitude> EdgeSearch<'a, T> {
    fn run(
        n: usize,
        edges: &'a [(usize, usize)],
        weights: &'a [T],
        clique: usize,
        exact_edges: Option<usize>,
    ) -> Option<Vec<bool>> {
        let mut prefix = vec![T::zero(); weights.len() + 1];
        for (i, w) in weights.iter().enumerate() {
            prefix[i + 1] = prefix[i].clone() + w.clone();
        }
        let mut s = EdgeSearch {
            edges,
            weights,
            prefix,
            clique,
            exact_edges,
            adj: vec![0; n],
            chosen: vec![false; edges.len()],
            count: 0,
            weight: T::zero(),
            best: None,
        };
        s.descend(0);
        s.best.map(|(_, chosen)| chosen)
    }

    fn descend(&mut self, i: usize) {
        if self.exact_edges == Some(self.count) || i == self.edges.len() {
            if self.exact_edges.is_none_or(|t| t == self.count) {
                let better = self.best.as_ref().is_none_or(|(b, _)| self.weight > *b);
                if better {
                    self.best = Some((self.weight.clone(), self.chosen.clone()));
                }
            }
            return;
        }
        if self.hopeless(i) {
            return;
        }
        let (u, v) = self.edges[i];
        let common = self.adj[u] & self.adj[v];
        if !has_clique(&self.adj, common, self.clique - 2) {
            self.adj[u] |= 1 << v;
            self.adj[v] |= 1 << u;
            self.chosen[i] = true;
            self.count += 1;
            let before = self.weight.clone();
            self.weight = before.clone() + self.weights[i].clone();
            self.descend(i + 1);
            self.weight = before;
            self.count -= 1;
            self.chosen[i] = false;
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
        self.descend(i + 1);
    }

    /// Whether no completion from edge `i` on can strictly beat the
    /// incumbent (or reach the required edge count).
    fn hopeless(&self, i: usize) -> bool {
        let left = self.edges.len() - i;
        // the most we can still add is the weight of edges i..end
        let end = match self.exact_edges {
            Some(t) if self.count + left < t => return true,
            // the heaviest remaining edges are the next ones
            Some(t) => i + t - self.count,
            None => self.edges.len(),
        };
        match &self.best {
            Some((best, _)) => {
                self.weight.clone() + self.prefix[end].clone() <= best.clone() + self.prefix[i].clone()
            }
            None => false,
        }
    }
}

/// Whether the vertices in `candidates` contain `need` mutually adjacent ones.
fn has_clique(adj: &[u64], candidates: u64, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if (candidates.count_ones() as usize) < need {
        return false;
    }
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_clique(adj, rest & adj[v], need - 1) {
            return true;
        }
    }
    false
}
