//! Weighted extremal numbers for vertex-induced edge weightings.
//!
//! A vertex weighting `W` induces edge weights either by the minimum
//! (`w_min(uv) = min{W(u), W(v)}`) or by the product
//! (`w_Π(uv) = W(u)·W(v)`). The largest total weight of a `K_ℓ`-free graph is
//! attained by a complete `(ℓ−1)`-partite graph in both cases: for `w_min` it
//! is the round-robin graph `B_ℓ` on the weight-sorted vertices, for `w_Π`
//! the best partition found by [`partition_maximize_products`].

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{complete_multipartite_on, Graph, PartitionedGraph};
use crate::partition::{descending_order, partition_maximize_products, IndexPartition};
use crate::rational::{self, Rational};

/// Nonnegative vertex weights, kept in input order together with the
/// non-increasing order (ties broken by input index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexWeighting {
    weights: Vec<Rational>,
    order: Vec<usize>,
}

impl VertexWeighting {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if let Some(i) = weights.iter().position(Signed::is_negative) {
            return Err(Error::NegativeWeight(i));
        }
        let order = descending_order(&weights);
        Ok(VertexWeighting { weights, order })
    }

    pub fn from_integers(weights: &[i64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| rational::from_int(w)).collect())
    }

    pub fn unit(n: usize) -> Self {
        Self::new(vec![rational::from_int(1); n]).expect("unit weights are nonnegative")
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `order()[r]` is the input index of the vertex ranked `r` (heaviest
    /// first).
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().cloned().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeWeightKind {
    Min,
    Product,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedEdgeFunction {
    pub kind: EdgeWeightKind,
    pub base: VertexWeighting,
}

impl WeightedEdgeFunction {
    pub fn new(kind: EdgeWeightKind, base: VertexWeighting) -> Self {
        WeightedEdgeFunction { kind, base }
    }

    pub fn min(base: VertexWeighting) -> Self {
        Self::new(EdgeWeightKind::Min, base)
    }

    pub fn product(base: VertexWeighting) -> Self {
        Self::new(EdgeWeightKind::Product, base)
    }

    pub fn eval(&self, u: usize, v: usize) -> Rational {
        let (a, b) = (self.base.weight(u), self.base.weight(v));
        match self.kind {
            EdgeWeightKind::Min => a.min(b).clone(),
            EdgeWeightKind::Product => a * b,
        }
    }
}

/// `w(G) = Σ_{e ∈ E(G)} w(e)`.
pub fn weight_of(g: &Graph, w: &WeightedEdgeFunction) -> Result<Rational> {
    if g.vertex_count() != w.base.len() {
        return Err(Error::InvalidArgument(format!(
            "graph has {} vertices but the weighting has {}",
            g.vertex_count(),
            w.base.len()
        )));
    }
    Ok(g.edges().into_iter().map(|(u, v)| w.eval(u, v)).sum())
}

fn check_clique_order(clique: usize) -> Result<()> {
    if clique < 3 {
        return Err(Error::InvalidArgument(format!(
            "forbidden clique order must be at least 3, got {clique}"
        )));
    }
    Ok(())
}

/// `B_ℓ(v_1,…,v_n)`: the complete `(ℓ−1)`-partite graph placing the `i`-th
/// heaviest vertex in part `i mod (ℓ−1)`. Vertex ids are input indices;
/// parts are listed by their heaviest member and empty parts are omitted.
pub fn build_b(clique: usize, w: &VertexWeighting) -> Result<PartitionedGraph> {
    check_clique_order(clique)?;
    let part_count = clique - 1;
    let mut parts = vec![Vec::new(); part_count.min(w.len())];
    for (rank, &v) in w.order().iter().enumerate() {
        parts[rank % part_count].push(v);
    }
    Ok(PartitionedGraph {
        graph: complete_multipartite_on(w.len(), &parts),
        parts,
    })
}

/// `ex(n, w_min, K_ℓ) = w_min(B_ℓ)`.
pub fn ex_min(w: &VertexWeighting, clique: usize) -> Result<Rational> {
    let b = build_b(clique, w)?;
    weight_of(&b.graph, &WeightedEdgeFunction::min(w.clone()))
}

/// `ex(n, w_Π, K_ℓ)`: the best complete `(ℓ−1)`-partite weight, with the
/// partition of vertex indices achieving it.
pub fn ex_prod(w: &VertexWeighting, clique: usize) -> Result<(Rational, IndexPartition)> {
    check_clique_order(clique)?;
    partition_maximize_products(w.weights(), clique - 1)
}

/// The complete multipartite graph on the blocks of `partition`.
pub fn partition_graph(partition: &IndexPartition) -> Graph {
    complete_multipartite_on(partition.len(), partition.blocks())
}

/// Duplicates `x` to replace `y`: `y` loses its edges and takes over the
/// neighbourhood of `x`. The vertex count is unchanged, `y` ends up
/// nonadjacent to `x`, and `K_ℓ`-freeness is preserved.
pub fn duplicate_vertex(g: &Graph, x: usize, y: usize) -> Result<Graph> {
    let n = g.vertex_count();
    for v in [x, y] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if x == y {
        return Err(Error::InvalidArgument("cannot duplicate a vertex onto itself".into()));
    }
    if g.has_edge(x, y) {
        return Err(Error::AdjacentPair(x, y));
    }
    let mut out = g.clone();
    for u in g.neighbors(y).iter() {
        out.remove_edge(y, u);
    }
    for u in g.neighbors(x).iter() {
        out.insert_unchecked(y, u);
    }
    Ok(out)
}

/// The largest total weight of `t` edges of `B_ℓ`, or `None` when `B_ℓ`
/// has fewer than `t` edges.
pub fn best_t_edge_subgraph_of_b(w: &VertexWeighting, clique: usize, t: usize) -> Result<Option<Rational>> {
    let b = build_b(clique, w)?;
    let f = WeightedEdgeFunction::min(w.clone());
    let mut weights: Vec<Rational> = b.graph.edges().into_iter().map(|(u, v)| f.eval(u, v)).collect();
    if weights.len() < t {
        return Ok(None);
    }
    weights.sort_by(|a, b| b.cmp(a));
    Ok(Some(weights.into_iter().take(t).fold(Rational::zero(), |a, b| a + b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::contains_clique;
    use crate::rational::from_int;

    fn ints(v: &[i64]) -> VertexWeighting {
        VertexWeighting::from_integers(v).unwrap()
    }

    #[test]
    fn b_examples() {
        let b = build_b(3, &ints(&[4, 3, 2, 1])).unwrap();
        assert_eq!(b.parts, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(b.graph.edge_count(), 4);

        let b = build_b(4, &ints(&[4, 3, 2, 1])).unwrap();
        assert_eq!(b.parts, vec![vec![0, 3], vec![1], vec![2]]);
        assert_eq!(b.graph.edge_count(), 5);

        let b = build_b(3, &ints(&[2, 1])).unwrap();
        assert_eq!(b.graph.edges(), vec![(0, 1)]);

        assert!(build_b(2, &ints(&[1, 1])).is_err());
    }

    #[test]
    fn b_uses_sorted_order_with_stable_ties() {
        // input order 1,3,2,3 sorts to v1(3) v3(3) v2(2) v0(1)
        let b = build_b(3, &ints(&[1, 3, 2, 3])).unwrap();
        assert_eq!(b.parts, vec![vec![1, 2], vec![3, 0]]);
    }

    #[test]
    fn weight_examples() {
        let w = WeightedEdgeFunction::min(ints(&[3, 2, 2, 1]));
        assert_eq!(weight_of(&Graph::empty(4), &w).unwrap(), from_int(0));
        assert_eq!(weight_of(&Graph::complete(4), &w).unwrap(), from_int(9));
        let p = WeightedEdgeFunction::product(ints(&[1, 2, 3]));
        assert_eq!(weight_of(&Graph::complete(3), &p).unwrap(), from_int(11));
        assert!(weight_of(&Graph::complete(2), &p).is_err());
    }

    #[test]
    fn ex_min_examples() {
        assert_eq!(ex_min(&ints(&[1, 1, 1, 1]), 3).unwrap(), from_int(4));
        assert_eq!(ex_min(&ints(&[5, 4, 3, 2, 1]), 3).unwrap(), from_int(13));
        assert_eq!(ex_min(&ints(&[3, 2, 2, 1]), 3).unwrap(), from_int(6));
    }

    #[test]
    fn ex_prod_examples() {
        let (v, p) = ex_prod(&ints(&[1, 1, 1]), 3).unwrap();
        assert_eq!(v, from_int(2));
        assert_eq!(p.blocks(), &[vec![0], vec![1, 2]]);
        let (v, p) = ex_prod(&ints(&[3, 2, 2, 1]), 3).unwrap();
        assert_eq!(v, from_int(16));
        assert_eq!(p.blocks(), &[vec![0, 3], vec![1, 2]]);
        assert_eq!(ex_prod(&ints(&[3, 2, 2, 1]), 4).unwrap().0, from_int(21));
        // the value is the weight of the witness partition's complete graph
        let g = partition_graph(&p);
        let w = WeightedEdgeFunction::product(ints(&[3, 2, 2, 1]));
        assert_eq!(weight_of(&g, &w).unwrap(), v);
    }

    #[test]
    fn rejects_negative_weights() {
        assert_eq!(
            VertexWeighting::from_integers(&[1, -2]).unwrap_err(),
            Error::NegativeWeight(1)
        );
    }

    #[test]
    fn duplicate_examples() {
        // vertices x=0, y=1, z=2 with edge yz; duplicate y to replace x
        let g = Graph::from_edges(3, &[(1, 2)]).unwrap();
        let d = duplicate_vertex(&g, 1, 0).unwrap();
        assert_eq!(d.edges(), vec![(0, 2), (1, 2)]);
        // duplicate x to replace y: x has no neighbours, everything vanishes
        assert_eq!(duplicate_vertex(&g, 0, 1).unwrap().edge_count(), 0);

        // path x-a-y with x=0, a=1, y=2
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let d = duplicate_vertex(&path, 0, 2).unwrap();
        assert_eq!(d.edges(), vec![(0, 1), (1, 2)]);

        assert_eq!(duplicate_vertex(&path, 0, 1), Err(Error::AdjacentPair(0, 1)));
        assert!(duplicate_vertex(&path, 0, 0).is_err());
    }

    #[test]
    fn duplication_keeps_triangle_free() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 1000 {
            let n = rng.gen_range(3..9);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                        if contains_clique(&g, 3) {
                            g.remove_edge(u, v);
                        }
                    }
                }
            }
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if x == y || g.has_edge(x, y) {
                continue;
            }
            let d = duplicate_vertex(&g, x, y).unwrap();
            assert!(!contains_clique(&d, 3));
            assert!(!d.has_edge(x, y));
            assert_eq!(d.neighbors(y).iter().collect::<Vec<_>>(), g.neighbors(x).iter().collect::<Vec<_>>());
            done += 1;
        }
    }

    #[test]
    fn best_t_edges_of_b() {
        let w = ints(&[3, 2, 2, 1]);
        // B_3 edges weigh 2,1,2,1
        assert_eq!(best_t_edge_subgraph_of_b(&w, 3, 0).unwrap(), Some(from_int(0)));
        assert_eq!(best_t_edge_subgraph_of_b(&w, 3, 3).unwrap(), Some(from_int(5)));
        assert_eq!(best_t_edge_subgraph_of_b(&w, 3, 5).unwrap(), None);
    }
}
