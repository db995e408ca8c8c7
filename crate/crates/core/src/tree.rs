//! Trees and the tree families with closed-form maximum crossing numbers.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A connected acyclic graph. The empty graph on zero vertices is accepted
/// as the empty tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    graph: Graph,
}

impl Tree {
    pub fn from_graph(graph: Graph) -> Result<Self> {
        let n = graph.vertex_count();
        if n == 0 {
            return Ok(Tree { graph });
        }
        if graph.edge_count() != n - 1 {
            return Err(Error::NotATree(format!(
                "{} edges on {} vertices",
                graph.edge_count(),
                n
            )));
        }
        let tree = Tree { graph };
        if tree.distances_from(0).iter().any(Option::is_none) {
            return Err(Error::NotATree("disconnected".into()));
        }
        Ok(tree)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_graph(Graph::from_edges(n, edges)?)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges).expect("a path is a tree")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.degree(v)
    }

    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for v in self.graph.neighbors(u).iter() {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn eccentricity(&self, v: usize) -> usize {
        self.distances_from(v).into_iter().flatten().max().unwrap_or(0)
    }

    pub fn diameter(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.eccentricity(v))
            .max()
            .unwrap_or(0)
    }

    /// Removing all leaves leaves a path (or nothing).
    pub fn is_caterpillar(&self) -> bool {
        let n = self.vertex_count();
        let internal: Vec<bool> = (0..n).map(|v| self.degree(v) >= 2).collect();
        (0..n).filter(|&v| internal[v]).all(|v| {
            self.graph.neighbors(v).iter().filter(|&u| internal[u]).count() <= 2
        })
    }
}

/// The applicable structural labels of a tree. A tree may carry several.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeClass {
    Caterpillar,
    Spider(SpiderDescriptor),
    Diam4(Diam4Descriptor),
    Other,
}

/// Every label that applies: `Caterpillar` when the leafless core is a
/// path; `Spider` when exactly one vertex has degree at least three;
/// `Diam4` when the diameter is exactly four and the tree is not a
/// caterpillar. `Other` only when nothing else applies.
pub fn classify_tree(tree: &Tree) -> Vec<TreeClass> {
    let mut labels = Vec::new();
    let caterpillar = tree.is_caterpillar();
    if caterpillar {
        labels.push(TreeClass::Caterpillar);
    }
    if let Some(desc) = spider_of(tree) {
        labels.push(TreeClass::Spider(desc));
    }
    if !caterpillar {
        if let Some(desc) = diam4_of(tree) {
            labels.push(TreeClass::Diam4(desc));
        }
    }
    if labels.is_empty() {
        labels.push(TreeClass::Other);
    }
    labels
}

fn spider_of(tree: &Tree) -> Option<SpiderDescriptor> {
    let n = tree.vertex_count();
    let mut branch = (0..n).filter(|&v| tree.degree(v) >= 3);
    let center = branch.next()?;
    if branch.next().is_some() {
        return None;
    }
    let legs = tree
        .graph()
        .neighbors(center)
        .iter()
        .map(|first| {
            let (mut prev, mut cur, mut len) = (center, first, 1);
            while tree.degree(cur) == 2 {
                let next = tree.graph().neighbors(cur).iter().find(|&u| u != prev)?;
                (prev, cur, len) = (cur, next, len + 1);
            }
            Some(len)
        })
        .collect::<Option<Vec<_>>>()?;
    SpiderDescriptor::new(legs).ok()
}

fn diam4_of(tree: &Tree) -> Option<Diam4Descriptor> {
    if tree.diameter() != 4 {
        return None;
    }
    let root = (0..tree.vertex_count()).find(|&v| tree.eccentricity(v) == 2)?;
    let children = tree
        .graph()
        .neighbors(root)
        .iter()
        .map(|c| tree.degree(c) - 1)
        .collect();
    Diam4Descriptor::new(children).ok()
}

/// `a_i` = number of legs of length at least `i`, for `i = 1..=max leg`.
pub fn spider_levels(legs: &[usize]) -> Vec<usize> {
    let depth = legs.iter().copied().max().unwrap_or(0);
    (1..=depth)
        .map(|i| legs.iter().filter(|&&l| l >= i).count())
        .collect()
}

/// A spider by its leg lengths, stored non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpiderDescriptor {
    legs: Vec<usize>,
}

impl SpiderDescriptor {
    /// Accepts legs in any order; at least three legs, all positive.
    pub fn new(mut legs: Vec<usize>) -> Result<Self> {
        if legs.len() < 3 {
            return Err(Error::InvalidDescriptor(format!(
                "a spider needs at least 3 legs, got {}",
                legs.len()
            )));
        }
        if legs.contains(&0) {
            return Err(Error::InvalidDescriptor("leg lengths must be positive".into()));
        }
        legs.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SpiderDescriptor { legs })
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn leg_count(&self) -> usize {
        self.legs.len()
    }

    pub fn levels(&self) -> Vec<usize> {
        spider_levels(&self.legs)
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.legs.iter().sum::<usize>()
    }

    /// Center is vertex 0; each leg's vertices follow consecutively, nearest
    /// the center first.
    pub fn to_tree(&self) -> Tree {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in &self.legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Tree::from_edges(next, &edges).expect("spider layout is a tree")
    }

    /// Edge ids of each leg in [`Self::to_tree`]'s edge order, center first.
    pub fn leg_edges(&self) -> Vec<Vec<(usize, usize)>> {
        let mut legs = Vec::new();
        let mut next = 1;
        for &len in &self.legs {
            let mut prev = 0;
            let mut leg = Vec::new();
            for _ in 0..len {
                leg.push((prev.min(next), prev.max(next)));
                prev = next;
                next += 1;
            }
            legs.push(leg);
        }
        legs
    }
}

/// A diameter-4 tree by the child counts of the root's children, stored
/// non-increasing. Zero entries are leaves attached to the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diam4Descriptor {
    children: Vec<usize>,
}

impl Diam4Descriptor {
    pub fn new(mut children: Vec<usize>) -> Result<Self> {
        children.sort_unstable_by(|a, b| b.cmp(a));
        if children.iter().filter(|&&c| c >= 1).count() < 2 {
            return Err(Error::InvalidDescriptor(
                "diameter 4 needs at least two children with children of their own".into(),
            ));
        }
        Ok(Diam4Descriptor { children })
    }

    pub fn children(&self) -> &[usize] {
        &self.children
    }

    /// `k`, the number of children of the root.
    pub fn k(&self) -> usize {
        self.children.len()
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.k() + self.children.iter().sum::<usize>()
    }

    pub fn grandchild_count(&self) -> usize {
        self.children.iter().sum()
    }

    /// At most two children have children of their own.
    pub fn is_caterpillar(&self) -> bool {
        self.children.get(2).is_none_or(|&c| c == 0)
    }

    /// Root is vertex 0, child `i` (1-based) is vertex `i`, and the
    /// grandchildren of child `i` follow all children, grouped by `i`.
    pub fn to_tree(&self) -> Tree {
        let k = self.k();
        let mut edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        let mut next = k + 1;
        for (i, &c) in self.children.iter().enumerate() {
            for _ in 0..c {
                edges.push((i + 1, next));
                next += 1;
            }
        }
        Tree::from_edges(next, &edges).expect("diameter-4 layout is a tree")
    }

    /// Vertex ids of the grandchildren of child `i` (1-based) in
    /// [`Self::to_tree`].
    pub fn grandchildren_of(&self, i: usize) -> core::ops::Range<usize> {
        let start = 1 + self.k() + self.children[..i - 1].iter().sum::<usize>();
        start..start + self.children[i - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_diam4() -> Tree {
        Diam4Descriptor::new(vec![3, 2, 2, 1]).unwrap().to_tree()
    }

    #[test]
    fn levels() {
        assert_eq!(spider_levels(&[2, 2, 2]), vec![3, 3]);
        assert_eq!(spider_levels(&[3, 2, 2]), vec![3, 3, 1]);
        assert_eq!(spider_levels(&[1, 1, 1, 1]), vec![4]);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_tree(&Tree::path(5)), vec![TreeClass::Caterpillar]);

        let spider = SpiderDescriptor::new(vec![2, 2, 2]).unwrap();
        assert_eq!(
            classify_tree(&spider.to_tree()),
            vec![
                TreeClass::Spider(spider),
                TreeClass::Diam4(Diam4Descriptor::new(vec![1, 1, 1]).unwrap())
            ]
        );

        assert_eq!(
            classify_tree(&sample_diam4()),
            vec![TreeClass::Diam4(Diam4Descriptor::new(vec![3, 2, 2, 1]).unwrap())]
        );
    }

    #[test]
    fn classify_other_and_relabelled() {
        // two branch vertices joined by a long path: diameter 6
        let edges = [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (6, 7), (6, 8), (7, 9), (8, 10), (1, 11), (2, 12)];
        let t = Tree::from_edges(13, &edges).unwrap();
        assert_eq!(classify_tree(&t), vec![TreeClass::Other]);

        // the (3,2,2,1) tree with scrambled ids still classifies the same
        let perm: Vec<usize> = (0..13).map(|v| (v * 5 + 3) % 13).collect();
        let scrambled = Tree::from_graph(sample_diam4().graph().relabel(&perm).unwrap()).unwrap();
        assert_eq!(classify_tree(&scrambled), classify_tree(&sample_diam4()));
    }

    #[test]
    fn star_is_spider_and_caterpillar() {
        let star = SpiderDescriptor::new(vec![1, 1, 1, 1]).unwrap();
        assert_eq!(
            classify_tree(&star.to_tree()),
            vec![TreeClass::Caterpillar, TreeClass::Spider(star)]
        );
    }

    #[test]
    fn rejects_non_trees() {
        assert!(matches!(
            Tree::from_edges(3, &[(0, 1)]),
            Err(Error::NotATree(_))
        ));
        assert!(matches!(
            Tree::from_edges(4, &[(0, 1), (1, 2), (0, 2)]),
            Err(Error::NotATree(_))
        ));
        assert!(Tree::from_edges(0, &[]).is_ok());
    }

    #[test]
    fn descriptor_validation() {
        assert!(SpiderDescriptor::new(vec![2, 2]).is_err());
        assert!(SpiderDescriptor::new(vec![2, 0, 1]).is_err());
        assert_eq!(SpiderDescriptor::new(vec![1, 3, 2]).unwrap().legs(), &[3, 2, 1]);
        assert!(Diam4Descriptor::new(vec![3, 0, 0]).is_err());
        let d = Diam4Descriptor::new(vec![0, 1, 2]).unwrap();
        assert_eq!(d.children(), &[2, 1, 0]);
        assert_eq!(d.vertex_count(), 7);
        assert!(d.is_caterpillar());
        assert_eq!(d.to_tree().diameter(), 4);
    }

    #[test]
    fn figure2_layout() {
        let d = Diam4Descriptor::new(vec![3, 2, 2, 1]).unwrap();
        let t = d.to_tree();
        assert_eq!(t.vertex_count(), 13);
        assert_eq!(t.graph().edge_count(), 12);
        assert_eq!(d.grandchildren_of(1), 5..8);
        assert_eq!(d.grandchildren_of(4), 12..13);
        assert_eq!(t.eccentricity(0), 2);
    }

    #[test]
    fn spider_layout() {
        let s = SpiderDescriptor::new(vec![3, 1, 2]).unwrap();
        let t = s.to_tree();
        assert_eq!(t.vertex_count(), 7);
        assert_eq!(t.degree(0), 3);
        let legs = s.leg_edges();
        assert_eq!(legs[0], vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(legs[1], vec![(0, 4), (4, 5)]);
        assert_eq!(legs[2], vec![(0, 6)]);
    }
}
