//! Simulated annealing over integer grid drawings.
//!
//! A move relocates one vertex to a uniformly random grid point. Crossing
//! counts are updated incrementally and legality is only re-checked around
//! the moved vertex, and only for moves that would be accepted. The best
//! drawing of every run is re-verified from scratch by [`analyze`].

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{
    analyze, collinear_overlap, is_legal, segments_properly_cross, strictly_inside, Drawing, Edge, Point,
};
use crate::graph::{thrackle_bound, Graph};
use crate::tree::Tree;

use super::maxcr_tree;

/// Coordinates stay within this bound so that exact `i64` predicates
/// cannot overflow.
pub const MAX_GRID: i64 = 1000;
pub const MAX_VERTICES: usize = 32;
const PLACEMENT_ATTEMPTS: usize = 2000;

#[derive(Clone, Debug, PartialEq)]
pub struct AnnealParams {
    /// Coordinates range over `[-grid, grid]`.
    pub grid: i64,
    /// Moves per restart.
    pub iterations: u64,
    pub restarts: u32,
    pub start_temperature: f64,
    pub end_temperature: f64,
    pub seed: u64,
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams {
            grid: 12,
            iterations: 20_000,
            restarts: 8,
            start_temperature: 2.0,
            end_temperature: 0.05,
            seed: 0,
        }
    }
}

impl AnnealParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(msg.into()));
        if self.grid < 1 || self.grid > MAX_GRID {
            return bad("grid half-width must be in 1..=1000");
        }
        if self.iterations == 0 || self.restarts == 0 {
            return bad("iterations and restarts must be positive");
        }
        if !(self.start_temperature > 0.0 && self.end_temperature > 0.0) {
            return bad("temperatures must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnealOutcome {
    pub drawing: Drawing<i64>,
    pub crossings: u64,
    /// Restart that produced the drawing.
    pub restart: u32,
    /// The closed form, when one applies to the tree.
    pub exact: Option<u64>,
    pub upper_bound: u64,
}

struct State<'a> {
    edges: &'a [Edge],
    incident: &'a [Vec<usize>],
    pos: Vec<Point<i64>>,
}

impl State<'_> {
    fn segment(&self, e: Edge) -> (&Point<i64>, &Point<i64>) {
        (&self.pos[e.0], &self.pos[e.1])
    }

    fn cross(&self, e: Edge, f: Edge) -> bool {
        let (a1, a2) = self.segment(e);
        let (b1, b2) = self.segment(f);
        segments_properly_cross(a1, a2, b1, b2)
    }

    /// Crossings involving an edge at `v`.
    fn crossings_at(&self, v: usize) -> u64 {
        let mut total = 0;
        for &ei in &self.incident[v] {
            let e = self.edges[ei];
            for &f in self.edges {
                if !shares_vertex(e, f) && self.cross(e, f) {
                    total += 1;
                }
            }
        }
        total
    }

    /// Legality of everything involving `v`, assuming the rest is legal.
    fn legal_at(&self, v: usize) -> bool {
        let p = &self.pos[v];
        if self.pos.iter().enumerate().any(|(u, q)| u != v && q == p) {
            return false;
        }
        for &f in self.edges {
            if f.0 != v && f.1 != v {
                let (a, b) = self.segment(f);
                if strictly_inside(p, a, b) {
                    return false;
                }
            }
        }
        for &ei in &self.incident[v] {
            let e = self.edges[ei];
            let (a1, a2) = self.segment(e);
            if self
                .pos
                .iter()
                .enumerate()
                .any(|(u, q)| u != e.0 && u != e.1 && strictly_inside(q, a1, a2))
            {
                return false;
            }
            // parameters along e of its crossings, as fractions with
            // positive denominators
            let mut hits: Vec<(i64, i64)> = Vec::new();
            for &f in self.edges {
                if f == e {
                    continue;
                }
                let (b1, b2) = self.segment(f);
                if collinear_overlap(a1, a2, b1, b2) {
                    return false;
                }
                if !shares_vertex(e, f) && segments_properly_cross(a1, a2, b1, b2) {
                    hits.push(parameter_along(a1, a2, b1, b2));
                }
            }
            for (i, h) in hits.iter().enumerate() {
                if hits[i + 1..].iter().any(|g| h.0 * g.1 == g.0 * h.1) {
                    return false;
                }
            }
        }
        true
    }
}

fn shares_vertex(e: Edge, f: Edge) -> bool {
    e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1
}

/// Where segment `b` meets the line through `a`, as `t/d` along `a1 → a2`.
fn parameter_along(a1: &Point<i64>, a2: &Point<i64>, b1: &Point<i64>, b2: &Point<i64>) -> (i64, i64) {
    let (rx, ry) = (a2.x - a1.x, a2.y - a1.y);
    let (sx, sy) = (b2.x - b1.x, b2.y - b1.y);
    let d = rx * sy - ry * sx;
    let t = (b1.x - a1.x) * sy - (b1.y - a1.y) * sx;
    if d < 0 {
        (-t, -d)
    } else {
        (t, d)
    }
}

fn random_point(rng: &mut ChaCha8Rng, grid: i64) -> Point<i64> {
    Point::new(rng.gen_range(-grid..=grid), rng.gen_range(-grid..=grid))
}

/// Places vertices one at a time, keeping every induced partial drawing
/// legal.
fn initial_positions(graph: &Graph, grid: i64, rng: &mut ChaCha8Rng) -> Result<Vec<Point<i64>>> {
    let n = graph.vertex_count();
    let edges = graph.edges();
    let mut pos: Vec<Point<i64>> = Vec::with_capacity(n);
    for v in 0..n {
        let placed: Vec<Edge> = edges.iter().copied().filter(|e| e.1 <= v).collect();
        let partial = Graph::from_edges(v + 1, &placed)?;
        let mut found = false;
        for _ in 0..PLACEMENT_ATTEMPTS {
            pos.push(random_point(rng, grid));
            if is_legal(&Drawing::new(partial.clone(), pos.clone())?) {
                found = true;
                break;
            }
            pos.pop();
        }
        if !found {
            return Err(Error::NoLegalPlacement(format!(
                "could not place vertex {v} on a grid of half-width {grid}"
            )));
        }
    }
    Ok(pos)
}

/// One annealing run on stream `restart` of the seeded generator. Stops
/// early once `stop_at` crossings are reached.
pub fn anneal_restart(
    tree: &Tree,
    params: &AnnealParams,
    restart: u32,
    stop_at: u64,
) -> Result<(Drawing<i64>, u64)> {
    params.validate()?;
    let graph = tree.graph();
    let n = graph.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(restart as u64);

    let edges = graph.edges();
    let mut incident = alloc::vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut state = State {
        edges: &edges,
        incident: &incident,
        pos: initial_positions(graph, params.grid, &mut rng)?,
    };
    let mut count = analyze(&Drawing::new(graph.clone(), state.pos.clone())?)?.crossing_count();
    let mut best = (count, state.pos.clone());

    let movable: Vec<usize> = (0..n).filter(|&v| !incident[v].is_empty()).collect();
    let cooling = if params.iterations > 1 {
        libm::pow(
            params.end_temperature / params.start_temperature,
            1.0 / (params.iterations - 1) as f64,
        )
    } else {
        1.0
    };
    let mut temperature = params.start_temperature;

    for _ in 0..params.iterations {
        if best.0 >= stop_at || movable.is_empty() {
            break;
        }
        let v = movable[rng.gen_range(0..movable.len())];
        let old = state.pos[v].clone();
        let before = state.crossings_at(v);
        state.pos[v] = random_point(&mut rng, params.grid);
        let after = state.crossings_at(v);
        let delta = after as f64 - before as f64;
        let accept = delta >= 0.0 || rng.gen::<f64>() < libm::exp(delta / temperature);
        if accept && state.legal_at(v) {
            count = count + after - before;
            if count > best.0 {
                best = (count, state.pos.clone());
            }
        } else {
            state.pos[v] = old;
        }
        temperature *= cooling;
    }

    let drawing = Drawing::new(graph.clone(), best.1)?;
    let verified = analyze(&drawing)?.crossing_count();
    if verified != best.0 {
        return Err(Error::Consistency(format!(
            "incremental count {} disagrees with full count {verified}",
            best.0
        )));
    }
    Ok((drawing, verified))
}

/// Picks the best of per-restart results: most crossings, then lowest
/// restart index.
pub fn best_restart(results: impl IntoIterator<Item = (u32, Drawing<i64>, u64)>) -> Option<(u32, Drawing<i64>, u64)> {
    results.into_iter().max_by(|a, b| match a.2.cmp(&b.2) {
        Ordering::Equal => b.0.cmp(&a.0),
        other => other,
    })
}

/// Stop target and closed-form bound for `tree`.
pub fn anneal_bounds(tree: &Tree) -> Result<(Option<u64>, u64)> {
    if tree.vertex_count() > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "vertices",
            actual: tree.vertex_count(),
            cap: MAX_VERTICES,
        });
    }
    let known = maxcr_tree(tree)?;
    Ok((known.exact(), known.upper_bound().min(thrackle_bound(tree.graph()))))
}

/// Checks a finished search against the closed form.
pub fn finish(
    tree: &Tree,
    best: Option<(u32, Drawing<i64>, u64)>,
    exact: Option<u64>,
    upper_bound: u64,
) -> Result<AnnealOutcome> {
    let (restart, drawing, crossings) =
        best.ok_or_else(|| Error::InvalidArgument("no restarts were run".into()))?;
    if crossings > upper_bound {
        return Err(Error::Consistency(format!(
            "annealed drawing of a {}-vertex tree has {crossings} crossings, above the bound {upper_bound}",
            tree.vertex_count()
        )));
    }
    Ok(AnnealOutcome {
        drawing,
        crossings,
        restart,
        exact,
        upper_bound,
    })
}

/// Runs all restarts sequentially and keeps the best drawing. Stops as soon
/// as a restart reaches the upper bound.
pub fn anneal_max_crossings(tree: &Tree, params: &AnnealParams) -> Result<AnnealOutcome> {
    params.validate()?;
    let (exact, upper_bound) = anneal_bounds(tree)?;
    let mut results = Vec::new();
    for restart in 0..params.restarts {
        let (drawing, crossings) = anneal_restart(tree, params, restart, upper_bound)?;
        let done = crossings >= upper_bound;
        results.push((restart, drawing, crossings));
        if done {
            break;
        }
    }
    finish(tree, best_restart(results), exact, upper_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{Diam4Descriptor, SpiderDescriptor};

    #[test]
    fn examples() {
        let params = AnnealParams::default();
        let spider = SpiderDescriptor::new(alloc::vec![2, 2, 2]).unwrap().to_tree();
        assert_eq!(anneal_max_crossings(&spider, &params).unwrap().crossings, 8);
        assert_eq!(anneal_max_crossings(&Tree::path(4), &params).unwrap().crossings, 1);
        let d = Diam4Descriptor::new(alloc::vec![1, 1, 1]).unwrap().to_tree();
        assert_eq!(anneal_max_crossings(&d, &params).unwrap().crossings, 8);
    }

    #[test]
    fn deterministic() {
        let params = AnnealParams {
            iterations: 500,
            restarts: 2,
            seed: 7,
            ..AnnealParams::default()
        };
        let t = SpiderDescriptor::new(alloc::vec![3, 3, 2]).unwrap().to_tree();
        assert_eq!(
            anneal_max_crossings(&t, &params).unwrap(),
            anneal_max_crossings(&t, &params).unwrap()
        );
    }

    #[test]
    fn tiny_trees() {
        let params = AnnealParams::default();
        assert_eq!(anneal_max_crossings(&Tree::path(1), &params).unwrap().crossings, 0);
        assert_eq!(anneal_max_crossings(&Tree::path(2), &params).unwrap().crossings, 0);
        let small_grid = AnnealParams { grid: 1, ..params };
        assert!(anneal_max_crossings(&Tree::path(12), &small_grid).is_err());
    }
}
