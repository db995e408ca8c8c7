//! Exact plane geometry for straight-line drawings.
//!
//! All predicates are generic over an exact ordered ring ([`Scalar`]):
//! [`Rational`] for general drawings, machine integers for grid drawings.
//! Nothing is rounded. Crossing points are compared in homogeneous
//! coordinates, so no division is needed either.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Num, Signed};

use crate::error::{Error, Result};
use crate::graph::{thrackle_bound, Graph};
use crate::rational::Rational;

pub type Edge = (usize, usize);

/// An exact ordered ring. With machine integers the caller must keep
/// coordinates small enough that degree-5 products do not overflow.
pub trait Scalar: Clone + Ord + Num + Signed {}
impl<T: Clone + Ord + Num + Signed> Scalar for T {}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<T = Rational> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

fn cross<T: Scalar>(ax: &T, ay: &T, bx: &T, by: &T) -> T {
    ax.clone() * by.clone() - ay.clone() * bx.clone()
}

/// Sign of `(q − p) × (r − p)`.
pub fn orientation<T: Scalar>(p: &Point<T>, q: &Point<T>, r: &Point<T>) -> Orientation {
    let det = cross(
        &(q.x.clone() - p.x.clone()),
        &(q.y.clone() - p.y.clone()),
        &(r.x.clone() - p.x.clone()),
        &(r.y.clone() - p.y.clone()),
    );
    match det.cmp(&T::zero()) {
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
        Ordering::Greater => Orientation::CounterClockwise,
    }
}

/// The open segments meet in exactly one point interior to both. Segments
/// sharing an endpoint, touching, or collinear never properly cross.
pub fn segments_properly_cross<T: Scalar>(
    a1: &Point<T>,
    a2: &Point<T>,
    b1: &Point<T>,
    b2: &Point<T>,
) -> bool {
    let o1 = orientation(a1, a2, b1);
    let o2 = orientation(a1, a2, b2);
    let o3 = orientation(b1, b2, a1);
    let o4 = orientation(b1, b2, a2);
    [o1, o2, o3, o4].iter().all(|&o| o != Orientation::Collinear) && o1 != o2 && o3 != o4
}

/// `p` lies on the open segment `ab`.
pub fn strictly_inside<T: Scalar>(p: &Point<T>, a: &Point<T>, b: &Point<T>) -> bool {
    if orientation(a, b, p) != Orientation::Collinear {
        return false;
    }
    let dot = |u: &Point<T>, v: &Point<T>, w: &Point<T>| {
        (u.x.clone() - v.x.clone()) * (w.x.clone() - v.x.clone())
            + (u.y.clone() - v.y.clone()) * (w.y.clone() - v.y.clone())
    };
    dot(p, a, b) > T::zero() && dot(p, b, a) > T::zero()
}

/// Collinear segments sharing more than a single point.
pub fn collinear_overlap<T: Scalar>(
    a1: &Point<T>,
    a2: &Point<T>,
    b1: &Point<T>,
    b2: &Point<T>,
) -> bool {
    if orientation(a1, a2, b1) != Orientation::Collinear
        || orientation(a1, a2, b2) != Orientation::Collinear
    {
        return false;
    }
    let key = |p: &Point<T>| if a1.x != a2.x { p.x.clone() } else { p.y.clone() };
    let (lo1, hi1) = minmax(key(a1), key(a2));
    let (lo2, hi2) = minmax(key(b1), key(b2));
    lo1.max(lo2) < hi1.min(hi2)
}

fn minmax<T: Ord>(a: T, b: T) -> (T, T) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Crossing point of two properly crossing segments as `(X, Y, D)` with
/// `D > 0`, meaning `(X/D, Y/D)`.
fn crossing_point<T: Scalar>(a1: &Point<T>, a2: &Point<T>, b1: &Point<T>, b2: &Point<T>) -> (T, T, T) {
    let (rx, ry) = (a2.x.clone() - a1.x.clone(), a2.y.clone() - a1.y.clone());
    let (sx, sy) = (b2.x.clone() - b1.x.clone(), b2.y.clone() - b1.y.clone());
    let mut denom = cross(&rx, &ry, &sx, &sy);
    let mut t = cross(
        &(b1.x.clone() - a1.x.clone()),
        &(b1.y.clone() - a1.y.clone()),
        &sx,
        &sy,
    );
    if denom.is_negative() {
        denom = -denom;
        t = -t;
    }
    let x = a1.x.clone() * denom.clone() + t.clone() * rx;
    let y = a1.y.clone() * denom.clone() + t * ry;
    (x, y, denom)
}

fn compare_homogeneous<T: Scalar>(p: &(T, T, T), q: &(T, T, T)) -> Ordering {
    (p.0.clone() * q.2.clone())
        .cmp(&(q.0.clone() * p.2.clone()))
        .then_with(|| (p.1.clone() * q.2.clone()).cmp(&(q.1.clone() * p.2.clone())))
}

/// A straight-line drawing: one point per vertex of the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing<T = Rational> {
    graph: Graph,
    positions: Vec<Point<T>>,
}

impl<T: Scalar> Drawing<T> {
    pub fn new(graph: Graph, positions: Vec<Point<T>>) -> Result<Self> {
        if positions.len() != graph.vertex_count() {
            return Err(Error::InvalidArgument(alloc::format!(
                "{} positions for {} vertices",
                positions.len(),
                graph.vertex_count()
            )));
        }
        Ok(Drawing { graph, positions })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn positions(&self) -> &[Point<T>] {
        &self.positions
    }

    pub fn position(&self, v: usize) -> &Point<T> {
        &self.positions[v]
    }

    /// Applies `f` to every coordinate pair.
    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&Point<T>) -> Point<U>) -> Drawing<U> {
        Drawing {
            graph: self.graph.clone(),
            positions: self.positions.iter().map(&mut f).collect(),
        }
    }

    fn segment(&self, e: Edge) -> (&Point<T>, &Point<T>) {
        (&self.positions[e.0], &self.positions[e.1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    /// Two vertices share a position.
    CoincidentVertices { first: usize, second: usize },
    /// A vertex lies in the interior of an edge not incident to it.
    VertexOnEdge { vertex: usize, edge: Edge },
    /// Two edges overlap along a segment of positive length.
    CollinearOverlap { first: Edge, second: Edge },
    /// Three or more edges pass through one crossing point.
    ConcurrentEdges { edges: Vec<Edge> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LegalityReport {
    pub violations: Vec<Violation>,
}

impl LegalityReport {
    pub fn is_legal(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Everything [`analyze`] finds out about a legal drawing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingSummary {
    pub crossings: Vec<(Edge, Edge)>,
    pub missed: Vec<(Edge, Edge)>,
    pub thrackle_bound: u64,
}

impl CrossingSummary {
    pub fn crossing_count(&self) -> u64 {
        self.crossings.len() as u64
    }
}

struct PairScan {
    report: LegalityReport,
    crossings: Vec<(Edge, Edge)>,
    missed: Vec<(Edge, Edge)>,
}

fn adjacent(e: Edge, f: Edge) -> bool {
    e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1
}

fn scan<T: Scalar>(d: &Drawing<T>) -> PairScan {
    let n = d.graph.vertex_count();
    let edges = d.graph.edges();
    let mut violations = Vec::new();

    for u in 0..n {
        for v in u + 1..n {
            if d.positions[u] == d.positions[v] {
                violations.push(Violation::CoincidentVertices { first: u, second: v });
            }
        }
    }
    for &e in &edges {
        let (a, b) = d.segment(e);
        for p in (0..n).filter(|&p| p != e.0 && p != e.1) {
            if strictly_inside(&d.positions[p], a, b) {
                violations.push(Violation::VertexOnEdge { vertex: p, edge: e });
            }
        }
    }

    let mut crossings = Vec::new();
    let mut missed = Vec::new();
    let mut points = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        let (a1, a2) = d.segment(e);
        for &f in &edges[i + 1..] {
            let (b1, b2) = d.segment(f);
            if collinear_overlap(a1, a2, b1, b2) {
                violations.push(Violation::CollinearOverlap { first: e, second: f });
            }
            if adjacent(e, f) {
                continue;
            }
            if segments_properly_cross(a1, a2, b1, b2) {
                points.push((crossing_point(a1, a2, b1, b2), crossings.len()));
                crossings.push((e, f));
            } else {
                missed.push((e, f));
            }
        }
    }

    points.sort_by(|p, q| compare_homogeneous(&p.0, &q.0));
    let mut start = 0;
    while start < points.len() {
        let mut end = start + 1;
        while end < points.len() && compare_homogeneous(&points[start].0, &points[end].0).is_eq() {
            end += 1;
        }
        if end - start > 1 {
            let mut concurrent: Vec<Edge> = points[start..end]
                .iter()
                .flat_map(|&(_, k)| [crossings[k].0, crossings[k].1])
                .collect();
            concurrent.sort_unstable();
            concurrent.dedup();
            violations.push(Violation::ConcurrentEdges { edges: concurrent });
        }
        start = end;
    }

    PairScan {
        report: LegalityReport { violations },
        crossings,
        missed,
    }
}

/// Distinct positions, no vertex inside a non-incident edge, no collinear
/// overlaps, and no point where three or more edges cross.
pub fn check_legality<T: Scalar>(d: &Drawing<T>) -> LegalityReport {
    scan(d).report
}

pub fn is_legal<T: Scalar>(d: &Drawing<T>) -> bool {
    check_legality(d).is_legal()
}

/// Crossing pairs, missed nonadjacent pairs and the thrackle bound of a
/// legal drawing; illegal drawings are refused.
pub fn analyze<T: Scalar>(d: &Drawing<T>) -> Result<CrossingSummary> {
    let PairScan {
        report,
        crossings,
        missed,
    } = scan(d);
    if !report.is_legal() {
        return Err(Error::IllegalDrawing(report));
    }
    Ok(CrossingSummary {
        crossings,
        missed,
        thrackle_bound: thrackle_bound(&d.graph),
    })
}

/// Number of properly crossing edge pairs of a legal drawing.
pub fn crossing_count<T: Scalar>(d: &Drawing<T>) -> Result<u64> {
    analyze(d).map(|s| s.crossing_count())
}

/// Nonadjacent edge pairs that do not cross, in lexicographic order.
pub fn missed_nontrivial_crossings<T: Scalar>(d: &Drawing<T>) -> Result<Vec<(Edge, Edge)>> {
    analyze(d).map(|s| s.missed)
}
