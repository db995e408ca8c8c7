//! Two-line drawing of a diameter-4 tree that misses only the unavoidable
//! `d` nontrivial crossings.
//!
//! The root sits at `(0, 1)`, the children on the line `y = 0`, and every
//! grandchild cluster on `y = 1` close to its anchor. Children alternate
//! outward by parity (`x_1 < x_3 < x_5 < … < x_6 < x_4 < x_2`) while the
//! anchors run the opposite way (`x'_2 < x'_4 < … < 0 < … < x'_3 < x'_1`).

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{analyze, is_legal, Drawing, Point};
use crate::graph::Graph;
use crate::rational::{self, Rational};
use crate::tree::Diam4Descriptor;

use super::maxcr_diam4;

const MAX_RETRIES: usize = 10;
const MAX_ANCHOR_TRIES: i64 = 64;

/// Anchor magnitudes decrease in `i` within each parity class; odd `i`
/// sit right of the root, even `i` left.
fn anchors(k: usize, t: i64) -> Vec<i64> {
    (1..=k)
        .map(|i| {
            let base = (k + 2 - i) as i64;
            let magnitude = base + t * base * base;
            if i % 2 == 1 {
                magnitude
            } else {
                -magnitude
            }
        })
        .collect()
}

/// Clusters collapsed to one grandchild each at the anchor. Crossings
/// between the two lines only depend on the left-to-right order, but three
/// segments can still be concurrent for every clone offset when this base
/// drawing already is.
fn base_is_generic(desc: &Diam4Descriptor, child_x: &[i64], anchor_x: &[i64]) -> bool {
    let k = desc.k();
    let mut edges: Vec<(usize, usize)> = (1..=k).map(|i| (0, i)).collect();
    let mut positions = alloc::vec![Point::new(0i64, 1)];
    positions.extend(child_x.iter().map(|&x| Point::new(x, 0)));
    for (i, &c) in desc.children().iter().enumerate() {
        if c > 0 {
            edges.push((i + 1, positions.len()));
            positions.push(Point::new(anchor_x[i], 1));
        }
    }
    Graph::from_edges(positions.len(), &edges)
        .and_then(|g| Drawing::new(g, positions))
        .is_ok_and(|d| is_legal(&d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diam4DrawingPlan {
    /// Abscissa of child `i` (index `i − 1`) on `y = 0`.
    pub child_x: Vec<i64>,
    /// Anchor abscissa of the grandchildren of child `i` on `y = 1`.
    pub anchor_x: Vec<i64>,
    /// Clusters spread over `[x'_i, x'_i + epsilon)`.
    pub epsilon: Rational,
}

impl Diam4DrawingPlan {
    pub fn new(desc: &Diam4Descriptor) -> Self {
        let k = desc.k();
        let mut order: Vec<usize> = (1..=k).step_by(2).collect();
        order.extend((2..=k).filter(|i| i % 2 == 0).rev());
        let mut child_x = alloc::vec![0; k];
        for (pos, &i) in order.iter().enumerate() {
            child_x[i - 1] = 2 * pos as i64 - (k as i64 - 1);
        }
        let anchor_x = (0..MAX_ANCHOR_TRIES)
            .map(|t| anchors(k, t))
            .find(|a| base_is_generic(desc, &child_x, a))
            .unwrap_or_else(|| anchors(k, 0));
        let widest = anchor_x.iter().map(|a: &i64| a.abs()).max().unwrap_or(1);
        let n = desc.vertex_count() as i64;
        let epsilon = Rational::new(1.into(), (4 * (n + 1) * widest).into());
        Diam4DrawingPlan {
            child_x,
            anchor_x,
            epsilon,
        }
    }

    fn realize(&self, desc: &Diam4Descriptor) -> Result<Drawing> {
        let mut positions = Vec::with_capacity(desc.vertex_count());
        positions.push(Point::new(rational::from_int(0), rational::from_int(1)));
        for &x in &self.child_x {
            positions.push(Point::new(rational::from_int(x), rational::from_int(0)));
        }
        for (&c, &anchor) in desc.children().iter().zip(&self.anchor_x) {
            let step = self.epsilon.clone() / rational::from_u64(c as u64 + 1);
            for j in 1..=c {
                let x = rational::from_int(anchor) + step.clone() * rational::from_u64(j as u64);
                positions.push(Point::new(x, rational::from_int(1)));
            }
        }
        Drawing::new(desc.to_tree().graph().clone(), positions)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diam4Drawing {
    pub drawing: Drawing,
    pub plan: Diam4DrawingPlan,
    pub crossings: u64,
}

/// Builds the drawing and checks it: it must be legal and reach the closed
/// form exactly. Vertex ids follow [`Diam4Descriptor::to_tree`].
pub fn draw_diam4(desc: &Diam4Descriptor) -> Result<Diam4Drawing> {
    let expected = maxcr_diam4(desc)?.value;
    let mut plan = Diam4DrawingPlan::new(desc);
    let mut last_error = None;
    for _ in 0..=MAX_RETRIES {
        let drawing = plan.realize(desc)?;
        match analyze(&drawing) {
            Ok(summary) => {
                let crossings = summary.crossing_count();
                if crossings != expected {
                    return Err(Error::Consistency(format!(
                        "two-line drawing of {:?} has {crossings} crossings, expected {expected}",
                        desc.children()
                    )));
                }
                return Ok(Diam4Drawing {
                    drawing,
                    plan,
                    crossings,
                });
            }
            Err(e) => {
                last_error = Some(e);
                plan.epsilon = plan.epsilon / rational::from_int(2);
            }
        }
    }
    Err(last_error.expect("at least one attempt"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::missed_nontrivial_crossings;
    use alloc::vec;

    fn desc(c: &[usize]) -> Diam4Descriptor {
        Diam4Descriptor::new(c.to_vec()).unwrap()
    }

    #[test]
    fn plan_orders() {
        let plan = Diam4DrawingPlan::new(&desc(&[3, 2, 2, 1, 1]));
        // x_1 < x_3 < x_5 < x_4 < x_2
        assert_eq!(plan.child_x, vec![-4, 4, -2, 2, 0]);
        let a = &plan.anchor_x;
        // x'_2 < x'_4 < 0 < x'_5 < x'_3 < x'_1
        assert!(a[1] < a[3] && a[3] < 0 && 0 < a[4] && a[4] < a[2] && a[2] < a[0]);
        assert_eq!(anchors(5, 0), vec![6, -5, 4, -3, 2]);
    }

    #[test]
    fn examples() {
        let d = draw_diam4(&desc(&[1, 1, 1])).unwrap();
        assert_eq!(d.crossings, 8);

        let d = draw_diam4(&desc(&[3, 2, 2, 1])).unwrap();
        assert_eq!(d.crossings, 44);
        let missed = missed_nontrivial_crossings(&d.drawing).unwrap();
        assert_eq!(missed.len(), 3);

        let d = draw_diam4(&desc(&[1, 1])).unwrap();
        assert!(missed_nontrivial_crossings(&d.drawing).unwrap().is_empty());
    }

    #[test]
    fn root_leaves() {
        for c in [vec![2, 2, 0], vec![3, 1, 1, 0, 0], vec![1, 1, 1, 1, 0]] {
            draw_diam4(&desc(&c)).unwrap();
        }
    }
}
