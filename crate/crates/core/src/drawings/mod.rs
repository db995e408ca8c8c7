//! Maximum rectilinear crossing numbers of trees.
//!
//! Closed forms for spiders and diameter-4 trees, the two-line construction
//! that attains the diameter-4 value, and an annealer that searches grid
//! drawings for many crossings.

mod anneal;
mod construct;

pub use anneal::{
    anneal_bounds, anneal_max_crossings, anneal_restart, best_restart, finish, AnnealOutcome, AnnealParams,
    MAX_GRID,
};
pub use construct::{draw_diam4, Diam4Drawing, Diam4DrawingPlan};

use alloc::format;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::graph::{binomial2, thrackle_bound, Graph};
use crate::rational::Rational;
use crate::tree::{classify_tree, Diam4Descriptor, SpiderDescriptor, Tree, TreeClass};
use crate::weighted::{ex_min, weight_of, VertexWeighting, WeightedEdgeFunction};

/// Which closed form produced a [`MaxCrossing`] value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Caterpillars are thrackles, so every nonadjacent pair can cross.
    Caterpillar,
    Spider,
    Diam4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MaxCrossing {
    pub value: u64,
    pub basis: Basis,
}

fn sum_binomial_degrees(g: &Graph) -> u64 {
    (0..g.vertex_count()).map(|v| binomial2(g.degree(v) as u64)).sum()
}

fn exact_u64(value: Rational, what: &str) -> Result<u64> {
    if !value.is_integer() {
        return Err(Error::Consistency(format!("{what} is not an integer: {value}")));
    }
    value
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Consistency(format!("{what} out of range: {value}")))
}

/// `Σ_{i≥1} i·c_{2i+1} + Σ_{i≥1} i·c_{2i+2}`, entries past `k` read as zero.
pub fn d_value_by_sum(desc: &Diam4Descriptor) -> u64 {
    let c = |j: usize| desc.children().get(j - 1).copied().unwrap_or(0) as u64;
    let k = desc.k();
    let mut total = 0;
    let mut i = 1;
    while 2 * i + 1 <= k {
        total += i as u64 * (c(2 * i + 1) + c(2 * i + 2));
        i += 1;
    }
    total
}

/// `w_min(K_k) − ex(k, w_min, K_3)` with the child counts as weights.
pub fn d_value_by_identity(desc: &Diam4Descriptor) -> Result<u64> {
    let weights: Vec<i64> = desc.children().iter().map(|&c| c as i64).collect();
    let w = VertexWeighting::from_integers(&weights)?;
    let complete = weight_of(&Graph::complete(desc.k()), &WeightedEdgeFunction::min(w.clone()))?;
    let bipartite = ex_min(&w, 3)?;
    exact_u64(complete - bipartite, "d")
}

/// Number of unavoidable nontrivial missed crossings of a diameter-4 tree,
/// computed two ways; disagreement is reported as a consistency error.
pub fn d_value(desc: &Diam4Descriptor) -> Result<u64> {
    let by_sum = d_value_by_sum(desc);
    let by_identity = d_value_by_identity(desc)?;
    if by_sum != by_identity {
        return Err(Error::Consistency(format!(
            "d disagrees for {:?}: sum {by_sum}, identity {by_identity}",
            desc.children()
        )));
    }
    Ok(by_sum)
}

/// Maximum rectilinear crossing number of a diameter-4 tree. Caterpillar
/// descriptors get the thrackle bound, which the formula reduces to anyway.
pub fn maxcr_diam4(desc: &Diam4Descriptor) -> Result<MaxCrossing> {
    let tree = desc.to_tree();
    let thrackle = thrackle_bound(tree.graph());
    if desc.is_caterpillar() {
        return Ok(MaxCrossing {
            value: thrackle,
            basis: Basis::Caterpillar,
        });
    }
    let n = tree.vertex_count() as u64;
    let value = binomial2(n - 1) - sum_binomial_degrees(tree.graph()) - d_value(desc)?;
    Ok(MaxCrossing {
        value,
        basis: Basis::Diam4,
    })
}

fn level_correction(levels: &[usize]) -> u64 {
    levels
        .iter()
        .skip(1)
        .map(|&a| binomial2(a as u64 / 2) + binomial2(a.div_ceil(2) as u64))
        .sum()
}

/// Maximum rectilinear crossing number of a spider.
pub fn maxcr_spider(desc: &SpiderDescriptor) -> MaxCrossing {
    let tree = desc.to_tree();
    let n = tree.vertex_count() as u64;
    let value = binomial2(n - 1) - sum_binomial_degrees(tree.graph()) - level_correction(&desc.levels());
    MaxCrossing {
        value,
        basis: Basis::Spider,
    }
}

/// The level correction of the spider formula computed from the legs,
/// `Σ_{i≥3} (ℓ_i − 1)·⌊(i−1)/2⌋`, and from the levels. Always equal.
pub fn spider_identity_sides(desc: &SpiderDescriptor) -> (u64, u64) {
    let by_legs = desc
        .legs()
        .iter()
        .enumerate()
        .skip(2)
        .map(|(idx, &len)| (len as u64 - 1) * (idx as u64 / 2))
        .sum();
    (by_legs, level_correction(&desc.levels()))
}

/// What is known about the maximum crossing number of an arbitrary tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeCrossingNumber {
    Exact(MaxCrossing),
    /// No closed form applies; only the thrackle bound is known from above.
    UpperBound(u64),
}

impl TreeCrossingNumber {
    pub fn upper_bound(&self) -> u64 {
        match self {
            TreeCrossingNumber::Exact(m) => m.value,
            TreeCrossingNumber::UpperBound(b) => *b,
        }
    }

    pub fn exact(&self) -> Option<u64> {
        match self {
            TreeCrossingNumber::Exact(m) => Some(m.value),
            TreeCrossingNumber::UpperBound(_) => None,
        }
    }
}

/// Evaluates every closed form that applies to `tree`. When several apply
/// they must agree; the first in classification order is returned.
pub fn maxcr_tree(tree: &Tree) -> Result<TreeCrossingNumber> {
    let mut exact: Option<MaxCrossing> = None;
    for class in classify_tree(tree) {
        let value = match class {
            TreeClass::Caterpillar => MaxCrossing {
                value: thrackle_bound(tree.graph()),
                basis: Basis::Caterpillar,
            },
            TreeClass::Spider(desc) => maxcr_spider(&desc),
            TreeClass::Diam4(desc) => maxcr_diam4(&desc)?,
            TreeClass::Other => continue,
        };
        match exact {
            Some(prev) if prev.value != value.value => {
                return Err(Error::Consistency(format!(
                    "{:?} gives {} but {:?} gives {}",
                    prev.basis, prev.value, value.basis, value.value
                )));
            }
            Some(_) => {}
            None => exact = Some(value),
        }
    }
    Ok(match exact {
        Some(m) => TreeCrossingNumber::Exact(m),
        None => TreeCrossingNumber::UpperBound(thrackle_bound(tree.graph())),
    })
}
