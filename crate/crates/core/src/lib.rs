//! Weighted Turán numbers, multipartite extremal numbers and maximum
//! rectilinear crossing numbers of spiders and diameter-4 trees.
//!
//! Everything here is exact: extremal values are [`Rational`]s backed by
//! arbitrary-precision integers, and all geometric predicates are evaluated
//! without rounding. The crate is `no_std` and only needs `alloc`.
//!
//! The modules map onto the problem areas:
//!
//! - [`graph`] and [`tree`]: small simple graphs, trees, tree families.
//! - [`weighted`] and [`partition`]: min- and product-weighted extremal
//!   numbers, the `B_ℓ` construction, exact and heuristic partitioning.
//! - [`multipartite`]: clique-free subgraphs of complete multipartite hosts.
//! - [`oracle`]: brute-force ground truth for all of the above.
//! - [`geometry`]: legality checking and crossing counting for straight-line
//!   drawings.
//! - [`drawings`]: closed-form crossing numbers, the two-line diameter-4
//!   construction and a simulated-annealing crossing maximizer.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod drawings;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod multipartite;
pub mod oracle;
pub mod partition;
pub mod rational;
pub mod tree;
pub mod weighted;

pub use error::{Error, Result};
pub use graph::Graph;
pub use rational::Rational;
pub use tree::{Diam4Descriptor, SpiderDescriptor, Tree, TreeClass};
