//! `ex(K_{k_1,…,k_r}, K_ℓ)`: clique-free subgraphs of a complete
//! multipartite host.
//!
//! An extremal subgraph can always be taken to merge whole host parts into
//! `ℓ−1` groups, so the value is the product-weighted partition maximum with
//! the part sizes as weights.

use alloc::format;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::graph::{build_complete_multipartite, complete_multipartite_on, Graph};
use crate::partition::{partition_maximize_products, IndexPartition};
use crate::rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HostSpec {
    part_sizes: Vec<usize>,
    clique: usize,
}

impl HostSpec {
    pub fn new(part_sizes: Vec<usize>, clique: usize) -> Result<Self> {
        if part_sizes.is_empty() {
            return Err(Error::InvalidArgument("the host needs at least one part".into()));
        }
        if let Some(i) = part_sizes.iter().position(|&k| k == 0) {
            return Err(Error::InvalidArgument(format!("part {} has size zero", i + 1)));
        }
        if clique < 3 {
            return Err(Error::InvalidArgument(format!(
                "forbidden clique order must be at least 3, got {clique}"
            )));
        }
        Ok(HostSpec { part_sizes, clique })
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn clique(&self) -> usize {
        self.clique
    }

    pub fn vertex_count(&self) -> usize {
        self.part_sizes.iter().sum()
    }

    pub fn host(&self) -> Graph {
        build_complete_multipartite(&self.part_sizes)
            .expect("validated part sizes")
            .graph
    }

    /// `Σ_{i<j} k_i·k_j`.
    pub fn host_edge_count(&self) -> u64 {
        let total: u64 = self.part_sizes.iter().map(|&k| k as u64).sum();
        let squares: u64 = self.part_sizes.iter().map(|&k| (k as u64) * (k as u64)).sum();
        (total * total - squares) / 2
    }
}

/// The extremal number and the grouping of host parts (0-based part
/// indices) that realizes it.
pub fn ex_multipartite(spec: &HostSpec) -> Result<(u64, IndexPartition)> {
    let sizes: Vec<_> = spec.part_sizes.iter().map(|&k| rational::from_u64(k as u64)).collect();
    let (value, partition) = partition_maximize_products(&sizes, spec.clique - 1)?;
    let value = value
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Consistency("edge count does not fit in u64".into()))?;
    Ok((value, partition))
}

/// The complete `(ℓ−1)`-partite subgraph of the host obtained by merging
/// host parts along `partition`. Vertex ids follow the host layout.
pub fn merged_witness_graph(spec: &HostSpec, partition: &IndexPartition) -> Result<Graph> {
    let r = spec.part_sizes.len();
    let partition = IndexPartition::new(partition.blocks().to_vec(), r, spec.clique - 1)?;
    let mut starts = Vec::with_capacity(r);
    let mut next = 0;
    for &k in &spec.part_sizes {
        starts.push(next);
        next += k;
    }
    let groups: Vec<Vec<usize>> = partition
        .blocks()
        .iter()
        .map(|block| {
            block
                .iter()
                .flat_map(|&p| starts[p]..starts[p] + spec.part_sizes[p])
                .collect()
        })
        .collect();
    Ok(complete_multipartite_on(next, &groups))
}
