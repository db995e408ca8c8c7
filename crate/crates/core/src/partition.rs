//! Partitions of an index set maximizing the sum of pairwise block-sum
//! products.
//!
//! For block sums `S_P` with total `S`, `Σ_{P≠P'} S_P·S_P' = (S² − Σ S_P²)/2`,
//! so maximizing the products is the same as minimizing the sum of squared
//! block sums, a multiway number-partitioning problem. The exact solver is a
//! depth-first branch and bound over restricted-growth block assignments;
//! two heuristics (LPT and Karmarkar–Karp differencing) give fast feasible
//! answers.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Magnitude, Rational};

/// A partition of `0..len` into at most `max_blocks` nonempty blocks.
///
/// Canonical form: each block ascending, blocks ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexPartition {
    blocks: Vec<Vec<usize>>,
    max_blocks: usize,
}

impl IndexPartition {
    /// Validates that `blocks` cover `0..len` disjointly; empty blocks are
    /// dropped.
    pub fn new(blocks: Vec<Vec<usize>>, len: usize, max_blocks: usize) -> Result<Self> {
        let mut seen = vec![false; len];
        for &i in blocks.iter().flatten() {
            if i >= len {
                return Err(Error::InvalidArgument(format!(
                    "index {} outside 0..{len}",
                    i
                )));
            }
            if core::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!("index {i} appears twice")));
            }
        }
        if let Some(i) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidArgument(format!("index {i} not covered")));
        }
        let mut blocks: Vec<Vec<usize>> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
        if blocks.len() > max_blocks {
            return Err(Error::TooManyBlocks {
                blocks: blocks.len(),
                max: max_blocks,
            });
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(IndexPartition { blocks, max_blocks })
    }

    /// From a block id per index.
    pub fn from_assignment(assignment: &[usize], max_blocks: usize) -> Result<Self> {
        let count = assignment.iter().map(|&b| b + 1).max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); count];
        for (i, &b) in assignment.iter().enumerate() {
            blocks[b].push(i);
        }
        Self::new(blocks, assignment.len(), max_blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn max_blocks(&self) -> usize {
        self.max_blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_sums(&self, values: &[Rational]) -> Vec<Rational> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| values[i].clone()).sum())
            .collect()
    }

    /// `Σ_{P≠P'} S_P·S_P'` over unordered pairs of blocks.
    pub fn pairwise_product(&self, values: &[Rational]) -> Rational {
        let sums = self.block_sums(values);
        let mut total = Rational::zero();
        for (i, a) in sums.iter().enumerate() {
            for b in &sums[i + 1..] {
                total += a * b;
            }
        }
        total
    }
}

/// Exact maximum of `Σ_{P≠P'} S_P·S_P'` over partitions of the values into
/// at most `max_blocks` blocks, with a witness.
///
/// Values are visited largest first (ties by index). The witness is the
/// first optimum in the search order, which tries a fresh block before
/// reusing the most recently opened ones; over the sorted order this is the
/// lexicographically largest optimal restricted-growth assignment.
pub fn partition_maximize_products(
    values: &[Rational],
    max_blocks: usize,
) -> Result<(Rational, IndexPartition)> {
    check_inputs(values, max_blocks)?;
    if values.is_empty() {
        return Ok((Rational::zero(), IndexPartition::new(Vec::new(), 0, max_blocks)?));
    }
    let order = descending_order(values);
    let sorted: Vec<Rational> = order.iter().map(|&i| values[i].clone()).collect();
    let scaled = rational::scale_to_integers(&sorted);

    let by_rank = solve_scaled(&scaled, max_blocks);
    let mut assignment = vec![0; values.len()];
    for (rank, &i) in order.iter().enumerate() {
        assignment[i] = by_rank[rank];
    }
    let partition = IndexPartition::from_assignment(&assignment, max_blocks)?;
    Ok((partition.pairwise_product(values), partition))
}

fn solve_scaled(scaled: &[BigUint], max_blocks: usize) -> Vec<usize> {
    let total: BigUint = scaled.iter().sum();
    let fits = total
        .to_u128()
        .and_then(|s| s.checked_mul(s))
        .and_then(|sq| sq.checked_mul(max_blocks as u128 + 2))
        .is_some();
    if fits {
        let small: Vec<u128> = scaled.iter().map(|v| v.to_u128().unwrap()).collect();
        Search::run(&small, max_blocks)
    } else {
        Search::run(scaled, max_blocks)
    }
}

fn check_inputs(values: &[Rational], max_blocks: usize) -> Result<()> {
    if max_blocks == 0 {
        return Err(Error::InvalidArgument("at least one block is required".into()));
    }
    if let Some(i) = values.iter().position(Signed::is_negative) {
        return Err(Error::NegativeWeight(i));
    }
    Ok(())
}

/// Indices sorted by value, largest first, ties by index.
pub(crate) fn descending_order(values: &[Rational]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].cmp(&values[a]));
    order
}


struct Search<'a, T> {
    values: &'a [T],
    /// `suffix[i]` = sum of `values[i..]`.
    suffix: Vec<T>,
    sums: Vec<T>,
    assign: Vec<usize>,
    used: usize,
    cost: T,
    best_cost: T,
    best: Vec<usize>,
    // false while the incumbent is the heuristic seed
    best_from_search: bool,
}

impl<'a, T: Magnitude> Search<'a, T> {
    fn run(values: &'a [T], max_blocks: usize) -> Vec<usize> {
        let mut suffix = vec![T::zero(); values.len() + 1];
        for i in (0..values.len()).rev() {
            suffix[i] = suffix[i + 1].clone() + values[i].clone();
        }
        let seed = lpt_assignment(values, max_blocks);
        let seed_cost = squared_cost(values, &seed, max_blocks);
        let mut search = Search {
            values,
            suffix,
            sums: vec![T::zero(); max_blocks.min(values.len())],
            assign: vec![0; values.len()],
            used: 0,
            cost: T::zero(),
            best_cost: seed_cost,
            best: seed,
            best_from_search: false,
        };
        search.descend(0);
        search.best
    }

    fn descend(&mut self, rank: usize) {
        if rank == self.values.len() {
            if self.cost < self.best_cost || (self.cost == self.best_cost && !self.best_from_search)
            {
                self.best_cost = self.cost.clone();
                self.best.clone_from(&self.assign);
                self.best_from_search = true;
            }
            return;
        }
        let v = self.values[rank].clone();
        let open = self.used < self.sums.len();
        let fresh = open.then_some(self.used);
        for block in fresh.into_iter().chain((0..self.used).rev()) {
            let old_sum = self.sums[block].clone();
            let old_cost = self.cost.clone();
            let two = T::from_u8(2).unwrap();
            self.cost = old_cost.clone() + two * old_sum.clone() * v.clone() + v.clone() * v.clone();
            self.sums[block] = old_sum.clone() + v.clone();
            self.assign[rank] = block;
            let opened = block == self.used;
            if opened {
                self.used += 1;
            }
            if !self.prune(rank + 1) {
                self.descend(rank + 1);
            }
            if opened {
                self.used -= 1;
            }
            self.sums[block] = old_sum;
            self.cost = old_cost;
        }
    }

    /// Water-filling relaxation: the remaining mass spread continuously over
    /// the blocks, lowest first, minimizes the final sum of squares.
    fn prune(&self, next: usize) -> bool {
        let remaining = self.suffix[next].clone();
        let mut sums: Vec<T> = self.sums[..self.used].to_vec();
        sums.sort();
        // unopened blocks are empty and sort first
        let zeros = self.sums.len() - self.used;
        let blocks = self.sums.len();
        let at = |i: usize| -> T {
            if i < zeros {
                T::zero()
            } else {
                sums[i - zeros].clone()
            }
        };
        let mut prefix = T::zero();
        for j in 1..=blocks {
            prefix = prefix + at(j - 1);
            let level_num = remaining.clone() + prefix.clone();
            let jt = T::from_usize(j).unwrap();
            if j == blocks || level_num <= jt.clone() * at(j) {
                let rest = (j..blocks).fold(T::zero(), |acc, i| acc + at(i) * at(i));
                // bound = level_num²/j + rest, compared against best_cost
                let lhs = level_num.clone() * level_num + jt.clone() * rest;
                let rhs = jt * self.best_cost.clone();
                return lhs > rhs || (lhs == rhs && self.best_from_search);
            }
        }
        unreachable!("the last block always terminates the fill")
    }
}

fn squared_cost<T: Magnitude>(values: &[T], assign: &[usize], blocks: usize) -> T {
    let mut sums = vec![T::zero(); blocks.min(values.len()).max(1)];
    for (v, &b) in values.iter().zip(assign) {
        sums[b] = sums[b].clone() + v.clone();
    }
    sums.into_iter().fold(T::zero(), |acc, s| acc + s.clone() * s)
}

/// LPT over values already in descending order; block ids are in opening
/// order so the result is a restricted-growth assignment.
fn lpt_assignment<T: Magnitude>(values: &[T], blocks: usize) -> Vec<usize> {
    let mut sums = vec![T::zero(); blocks.min(values.len()).max(1)];
    values
        .iter()
        .map(|v| {
            let b = (0..sums.len())
                .min_by(|&a, &b| sums[a].cmp(&sums[b]).then(a.cmp(&b)))
                .unwrap();
            sums[b] = sums[b].clone() + v.clone();
            b
        })
        .collect()
}

/// Longest-processing-time greedy: largest value first, each into the
/// currently lightest block (lowest id on ties).
pub fn lpt(values: &[Rational], max_blocks: usize) -> Result<(Rational, IndexPartition)> {
    check_inputs(values, max_blocks)?;
    let order = descending_order(values);
    let sorted: Vec<Rational> = order.iter().map(|&i| values[i].clone()).collect();
    let mut sums = vec![Rational::zero(); max_blocks.min(values.len()).max(1)];
    let mut assignment = vec![0; values.len()];
    for (rank, v) in sorted.iter().enumerate() {
        let b = (0..sums.len())
            .min_by(|&a, &b| sums[a].cmp(&sums[b]).then(a.cmp(&b)))
            .unwrap();
        sums[b] += v;
        assignment[order[rank]] = b;
    }
    finish(values, &assignment, max_blocks)
}

/// Multiway Karmarkar–Karp differencing. Every value starts as an `m`-tuple
/// of block sums; the two tuples with the largest spread are repeatedly
/// merged, pairing the heaviest blocks of one with the lightest of the other.
pub fn karmarkar_karp(values: &[Rational], max_blocks: usize) -> Result<(Rational, IndexPartition)> {
    check_inputs(values, max_blocks)?;
    if values.is_empty() {
        return Ok((Rational::zero(), IndexPartition::new(Vec::new(), 0, max_blocks)?));
    }
    let m = max_blocks.min(values.len());
    // each tuple: blocks of (sum, members)
    type Tuple = Vec<(Rational, Vec<usize>)>;
    let mut tuples: Vec<Tuple> = descending_order(values)
        .into_iter()
        .map(|i| {
            let mut t = vec![(Rational::zero(), Vec::new()); m];
            t[0] = (values[i].clone(), vec![i]);
            t
        })
        .collect();
    let spread = |t: &Tuple| -> Rational {
        let max = t.iter().map(|b| &b.0).max().unwrap();
        let min = t.iter().map(|b| &b.0).min().unwrap();
        max - min
    };
    while tuples.len() > 1 {
        // two largest spreads; earliest index wins ties
        let mut idx: Vec<usize> = (0..tuples.len()).collect();
        idx.sort_by(|&a, &b| spread(&tuples[b]).cmp(&spread(&tuples[a])).then(a.cmp(&b)));
        let (i, j) = (idx[0].min(idx[1]), idx[0].max(idx[1]));
        let mut second = tuples.remove(j);
        let mut first = tuples.remove(i);
        first.sort_by(|a, b| b.0.cmp(&a.0));
        second.sort_by(|a, b| a.0.cmp(&b.0));
        let merged: Tuple = first
            .into_iter()
            .zip(second)
            .map(|((sa, mut ma), (sb, mb))| {
                ma.extend(mb);
                (sa + sb, ma)
            })
            .collect();
        tuples.insert(i, merged);
    }
    let blocks = tuples.pop().unwrap().into_iter().map(|(_, m)| m).collect();
    let partition = IndexPartition::new(blocks, values.len(), max_blocks)?;
    Ok((partition.pairwise_product(values), partition))
}

/// Best of [`lpt`] and [`karmarkar_karp`] (LPT on ties). Never better than
/// [`partition_maximize_products`].
pub fn partition_heuristic(values: &[Rational], max_blocks: usize) -> Result<(Rational, IndexPartition)> {
    let greedy = lpt(values, max_blocks)?;
    let differencing = karmarkar_karp(values, max_blocks)?;
    Ok(if differencing.0 > greedy.0 {
        differencing
    } else {
        greedy
    })
}

fn finish(values: &[Rational], assignment: &[usize], max_blocks: usize) -> Result<(Rational, IndexPartition)> {
    let partition = IndexPartition::from_assignment(assignment, max_blocks)?;
    Ok((partition.pairwise_product(values), partition))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::from_int;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| from_int(x)).collect()
    }

    /// Every set partition of `0..n` into at most `m` blocks, as
    /// restricted-growth strings.
    fn all_assignments(n: usize, m: usize) -> Vec<Vec<usize>> {
        fn rec(i: usize, n: usize, m: usize, used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == n {
                out.push(cur.clone());
                return;
            }
            for b in 0..(used + 1).min(m) {
                cur.push(b);
                rec(i + 1, n, m, used.max(b + 1), cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, m, 0, &mut Vec::new(), &mut out);
        out
    }

    fn brute_force(values: &[Rational], m: usize) -> Rational {
        all_assignments(values.len(), m)
            .iter()
            .map(|a| IndexPartition::from_assignment(a, m).unwrap().pairwise_product(values))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    #[test]
    fn exact_examples() {
        let (v, p) = partition_maximize_products(&ints(&[3, 2, 2, 1]), 2).unwrap();
        assert_eq!(v, from_int(16));
        assert_eq!(p.blocks(), &[vec![0, 3], vec![1, 2]]);
        assert_eq!(partition_maximize_products(&ints(&[5, 1, 4]), 1).unwrap().0, from_int(0));
        assert_eq!(partition_maximize_products(&ints(&[1, 1, 1, 1]), 2).unwrap().0, from_int(4));
        let (v, p) = partition_maximize_products(&ints(&[1, 1, 1]), 2).unwrap();
        assert_eq!(v, from_int(2));
        assert_eq!(p.blocks(), &[vec![0], vec![1, 2]]);
        let (v, p) = partition_maximize_products(&ints(&[3, 2, 2, 1]), 3).unwrap();
        assert_eq!(v, from_int(21));
        let mut sums = p.block_sums(&ints(&[3, 2, 2, 1]));
        sums.sort();
        assert_eq!(sums, ints(&[2, 3, 3]));
    }

    #[test]
    fn all_bipartitions_of_3221() {
        // the 7 two-block partitions, enumerated by hand
        let values = ints(&[3, 2, 2, 1]);
        let best = (1u32..8)
            .map(|mask| {
                let a: Rational = (0..4).filter(|i| mask & (1 << i) != 0).map(|i| values[i].clone()).sum();
                let b = from_int(8) - &a;
                a * b
            })
            .max()
            .unwrap();
        assert_eq!(best, from_int(16));
    }

    #[test]
    fn heuristic_examples() {
        assert_eq!(partition_heuristic(&ints(&[3, 2, 2, 1]), 2).unwrap().0, from_int(16));
        assert_eq!(partition_heuristic(&ints(&[1, 1, 1, 1]), 2).unwrap().0, from_int(4));
        let (v, p) = partition_heuristic(&ints(&[5, 4, 3, 2, 2]), 2).unwrap();
        assert_eq!(v, from_int(64));
        assert_eq!(p.block_sums(&ints(&[5, 4, 3, 2, 2])), ints(&[8, 8]));
        // plain LPT ends at 9/7 here; differencing finds the perfect split
        assert_eq!(lpt(&ints(&[5, 4, 3, 2, 2]), 2).unwrap().0, from_int(63));
        assert_eq!(karmarkar_karp(&ints(&[5, 4, 3, 2, 2]), 2).unwrap().0, from_int(64));
    }

    #[test]
    fn lpt_is_not_optimal_in_general() {
        let values = ints(&[3, 3, 2, 2, 2]);
        assert_eq!(lpt(&values, 2).unwrap().0, from_int(35));
        assert_eq!(partition_maximize_products(&values, 2).unwrap().0, from_int(36));
    }

    #[test]
    fn rational_and_zero_values() {
        let values = alloc::vec![
            rational::parse("1/2").unwrap(),
            rational::parse("1/3").unwrap(),
            from_int(0),
            rational::parse("1/6").unwrap()
        ];
        let (v, _) = partition_maximize_products(&values, 2).unwrap();
        assert_eq!(v, rational::parse("1/4").unwrap());
        assert_eq!(v, brute_force(&values, 2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(partition_maximize_products(&ints(&[1]), 0).is_err());
        assert_eq!(
            partition_maximize_products(&ints(&[1, -1]), 2).unwrap_err(),
            Error::NegativeWeight(1)
        );
        let (v, p) = partition_maximize_products(&[], 3).unwrap();
        assert!(v.is_zero() && p.is_empty());
    }

    #[test]
    fn big_values_take_the_bignum_path() {
        use num_bigint::BigInt;
        let big = Rational::from_integer(BigInt::from(1u128 << 100));
        let values = alloc::vec![big.clone(), big.clone(), big.clone(), big];
        let (v, _) = partition_maximize_products(&values, 2).unwrap();
        let b = Rational::from_integer(BigInt::from(1u128 << 101));
        assert_eq!(v, &b * &b);
    }

    #[test]
    fn partition_validation() {
        assert!(IndexPartition::new(alloc::vec![alloc::vec![0], alloc::vec![0, 1]], 2, 2).is_err());
        assert!(IndexPartition::new(alloc::vec![alloc::vec![0]], 2, 2).is_err());
        assert_eq!(
            IndexPartition::new(alloc::vec![alloc::vec![1], alloc::vec![0], alloc::vec![2]], 3, 2),
            Err(Error::TooManyBlocks { blocks: 3, max: 2 })
        );
        let p = IndexPartition::new(alloc::vec![alloc::vec![2, 1], alloc::vec![], alloc::vec![0]], 3, 2).unwrap();
        assert_eq!(p.blocks(), &[alloc::vec![0], alloc::vec![1, 2]]);
    }

    proptest! {
        #[test]
        fn exact_matches_enumeration(values in proptest::collection::vec(0i64..20, 0..8), m in 1usize..5) {
            let values = ints(&values);
            let (v, p) = partition_maximize_products(&values, m).unwrap();
            prop_assert_eq!(&v, &brute_force(&values, m));
            prop_assert_eq!(p.pairwise_product(&values), v.clone());
            prop_assert!(p.block_count() <= m);
            let (h, hp) = partition_heuristic(&values, m).unwrap();
            prop_assert!(h <= v);
            prop_assert_eq!(hp.pairwise_product(&values), h);
        }

        #[test]
        fn product_and_square_objectives_agree(values in proptest::collection::vec(0i64..12, 1..7), m in 1usize..4) {
            let values = ints(&values);
            let total: Rational = values.iter().cloned().sum();
            let scored: Vec<(Rational, Rational, Vec<usize>)> = all_assignments(values.len(), m)
                .into_iter()
                .map(|a| {
                    let p = IndexPartition::from_assignment(&a, m).unwrap();
                    let squares: Rational = p.block_sums(&values).iter().map(|s| s * s).sum();
                    (p.pairwise_product(&values), squares, a)
                })
                .collect();
            for (prod, squares, _) in &scored {
                prop_assert_eq!(prod * from_int(2), &total * &total - squares);
            }
            let max_prod = scored.iter().map(|s| s.0.clone()).max().unwrap();
            let min_sq = scored.iter().map(|s| s.1.clone()).min().unwrap();
            let argmax: Vec<_> = scored.iter().filter(|s| s.0 == max_prod).map(|s| s.2.clone()).collect();
            let argmin: Vec<_> = scored.iter().filter(|s| s.1 == min_sq).map(|s| s.2.clone()).collect();
            prop_assert_eq!(argmax, argmin);
        }
    }
}
