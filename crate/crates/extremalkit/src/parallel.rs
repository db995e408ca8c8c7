//! Annealing restarts spread over threads.
//!
//! Each restart owns an independent stream of the seeded generator, so the
//! result does not depend on how restarts are scheduled and matches
//! [`anneal_max_crossings`](extremalkit_core::drawings::anneal_max_crossings).

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Mutex;

use extremalkit_core::drawings::{anneal_bounds, anneal_restart, best_restart, finish, AnnealOutcome, AnnealParams};
use extremalkit_core::{Result, Tree};

/// Worker count: `EXTREMALKIT_THREADS` if set to a positive integer,
/// otherwise the available parallelism.
pub fn thread_count() -> usize {
    std::env::var("EXTREMALKIT_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<NonZeroUsize>().ok())
        .or_else(|| std::thread::available_parallelism().ok())
        .map_or(1, NonZeroUsize::get)
}

pub fn anneal_parallel(tree: &Tree, params: &AnnealParams) -> Result<AnnealOutcome> {
    params.validate()?;
    let (exact, upper_bound) = anneal_bounds(tree)?;
    let workers = thread_count().min(params.restarts as usize).max(1);
    let next = AtomicU32::new(0);
    // lowest restart that reached the bound; later restarts can be skipped
    let reached = AtomicU32::new(u32::MAX);
    let results = Mutex::new(Vec::new());

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let restart = next.fetch_add(1, Ordering::Relaxed);
                if restart >= params.restarts || restart > reached.load(Ordering::Relaxed) {
                    break;
                }
                let outcome = anneal_restart(tree, params, restart, upper_bound);
                if let Ok((_, crossings)) = &outcome {
                    if *crossings >= upper_bound {
                        reached.fetch_min(restart, Ordering::Relaxed);
                    }
                }
                results.lock().unwrap().push((restart, outcome));
            });
        }
    });

    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(restart, _)| *restart);
    let cutoff = reached.into_inner();
    let mut kept = Vec::new();
    for (restart, outcome) in results.into_iter().filter(|(r, _)| *r <= cutoff) {
        let (drawing, crossings) = outcome?;
        kept.push((restart, drawing, crossings));
    }
    finish(tree, best_restart(kept), exact, upper_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use extremalkit_core::drawings::anneal_max_crossings;
    use extremalkit_core::SpiderDescriptor;

    #[test]
    fn matches_sequential() {
        let params = AnnealParams {
            iterations: 300,
            restarts: 6,
            seed: 3,
            ..AnnealParams::default()
        };
        for legs in [vec![3, 3, 2], vec![2, 2, 2], vec![4, 1, 1, 1]] {
            let tree = SpiderDescriptor::new(legs).unwrap().to_tree();
            assert_eq!(
                anneal_parallel(&tree, &params).unwrap(),
                anneal_max_crossings(&tree, &params).unwrap()
            );
        }
    }
}
