//! Steepest-ascent hill climbing over the bits of `A` in `[I | A]`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Method, SearchBudget, SearchCertificate, Shape};
use crate::codes::MinimalCounter;
use crate::error::Error;

struct Climb {
    m: usize,
    cols: Vec<u64>,
    evaluations: u64,
}

/// One restart: random `A`, then repeatedly take the single-bit flip with
/// the largest strict gain (lowest bit index on ties) until none improves.
fn climb(shape: &Shape, seed: u64, restart: u64, budget_left: &AtomicU64) -> Climb {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart);
    let mask = shape.values() - 1;
    let r = shape.redundancy();
    let mut cols: Vec<u64> = (0..r).map(|_| rng.gen::<u64>() & mask).collect();

    let mut counter = MinimalCounter::new();
    let mut rows = Vec::new();
    shape.rows_into(&cols, &mut rows);
    let mut current = counter.count(&rows, None).expect("no floor");
    let mut evaluations = 1u64;

    loop {
        let mut best_move = None;
        let mut best_m = current;
        for j in 0..r {
            for i in 0..shape.k {
                if budget_left.load(Ordering::Relaxed) == 0 {
                    return Climb {
                        m: current,
                        cols,
                        evaluations,
                    };
                }
                budget_left.fetch_sub(1, Ordering::Relaxed);
                evaluations += 1;
                cols[j] ^= 1 << i;
                shape.rows_into(&cols, &mut rows);
                if let Some(m) = counter.count(&rows, Some(best_m)) {
                    if m > best_m {
                        best_m = m;
                        best_move = Some((j, i));
                    }
                }
                cols[j] ^= 1 << i;
            }
        }
        match best_move {
            Some((j, i)) => {
                cols[j] ^= 1 << i;
                current = best_m;
            }
            None => {
                return Climb {
                    m: current,
                    cols,
                    evaluations,
                }
            }
        }
    }
}

/// Hill climbing with `budget.restarts` independent restarts.
///
/// Restart `i` draws its start from stream `i` of a ChaCha generator seeded
/// with `budget.seed`, so the result only depends on the seed and restart
/// count, never on the number of workers (as long as the candidate budget
/// is not hit). Ties between restarts go to the lowest restart index.
pub fn heuristic_max_m(n: usize, k: usize, budget: &SearchBudget) -> Result<SearchCertificate, Error> {
    budget.validate()?;
    let shape = Shape::new(n, k)?;
    let start = Instant::now();
    let budget_left = AtomicU64::new(budget.max_candidates);

    let climbs: Vec<Climb> = if shape.redundancy() == 0 {
        vec![Climb {
            m: n,
            cols: Vec::new(),
            evaluations: 1,
        }]
    } else {
        budget.pool().install(|| {
            (0..budget.restarts as u64)
                .into_par_iter()
                .map(|restart| {
                    if start.elapsed() > budget.max_time {
                        return None;
                    }
                    Some(climb(&shape, budget.seed, restart, &budget_left))
                })
                .flatten()
                .collect()
        })
    };

    let evaluations = climbs.iter().map(|c| c.evaluations).sum();
    let best = climbs
        .into_iter()
        .reduce(|a, b| if b.m > a.m { b } else { a })
        .expect("at least one restart runs");
    Ok(SearchCertificate {
        n,
        k,
        generator: shape.code(&best.cols).generator().clone(),
        claimed_m: best.m as u64,
        method: Method::Heuristic,
        candidates_examined: evaluations,
        seed: budget.seed,
        wall_time: start.elapsed(),
    })
}
