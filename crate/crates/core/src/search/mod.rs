//! Searching code space for large `M(C)`, intersecting codes and large
//! minimum distance.
//!
//! Every `[n, k]` code is coordinate-permutation equivalent to one with a
//! systematic generator `[I | A]`, and `M` only depends on supports, so the
//! exhaustive searches run over the `k × (n-k)` matrices `A`. Permuting the
//! columns of `A` permutes coordinates too, so only `A` with columns in
//! nondecreasing numeric order are visited. By default the rows of `A` are
//! also restricted to nonincreasing weight (see [`Symmetry`]).
//!
//! Parallel runs split the space by the first (smallest) column of `A`.
//! Each unit scans its candidates in lexicographic order and keeps its first
//! best; units are merged by value, then by smallest first column. The shared
//! best-so-far is only used to abandon candidates that cannot reach it, so
//! the winner does not depend on scheduling.

mod certificate;
mod heuristic;

pub use certificate::{verify_certificate, Method, SearchCertificate};
pub use heuristic::heuristic_max_m;

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::codes::{gray_words, LinearCode, MinimalCounter};
use crate::error::Error;
use crate::gf2::BitMatrix;

/// Resource limits for a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Candidates evaluated before giving up.
    pub max_candidates: u64,
    pub max_time: Duration,
    pub workers: usize,
    /// Hill-climbing restarts (heuristic only).
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_candidates: u64::MAX,
            max_time: Duration::from_secs(3600),
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            restarts: 200,
            seed: 1,
        }
    }
}

impl SearchBudget {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_max_candidates(mut self, max: u64) -> Self {
        self.max_candidates = max;
        self
    }

    pub fn with_max_time(mut self, max: Duration) -> Self {
        self.max_time = max;
        self
    }

    fn validate(&self) -> Result<(), Error> {
        if self.max_candidates == 0 || self.max_time.is_zero() || self.workers == 0 || self.restarts == 0 {
            return Err(Error::BadParameter("search budget fields must all be positive".into()));
        }
        Ok(())
    }

    fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .expect("thread pool")
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    /// The budget ran out; the best code seen so far is attached with its
    /// method downgraded to heuristic.
    #[error("search budget exhausted after {} candidates (best M so far {})", .0.candidates_examined, .0.claimed_m)]
    BudgetExceeded(Box<SearchCertificate>),
    #[error(transparent)]
    Invalid(#[from] Error),
}

/// Symmetry reduction applied on top of the systematic form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Symmetry {
    /// `[I | A]` with the columns of `A` in nondecreasing order.
    SortedColumns,
    /// Additionally require the rows of `A` to have nonincreasing weight.
    /// Complete because permuting the rows of `A` (together with the
    /// identity columns) is a coordinate permutation, and sorting columns
    /// afterwards leaves row weights unchanged.
    #[default]
    SortedColumnsRowWeights,
}

/// Column-sorted `A` matrices: `cols[0] <= cols[1] <= ...`, each a `k`-bit
/// column word.
#[derive(Clone, Debug)]
pub(crate) struct Shape {
    pub n: usize,
    pub k: usize,
}

impl Shape {
    pub fn new(n: usize, k: usize) -> Result<Self, Error> {
        if k == 0 || k > n || n > 64 {
            return Err(Error::BadParameter(format!("need 1 <= k <= n <= 64, got n={n}, k={k}")));
        }
        if k > 30 {
            return Err(Error::TooLarge { k, limit: 30 });
        }
        Ok(Self { n, k })
    }

    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    /// Number of distinct column values.
    pub fn values(&self) -> u64 {
        1u64 << self.k
    }

    /// Generator rows of `[I | A]` for the given columns of `A`.
    pub fn rows_into(&self, cols: &[u64], rows: &mut Vec<u64>) {
        rows.clear();
        rows.extend((0..self.k).map(|i| 1u64 << i));
        for (j, &c) in cols.iter().enumerate() {
            let bit = 1u64 << (self.k + j);
            let mut c = c;
            while c != 0 {
                let i = c.trailing_zeros() as usize;
                rows[i] |= bit;
                c &= c - 1;
            }
        }
    }

    pub fn code(&self, cols: &[u64]) -> LinearCode {
        let mut rows = Vec::new();
        self.rows_into(cols, &mut rows);
        LinearCode::new(BitMatrix::from_rows(self.n, rows).expect("fits")).expect("systematic")
    }

    fn rows_nonincreasing(&self, cols: &[u64]) -> bool {
        let weight = |i: usize| cols.iter().filter(|&&c| c >> i & 1 == 1).count();
        let mut prev = weight(0);
        for i in 1..self.k {
            let w = weight(i);
            if w > prev {
                return false;
            }
            prev = w;
        }
        true
    }

    pub fn admits(&self, cols: &[u64], symmetry: Symmetry) -> bool {
        match symmetry {
            Symmetry::SortedColumns => true,
            Symmetry::SortedColumnsRowWeights => self.rows_nonincreasing(cols),
        }
    }
}

/// Steps `cols[1..]` to the next nondecreasing tuple with all entries at
/// least `cols[0]`. Returns false when the unit is exhausted.
fn advance(cols: &mut [u64], values: u64) -> bool {
    let r = cols.len();
    let Some(j) = (1..r).rev().find(|&j| cols[j] + 1 < values) else {
        return false;
    };
    cols[j] += 1;
    let v = cols[j];
    for c in &mut cols[j + 1..] {
        *c = v;
    }
    true
}

/// Visits every admitted candidate of the unit whose first column is
/// `first`, in lexicographic order. The visitor returns false to stop.
fn for_each_in_unit(shape: &Shape, first: u64, symmetry: Symmetry, mut visit: impl FnMut(&[u64]) -> bool) {
    let r = shape.redundancy();
    let mut cols = vec![first; r];
    loop {
        if shape.admits(&cols, symmetry) && !visit(&cols) {
            return;
        }
        if r <= 1 || !advance(&mut cols, shape.values()) {
            return;
        }
    }
}

struct Stopper {
    start: Instant,
    max_time: Duration,
    max_candidates: u64,
    examined: AtomicU64,
    stopped: AtomicBool,
}

impl Stopper {
    fn new(budget: &SearchBudget) -> Self {
        Self {
            start: Instant::now(),
            max_time: budget.max_time,
            max_candidates: budget.max_candidates,
            examined: AtomicU64::new(0),
            stopped: AtomicBool::new(false),
        }
    }

    /// Accounts for one candidate; false once the budget is gone.
    fn tick(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return false;
        }
        let seen = self.examined.fetch_add(1, Ordering::Relaxed) + 1;
        if seen > self.max_candidates || (seen.is_multiple_of(1024) && self.start.elapsed() > self.max_time) {
            self.stopped.store(true, Ordering::Relaxed);
            if seen > self.max_candidates {
                self.examined.fetch_sub(1, Ordering::Relaxed);
            }
            return false;
        }
        true
    }

    fn stopped(&self) -> bool {
        self.stopped.load(Ordering::Relaxed)
    }

    fn examined(&self) -> u64 {
        self.examined.load(Ordering::Relaxed)
    }
}

/// Exhaustive maximisation of `M` over column-sorted systematic generators.
pub fn exhaustive_max_m(n: usize, k: usize, budget: &SearchBudget) -> Result<SearchCertificate, SearchError> {
    exhaustive_max_m_with(n, k, budget, Symmetry::default())
}

pub fn exhaustive_max_m_with(
    n: usize,
    k: usize,
    budget: &SearchBudget,
    symmetry: Symmetry,
) -> Result<SearchCertificate, SearchError> {
    budget.validate()?;
    let shape = Shape::new(n, k)?;
    let stopper = Stopper::new(budget);
    let global_best = AtomicUsize::new(0);

    let units: Vec<Option<(usize, Vec<u64>)>> = if shape.redundancy() == 0 {
        stopper.tick();
        vec![Some((n, Vec::new()))]
    } else {
        budget.pool().install(|| {
            (0..shape.values())
                .into_par_iter()
                .map_init(
                    || (MinimalCounter::new(), Vec::new()),
                    |(counter, rows), first| {
                        let mut local: Option<(usize, Vec<u64>)> = None;
                        for_each_in_unit(&shape, first, symmetry, |cols| {
                            if !stopper.tick() {
                                return false;
                            }
                            let local_m = local.as_ref().map_or(0, |b| b.0);
                            let floor = local_m.max(global_best.load(Ordering::Relaxed).saturating_sub(1));
                            shape.rows_into(cols, rows);
                            if let Some(m) = counter.count(rows, Some(floor)) {
                                if m > local_m {
                                    local = Some((m, cols.to_vec()));
                                    global_best.fetch_max(m, Ordering::Relaxed);
                                }
                            }
                            true
                        });
                        local
                    },
                )
                .collect()
        })
    };

    // first unit (smallest first column) wins ties
    let mut best: Option<(usize, Vec<u64>)> = None;
    for (m, cols) in units.into_iter().flatten() {
        if best.as_ref().is_none_or(|b| m > b.0) {
            best = Some((m, cols));
        }
    }
    let (claimed_m, cols) = best.unwrap_or_else(|| {
        let cols = vec![0; shape.redundancy()];
        let mut rows = Vec::new();
        shape.rows_into(&cols, &mut rows);
        (MinimalCounter::new().count(&rows, None).expect("no floor"), cols)
    });

    let exhausted = stopper.stopped();
    let cert = SearchCertificate {
        n,
        k,
        generator: shape.code(&cols).generator().clone(),
        claimed_m: claimed_m as u64,
        method: if exhausted {
            Method::Heuristic
        } else {
            Method::Exhaustive
        },
        candidates_examined: stopper.examined(),
        seed: 0,
        wall_time: stopper.start.elapsed(),
    };
    if exhausted {
        Err(SearchError::BudgetExceeded(Box::new(cert)))
    } else {
        Ok(cert)
    }
}

/// A search result that may be a verified lower estimate only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Estimate {
    pub value: usize,
    /// False when the budget ran out before the value was settled; the value
    /// is then realised by a code but may not be the maximum.
    pub exact: bool,
    pub witness: Option<LinearCode>,
}

fn pairwise_intersecting(words: &[u64]) -> bool {
    let nonzero = &words[1..];
    for (i, &a) in nonzero.iter().enumerate() {
        if nonzero[i + 1..].iter().any(|&b| a & b == 0) {
            return false;
        }
    }
    true
}

/// Looks for an intersecting `[n, k]` code; returns the lexicographically
/// first witness in the canonical order, or `None` when there is none.
/// `Err(())` means the budget ran out first.
fn find_intersecting(shape: &Shape, stopper: &Stopper, pool: &rayon::ThreadPool) -> Result<Option<Vec<u64>>, ()> {
    let k = shape.k;
    if shape.redundancy() == 0 {
        return Ok((k == 1).then(Vec::new));
    }
    let found_at = AtomicU64::new(u64::MAX);
    let hits: Vec<Option<(u64, Vec<u64>)>> = pool.install(|| {
        (0..shape.values())
            .into_par_iter()
            .map_init(
                || (Vec::new(), Vec::new()),
                |(rows, words), first| {
                    let mut hit = None;
                    for_each_in_unit(shape, first, Symmetry::default(), |cols| {
                        if found_at.load(Ordering::Relaxed) < first || !stopper.tick() {
                            return false;
                        }
                        shape.rows_into(cols, rows);
                        // intersecting codes have d >= k, so every row needs weight >= k
                        if rows.iter().any(|r| (r.count_ones() as usize) < k) {
                            return true;
                        }
                        gray_words(rows, words);
                        if pairwise_intersecting(words) {
                            hit = Some((first, cols.to_vec()));
                            found_at.fetch_min(first, Ordering::Relaxed);
                            return false;
                        }
                        true
                    });
                    hit
                },
            )
            .collect()
    });
    let first_hit = hits.into_iter().flatten().min_by_key(|(first, _)| *first);
    match first_hit {
        Some((_, cols)) => Ok(Some(cols)),
        None if stopper.stopped() => Err(()),
        None => Ok(None),
    }
}

/// Largest `k` admitting an intersecting `[n, k]` code.
///
/// An intersecting code has minimum distance `d >= k` (shortening a
/// minimum-weight word's support must leave nothing), and `d <= n - k + 1`,
/// so the search starts at `k = (n + 1) / 2` and walks down.
pub fn compute_g(n: usize, budget: &SearchBudget) -> Result<Estimate, Error> {
    budget.validate()?;
    if n == 0 || n > 64 {
        return Err(Error::BadParameter(format!("need 1 <= n <= 64, got {n}")));
    }
    let stopper = Stopper::new(budget);
    let pool = budget.pool();
    let mut exact = true;
    for k in (1..=n.div_ceil(2)).rev() {
        let shape = Shape::new(n, k)?;
        match find_intersecting(&shape, &stopper, &pool) {
            Ok(Some(cols)) => {
                return Ok(Estimate {
                    value: k,
                    exact,
                    witness: Some(shape.code(&cols)),
                });
            }
            Ok(None) => {}
            Err(()) => {
                exact = false;
                break;
            }
        }
    }
    // the repetition code is always intersecting
    Ok(Estimate {
        value: 1,
        exact,
        witness: Some(LinearCode::repetition_code(n)?),
    })
}

/// Largest minimum distance over `[n, k]` codes.
pub fn compute_d(n: usize, k: usize, budget: &SearchBudget) -> Result<Estimate, Error> {
    budget.validate()?;
    let shape = Shape::new(n, k)?;
    let singleton = n - k + 1;
    if shape.redundancy() == 0 {
        return Ok(Estimate {
            value: 1,
            exact: true,
            witness: Some(LinearCode::universe_code(n)?),
        });
    }
    let stopper = Stopper::new(budget);
    let best = AtomicUsize::new(0);
    let results: Vec<Option<(usize, Vec<u64>)>> = budget.pool().install(|| {
        (0..shape.values())
            .into_par_iter()
            .map_init(
                || (Vec::new(), Vec::new()),
                |(rows, words), first| {
                    let mut local: Option<(usize, Vec<u64>)> = None;
                    for_each_in_unit(&shape, first, Symmetry::default(), |cols| {
                        if best.load(Ordering::Relaxed) >= singleton || !stopper.tick() {
                            return false;
                        }
                        let floor = best.load(Ordering::Relaxed);
                        shape.rows_into(cols, rows);
                        if rows.iter().any(|r| r.count_ones() as usize <= floor) {
                            return true;
                        }
                        gray_words(rows, words);
                        let d = words[1..].iter().map(|w| w.count_ones() as usize).min().unwrap_or(0);
                        if d > local.as_ref().map_or(0, |l| l.0) {
                            local = Some((d, cols.to_vec()));
                            best.fetch_max(d, Ordering::Relaxed);
                        }
                        true
                    });
                    local
                },
            )
            .collect()
    });
    let mut winner: Option<(usize, Vec<u64>)> = None;
    for (d, cols) in results.into_iter().flatten() {
        if winner.as_ref().is_none_or(|w| d > w.0) {
            winner = Some((d, cols));
        }
    }
    let (value, cols) = winner.unwrap_or_else(|| (1, vec![0; shape.redundancy()]));
    let exact = !stopper.stopped() || value == singleton;
    Ok(Estimate {
        value,
        exact,
        witness: Some(shape.code(&cols)),
    })
}
