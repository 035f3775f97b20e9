//! Minimal codewords.
//!
//! A nonzero codeword is minimal when no other nonzero codeword has a support
//! strictly inside its own. Two whole-set algorithms live here: a
//! weight-ascending sieve (the workhorse) and a quadratic pairwise oracle that
//! follows the definition literally. A single-word rank test answers point
//! queries without enumerating the code.

use crate::error::{Error, Result};
use crate::gf2::{self, BitVec};

use super::{gray_words, Codeword, LinearCode};

/// Largest dimension accepted by [`minimal_codewords_oracle`].
pub const ORACLE_MAX_K: usize = 16;

/// The minimal codewords of a code, sorted by weight then numeric value.
#[derive(Clone, Debug)]
pub struct MinimalSet {
    code: LinearCode,
    members: Vec<Codeword>,
}

impl MinimalSet {
    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn members(&self) -> &[Codeword] {
        &self.members
    }

    /// `M(C)`.
    pub fn count(&self) -> usize {
        self.members.len()
    }

    /// Splits a nonzero codeword into pairwise support-disjoint minimal
    /// codewords that sum to it.
    ///
    /// Greedy: repeatedly peel off the lightest member (ties by numeric value)
    /// whose support lies inside what remains.
    pub fn decompose(&self, w: &BitVec) -> Result<Vec<Codeword>> {
        if w.is_zero() {
            return Err(Error::ZeroWord);
        }
        if !self.code.contains(w) {
            return Err(Error::NotACodeword);
        }
        let mut rest = w.bits();
        let mut parts = Vec::new();
        while rest != 0 {
            let part = self
                .members
                .iter()
                .find(|m| m.bits() & !rest == 0)
                .expect("every nonzero codeword lies above some minimal codeword");
            rest ^= part.bits();
            parts.push(*part);
        }
        Ok(parts)
    }
}

/// Reusable scratch space for counting minimal codewords of many codes.
///
/// The search loops call [`MinimalCounter::count`] millions of times; keeping
/// the buffers here avoids reallocating per candidate.
pub struct MinimalCounter {
    words: Vec<u64>,
    sorted: Vec<u64>,
    accepted: Vec<u64>,
    bucket_end: [usize; 66],
}

impl Default for MinimalCounter {
    fn default() -> Self {
        Self::new()
    }
}

impl MinimalCounter {
    pub fn new() -> Self {
        MinimalCounter {
            words: Vec::new(),
            sorted: Vec::new(),
            accepted: Vec::new(),
            bucket_end: [0; 66],
        }
    }

    /// Lays the nonzero codewords of `rows` out in `sorted`, grouped by weight.
    fn bucket(&mut self, rows: &[u64]) {
        gray_words(rows, &mut self.words);
        let mut hist = [0usize; 66];
        for &w in &self.words[1..] {
            hist[w.count_ones() as usize + 1] += 1;
        }
        for i in 1..66 {
            hist[i] += hist[i - 1];
        }
        // hist[w] is now the start of bucket w
        self.sorted.clear();
        self.sorted.resize(self.words.len() - 1, 0);
        let mut fill = hist;
        for &w in &self.words[1..] {
            let slot = &mut fill[w.count_ones() as usize];
            self.sorted[*slot] = w;
            *slot += 1;
        }
        self.bucket_end = fill;
    }

    /// Counts minimal codewords of the code generated by `rows`.
    ///
    /// With `abandon_at_most = Some(t)` the sieve stops early and returns
    /// `None` once it is certain the count cannot exceed `t`.
    pub fn count(&mut self, rows: &[u64], abandon_at_most: Option<usize>) -> Option<usize> {
        self.bucket(rows);
        self.sieve(abandon_at_most, false)
    }

    fn sieve(&mut self, abandon_at_most: Option<usize>, sort_buckets: bool) -> Option<usize> {
        let total = self.sorted.len();
        self.accepted.clear();
        let mut start = 0;
        for weight in 1..65 {
            let end = self.bucket_end[weight];
            if start == end {
                continue;
            }
            if let Some(floor) = abandon_at_most {
                if self.accepted.len() + (total - start) <= floor {
                    return None;
                }
            }
            if sort_buckets {
                self.sorted[start..end].sort_unstable();
            }
            // Same-weight words cannot properly contain each other, so only
            // lighter accepted words need checking.
            let lighter = self.accepted.len();
            for i in start..end {
                let w = self.sorted[i];
                if !self.accepted[..lighter].iter().any(|&a| a & !w == 0) {
                    self.accepted.push(w);
                }
            }
            start = end;
        }
        match abandon_at_most {
            Some(floor) if self.accepted.len() <= floor => None,
            _ => Some(self.accepted.len()),
        }
    }

    /// Minimal words of `rows`, sorted by weight then value.
    pub fn minimal_words(&mut self, rows: &[u64]) -> Vec<u64> {
        self.bucket(rows);
        self.sieve(None, true);
        self.accepted.clone()
    }
}

/// `M(C)` for the code generated by `rows` (sieve).
pub fn count_minimal_words(rows: &[u64]) -> usize {
    MinimalCounter::new().count(rows, None).expect("no abandon threshold")
}

fn to_set(code: &LinearCode, words: Vec<u64>) -> MinimalSet {
    let n = code.n();
    let members = words
        .into_iter()
        .map(|w| Codeword::new(BitVec::from_bits(n, w).expect("codeword fits")))
        .collect();
    MinimalSet {
        code: code.clone(),
        members,
    }
}

/// All minimal codewords via the weight-ascending sieve.
pub fn minimal_codewords(code: &LinearCode) -> MinimalSet {
    let words = MinimalCounter::new().minimal_words(code.rows());
    to_set(code, words)
}

/// All minimal codewords by checking every pair of nonzero codewords.
///
/// Quadratic in the code size, so limited to `k <= 16`. Shares nothing with
/// the sieve beyond codeword enumeration.
pub fn minimal_codewords_oracle(code: &LinearCode) -> Result<MinimalSet> {
    if code.k() > ORACLE_MAX_K {
        return Err(Error::TooLarge {
            k: code.k(),
            limit: ORACLE_MAX_K,
        });
    }
    let words: Vec<u64> = code.codewords().skip(1).map(|c| c.bits()).collect();
    let mut minimal: Vec<u64> = words
        .iter()
        .copied()
        .filter(|&w| !words.iter().any(|&v| v != w && v & !w == 0))
        .collect();
    minimal.sort_unstable_by_key(|&w| (w.count_ones(), w));
    Ok(to_set(code, minimal))
}

/// Single-word minimality test.
///
/// `w` is minimal iff the generator restricted to the coordinates outside
/// `supp(w)` has rank `k - 1`: the messages vanishing there form a subcode
/// supported inside `supp(w)`, and that subcode must be exactly `{0, w}`.
pub fn is_minimal(code: &LinearCode, w: &BitVec) -> Result<bool> {
    if w.is_zero() {
        return Err(Error::ZeroWord);
    }
    if !code.contains(w) {
        return Err(Error::NotACodeword);
    }
    let outside = !w.bits();
    let restricted = code.rows().iter().map(|&r| r & outside).collect();
    Ok(gf2::rank_of_words(restricted) == code.k() - 1)
}

/// True iff every two nonzero codewords share a coordinate.
pub fn is_intersecting(code: &LinearCode) -> bool {
    let mut words = Vec::new();
    gray_words(code.rows(), &mut words);
    let nonzero = &words[1..];
    for (i, &a) in nonzero.iter().enumerate() {
        if nonzero[i + 1..].iter().any(|&b| a & b == 0) {
            return false;
        }
    }
    true
}

/// Decomposes `w` into support-disjoint minimal codewords; see
/// [`MinimalSet::decompose`].
pub fn decompose_into_minimal(code: &LinearCode, w: &BitVec) -> Result<Vec<Codeword>> {
    minimal_codewords(code).decompose(w)
}
