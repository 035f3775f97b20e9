//! Upper and lower bounds on `M(n, k)`, the largest number of minimal
//! codewords of a binary `[n, k]` code, and assembly of the bounds table.
//!
//! All arithmetic is exact: `u128` for values bounded by `2^64`, big
//! rationals where fractional terms appear.

pub mod reference;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use reference::{published_cell, PublishedLabel, PUBLISHED_G};

/// Bound values. `M(n, k) <= 2^k - 1 < 2^64`.
pub type Bound = u128;

/// Upper limit on `n` for every bound here (one-word codewords).
pub const MAX_N: usize = 64;

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n || n > MAX_N {
        return Err(Error::BadParameter(format!(
            "need 1 <= k <= n <= {MAX_N}, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// Binomial coefficient; exact for `n <= 64`... and beyond as long as the
/// result fits.
pub fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn pow2(e: usize) -> u128 {
    1u128 << e
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GSource {
    Embedded,
    Computed,
}

impl fmt::Display for GSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GSource::Embedded => "embedded",
            GSource::Computed => "computed",
        })
    }
}

/// `g(n)`: the largest `k` for which an intersecting `[n, k]` code exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GTable {
    values: BTreeMap<usize, (usize, GSource)>,
}

impl GTable {
    /// Published values for `3 <= n <= 15`.
    pub fn embedded() -> Self {
        let values = PUBLISHED_G.iter().map(|&(n, g)| (n, (g, GSource::Embedded))).collect();
        Self { values }
    }

    pub fn empty() -> Self {
        Self {
            values: BTreeMap::new(),
        }
    }

    /// Records a computed value, replacing any embedded one.
    pub fn set_computed(&mut self, n: usize, g: usize) {
        self.values.insert(n, (g, GSource::Computed));
    }

    pub fn get(&self, n: usize) -> Option<usize> {
        self.values.get(&n).map(|&(g, _)| g)
    }

    pub fn source(&self, n: usize) -> Option<GSource> {
        self.values.get(&n).map(|&(_, s)| s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, GSource)> + '_ {
        self.values.iter().map(|(&n, &(g, s))| (n, g, s))
    }
}

impl Default for GTable {
    fn default() -> Self {
        Self::embedded()
    }
}

/// `2^k - 1`.
pub fn trivial_upper(n: usize, k: usize) -> Result<Bound> {
    check_nk(n, k)?;
    Ok(pow2(k) - 1)
}

/// `2^k - 1` when an intersecting `[n, k]` code exists (`k <= g(n)`),
/// otherwise `2^k - 2`.
pub fn refined_trivial_upper(n: usize, k: usize, g: &GTable) -> Result<Bound> {
    check_nk(n, k)?;
    let gn = g.get(n).ok_or(Error::UnknownG { n })?;
    Ok(if k <= gn { pow2(k) - 1 } else { pow2(k) - 2 })
}

/// `C(n, k-1)`.
pub fn matroid_upper(n: usize, k: usize) -> Result<Bound> {
    check_nk(n, k)?;
    Ok(binomial(n as u64, k as u64 - 1))
}

/// `floor(2^k / (4n((k-1)/n - 1/2)^2))`, defined when `(k-1)/n > 1/2`.
///
/// The denominator simplifies to `(2(k-1) - n)^2 / n`, so this is
/// `floor(2^k n / (2(k-1) - n)^2)` in integers.
pub fn agrell_upper(n: usize, k: usize) -> Option<Bound> {
    if check_nk(n, k).is_err() || 2 * (k - 1) <= n {
        return None;
    }
    let gap = (2 * (k - 1) - n) as u128;
    Some(pow2(k) * n as u128 / (gap * gap))
}

/// Random-coding existence bound: the smallest integer `M` with
/// `M 2^(n-k) >= sum_{j=0}^{n-k+1} C(n,j) prod_{i=0}^{j-2} (1 - 2^-(n-k-i))`.
///
/// Rejects `k = n`, where the inequality would claim `M(n,n) >= n + 1`.
/// The sum overshoots `2^k - 1` when `2^k` is small next to `n` (already
/// at `k = 1` it gives 2), so the result is capped there.
pub fn random_coding_lower(n: usize, k: usize) -> Result<Bound> {
    check_nk(n, k)?;
    if k == n {
        return Err(Error::BadParameter("random-coding bound needs k < n".into()));
    }
    let r = n - k;
    let one = BigRational::one();
    let mut sum = BigRational::zero();
    let mut product = BigRational::one();
    for j in 0..=r + 1 {
        if j >= 2 {
            let i = j - 2;
            let denom = BigInt::one() << (r - i);
            product *= &one - BigRational::new(BigInt::one(), denom);
        }
        let c = BigInt::from(binomial(n as u64, j as u64));
        sum += BigRational::from_integer(c) * &product;
    }
    let scaled = sum / BigRational::from_integer(BigInt::one() << r);
    let value = scaled.ceil().to_integer();
    let value = value.to_u128().expect("bounded by 2^n");
    Ok(value.min(pow2(k) - 1))
}

/// Smallest `M` with `sum_{i=1}^{floor(n/d)} C(M, i) >= 2^k - 1`.
///
/// Every nonzero codeword of an `[n, k, d]` code is a sum of at most
/// `floor(n/d)` disjoint minimal codewords, so `M(n, k)` is at least this
/// whenever an `[n, k, d]` code exists.
pub fn abch_lower(n: usize, k: usize, d: usize) -> Result<Bound> {
    check_nk(n, k)?;
    if d == 0 || d > n {
        return Err(Error::BadParameter(format!("need 1 <= d <= n, got d={d}")));
    }
    let terms = (n / d) as u64;
    let target = BigUint::from(pow2(k) - 1);
    let reaches = |m: u128| -> bool {
        let mut sum = BigUint::zero();
        let mut c = BigUint::one();
        for i in 1..=terms {
            // C(m, i) = C(m, i-1) * (m - i + 1) / i
            if (i as u128) > m {
                break;
            }
            c = c * BigUint::from(m - i as u128 + 1) / BigUint::from(i);
            sum += &c;
        }
        sum >= target
    };
    // the sum is nondecreasing in m and m = 2^k - 1 always suffices
    let (mut lo, mut hi) = (0u128, pow2(k) - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if reaches(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Bounds on the number of simple cycles of a connected graph with `p`
/// vertices and `q` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCycleBounds {
    /// `floor(q 2^(q-p+1) / (q-2p)^2)`, defined for `q > 2p`.
    pub new: Option<BigUint>,
    /// `floor(15/16 2^(q-p+1))`.
    pub old: BigUint,
}

impl GraphCycleBounds {
    pub fn best(&self) -> &BigUint {
        match &self.new {
            Some(b) if b < &self.old => b,
            _ => &self.old,
        }
    }
}

pub fn graph_cycle_upper(p: usize, q: usize) -> Result<GraphCycleBounds> {
    if q + 1 < p {
        return Err(Error::BadParameter(format!(
            "a connected graph on {p} vertices needs at least {} edges",
            p.saturating_sub(1)
        )));
    }
    let dim = q + 1 - p;
    let power = BigUint::one() << dim;
    let old = (&power * 15u32) >> 4;
    let new = (q > 2 * p).then(|| {
        let gap = BigUint::from(q - 2 * p);
        &power * BigUint::from(q) / (&gap * &gap)
    });
    Ok(GraphCycleBounds { new, old })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperSource {
    Trivial,
    RefinedTrivial,
    Matroid,
    Agrell,
    Recursion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerSource {
    Search,
    RandomCoding,
    Abch,
    Superadditive,
    Monotone,
    Construction,
}

impl fmt::Display for UpperSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpperSource::Trivial => "trivial",
            UpperSource::RefinedTrivial => "refined_trivial",
            UpperSource::Matroid => "matroid",
            UpperSource::Agrell => "agrell",
            UpperSource::Recursion => "recursion",
        })
    }
}

impl fmt::Display for LowerSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LowerSource::Search => "search",
            LowerSource::RandomCoding => "random_coding",
            LowerSource::Abch => "abch",
            LowerSource::Superadditive => "superadditive",
            LowerSource::Monotone => "monotone",
            LowerSource::Construction => "construction",
        })
    }
}

/// Candidates are taken in order; the first one achieving the minimum wins.
fn min_labeled<S: Copy>(candidates: &[(Bound, S)]) -> (Bound, S) {
    let mut best = candidates[0];
    for &c in &candidates[1..] {
        if c.0 < best.0 {
            best = c;
        }
    }
    best
}

fn max_labeled<S: Copy>(candidates: &[(Bound, S)]) -> (Bound, S) {
    let mut best = candidates[0];
    for &c in &candidates[1..] {
        if c.0 > best.0 {
            best = c;
        }
    }
    best
}

/// Best closed-form upper bound at one cell: the trivial bound (refined by
/// `g(n)` when known), the matroid bound and the Agrell bound.
pub fn closed_form_upper(n: usize, k: usize, g: &GTable) -> Result<(Bound, UpperSource)> {
    let trivial = trivial_upper(n, k)?;
    let mut candidates = vec![match refined_trivial_upper(n, k, g) {
        Ok(v) if v < trivial => (v, UpperSource::RefinedTrivial),
        _ => (trivial, UpperSource::Trivial),
    }];
    candidates.push((matroid_upper(n, k)?, UpperSource::Matroid));
    if let Some(a) = agrell_upper(n, k) {
        candidates.push((a, UpperSource::Agrell));
    }
    Ok(min_labeled(&candidates))
}

/// Upper bounds `U(n, k)` for `1 <= k <= min(n, max_k)`, `n <= max_n`.
#[derive(Clone, Debug)]
pub struct UpperTable {
    cells: BTreeMap<(usize, usize), (Bound, UpperSource)>,
}

impl UpperTable {
    pub fn get(&self, n: usize, k: usize) -> Option<Bound> {
        self.cells.get(&(n, k)).map(|&(v, _)| v)
    }

    pub fn entry(&self, n: usize, k: usize) -> Option<(Bound, UpperSource)> {
        self.cells.get(&(n, k)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), (Bound, UpperSource))> + '_ {
        self.cells.iter().map(|(&key, &v)| (key, v))
    }
}

/// Dynamic program over `M(n,k) <= M(n-1,k-1) + C(n-1,k-1)`, taking the
/// minimum with every closed-form bound at each cell.
pub fn recursion_upper_table(max_n: usize, max_k: usize, g: &GTable) -> Result<UpperTable> {
    if max_n == 0 || max_k == 0 || max_n > MAX_N {
        return Err(Error::BadParameter(format!(
            "need 1 <= N <= {MAX_N} and K >= 1, got N={max_n}, K={max_k}"
        )));
    }
    let mut cells = BTreeMap::new();
    for n in 1..=max_n {
        for k in 1..=n.min(max_k) {
            let mut candidates = vec![closed_form_upper(n, k, g)?];
            if k >= 2 {
                let prev: (Bound, UpperSource) = cells[&(n - 1, k - 1)];
                let step = prev.0 + binomial(n as u64 - 1, k as u64 - 1);
                candidates.push((step, UpperSource::Recursion));
            }
            let best = min_labeled(&candidates);
            debug_assert!(k != 1 || best.0 == 1);
            debug_assert!(k != n || best.0 == n as Bound);
            cells.insert((n, k), best);
        }
    }
    Ok(UpperTable { cells })
}

/// `M(n, k)` values realised by explicit constructions: the repetition,
/// universe and even-weight codes, and the extended Hamming code at `(8, 4)`.
pub fn construction_lower(n: usize, k: usize) -> Option<Bound> {
    if check_nk(n, k).is_err() {
        return None;
    }
    if k == 1 {
        Some(1)
    } else if k == n {
        Some(n as Bound)
    } else if k + 1 == n {
        Some(binomial(n as u64, 2))
    } else if (n, k) == (8, 4) {
        Some(14)
    } else {
        None
    }
}

/// Lower bound entry used by [`closure_lower`].
pub type LowerEntry = (Bound, LowerSource);

/// Propagates lower bounds through `M(n+1,k) >= M(n,k)` and
/// `M(n+m,k+j) >= M(n,k) + M(m,j)` until nothing changes. Only keys already
/// present are updated. Returns the number of sweeps that changed something.
pub fn closure_lower(cells: &mut BTreeMap<(usize, usize), LowerEntry>) -> usize {
    let keys: Vec<(usize, usize)> = cells.keys().copied().collect();
    let mut sweeps = 0;
    loop {
        let mut changed = false;
        for &(n, k) in &keys {
            let mut best = cells[&(n, k)];
            if let Some(&(v, _)) = cells.get(&(n - 1, k)) {
                if v > best.0 {
                    best = (v, LowerSource::Monotone);
                }
            }
            for &(a, b) in &keys {
                if a >= n || b >= k {
                    continue;
                }
                let (Some(&(x, _)), Some(&(y, _))) = (cells.get(&(a, b)), cells.get(&(n - a, k - b))) else {
                    continue;
                };
                if x + y > best.0 {
                    best = (x + y, LowerSource::Superadditive);
                }
            }
            if best.0 > cells[&(n, k)].0 {
                cells.insert((n, k), best);
                changed = true;
            }
        }
        if !changed {
            return sweeps;
        }
        sweeps += 1;
    }
}

/// Best known bounds for one `(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsCell {
    pub n: usize,
    pub k: usize,
    pub lower: Bound,
    pub lower_src: LowerSource,
    pub upper: Bound,
    pub upper_src: UpperSource,
    pub exact: bool,
}

/// Combines every available lower and upper bound for one cell.
///
/// `search_lower` is an `M` value realised by a concrete code and `d` a
/// minimum distance realised by some `[n, k]` code.
pub fn best_bounds(
    n: usize,
    k: usize,
    g: &GTable,
    search_lower: Option<Bound>,
    d: Option<usize>,
) -> Result<BoundsCell> {
    check_nk(n, k)?;
    let uppers = recursion_upper_table(n, k, g)?;
    let (upper, upper_src) = uppers.entry(n, k).expect("cell computed");
    cell_from_parts(n, k, upper, upper_src, search_lower, d)
}

fn cell_from_parts(
    n: usize,
    k: usize,
    upper: Bound,
    upper_src: UpperSource,
    search_lower: Option<Bound>,
    d: Option<usize>,
) -> Result<BoundsCell> {
    let mut lowers = Vec::new();
    if let Some(s) = search_lower {
        lowers.push((s, LowerSource::Search));
    }
    if let Some(c) = construction_lower(n, k) {
        lowers.push((c, LowerSource::Construction));
    }
    if k < n {
        lowers.push((random_coding_lower(n, k)?, LowerSource::RandomCoding));
    }
    if let Some(d) = d {
        lowers.push((abch_lower(n, k, d)?, LowerSource::Abch));
    }
    let (lower, lower_src) = max_labeled(&lowers);
    if lower > upper {
        return Err(Error::BadParameter(format!(
            "lower bound {lower} ({lower_src}) exceeds upper bound {upper} ({upper_src}) at ({n},{k})"
        )));
    }
    Ok(BoundsCell {
        n,
        k,
        lower,
        lower_src,
        upper,
        upper_src,
        exact: lower == upper,
    })
}

/// A known disagreement between a published value and the bound it is
/// labelled with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Footnote {
    pub n: usize,
    pub k: usize,
    pub published: u64,
    pub formula: Bound,
}

impl fmt::Display for Footnote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{}): published matroid entry {} but C({},{}) = {}",
            self.n,
            self.k,
            self.published,
            self.n,
            self.k - 1,
            self.formula
        )
    }
}

/// Cells in range whose published matroid-labelled upper bound is
/// `C(n, k-1) - 1` rather than `C(n, k-1)`.
pub fn matroid_discrepancies(max_n: usize, max_k: usize) -> Vec<Footnote> {
    reference::PUBLISHED_TABLE
        .iter()
        .filter(|c| c.n <= max_n && c.k <= max_k)
        .filter_map(|c| {
            let (printed, label) = c.upper?;
            let formula = matroid_upper(c.n, c.k).ok()?;
            (label == PublishedLabel::Matroid && printed as Bound + 1 == formula).then_some(Footnote {
                n: c.n,
                k: c.k,
                published: printed,
                formula,
            })
        })
        .collect()
}

/// The assembled table for `1 <= k <= min(n, K)`, `1 <= n <= N`.
#[derive(Clone, Debug)]
pub struct BoundsTable {
    pub cells: Vec<BoundsCell>,
    pub footnotes: Vec<Footnote>,
}

impl BoundsTable {
    pub fn cell(&self, n: usize, k: usize) -> Option<&BoundsCell> {
        self.cells.iter().find(|c| c.n == n && c.k == k)
    }

    /// Tab-separated rendering sorted by `(n, k)`, `#` header and notes.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# n\tk\tlower\tlower_src\tupper\tupper_src\texact\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                c.n, c.k, c.lower, c.lower_src, c.upper, c.upper_src, c.exact
            );
        }
        for note in &self.footnotes {
            let _ = writeln!(out, "# note {note}");
        }
        out
    }

    /// Cells whose lower bound differs from the published lower value.
    pub fn published_lower_mismatches(&self) -> Vec<(usize, usize, Bound, u64)> {
        self.cells
            .iter()
            .filter_map(|c| {
                let p = published_cell(c.n, c.k)?;
                (c.lower != p.lower as Bound).then_some((c.n, c.k, c.lower, p.lower))
            })
            .collect()
    }
}

/// Builds the bounds table: per-cell best bounds, then the monotone and
/// superadditive closure of the lower bounds.
pub fn assemble_table(
    max_n: usize,
    max_k: usize,
    g: &GTable,
    search: &BTreeMap<(usize, usize), Bound>,
    distances: &BTreeMap<(usize, usize), usize>,
) -> Result<BoundsTable> {
    let uppers = recursion_upper_table(max_n, max_k, g)?;
    let mut cells = Vec::new();
    for ((n, k), (upper, upper_src)) in uppers.iter() {
        cells.push(cell_from_parts(
            n,
            k,
            upper,
            upper_src,
            search.get(&(n, k)).copied(),
            distances.get(&(n, k)).copied(),
        )?);
    }
    let mut lowers: BTreeMap<(usize, usize), LowerEntry> =
        cells.iter().map(|c| ((c.n, c.k), (c.lower, c.lower_src))).collect();
    closure_lower(&mut lowers);
    for c in &mut cells {
        let (lower, src) = lowers[&(c.n, c.k)];
        if lower > c.upper {
            return Err(Error::BadParameter(format!(
                "closure pushed lower bound {lower} above upper bound {} at ({},{})",
                c.upper, c.n, c.k
            )));
        }
        c.lower = lower;
        c.lower_src = src;
        c.exact = c.lower == c.upper;
    }
    Ok(BoundsTable {
        cells,
        footnotes: matroid_discrepancies(max_n, max_k),
    })
}
