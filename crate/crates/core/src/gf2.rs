//! Bit-packed linear algebra over GF(2).
//!
//! Every vector fits in a single `u64`: coordinate `j` is bit `j`. Matrices
//! are a list of such rows sharing a column count of at most 64; the row
//! count is unbounded (an incidence matrix can have more vertices than edges
//! fit in a word).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Maximum number of coordinates a vector can carry.
pub const MAX_LEN: usize = 64;

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A binary vector of length at most 64, packed into one word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitVec {
    len: u8,
    bits: u64,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_LEN, "BitVec length {len} exceeds {MAX_LEN}");
        Self {
            len: len as u8,
            bits: 0,
        }
    }

    /// Builds a vector from a raw word, rejecting set bits past `len`.
    pub fn from_bits(len: usize, bits: u64) -> Result<Self, Error> {
        if len > MAX_LEN {
            return Err(Error::LengthOverflow { len });
        }
        if bits & !low_mask(len) != 0 {
            return Err(Error::BadParameter(format!("bits set beyond length {len}: {bits:#x}")));
        }
        Ok(Self { len: len as u8, bits })
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self, Error> {
        let mut bits = 0u64;
        for i in indices {
            if i >= len {
                return Err(Error::BadParameter(format!("index {i} out of range for length {len}")));
            }
            bits |= 1 << i;
        }
        Self::from_bits(len, bits)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len() && self.bits >> i & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len(), "index {i} out of range for length {}", self.len);
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Coordinates where the vector is 1, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> {
        ones(self.bits)
    }

    /// True if the support of `self` is a subset of the support of `other`.
    #[inline]
    pub fn is_subset_of(&self, other: &BitVec) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn intersects(&self, other: &BitVec) -> bool {
        self.bits & other.bits != 0
    }

    /// Inner product over GF(2).
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        (self.bits & other.bits).count_ones() & 1 == 1
    }
}

impl std::ops::BitXor for BitVec {
    type Output = BitVec;

    fn bitxor(self, rhs: BitVec) -> BitVec {
        assert_eq!(self.len, rhs.len, "length mismatch");
        BitVec {
            len: self.len,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl std::ops::BitXorAssign for BitVec {
    fn bitxor_assign(&mut self, rhs: BitVec) {
        assert_eq!(self.len, rhs.len, "length mismatch");
        self.bits ^= rhs.bits;
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// Parses a 0/1 string; character `j` is coordinate `j`.
impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.len() > MAX_LEN {
            return Err(Error::LengthOverflow { len: s.len() });
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                other => return Err(Error::BadParameter(format!("invalid bit character {other:?}"))),
            }
        }
        Ok(Self {
            len: s.len() as u8,
            bits,
        })
    }
}

/// Iterator over the set bit positions of a word.
pub(crate) fn ones(mut bits: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        }
    })
}

/// A dense binary matrix with at most 64 columns.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(cols <= MAX_LEN, "BitMatrix with {cols} columns exceeds {MAX_LEN}");
        Self {
            cols,
            rows: vec![0; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_LEN);
        Self {
            cols: n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    /// Builds a matrix from raw row words.
    pub fn from_rows(cols: usize, rows: Vec<u64>) -> Result<Self, Error> {
        if cols > MAX_LEN {
            return Err(Error::LengthOverflow { len: cols });
        }
        let mask = low_mask(cols);
        if let Some(r) = rows.iter().find(|&&r| r & !mask != 0) {
            return Err(Error::BadParameter(format!("row {r:#x} has bits beyond column {cols}")));
        }
        Ok(Self { cols, rows })
    }

    pub fn from_bitvecs(cols: usize, rows: &[BitVec]) -> Result<Self, Error> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::BadParameter(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        Self::from_rows(cols, rows.iter().map(BitVec::bits).collect())
    }

    /// Parses rows given as 0/1 strings. All rows must have the same length.
    pub fn parse_rows<S: AsRef<str>>(cols: usize, rows: &[S]) -> Result<Self, Error> {
        let vecs = rows
            .iter()
            .map(|r| r.as_ref().parse::<BitVec>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_bitvecs(cols, &vecs)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row_words(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> BitVec {
        BitVec {
            len: self.cols as u8,
            bits: self.rows[i],
        }
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = BitVec> + '_ {
        self.rows.iter().map(|&bits| BitVec {
            len: self.cols as u8,
            bits,
        })
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r] >> c & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(c < self.cols);
        if value {
            self.rows[r] |= 1 << c;
        } else {
            self.rows[r] &= !(1 << c);
        }
    }

    /// Column `c` as a word whose bit `r` is entry `(r, c)`. Needs `rows <= 64`.
    pub fn column_word(&self, c: usize) -> u64 {
        debug_assert!(self.rows.len() <= 64);
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (r, &row)| acc | ((row >> c & 1) << r))
    }

    /// Transpose. Needs `rows <= 64`.
    pub fn transpose(&self) -> BitMatrix {
        assert!(self.rows.len() <= MAX_LEN, "transpose needs at most 64 rows");
        let rows = (0..self.cols).map(|c| self.column_word(c)).collect();
        BitMatrix {
            cols: self.rows.len(),
            rows,
        }
    }

    /// Returns the matrix whose column `j` is column `perm[j]` of `self`.
    pub fn gather_columns(&self, perm: &[usize]) -> BitMatrix {
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                perm.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &src)| acc | ((row >> src & 1) << j))
            })
            .collect();
        BitMatrix { cols: perm.len(), rows }
    }

    /// Product `self · otherᵀ`, a `self.rows × other.rows` matrix.
    pub fn mul_transpose(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch");
        assert!(other.rows() <= MAX_LEN);
        let rows = self
            .rows
            .iter()
            .map(|&a| {
                other
                    .rows
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &b)| acc | (((a & b).count_ones() & 1) as u64) << j)
            })
            .collect();
        BitMatrix {
            cols: other.rows(),
            rows,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// All vectors in the row space, by brute force. Intended for small checks.
    pub fn span(&self) -> Vec<u64> {
        assert!(self.rows.len() <= 24, "span enumeration limited to 24 rows");
        let mut out = Vec::with_capacity(1 << self.rows.len());
        out.push(0u64);
        for &r in &self.rows {
            let extra: Vec<u64> = out.iter().map(|&v| v ^ r).collect();
            out.extend(extra);
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.iter_rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows(), self.cols)?;
        for (i, row) in self.iter_rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{row}")?;
        }
        f.write_str("]")
    }
}

/// Rank of the row space over GF(2).
pub fn rank(m: &BitMatrix) -> usize {
    rank_of_words(m.rows.clone())
}

/// Rank of a set of words, reducing in place. Used by hot paths that already
/// hold raw words.
pub(crate) fn rank_of_words(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows[i + 1..].iter_mut() {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

/// Reduced row echelon form with lowest-index pivot selection.
///
/// Zero rows are kept at the bottom so the row count is unchanged.
pub fn rref(m: &BitMatrix) -> (BitMatrix, Vec<usize>) {
    let mut rows = m.rows.clone();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..m.cols {
        if next == rows.len() {
            break;
        }
        let bit = 1u64 << c;
        let Some(found) = (next..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(next, found);
        let pivot = rows[next];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && *row & bit != 0 {
                *row ^= pivot;
            }
        }
        pivots.push(c);
        next += 1;
    }
    (BitMatrix { cols: m.cols, rows }, pivots)
}

/// Basis of `{x : m·xᵀ = 0}`, one row per free column.
pub fn kernel_basis(m: &BitMatrix) -> BitMatrix {
    let (reduced, pivots) = rref(m);
    let mut is_pivot = 0u64;
    for &p in &pivots {
        is_pivot |= 1 << p;
    }
    let mut basis = Vec::with_capacity(m.cols - pivots.len());
    for free in (0..m.cols).filter(|&c| is_pivot >> c & 1 == 0) {
        let mut v = 1u64 << free;
        for (row, &p) in reduced.rows.iter().zip(&pivots) {
            if row >> free & 1 == 1 {
                v |= 1 << p;
            }
        }
        basis.push(v);
    }
    BitMatrix {
        cols: m.cols,
        rows: basis,
    }
}

/// Brings a full-rank generator to `[I | A]`.
///
/// Returns the systematic matrix and `perm`, where column `j` of the result is
/// column `perm[j]` of the row-reduced input: pivot columns first, then the
/// remaining columns in their original order.
pub fn systematic_form(g: &BitMatrix) -> Result<(BitMatrix, Vec<usize>), Error> {
    let (reduced, pivots) = rref(g);
    if pivots.len() < g.rows() {
        return Err(Error::RankDeficient {
            rank: pivots.len(),
            rows: g.rows(),
        });
    }
    let mut perm = pivots.clone();
    perm.extend((0..g.cols).filter(|c| !pivots.contains(c)));
    Ok((reduced.gather_columns(&perm), perm))
}

/// Inverse of a permutation given as a gather map.
pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (j, &src) in perm.iter().enumerate() {
        inv[src] = j;
    }
    inv
}

/// Parity-check matrix `h` with `g·hᵀ = 0` and `rank(h) = n − k`.
pub fn parity_check_from_generator(g: &BitMatrix) -> Result<BitMatrix, Error> {
    let k = g.rows();
    let n = g.cols();
    let (sys, perm) = systematic_form(g)?;
    // In permuted coordinates h = [Aᵀ | I].
    let mut h = BitMatrix::zeros(n - k, n);
    for i in 0..k {
        let row = sys.rows[i];
        for j in 0..n - k {
            if row >> (k + j) & 1 == 1 {
                h.rows[j] |= 1 << i;
            }
        }
    }
    for j in 0..n - k {
        h.rows[j] |= 1 << (k + j);
    }
    Ok(h.gather_columns(&invert_permutation(&perm)))
}
