//! Binary linear codes held as full-rank generator matrices.

mod minimal;

pub use minimal::{
    count_minimal_words, decompose_into_minimal, is_intersecting, is_minimal, minimal_codewords,
    minimal_codewords_oracle, MinimalCounter, MinimalSet, ORACLE_MAX_K,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVec, MAX_LEN};

/// An `[n, k]` binary linear code.
///
/// The generator always has full row rank and `1 <= k <= n <= 64`. Zero
/// columns are allowed.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearCode {
    generator: BitMatrix,
}

/// A codeword together with its cached weight.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Codeword {
    vector: BitVec,
    weight: u32,
}

impl Codeword {
    pub fn new(vector: BitVec) -> Self {
        Self {
            weight: vector.weight(),
            vector,
        }
    }

    #[inline]
    pub fn vector(&self) -> BitVec {
        self.vector
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.vector.bits()
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn support(&self) -> impl Iterator<Item = usize> {
        self.vector.support()
    }

    pub fn is_zero(&self) -> bool {
        self.weight == 0
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.vector.fmt(f)
    }
}

impl LinearCode {
    pub fn new(generator: BitMatrix) -> Result<Self> {
        let k = generator.rows();
        let n = generator.cols();
        if k == 0 || k > n {
            return Err(Error::BadParameter(format!("need 1 <= k <= n, got [{n},{k}]")));
        }
        let rank = gf2::rank(&generator);
        if rank < k {
            return Err(Error::RankDeficient { rank, rows: k });
        }
        Ok(Self { generator })
    }

    pub fn from_rows(n: usize, rows: Vec<u64>) -> Result<Self> {
        Self::new(BitMatrix::from_rows(n, rows)?)
    }

    /// Convenience for literals: `LinearCode::parse_rows(&["110", "011"])`.
    pub fn parse_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.as_ref().trim().len());
        Self::new(BitMatrix::parse_rows(n, rows)?)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub(crate) fn rows(&self) -> &[u64] {
        self.generator.row_words()
    }

    /// Encodes a message; bit `i` of `message` selects generator row `i`.
    pub fn encode(&self, message: u64) -> BitVec {
        let bits = gf2::ones(message).fold(0u64, |acc, i| acc ^ self.rows()[i]);
        BitVec::from_bits(self.n(), bits).expect("rows fit the length")
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        if v.len() != self.n() {
            return false;
        }
        let mut rows = self.rows().to_vec();
        rows.push(v.bits());
        gf2::rank_of_words(rows) == self.k()
    }

    /// All `2^k` codewords, starting from zero, in Gray-code order of the
    /// message: each step XORs exactly one generator row.
    pub fn codewords(&self) -> Codewords<'_> {
        Codewords {
            rows: self.rows(),
            n: self.n(),
            step: 0,
            current: 0,
        }
    }

    pub fn min_distance(&self) -> u32 {
        self.codewords()
            .skip(1)
            .map(|c| c.weight())
            .min()
            .expect("k >= 1 gives a nonzero codeword")
    }

    /// Weight distribution: entry `w` counts codewords of weight `w`.
    pub fn weight_distribution(&self) -> Vec<u64> {
        let mut dist = vec![0u64; self.n() + 1];
        for c in self.codewords() {
            dist[c.weight() as usize] += 1;
        }
        dist
    }

    /// Block-diagonal direct sum; the coordinates of `d` follow those of `self`.
    pub fn direct_sum(&self, d: &LinearCode) -> Result<LinearCode> {
        let n = self.n() + d.n();
        if n > MAX_LEN {
            return Err(Error::LengthOverflow { len: n });
        }
        let shift = self.n();
        let rows = self
            .rows()
            .iter()
            .copied()
            .chain(d.rows().iter().map(|&r| r << shift))
            .collect();
        LinearCode::from_rows(n, rows)
    }

    /// Appends an all-zero coordinate.
    pub fn extend_zero_column(&self) -> Result<LinearCode> {
        let n = self.n() + 1;
        if n > MAX_LEN {
            return Err(Error::LengthOverflow { len: n });
        }
        LinearCode::from_rows(n, self.rows().to_vec())
    }

    /// Coordinate `i` of the result is coordinate `perm[i]` of `self`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<LinearCode> {
        let n = self.n();
        let mut seen = 0u64;
        for &p in perm {
            if p >= n || seen >> p & 1 == 1 {
                return Err(Error::BadPermutation { n });
            }
            seen |= 1 << p;
        }
        if perm.len() != n {
            return Err(Error::BadPermutation { n });
        }
        LinearCode::new(self.generator.gather_columns(perm))
    }

    /// Parity-check matrix of the code.
    pub fn parity_check(&self) -> BitMatrix {
        gf2::parity_check_from_generator(&self.generator).expect("generator has full rank")
    }

    /// The `[x, x-1]` code of all even-weight words, `x >= 2`.
    pub fn parity_code(x: usize) -> Result<LinearCode> {
        if !(2..=MAX_LEN).contains(&x) {
            return Err(Error::BadParameter(format!("parity code needs 2 <= x <= 64, got {x}")));
        }
        let last = 1u64 << (x - 1);
        LinearCode::from_rows(x, (0..x - 1).map(|i| 1u64 << i | last).collect())
    }

    /// The `[y, y]` code of all words.
    pub fn universe_code(y: usize) -> Result<LinearCode> {
        if !(1..=MAX_LEN).contains(&y) {
            return Err(Error::BadParameter(format!(
                "universe code needs 1 <= y <= 64, got {y}"
            )));
        }
        LinearCode::new(BitMatrix::identity(y))
    }

    /// The `[n, 1]` code `{0, 1…1}`.
    pub fn repetition_code(n: usize) -> Result<LinearCode> {
        if !(1..=MAX_LEN).contains(&n) {
            return Err(Error::BadParameter(format!(
                "repetition code needs 1 <= n <= 64, got {n}"
            )));
        }
        LinearCode::from_rows(n, vec![gf2::low_mask(n)])
    }

    /// The self-dual `[8, 4, 4]` extended Hamming code.
    pub fn extended_hamming() -> LinearCode {
        LinearCode::parse_rows(&["11110000", "00111100", "00001111", "01010101"]).expect("valid generator")
    }

    /// Parses the text code format: a `n k` header followed by `k` rows of
    /// `0`/`1` characters. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<LinearCode> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines.next().ok_or_else(|| Error::parse(1, "missing \"n k\" header"))?;
        let (n, k) = parse_pair(line_no, header)?;
        if n == 0 || n > MAX_LEN {
            return Err(Error::parse(line_no, format!("length {n} outside 1..=64")));
        }
        if k == 0 || k > n {
            return Err(Error::parse(line_no, format!("dimension {k} outside 1..={n}")));
        }
        let mut rows = Vec::with_capacity(k);
        for (line_no, line) in lines {
            if rows.len() == k {
                return Err(Error::parse(line_no, "more generator rows than k"));
            }
            rows.push(parse_row(line_no, line, n)?);
        }
        if rows.len() < k {
            return Err(Error::parse(
                0,
                format!("expected {k} generator rows, found {}", rows.len()),
            ));
        }
        LinearCode::from_rows(n, rows).map_err(|e| Error::parse(0, e.to_string()))
    }

    /// Renders the code in the format read by [`LinearCode::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.k());
        for row in self.generator.iter_rows() {
            out.push_str(&row.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{},{}] {:?}", self.n(), self.k(), self.generator)
    }
}

/// Gray-code codeword iterator, see [`LinearCode::codewords`].
pub struct Codewords<'a> {
    rows: &'a [u64],
    n: usize,
    step: u128,
    current: u64,
}

impl Iterator for Codewords<'_> {
    type Item = Codeword;

    fn next(&mut self) -> Option<Codeword> {
        if self.step >> self.rows.len() != 0 {
            return None;
        }
        if self.step > 0 {
            self.current ^= self.rows[self.step.trailing_zeros() as usize];
        }
        self.step += 1;
        Some(Codeword::new(
            BitVec::from_bits(self.n, self.current).expect("row bits fit"),
        ))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let total = 1u128 << self.rows.len();
        let left = usize::try_from(total - self.step).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

/// Fills `out` with all `2^k` codewords as raw words in Gray order.
pub(crate) fn gray_words(rows: &[u64], out: &mut Vec<u64>) {
    let total = 1usize << rows.len();
    out.clear();
    out.reserve(total);
    let mut cur = 0u64;
    out.push(0);
    for step in 1..total {
        cur ^= rows[step.trailing_zeros() as usize];
        out.push(cur);
    }
}

pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub(crate) fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::parse(line_no, format!("expected two integers, got {line:?}")));
    }
    let a = fields[0]
        .parse()
        .map_err(|_| Error::parse(line_no, format!("not an integer: {:?}", fields[0])))?;
    let b = fields[1]
        .parse()
        .map_err(|_| Error::parse(line_no, format!("not an integer: {:?}", fields[1])))?;
    Ok((a, b))
}

pub(crate) fn parse_row(line_no: usize, line: &str, n: usize) -> Result<u64> {
    if line.len() != n {
        return Err(Error::parse(
            line_no,
            format!("row has {} symbols, expected {n}", line.len()),
        ));
    }
    line.parse::<BitVec>()
        .map(|v| v.bits())
        .map_err(|e| Error::parse(line_no, e.to_string()))
}
