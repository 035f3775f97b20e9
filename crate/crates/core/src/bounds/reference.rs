//! Published values used for cross-checking: the intersecting-code threshold
//! `g(n)` for `3 <= n <= 15` and the published `M(n, k)` table for
//! `3 <= n <= 15`, `k <= 13`.

/// `g(3..=15)`.
pub const PUBLISHED_G: [(usize, usize); 13] = [
    (3, 2),
    (4, 2),
    (5, 2),
    (6, 3),
    (7, 3),
    (8, 3),
    (9, 4),
    (10, 4),
    (11, 4),
    (12, 4),
    (13, 5),
    (14, 5),
    (15, 6),
];

/// Which bound produced a published upper value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PublishedLabel {
    Trivial,
    Matroid,
    Agrell,
}

/// One published cell. `upper` is `None` when the value is printed as exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PublishedCell {
    pub n: usize,
    pub k: usize,
    pub lower: u64,
    pub upper: Option<(u64, PublishedLabel)>,
}

impl PublishedCell {
    pub fn is_exact(&self) -> bool {
        self.upper.is_none()
    }
}

use PublishedLabel::{Agrell as A, Matroid as M, Trivial as T};

const fn exact(n: usize, k: usize, v: u64) -> PublishedCell {
    PublishedCell {
        n,
        k,
        lower: v,
        upper: None,
    }
}

const fn range(n: usize, k: usize, lo: u64, hi: u64, label: PublishedLabel) -> PublishedCell {
    PublishedCell {
        n,
        k,
        lower: lo,
        upper: Some((hi, label)),
    }
}

/// Rows for `n = 3..=15`, columns `k = 1..=min(n, 13)`.
#[rustfmt::skip]
pub const PUBLISHED_TABLE: &[PublishedCell] = &[
    exact(3, 1, 1), exact(3, 2, 3), exact(3, 3, 3),
    exact(4, 1, 1), exact(4, 2, 3), exact(4, 3, 6), exact(4, 4, 4),
    exact(5, 1, 1), exact(5, 2, 3), exact(5, 3, 6), exact(5, 4, 10), exact(5, 5, 5),
    exact(6, 1, 1), exact(6, 2, 3), exact(6, 3, 7), range(6, 4, 11, 14, T), exact(6, 5, 15),
    exact(6, 6, 6),
    exact(7, 1, 1), exact(7, 2, 3), exact(7, 3, 7), exact(7, 4, 14), range(7, 5, 17, 30, T),
    exact(7, 6, 21), exact(7, 7, 7),
    exact(8, 1, 1), exact(8, 2, 3), exact(8, 3, 7), exact(8, 4, 14), range(8, 5, 22, 30, T),
    range(8, 6, 25, 55, M), exact(8, 7, 28), exact(8, 8, 8),
    exact(9, 1, 1), exact(9, 2, 3), exact(9, 3, 7), exact(9, 4, 15), range(9, 5, 26, 30, T),
    range(9, 6, 33, 62, T), range(9, 7, 36, 83, M), exact(9, 8, 36), exact(9, 9, 9),
    exact(10, 1, 1), exact(10, 2, 3), exact(10, 3, 7), exact(10, 4, 15), exact(10, 5, 30),
    range(10, 6, 42, 62, T), range(10, 7, 48, 126, T), range(10, 8, 48, 119, M),
    exact(10, 9, 45), exact(10, 10, 10),
    exact(11, 1, 1), exact(11, 2, 3), exact(11, 3, 7), exact(11, 4, 15), exact(11, 5, 30),
    range(11, 6, 52, 62, T), range(11, 7, 66, 126, T), range(11, 8, 69, 254, T),
    range(11, 9, 63, 164, M), exact(11, 10, 55), exact(11, 11, 11),
    exact(12, 1, 1), exact(12, 2, 3), exact(12, 3, 7), exact(12, 4, 15), exact(12, 5, 30),
    range(12, 6, 54, 62, T), range(12, 7, 90, 126, T), range(12, 8, 103, 254, T),
    range(12, 9, 95, 384, A), range(12, 10, 82, 219, M), exact(12, 11, 66), exact(12, 12, 12),
    exact(13, 1, 1), exact(13, 2, 3), exact(13, 3, 7), exact(13, 4, 15), exact(13, 5, 31),
    range(13, 6, 58, 62, T), range(13, 7, 94, 126, T), range(13, 8, 151, 254, T),
    range(13, 9, 149, 510, T), range(13, 10, 130, 532, A), range(13, 11, 102, 285, M),
    exact(13, 12, 78), exact(13, 13, 13),
    exact(14, 1, 1), exact(14, 2, 3), exact(14, 3, 7), exact(14, 4, 15), exact(14, 5, 31),
    exact(14, 6, 62), range(14, 7, 106, 126, T), range(14, 8, 159, 254, T),
    range(14, 9, 245, 510, T), range(14, 10, 217, 896, A), range(14, 11, 175, 796, A),
    range(14, 12, 126, 363, M), exact(14, 13, 91),
    exact(15, 1, 1), exact(15, 2, 3), exact(15, 3, 7), exact(15, 4, 15), exact(15, 5, 31),
    exact(15, 6, 63), range(15, 7, 108, 126, T), range(15, 8, 171, 254, T),
    range(15, 9, 245, 510, T), range(15, 10, 385, 1022, T), range(15, 11, 308, 1228, A),
    range(15, 12, 221, 1253, A), range(15, 13, 155, 454, M),
];

pub fn published_cell(n: usize, k: usize) -> Option<&'static PublishedCell> {
    PUBLISHED_TABLE.iter().find(|c| c.n == n && c.k == k)
}

pub fn published_g(n: usize) -> Option<usize> {
    PUBLISHED_G.iter().find(|&&(m, _)| m == n).map(|&(_, g)| g)
}
