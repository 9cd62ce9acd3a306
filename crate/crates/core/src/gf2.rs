//! Points of PG(n-1, 2) and dense linear algebra over GF(2).
//!
//! A point is a nonzero length-`n` GF(2) vector stored as a bitmask: basic
//! factor `F_i` (letter `i`, 1-based) is bit `i - 1`. With that encoding the
//! Yates index of an effect is the mask value itself, so `A, B, AB, C, ...`
//! are `1, 2, 3, 4, ...`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported geometry dimension `n`.
///
/// Effect labels use the first `n` uppercase letters and bitstring signatures
/// need `2^n - 1` bits per flat, so this stays small.
pub const MAX_DIM: usize = 15;

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::DimensionOutOfRange(n));
    }
    Ok(())
}

/// Number of points of PG(n-1, 2).
pub fn point_count(n: usize) -> usize {
    (1usize << n) - 1
}

/// A nonzero factorial effect.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(u32);

impl Point {
    pub fn new(mask: u32) -> Option<Point> {
        (mask != 0).then_some(Point(mask))
    }

    /// The basic factor `F_i`, 1-based.
    pub fn factor(i: usize) -> Point {
        assert!((1..=32).contains(&i), "factor index out of range");
        Point(1 << (i - 1))
    }

    /// Inverse of [`yates_index`]; `None` for index 0 or indices beyond `2^n - 1`.
    pub fn from_yates(index: usize, n: usize) -> Option<Point> {
        if index == 0 || index > point_count(n) {
            return None;
        }
        Some(Point(index as u32))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    /// Smallest `n` this point lives in.
    pub fn min_dim(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// Parses a letter word such as `BCD`. Letters may come in any order but
    /// must be distinct and among the first `n`.
    pub fn parse_label(s: &str, n: usize) -> Result<Point> {
        let bad = || Error::InvalidEffect(s.to_string());
        if s.is_empty() || n > MAX_DIM {
            return Err(bad());
        }
        let mut mask = 0u32;
        for c in s.chars() {
            if !c.is_ascii_uppercase() {
                return Err(bad());
            }
            let i = (c as u8 - b'A') as usize;
            if i >= n || mask & (1 << i) != 0 {
                return Err(bad());
            }
            mask |= 1 << i;
        }
        Ok(Point(mask))
    }

    /// Alphabetical letter word.
    pub fn label(self) -> String {
        (0..26)
            .filter(|i| self.0 & (1 << i) != 0)
            .map(|i| (b'A' + i as u8) as char)
            .collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl std::ops::Add for Point {
    type Output = Option<Point>;

    /// GF(2) sum; `None` when the two points coincide.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Point) -> Option<Point> {
        Point::new(self.0 ^ rhs.0)
    }
}

/// Position of `p` in Yates order, in `1..=2^n - 1`.
pub fn yates_index(p: Point) -> usize {
    p.0 as usize
}

/// Incrementally maintained row-echelon basis of a set of vectors.
///
/// Pivots are the highest set bit of each stored vector; insertion reduces a
/// candidate against existing pivots in descending order.
#[derive(Clone, Debug, Default)]
pub struct XorBasis {
    // pivots[b] holds the basis vector whose leading bit is b, or 0
    pivots: [u32; 32],
    rank: usize,
}

impl XorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn reduce(&self, mut v: u32) -> u32 {
        while v != 0 {
            let b = 31 - v.leading_zeros() as usize;
            if self.pivots[b] == 0 {
                break;
            }
            v ^= self.pivots[b];
        }
        v
    }

    pub fn contains(&self, v: u32) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: u32) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let b = 31 - r.leading_zeros() as usize;
        self.pivots[b] = r;
        self.rank += 1;
        true
    }
}

pub fn rank_of(vectors: impl IntoIterator<Item = u32>) -> usize {
    let mut basis = XorBasis::new();
    for v in vectors {
        basis.insert(v);
    }
    basis.rank()
}

pub fn rank(points: &[Point]) -> usize {
    rank_of(points.iter().map(|p| p.0))
}

/// All nonzero GF(2) combinations of `points`, listed as the combinations of
/// a greedily chosen independent subset in binary-counter order.
///
/// For independent generators `g1, g2, g3` the order is
/// `g1, g2, g1+g2, g3, g1+g3, ...`.
pub fn span(points: &[Point]) -> Result<Vec<Point>> {
    if points.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let gens = independent_subset(points);
    Ok(span_of_basis(&gens))
}

pub(crate) fn independent_subset(points: &[Point]) -> Vec<Point> {
    let mut basis = XorBasis::new();
    points
        .iter()
        .copied()
        .filter(|p| basis.insert(p.0))
        .collect()
}

pub(crate) fn span_of_basis(gens: &[Point]) -> Vec<Point> {
    let k = gens.len();
    (1u32..(1 << k))
        .map(|m| {
            let mask = (0..k)
                .filter(|&i| m & (1 << i) != 0)
                .fold(0, |acc, i| acc ^ gens[i].0);
            Point(mask)
        })
        .collect()
}

/// Square or rectangular matrix over GF(2), stored by columns.
///
/// Column `j` is the image of basic factor `F_{j+1}`; bit `i` of a column is
/// the entry in row `i`. Applying the matrix to a point XORs the columns
/// selected by the point's bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: Vec<u32>,
}

impl Gf2Matrix {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 32);
        Gf2Matrix {
            rows: n,
            cols: (0..n).map(|j| 1u32 << j).collect(),
        }
    }

    pub fn from_columns(rows: usize, cols: Vec<u32>) -> Result<Self> {
        if rows > 32 || cols.iter().any(|&c| rows < 32 && c >> rows != 0) {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: cols.len(),
            });
        }
        Ok(Gf2Matrix { rows, cols })
    }

    /// Builds a matrix whose columns are the given points.
    pub fn from_points(rows: usize, points: &[Point]) -> Result<Self> {
        Self::from_columns(rows, points.iter().map(|p| p.0).collect())
    }

    /// Builds a matrix from row-major 0/1 entries.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::InvalidParameters("ragged matrix rows".into()));
        }
        let mut cols = vec![0u32; n_cols];
        for (i, row) in rows.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                match e {
                    0 => {}
                    1 => cols[j] |= 1 << i,
                    _ => return Err(Error::InvalidParameters(format!("entry {e} is not 0 or 1"))),
                }
            }
        }
        Self::from_columns(n_rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[u32] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.cols[j] >> i & 1 == 1
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols.len()
    }

    pub fn apply_mask(&self, v: u32) -> u32 {
        let mut out = 0;
        let mut bits = v;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            out ^= self.cols[j];
            bits &= bits - 1;
        }
        out
    }

    /// Image of a point. `None` only for singular matrices.
    pub fn apply(&self, p: Point) -> Option<Point> {
        Point::new(self.apply_mask(p.0))
    }

    /// Matrix product `self * rhs`, i.e. apply `rhs` first.
    pub fn compose(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols.len(), rhs.rows, "incompatible matrix shapes");
        Gf2Matrix {
            rows: self.rows,
            cols: rhs.cols.iter().map(|&c| self.apply_mask(c)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        rank_of(self.cols.iter().copied())
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Gauss-Jordan inverse. Pivot rows are chosen as the first row (ascending
    /// index) with a one in the pivot column.
    pub fn inverse(&self) -> Result<Gf2Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols.len(),
            });
        }
        let n = self.rows;
        // row i of [self | I]: low n bits from self, high n bits from I
        let mut rows: Vec<u64> = (0..n)
            .map(|i| {
                let left = (0..n).fold(0u64, |acc, j| acc | ((self.cols[j] as u64 >> i & 1) << j));
                left | (1u64 << (n + i))
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| rows[r] >> col & 1 == 1)
                .ok_or(Error::NotCollineation)?;
            rows.swap(col, pivot);
            let pr = rows[col];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && *row >> col & 1 == 1 {
                    *row ^= pr;
                }
            }
        }
        let mut cols = vec![0u32; n];
        for (i, row) in rows.iter().enumerate() {
            let right = row >> n;
            for (j, c) in cols.iter_mut().enumerate() {
                *c |= ((right >> j & 1) as u32) << i;
            }
        }
        Ok(Gf2Matrix { rows: n, cols })
    }

    /// Block-diagonal extension by the identity on the trailing coordinates.
    pub fn embed(&self, n: usize) -> Gf2Matrix {
        assert!(self.is_square() && n >= self.rows && n <= 32);
        let mut cols = self.cols.clone();
        cols.extend((self.rows..n).map(|j| 1u32 << j));
        Gf2Matrix { rows: n, cols }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let cols = (0..self.rows)
            .map(|i| {
                self.cols
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (j, &c)| acc | ((c >> i & 1) << j))
            })
            .collect();
        Gf2Matrix {
            rows: self.cols.len(),
            cols,
        }
    }

    /// Row-wise 0/1 grid, one row per line.
    pub fn to_grid(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<&str> = (0..self.cols.len())
                .map(|j| if self.entry(i, j) { "1" } else { "0" })
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols.len())?;
        f.write_str(&self.to_grid())
    }
}

/// Rank of the column span.
pub fn matrix_rank(m: &Gf2Matrix) -> usize {
    m.rank()
}

/// Inverse of a collineation matrix.
pub fn invert(m: &Gf2Matrix) -> Result<Gf2Matrix> {
    m.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Point {
        Point::parse_label(s, n).unwrap()
    }

    #[test]
    fn yates_positions() {
        assert_eq!(yates_index(p("A", 4)), 1);
        assert_eq!(yates_index(p("ABCD", 4)), 15);
        assert_eq!(yates_index(p("D", 4)), 8);
        let order: Vec<String> = (1..=7)
            .map(|i| Point::from_yates(i, 3).unwrap().label())
            .collect();
        assert_eq!(order, ["A", "B", "AB", "C", "AC", "BC", "ABC"]);
    }

    #[test]
    fn yates_roundtrip() {
        for n in 1..=6 {
            for i in 1..=point_count(n) {
                assert_eq!(yates_index(Point::from_yates(i, n).unwrap()), i);
            }
            assert!(Point::from_yates(0, n).is_none());
            assert!(Point::from_yates(point_count(n) + 1, n).is_none());
        }
    }

    #[test]
    fn labels() {
        assert_eq!(p("DCB", 4).label(), "BCD");
        assert_eq!(p("AE", 5).mask(), 0b10001);
        assert!(Point::parse_label("E", 4).is_err());
        assert!(Point::parse_label("AA", 4).is_err());
        assert!(Point::parse_label("", 4).is_err());
        assert!(Point::parse_label("ab", 4).is_err());
    }

    #[test]
    fn span_examples() {
        let s = span(&[p("A", 4), p("B", 4)]).unwrap();
        assert_eq!(s, vec![p("A", 4), p("B", 4), p("AB", 4)]);
        let s = span(&[p("D", 4), p("BC", 4)]).unwrap();
        assert_eq!(s, vec![p("D", 4), p("BC", 4), p("BCD", 4)]);
        let mut s = span(&[p("A", 4), p("B", 4), p("AB", 4)]).unwrap();
        s.sort();
        assert_eq!(s, vec![p("A", 4), p("B", 4), p("AB", 4)]);
        assert_eq!(span(&[]), Err(Error::EmptyGenerators));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[p("A", 4), p("B", 4), p("AB", 4)]), 2);
        let six: Vec<Point> = ["F", "ABCE", "E", "ABDEF", "EF", "CDF"]
            .iter()
            .map(|s| p(s, 6))
            .collect();
        assert!(rank(&six) < 6);
    }

    #[test]
    fn lif_basis_matrices() {
        let c1_inv = Gf2Matrix::from_rows(&[
            vec![0, 0, 0, 1],
            vec![0, 1, 0, 1],
            vec![0, 1, 1, 0],
            vec![1, 0, 0, 0],
        ])
        .unwrap();
        let c1 = Gf2Matrix::from_rows(&[
            vec![0, 0, 0, 1],
            vec![1, 1, 0, 0],
            vec![1, 1, 1, 0],
            vec![1, 0, 0, 0],
        ])
        .unwrap();
        assert_eq!(c1.rank(), 4);
        assert_eq!(invert(&c1_inv).unwrap(), c1);
        assert_eq!(c1.compose(&c1_inv), Gf2Matrix::identity(4));
        // A -> D, B -> BC, C -> C, D -> AB
        let img: Vec<String> = (1..=4)
            .map(|i| c1_inv.apply(Point::factor(i)).unwrap().label())
            .collect();
        assert_eq!(img, ["D", "BC", "C", "AB"]);
    }

    #[test]
    fn singular_inverse() {
        let m = Gf2Matrix::from_columns(3, vec![0b011, 0b011, 0b100]).unwrap();
        assert_eq!(m.inverse(), Err(Error::NotCollineation));
        assert_eq!(
            Gf2Matrix::identity(5).inverse().unwrap(),
            Gf2Matrix::identity(5)
        );
    }

    #[test]
    fn embed_and_transpose() {
        let m = Gf2Matrix::from_columns(2, vec![0b11, 0b01]).unwrap();
        let e = m.embed(4);
        assert_eq!(e.columns(), &[0b0011, 0b0001, 0b0100, 0b1000]);
        assert_eq!(m.transpose().transpose(), m);
    }
}
