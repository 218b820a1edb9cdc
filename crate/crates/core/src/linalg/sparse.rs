//! Sparse integer matrices in coordinate form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A sparse matrix over the integers. Entries are kept sorted by
/// `(row, col)` with no zeros and no repeated coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, BigInt)>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        SparseIntMatrix { rows: n, cols: n, entries: (0..n).map(|i| (i, i, BigInt::one())).collect() }
    }

    /// Builds a matrix from triples, summing repeated coordinates and
    /// dropping zeros.
    pub fn from_triples<I, V>(rows: usize, cols: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, V)>,
        V: Into<BigInt>,
    {
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (r, c, v) in triples {
            if r >= rows || c >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            *acc.entry((r, c)).or_insert_with(BigInt::zero) += v.into();
        }
        let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((r, c), v)| (r, c, v)).collect();
        Ok(SparseIntMatrix { rows, cols, entries })
    }

    /// Builds a matrix from columns given as `(row, value)` lists.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Result<Self> {
        let cols = columns.len();
        let triples = columns
            .into_iter()
            .enumerate()
            .flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v)));
        Self::from_triples(rows, cols, triples)
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let triples = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v)));
        Self::from_triples(rows.len(), cols, triples)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, usize, BigInt)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> BigInt {
        match self.entries.binary_search_by(|(r, c, _)| (*r, *c).cmp(&(row, col))) {
            Ok(i) => self.entries[i].2.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut entries: Vec<_> = self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect();
        entries.sort_by_key(|e| (e.0, e.1));
        SparseIntMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    /// Entries grouped by column, each list sorted by row.
    pub fn columns(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut out = vec![Vec::new(); self.cols];
        for (r, c, v) in &self.entries {
            out[*c].push((*r, v.clone()));
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut other_rows: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in &other.entries {
            other_rows[*r].push((*c, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (r, k, v) in &self.entries {
            for (c, w) in &other_rows[*k] {
                *acc.entry((*r, *c)).or_insert_with(BigInt::zero) += v * *w;
            }
        }
        let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((r, c), v)| (r, c, v)).collect();
        Ok(SparseIntMatrix { rows: self.rows, cols: other.cols, entries })
    }

    /// Writes the matrix-market style text form: a banner, `rows cols nnz`,
    /// then one 1-based `row col value` triple per line.
    pub fn to_matrix_market(&self) -> String {
        let mut out = String::from("%%MatrixMarket matrix coordinate integer general\n");
        let _ = writeln!(out, "{} {} {}", self.rows, self.cols, self.entries.len());
        for (r, c, v) in &self.entries {
            let _ = writeln!(out, "{} {} {}", r + 1, c + 1, v);
        }
        out
    }

    pub fn from_matrix_market(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
        let (line_no, header) =
            lines.next().ok_or_else(|| Error::Parse("matrix text has no header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("line {line_no}: bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = dims[..] else {
            return Err(Error::Parse(format!("line {line_no}: header needs rows cols nnz")));
        };
        let mut triples = Vec::with_capacity(nnz);
        for (line_no, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("line {line_no}: bad entry {line:?}"));
            if parts.len() != 3 {
                return Err(bad());
            }
            let r: usize = parts[0].parse().map_err(|_| bad())?;
            let c: usize = parts[1].parse().map_err(|_| bad())?;
            let v: BigInt = parts[2].parse().map_err(|_| bad())?;
            if r == 0 || c == 0 {
                return Err(bad());
            }
            triples.push((r - 1, c - 1, v));
        }
        if triples.len() != nnz {
            return Err(Error::Parse(format!("header promises {nnz} entries, found {}", triples.len())));
        }
        Self::from_triples(rows, cols, triples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_merge_and_zeros_drop() {
        let m = SparseIntMatrix::from_triples(2, 2, vec![(0, 0, 1), (0, 0, -1), (1, 1, 2), (1, 1, 3)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), BigInt::from(5));
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 2], vec![0, 3]]).unwrap();
        let b = SparseIntMatrix::from_dense(&[vec![4, 0], vec![1, -1]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, SparseIntMatrix::from_dense(&[vec![6, -2], vec![3, -3]]).unwrap());
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.mul(&SparseIntMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn matrix_market_round_trip() {
        let m = SparseIntMatrix::from_dense(&[vec![0, -7, 0], vec![12, 0, 1]]).unwrap();
        let text = m.to_matrix_market();
        assert!(text.lines().nth(1) == Some("2 3 3"));
        assert_eq!(SparseIntMatrix::from_matrix_market(&text).unwrap(), m);
        assert!(SparseIntMatrix::from_matrix_market("2 2 1\n").is_err());
        assert!(SparseIntMatrix::from_matrix_market("").is_err());
    }
}
