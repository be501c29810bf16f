use rayon::prelude::*;

use crate::error::{Error, Result};

/// Row-major sparse matrix over `Z/N`; each row is sorted by column with no
/// zero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    modulus: u64,
    rows: Vec<Vec<(usize, u64)>>,
}

impl SparseMatrix {
    /// Entries are reduced mod `modulus`, sorted, merged and zero-filtered.
    pub fn from_rows(nrows: usize, ncols: usize, modulus: u64, rows: Vec<Vec<(usize, u64)>>) -> Self {
        assert_eq!(rows.len(), nrows, "row count");
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.sort_unstable_by_key(|&(c, _)| c);
                let mut out: Vec<(usize, u64)> = Vec::with_capacity(r.len());
                for (c, v) in r {
                    assert!(c < ncols, "column {c} out of range");
                    let v = v % modulus;
                    match out.last_mut() {
                        Some(last) if last.0 == c => last.1 = (last.1 + v) % modulus,
                        _ => out.push((c, v)),
                    }
                }
                out.retain(|&(_, v)| v != 0);
                out
            })
            .collect();
        Self { nrows, ncols, modulus, rows }
    }

    pub fn zeros(nrows: usize, ncols: usize, modulus: u64) -> Self {
        Self { nrows, ncols, modulus, rows: vec![Vec::new(); nrows] }
    }

    pub fn from_dense(modulus: u64, dense: &[Vec<u64>]) -> Self {
        let ncols = dense.first().map_or(0, Vec::len);
        let rows = dense
            .iter()
            .map(|r| r.iter().enumerate().map(|(j, &v)| (j, v)).collect())
            .collect();
        Self::from_rows(dense.len(), ncols, modulus, rows)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> &[Vec<(usize, u64)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![0; self.ncols];
                for &(c, v) in r {
                    d[c] = v;
                }
                d
            })
            .collect()
    }

    /// `self * x mod N`.
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.ncols, "vector length");
        let n = self.modulus as u128;
        self.rows
            .par_iter()
            .map(|r| (r.iter().map(|&(c, v)| v as u128 * x[c] as u128 % n).sum::<u128>() % n) as u64)
            .collect()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for &(c, v) in r {
                cols[c].push((i, v));
            }
        }
        Self { nrows: self.ncols, ncols: self.nrows, modulus: self.modulus, rows: cols }
    }

    /// Stacks blocks vertically; all blocks need the same column count.
    pub fn vstack(blocks: &[SparseMatrix]) -> Result<SparseMatrix> {
        let first = blocks.first().ok_or_else(|| Error::Invalid("no blocks".into()))?;
        let mut rows = Vec::new();
        for b in blocks {
            if b.ncols != first.ncols {
                return Err(Error::DimensionMismatch { expected: first.ncols, found: b.ncols });
            }
            if b.modulus != first.modulus {
                return Err(Error::ModulusMismatch(first.modulus, b.modulus));
            }
            rows.extend(b.rows.iter().cloned());
        }
        Ok(Self { nrows: rows.len(), ncols: first.ncols, modulus: first.modulus, rows })
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: other.nrows });
        }
        let n = self.modulus as u128;
        let rows = self
            .rows
            .par_iter()
            .map(|r| {
                let mut acc: Vec<(usize, u64)> = Vec::new();
                for &(k, a) in r {
                    for &(j, b) in &other.rows[k] {
                        acc.push((j, (a as u128 * b as u128 % n) as u64));
                    }
                }
                acc
            })
            .collect();
        Ok(Self::from_rows(self.nrows, other.ncols, self.modulus, rows))
    }

    /// Reorders rows and columns: new row `i` is old row `row_perm[i]`, new
    /// column `col_perm[j]` is old column `j`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let rows = row_perm
            .iter()
            .map(|&i| self.rows[i].iter().map(|&(c, v)| (col_perm[c], v)).collect())
            .collect();
        Self::from_rows(self.nrows, self.ncols, self.modulus, rows)
    }

    /// First column of `other` on which `self * other` is nonzero.
    pub(crate) fn first_nonzero_product_column(&self, other: &SparseMatrix) -> Result<Option<usize>> {
        let p = self.mul(other)?;
        Ok(p.rows.iter().filter_map(|r| r.first().map(|&(c, _)| c)).min())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let m = SparseMatrix::from_rows(2, 3, 4, vec![vec![(2, 3), (0, 5), (2, 1)], vec![(1, 8)]]);
        assert_eq!(m.rows(), &[vec![(0, 1)], vec![]]);
        assert_eq!(m.apply(&[3, 1, 1]), vec![3, 0]);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_dense(5, &[vec![1, 2], vec![0, 3]]);
        let b = SparseMatrix::from_dense(5, &[vec![4, 0], vec![1, 1]]);
        assert_eq!(a.mul(&b).unwrap().to_dense(), vec![vec![1, 2], vec![3, 3]]);
        assert_eq!(a.transpose().to_dense(), vec![vec![1, 0], vec![2, 3]]);
    }
}
