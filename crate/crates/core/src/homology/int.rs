use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CohomologyResult, SparseMatrix};
use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows<T: Into<BigInt> + Copy>(cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().map(|&x| x.into()));
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(IntMatrix { rows: self.rows, cols, data })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * prev)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduces every entry mod `modulus` into a sparse matrix.
    pub fn to_sparse(&self, modulus: u64) -> SparseMatrix {
        let m = BigInt::from(modulus);
        let rows = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter_map(|(j, x)| {
                        let v = x.mod_floor(&m).to_u64().expect("residue fits");
                        (v != 0).then_some((j, v))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix::from_rows(self.rows, self.cols, modulus, rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = scaled(s, c);
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = scaled(s, c);
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }
}

fn scaled(s: &BigInt, c: &BigInt) -> BigInt {
    if c.is_one() {
        s.clone()
    } else if (-c).is_one() {
        -s
    } else {
        s * c
    }
}

impl From<&SparseMatrix> for IntMatrix {
    fn from(m: &SparseMatrix) -> Self {
        let mut out = IntMatrix::zeros(m.nrows(), m.ncols());
        for (i, row) in m.rows().iter().enumerate() {
            for &(j, v) in row {
                out.set(i, j, BigInt::from(v));
            }
        }
        out
    }
}

/// `U * M * V = S` with `U`, `V` unimodular and the diagonal of `S` a
/// divisibility chain of nonnegative integers. The inverses are tracked too.
#[derive(Debug, Clone)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Which transforms to carry along; untracked ones stay `0 x 0`.
#[derive(Clone, Copy)]
struct Track {
    u: bool,
    u_inv: bool,
    v: bool,
    v_inv: bool,
}

const ALL: Track = Track { u: true, u_inv: true, v: true, v_inv: true };

struct SnfState {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row(dst, src, c);
        self.u.add_row(dst, src, c);
        self.u_inv.add_col(src, dst, &-c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col(dst, src, c);
        self.v.add_col(dst, src, c);
        self.v_inv.add_row(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of a nonzero entry of least absolute value in the trailing block.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a.get(bi, bj).magnitude() <= x.magnitude() => {}
                    _ => {
                        if x.magnitude().is_one() {
                            return Some((i, j));
                        }
                        best = Some((i, j));
                    }
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    snf_tracking(m, ALL)
}

fn snf_tracking(m: &IntMatrix, track: Track) -> Snf {
    let eye = |on: bool, n: usize| if on { IntMatrix::identity(n) } else { IntMatrix::zeros(0, 0) };
    let mut st = SnfState {
        a: m.clone(),
        u: eye(track.u, m.rows),
        u_inv: eye(track.u_inv, m.rows),
        v: eye(track.v, m.cols),
        v_inv: eye(track.v_inv, m.cols),
    };
    let size = m.rows.min(m.cols);
    let mut t = 0;
    while t < size {
        let Some((pi, pj)) = st.min_entry(t) else { break };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..st.a.rows {
                if st.a.get(i, t).is_zero() {
                    continue;
                }
                let q = st.a.get(i, t).div_floor(st.a.get(t, t));
                st.add_row(i, t, &-q);
                if !st.a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..st.a.cols {
                if st.a.get(t, j).is_zero() {
                    continue;
                }
                let q = st.a.get(t, j).div_floor(st.a.get(t, t));
                st.add_col(j, t, &-q);
                if !st.a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a smaller remainder appeared in row or column t; pivot on it
                let mut best = (t, t);
                for i in t..st.a.rows {
                    let x = st.a.get(i, t);
                    if !x.is_zero() && x.magnitude() < st.a.get(best.0, best.1).magnitude() {
                        best = (i, t);
                    }
                }
                for j in t..st.a.cols {
                    let x = st.a.get(t, j);
                    if !x.is_zero() && x.magnitude() < st.a.get(best.0, best.1).magnitude() {
                        best = (t, j);
                    }
                }
                st.swap_rows(t, best.0);
                st.swap_cols(t, best.1);
                continue;
            }
            // row and column cleared; enforce divisibility on the trailing block
            let p = st.a.get(t, t).clone();
            if p.magnitude().is_one() {
                break;
            }
            let bad = (t + 1..st.a.rows)
                .find(|&i| (t + 1..st.a.cols).any(|j| !st.a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => st.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if st.a.get(t, t).is_negative() {
            st.negate_row(t);
        }
        t += 1;
    }
    Snf { s: st.a, u: st.u, v: st.v, u_inv: st.u_inv, v_inv: st.v_inv }
}

fn check_complex(d_in: &IntMatrix, d_out: &IntMatrix, modulus: u64) -> Result<()> {
    if d_in.rows != d_out.cols {
        return Err(Error::DimensionMismatch { expected: d_out.cols, found: d_in.rows });
    }
    let prod = d_out.mul(d_in)?;
    let m = BigInt::from(modulus);
    for j in 0..prod.cols {
        if (0..prod.rows).any(|i| !prod.get(i, j).is_multiple_of(&m)) {
            return Err(Error::NotAComplex { column: j, modulus });
        }
    }
    Ok(())
}

/// `ker(d_out mod N) / im(d_in mod N)` via integer Smith forms of the lifted
/// matrices augmented with `N * I`.
pub fn cohomology(d_in: &IntMatrix, d_out: &IntMatrix, modulus: u64) -> Result<CohomologyResult> {
    crate::cochain::check_modulus(modulus)?;
    check_complex(d_in, d_out, modulus)?;
    let n = d_out.cols;
    let nn = BigInt::from(modulus);
    // lattice K = { x : d_out x = 0 mod N } has basis V * diag(mult)
    let snf = snf_tracking(d_out, Track { u: false, u_inv: false, v: true, v_inv: true });
    let diag = snf.diagonal();
    let mult: Vec<BigInt> = (0..n)
        .map(|i| match diag.get(i) {
            Some(s) if !s.is_zero() => &nn / s.gcd(&nn),
            _ => BigInt::one(),
        })
        .collect();
    // coordinates of [d_in | N I] in that basis
    let gens = d_in.hstack(&scaled_identity(n, &nn))?;
    let coords = snf.v_inv.mul(&gens)?;
    let mut zc = IntMatrix::zeros(n, gens.cols);
    for i in 0..n {
        for j in 0..gens.cols {
            let (q, r) = coords.get(i, j).div_rem(&mult[i]);
            debug_assert!(r.is_zero());
            zc.set(i, j, q);
        }
    }
    let quot = snf_tracking(&zc, Track { u: false, u_inv: true, v: false, v_inv: false });
    let qdiag = quot.diagonal();
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    for (i, d) in qdiag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let f = d.to_u64().expect("invariant factor divides N");
        invariant_factors.push(f);
        // basis vector i of the new coordinates, pulled back to cochain space
        let col: Vec<BigInt> = (0..n).map(|k| quot.u_inv.get(k, i) * &mult[k]).collect();
        let x = snf.v.mul_vec(&col);
        generators.push(x.iter().map(|v| v.mod_floor(&nn).to_u64().expect("residue")).collect());
    }
    Ok(CohomologyResult::new(modulus, invariant_factors, generators))
}

fn scaled_identity(n: usize, c: &BigInt) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, c.clone());
    }
    m
}

/// Solves `d x = z (mod N)` through the Smith form of `[d | N I]`.
pub fn in_image_int(d: &IntMatrix, z: &[u64], modulus: u64) -> Result<Option<Vec<u64>>> {
    crate::cochain::check_modulus(modulus)?;
    if z.len() != d.rows {
        return Err(Error::DimensionMismatch { expected: d.rows, found: z.len() });
    }
    let nn = BigInt::from(modulus);
    let aug = d.hstack(&scaled_identity(d.rows, &nn))?;
    let snf = snf_tracking(&aug, Track { u: true, u_inv: false, v: true, v_inv: false });
    let zb: Vec<BigInt> = z.iter().map(|&v| BigInt::from(v)).collect();
    let uz = snf.u.mul_vec(&zb);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); aug.cols];
    for (i, c) in uz.iter().enumerate() {
        let s = diag.get(i).cloned().unwrap_or_default();
        if s.is_zero() {
            if !c.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = c.div_rem(&s);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    let x = snf.v.mul_vec(&y);
    Ok(Some(x[..d.cols].iter().map(|v| v.mod_floor(&nn).to_u64().expect("residue")).collect()))
}
