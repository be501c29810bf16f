//! The bigraded cochain groups `C_{n,m}(G, Z/N)`: functions of `n` group
//! arguments and `m` hatted (dual-basis) arguments, with the hatted
//! Hochschild differential `d2` and the twisted differential `d1`.
//!
//! Storage is dense. A tuple `(g_1..g_n; h_1..h_m)` is stored at the
//! mixed-radix position with `g_1` most significant and the unhatted block
//! before the hatted block.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::homology::{cohomology_mod, CohomologyResult, SparseMatrix};

#[derive(Debug, Clone)]
pub struct BiCochain {
    group: Arc<FiniteGroup>,
    modulus: u64,
    n: usize,
    m: usize,
    values: Vec<u64>,
}

impl PartialEq for BiCochain {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group)
            && self.modulus == other.modulus
            && self.n == other.n
            && self.m == other.m
            && self.values == other.values
    }
}

impl Eq for BiCochain {}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn check_modulus(modulus: u64) -> Result<()> {
    if modulus < 2 {
        return Err(Error::BadModulus(modulus));
    }
    Ok(())
}

/// `order^arity`, the number of argument tuples.
pub fn tuple_count(order: usize, arity: usize) -> usize {
    order.pow(arity as u32)
}

#[inline]
pub(crate) fn encode(order: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &x| acc * order + x)
}

#[inline]
pub(crate) fn decode(order: usize, mut index: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = index % order;
        index /= order;
    }
}

#[inline]
pub(crate) fn reduce(v: i64, modulus: u64) -> u64 {
    v.rem_euclid(modulus as i64) as u64
}

impl BiCochain {
    pub fn zeros(group: Arc<FiniteGroup>, modulus: u64, n: usize, m: usize) -> Self {
        let len = tuple_count(group.order(), n + m);
        Self { group, modulus, n, m, values: vec![0; len] }
    }

    pub fn from_values(
        group: Arc<FiniteGroup>,
        modulus: u64,
        n: usize,
        m: usize,
        values: Vec<u64>,
    ) -> Result<Self> {
        check_modulus(modulus)?;
        let expected = tuple_count(group.order(), n + m);
        if values.len() != expected {
            return Err(Error::CochainLength { expected, found: values.len() });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| v >= modulus) {
            return Err(Error::ResidueOutOfRange { index, value, modulus });
        }
        Ok(Self { group, modulus, n, m, values })
    }

    /// Builds a cochain from a function of the argument tuple; the result is
    /// reduced mod `modulus`.
    pub fn from_fn(
        group: Arc<FiniteGroup>,
        modulus: u64,
        n: usize,
        m: usize,
        f: impl Fn(&[usize]) -> i64,
    ) -> Self {
        let order = group.order();
        let len = tuple_count(order, n + m);
        let mut args = vec![0; n + m];
        let values = (0..len)
            .map(|i| {
                decode(order, i, &mut args);
                reduce(f(&args), modulus)
            })
            .collect();
        Self { group, modulus, n, m, values }
    }

    pub fn constant(group: Arc<FiniteGroup>, modulus: u64, n: usize, m: usize, c: u64) -> Self {
        let len = tuple_count(group.order(), n + m);
        Self { group, modulus, n, m, values: vec![c % modulus; len] }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Position of an argument tuple (unhatted then hatted).
    pub fn index_of(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.n + self.m);
        encode(self.group.order(), args)
    }

    pub fn tuple_of(&self, index: usize) -> Vec<usize> {
        let mut out = vec![0; self.n + self.m];
        decode(self.group.order(), index, &mut out);
        out
    }

    /// Value at an argument tuple (unhatted then hatted).
    #[inline]
    pub fn at(&self, args: &[usize]) -> u64 {
        self.values[encode(self.group.order(), args)]
    }

    /// The value of a `(0,0)`-cochain.
    pub fn scalar(&self) -> u64 {
        self.values[0]
    }

    pub fn set(&mut self, args: &[usize], value: u64) {
        let i = encode(self.group.order(), args);
        self.values[i] = value % self.modulus;
    }

    pub fn get_mut(&mut self) -> &mut [u64] {
        &mut self.values
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::BidegreeMismatch(self.n, self.m, other.n, other.m));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip(other, |a, b| a + self.modulus - b))
    }

    /// Panicking addition for operands known to be compatible.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("incompatible cochains")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("incompatible cochains")
    }

    pub fn neg(&self) -> Self {
        let n = self.modulus;
        self.map(|v| (n - v) % n)
    }

    pub fn scale(&self, c: i64) -> Self {
        let n = self.modulus;
        let c = reduce(c, n) as u128;
        self.map(|v| ((v as u128 * c) % n as u128) as u64)
    }

    fn map(&self, f: impl Fn(u64) -> u64) -> Self {
        Self { values: self.values.iter().map(|&v| f(v)).collect(), ..self.clone_shape() }
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let n = self.modulus;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b) % n).collect();
        Self { values, ..self.clone_shape() }
    }

    fn clone_shape(&self) -> Self {
        Self { group: self.group.clone(), modulus: self.modulus, n: self.n, m: self.m, values: Vec::new() }
    }
}

/// Input positions and signs of `(d1 f)` at one output tuple
/// `(g_1..g_{n+1}; h_1..h_m)`. The last face conjugates every hatted argument
/// by the dropped index: `h -> g_{n+1} h g_{n+1}^-1`.
pub(crate) fn d1_terms(
    group: &FiniteGroup,
    n: usize,
    _m: usize,
    out: &[usize],
    scratch: &mut Vec<usize>,
    mut push: impl FnMut(usize, i64),
) {
    let order = group.order();
    let (gs, hs) = out.split_at(n + 1);
    scratch.clear();
    scratch.extend_from_slice(&gs[1..]);
    scratch.extend_from_slice(hs);
    push(encode(order, scratch), 1);
    for i in 0..n {
        scratch.clear();
        scratch.extend_from_slice(&gs[..i]);
        scratch.push(group.mul(gs[i], gs[i + 1]));
        scratch.extend_from_slice(&gs[i + 2..]);
        scratch.extend_from_slice(hs);
        push(encode(order, scratch), if i % 2 == 0 { -1 } else { 1 });
    }
    let last = gs[n];
    scratch.clear();
    scratch.extend_from_slice(&gs[..n]);
    scratch.extend(hs.iter().map(|&h| group.conjugate(last, h)));
    push(encode(order, scratch), if n.is_multiple_of(2) { -1 } else { 1 });
}

/// Input positions and signs of `(d2 f)` at one output tuple
/// `(g_1..g_n; h_1..h_{m+1})`.
pub(crate) fn d2_terms(
    group: &FiniteGroup,
    n: usize,
    m: usize,
    out: &[usize],
    scratch: &mut Vec<usize>,
    mut push: impl FnMut(usize, i64),
) {
    let order = group.order();
    let (gs, hs) = out.split_at(n);
    scratch.clear();
    scratch.extend_from_slice(gs);
    scratch.extend_from_slice(&hs[1..]);
    push(encode(order, scratch), 1);
    for i in 0..m {
        scratch.clear();
        scratch.extend_from_slice(gs);
        scratch.extend_from_slice(&hs[..i]);
        scratch.push(group.mul(hs[i], hs[i + 1]));
        scratch.extend_from_slice(&hs[i + 2..]);
        push(encode(order, scratch), if i % 2 == 0 { -1 } else { 1 });
    }
    scratch.clear();
    scratch.extend_from_slice(gs);
    scratch.extend_from_slice(&hs[..m]);
    push(encode(order, scratch), if m.is_multiple_of(2) { -1 } else { 1 });
}

type Terms = fn(&FiniteGroup, usize, usize, &[usize], &mut Vec<usize>, &mut dyn FnMut(usize, i64));

fn d1_dyn(g: &FiniteGroup, n: usize, m: usize, o: &[usize], s: &mut Vec<usize>, p: &mut dyn FnMut(usize, i64)) {
    d1_terms(g, n, m, o, s, p)
}

fn d2_dyn(g: &FiniteGroup, n: usize, m: usize, o: &[usize], s: &mut Vec<usize>, p: &mut dyn FnMut(usize, i64)) {
    d2_terms(g, n, m, o, s, p)
}

#[derive(Clone, Copy)]
enum Face {
    Group,
    Hatted,
}

/// Adds `sign * src` into `dst` modulo `n`, entrywise. Entries stay below `n`.
fn add_signed(dst: &mut [u64], src: &[u64], negative: bool, n: u64) {
    for (d, &v) in dst.iter_mut().zip(src) {
        let t = if negative { *d + (n - v) } else { *d + v };
        *d = if t >= n { t - n } else { t };
    }
}

/// Evaluates `d1` or `d2` face by face. Output tuples are `x_0..x_{a-1}`
/// with `x_0` most significant, so dropping or merging arguments moves
/// whole contiguous blocks of `f`.
fn apply(f: &BiCochain, face: Face) -> BiCochain {
    let group = f.group.clone();
    let q = group.order();
    let modulus = f.modulus;
    let (n, m) = (f.n, f.m);
    let (out_n, out_m) = match face {
        Face::Group => (n + 1, m),
        Face::Hatted => (n, m + 1),
    };
    let a = out_n + out_m;
    let pw: Vec<usize> = (0..=a).map(|j| q.pow(j as u32)).collect();
    let src = &f.values;
    let mut out = vec![0u64; pw[a]];

    // merge x_j and x_{j+1}; sign is (-1)^(i+1) for the i-th merge of a block
    let merge = |out: &mut [u64], j: usize, negative: bool| {
        let len = pw[a - j - 2];
        for p in 0..pw[j] {
            for x in 0..q {
                for y in 0..q {
                    let o = ((p * q + x) * q + y) * len;
                    let i = (p * q + group.mul(x, y)) * len;
                    add_signed(&mut out[o..o + len], &src[i..i + len], negative, modulus);
                }
            }
        }
    };

    match face {
        Face::Group => {
            let tail = pw[a - 1];
            for block in out.chunks_mut(tail) {
                add_signed(block, src, false, modulus);
            }
            for j in 0..n {
                merge(&mut out, j, j % 2 == 0);
            }
            // drop x_n and conjugate the hatted block by it
            let block = pw[m];
            let mut digits = vec![0usize; m];
            let conj: Vec<usize> = (0..q * block)
                .map(|ch| {
                    decode(q, ch % block, &mut digits);
                    digits.iter().fold(0, |acc, &d| acc * q + group.conjugate(ch / block, d))
                })
                .collect();
            let negative = n % 2 == 0;
            for p in 0..pw[n] {
                for c in 0..q {
                    let o = (p * q + c) * block;
                    let from = &src[p * block..(p + 1) * block];
                    for (d, &h) in out[o..o + block].iter_mut().zip(&conj[c * block..(c + 1) * block]) {
                        let v = from[h];
                        let t = if negative { *d + (modulus - v) } else { *d + v };
                        *d = if t >= modulus { t - modulus } else { t };
                    }
                }
            }
        }
        Face::Hatted => {
            let block = pw[m];
            for p in 0..pw[n] {
                for x in 0..q {
                    let o = (p * q + x) * block;
                    add_signed(&mut out[o..o + block], &src[p * block..(p + 1) * block], false, modulus);
                }
            }
            for i in 0..m {
                merge(&mut out, n + i, i % 2 == 0);
            }
            let negative = m % 2 == 0;
            for (r, chunk) in out.chunks_mut(q).enumerate() {
                let v = src[r];
                let v = if negative { (modulus - v) % modulus } else { v };
                for d in chunk {
                    let t = *d + v;
                    *d = if t >= modulus { t - modulus } else { t };
                }
            }
        }
    }
    BiCochain { group, modulus, n: out_n, m: out_m, values: out }
}

/// Hochschild coboundary in the hatted arguments, `C_{n,m} -> C_{n,m+1}`.
pub fn d2_hatted(f: &BiCochain) -> BiCochain {
    apply(f, Face::Hatted)
}

/// Twisted coboundary in the group arguments, `C_{n,m} -> C_{n+1,m}`. At
/// `m = 0` this is the ordinary inhomogeneous group coboundary.
pub fn d1_twisted(f: &BiCochain) -> BiCochain {
    apply(f, Face::Group)
}

fn matrix(group: &FiniteGroup, modulus: u64, n: usize, m: usize, out_n: usize, out_m: usize, terms: Terms) -> SparseMatrix {
    let order = group.order();
    let rows = tuple_count(order, out_n + out_m);
    let cols = tuple_count(order, n + m);
    let entries: Vec<Vec<(usize, u64)>> = (0..rows)
        .into_par_iter()
        .map_init(
            || (vec![0usize; out_n + out_m], Vec::with_capacity(out_n + out_m)),
            |(out, scratch), o| {
                decode(order, o, out);
                let mut row: Vec<(usize, i64)> = Vec::with_capacity(out_n + 2);
                terms(group, n, m, out, scratch, &mut |i, s| row.push((i, s)));
                collect_row(row, modulus)
            },
        )
        .collect();
    SparseMatrix::from_rows(rows, cols, modulus, entries)
}

/// Sorts, merges duplicate columns and drops zeros.
pub(crate) fn collect_row(mut row: Vec<(usize, i64)>, modulus: u64) -> Vec<(usize, u64)> {
    row.sort_unstable_by_key(|&(c, _)| c);
    let mut out: Vec<(usize, u64)> = Vec::with_capacity(row.len());
    let mut i = 0;
    while i < row.len() {
        let c = row[i].0;
        let mut acc = 0i64;
        while i < row.len() && row[i].0 == c {
            acc += row[i].1;
            i += 1;
        }
        let v = reduce(acc, modulus);
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

/// Matrix of `d1` on `C_{n,m}` in the standard basis (rows index `C_{n+1,m}`).
pub fn d1_matrix(group: &FiniteGroup, modulus: u64, n: usize, m: usize) -> SparseMatrix {
    matrix(group, modulus, n, m, n + 1, m, d1_dyn)
}

/// Matrix of `d2` on `C_{n,m}` (rows index `C_{n,m+1}`).
pub fn d2_matrix(group: &FiniteGroup, modulus: u64, n: usize, m: usize) -> SparseMatrix {
    matrix(group, modulus, n, m, n, m + 1, d2_dyn)
}

/// Cochain of the total complex in degree `k = n + m - 1`, with components at
/// bidegrees `(k,1), (k-1,2), ..., (1,k)` in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalCochain {
    degree: usize,
    components: Vec<BiCochain>,
}

/// Bidegrees making up total degree `k`.
pub fn total_bidegrees(k: usize) -> Vec<(usize, usize)> {
    (1..=k).map(|m| (k + 1 - m, m)).collect()
}

/// Dimension of the total-complex cochain group in degree `k`.
pub fn total_dimension(order: usize, k: usize) -> usize {
    k * tuple_count(order, k + 1)
}

impl TotalCochain {
    pub fn new(degree: usize, components: Vec<BiCochain>) -> Result<Self> {
        let expected = total_bidegrees(degree);
        if components.len() != expected.len() {
            return Err(Error::DimensionMismatch { expected: expected.len(), found: components.len() });
        }
        for (c, &(n, m)) in components.iter().zip(&expected) {
            if c.bidegree() != (n, m) {
                let (cn, cm) = c.bidegree();
                return Err(Error::BidegreeMismatch(n, m, cn, cm));
            }
            c.check_compatible_group(&components[0])?;
        }
        Ok(Self { degree, components })
    }

    pub fn zeros(group: Arc<FiniteGroup>, modulus: u64, degree: usize) -> Self {
        let components = total_bidegrees(degree)
            .into_iter()
            .map(|(n, m)| BiCochain::zeros(group.clone(), modulus, n, m))
            .collect();
        Self { degree, components }
    }

    /// Splits a flat vector (components concatenated in bidegree order).
    pub fn from_vector(group: Arc<FiniteGroup>, modulus: u64, degree: usize, v: &[u64]) -> Result<Self> {
        let size = tuple_count(group.order(), degree + 1);
        if v.len() != degree * size {
            return Err(Error::DimensionMismatch { expected: degree * size, found: v.len() });
        }
        let components = total_bidegrees(degree)
            .into_iter()
            .zip(v.chunks(size.max(1)))
            .map(|((n, m), chunk)| BiCochain::from_values(group.clone(), modulus, n, m, chunk.to_vec()))
            .collect::<Result<_>>()?;
        Ok(Self { degree, components })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[BiCochain] {
        &self.components
    }

    pub fn component(&self, n: usize, m: usize) -> Option<&BiCochain> {
        self.components.iter().find(|c| c.bidegree() == (n, m))
    }

    pub fn to_vector(&self) -> Vec<u64> {
        self.components.iter().flat_map(|c| c.values().iter().copied()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(BiCochain::is_zero)
    }
}

impl BiCochain {
    fn check_compatible_group(&self, other: &Self) -> Result<()> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }
}

/// `D x`: the component at `(n,m)` contributes `d1 x` to `(n+1,m)` and
/// `(-1)^n d2 x` to `(n,m+1)`.
pub fn total_differential(x: &TotalCochain) -> TotalCochain {
    let first = &x.components[0];
    let (group, modulus) = (first.group.clone(), first.modulus);
    let mut out = TotalCochain::zeros(group, modulus, x.degree + 1);
    for c in &x.components {
        let (n, m) = c.bidegree();
        let horizontal = d1_twisted(c);
        let vertical = d2_hatted(c);
        let vertical = if n % 2 == 1 { vertical.neg() } else { vertical };
        for target in out.components.iter_mut() {
            if target.bidegree() == (n + 1, m) {
                *target = target.add(&horizontal);
            } else if target.bidegree() == (n, m + 1) {
                *target = target.add(&vertical);
            }
        }
    }
    out
}

/// Matrix of `D` from total degree `k` to `k + 1`. Degree 0 is the zero group.
pub fn total_matrix(group: &FiniteGroup, modulus: u64, k: usize) -> SparseMatrix {
    let order = group.order();
    let src = total_bidegrees(k);
    let dst = total_bidegrees(k + 1);
    let src_size = tuple_count(order, k + 1);
    let dst_size = tuple_count(order, k + 2);
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); dst.len() * dst_size];
    for (si, &(n, m)) in src.iter().enumerate() {
        let col_offset = si * src_size;
        let h = d1_matrix(group, modulus, n, m);
        let v = d2_matrix(group, modulus, n, m);
        let hi = dst.iter().position(|&b| b == (n + 1, m)).expect("horizontal target");
        let vi = dst.iter().position(|&b| b == (n, m + 1)).expect("vertical target");
        for (r, row) in h.rows().iter().enumerate() {
            rows[hi * dst_size + r].extend(row.iter().map(|&(c, x)| (c + col_offset, x)));
        }
        for (r, row) in v.rows().iter().enumerate() {
            let sign = n % 2 == 1;
            rows[vi * dst_size + r].extend(
                row.iter().map(|&(c, x)| (c + col_offset, if sign { (modulus - x) % modulus } else { x })),
            );
        }
    }
    let rows = rows
        .into_iter()
        .map(|r| collect_row(r.into_iter().map(|(c, v)| (c, v as i64)).collect(), modulus))
        .collect();
    SparseMatrix::from_rows(dst.len() * dst_size, src.len() * src_size, modulus, rows)
}

/// Matrix of `d1` on the row `m` complex from `C_{n,m}`; `n = -1` is encoded
/// by the caller as the zero map from the zero group.
pub fn row_matrix(group: &FiniteGroup, modulus: u64, n: usize, m: usize) -> SparseMatrix {
    d1_matrix(group, modulus, n, m)
}

/// Degree-`k` cohomology of the row `(C_{*,m}, d1)`; `m = 0` is ordinary
/// group cohomology with coefficients in `Z/N`.
pub fn row_cohomology(group: &FiniteGroup, modulus: u64, m: usize, k: usize) -> Result<CohomologyResult> {
    check_modulus(modulus)?;
    let d_out = d1_matrix(group, modulus, k, m);
    let d_in = if k == 0 {
        SparseMatrix::zeros(d_out.ncols(), 0, modulus)
    } else {
        d1_matrix(group, modulus, k - 1, m)
    };
    cohomology_mod(&d_in, &d_out)
}

/// Degree-`k` cohomology of the total complex (bidegrees with `n, m >= 1`).
pub fn total_cohomology(group: &FiniteGroup, modulus: u64, k: usize) -> Result<CohomologyResult> {
    check_modulus(modulus)?;
    if k == 0 {
        return Err(Error::Invalid("total degree starts at 1".into()));
    }
    let d_out = total_matrix(group, modulus, k);
    let d_in = if k == 1 {
        SparseMatrix::zeros(d_out.ncols(), 0, modulus)
    } else {
        total_matrix(group, modulus, k - 1)
    };
    cohomology_mod(&d_in, &d_out)
}
