use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{factorize, idempotent, inv_mod, mul_mod, CohomologyResult, SparseMatrix};
use crate::error::{Error, Result};

/// Arithmetic in `Z/q` with `q = p^k`.
#[derive(Debug, Clone, Copy)]
struct Local {
    p: u64,
    k: u32,
    q: u64,
}

impl Local {
    fn new(p: u64, k: u32) -> Self {
        Self { p, k, q: p.pow(k) }
    }

    /// p-adic valuation of a residue; `k` for zero.
    fn val(&self, mut x: u64) -> u32 {
        if x == 0 {
            return self.k;
        }
        let mut v = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    fn is_unit(&self, x: u64) -> bool {
        !x.is_multiple_of(self.p)
    }

    fn sub_mul(&self, a: u64, c: u64, b: u64) -> u64 {
        let t = mul_mod(c, b, self.q);
        if a >= t {
            a - t
        } else {
            a + self.q - t
        }
    }
}

/// Dense row-major matrix over `Z/q`.
#[derive(Debug, Clone)]
struct Dense {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Dense {
    fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// row[dst] -= c * row[src], from column `from` on.
    fn sub_row(&mut self, l: &Local, dst: usize, src: usize, c: u64, from: usize) {
        if c == 0 {
            return;
        }
        let cols = self.cols;
        let (d, s) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * cols);
            (&mut lo[dst * cols..(dst + 1) * cols], &hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * cols);
            (&mut hi[..cols], &lo[src * cols..(src + 1) * cols])
        };
        for j in from..cols {
            if s[j] != 0 {
                d[j] = l.sub_mul(d[j], c, s[j]);
            }
        }
    }

    fn scale_row(&mut self, l: &Local, i: usize, c: u64) {
        for x in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *x = mul_mod(*x, c, l.q);
        }
    }
}

/// Smith form over `Z/p^k`: `P * A * Q = D` with `D` diagonal of powers of
/// `p`, nondecreasing. Only the requested transforms are tracked; inverses of
/// `P` and `Q` are stored transposed so every update is a row operation.
#[derive(Debug, Clone)]
pub struct LocalSnf {
    /// valuations of the nonzero diagonal entries, nondecreasing
    pub valuations: Vec<u32>,
    p: Option<Dense>,
    p_inv_t: Option<Dense>,
    q_t: Option<Dense>,
    q_inv: Option<Dense>,
}

#[derive(Default, Clone, Copy)]
struct Track {
    p: bool,
    p_inv: bool,
    q: bool,
    q_inv: bool,
}

fn snf_local(mut a: Dense, l: &Local, track: Track) -> LocalSnf {
    let (r, c) = (a.rows, a.cols);
    let mut p = track.p.then(|| Dense::identity(r));
    let mut p_inv_t = track.p_inv.then(|| Dense::identity(r));
    let mut q_t = track.q.then(|| Dense::identity(c));
    let mut q_inv = track.q_inv.then(|| Dense::identity(c));
    let mut valuations = Vec::new();
    // column swaps are rare; apply them to A directly (strided)
    for t in 0..r.min(c) {
        let mut best: Option<(usize, usize, u32)> = None;
        'search: for i in t..r {
            let row = a.row(i);
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x == 0 {
                    continue;
                }
                let v = l.val(x);
                if best.is_none_or(|b| v < b.2) {
                    best = Some((i, j, v));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj, e)) = best else { break };
        if pi != t {
            a.swap_rows(t, pi);
            for m in [&mut p, &mut p_inv_t].into_iter().flatten() {
                m.swap_rows(t, pi);
            }
        }
        if pj != t {
            for i in 0..r {
                a.data.swap(i * c + t, i * c + pj);
            }
            for m in [&mut q_t, &mut q_inv].into_iter().flatten() {
                m.swap_rows(t, pj);
            }
        }
        let pe = l.p.pow(e);
        let unit = a.at(t, t) / pe;
        let unit_inv = inv_mod(unit, l.q).expect("unit part");
        a.scale_row(l, t, unit_inv);
        if let Some(m) = &mut p {
            m.scale_row(l, t, unit_inv);
        }
        if let Some(m) = &mut p_inv_t {
            m.scale_row(l, t, unit % l.q);
        }
        for i in t + 1..r {
            let x = a.at(i, t);
            if x == 0 {
                continue;
            }
            let f = x / pe;
            a.sub_row(l, i, t, f, t);
            if let Some(m) = &mut p {
                m.sub_row(l, i, t, f, 0);
            }
            if let Some(m) = &mut p_inv_t {
                // P^-1 gains col_t += f * col_i
                m.sub_row(l, t, i, l.q - f % l.q, 0);
            }
        }
        for j in t + 1..c {
            let x = a.at(t, j);
            if x == 0 {
                continue;
            }
            let f = x / pe;
            a.data[t * c + j] = 0;
            if let Some(m) = &mut q_t {
                m.sub_row(l, j, t, f, 0);
            }
            if let Some(m) = &mut q_inv {
                m.sub_row(l, t, j, l.q - f % l.q, 0);
            }
        }
        valuations.push(e);
    }
    LocalSnf { valuations, p, p_inv_t, q_t, q_inv }
}

/// Smith form of a dense matrix over `Z/p^k`, without transforms.
pub fn local_smith_form(p: u64, k: u32, rows: &[Vec<u64>]) -> LocalSnf {
    let l = Local::new(p, k);
    let cols = rows.first().map_or(0, Vec::len);
    let mut a = Dense::zeros(rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            a.data[i * cols + j] = x % l.q;
        }
    }
    snf_local(a, &l, Track::default())
}

struct Pivot {
    col: usize,
    inv: u64,
    /// remaining entries (pivot column excluded); only later pivots' columns
    /// and free columns appear
    rest: Vec<(usize, u64)>,
    rhs: u64,
}

/// Result of sparse unit-pivot elimination of `A x = b` over `Z/p^k`.
struct Eliminated {
    ncols: usize,
    pivots: Vec<Pivot>,
    pivot_of_col: Vec<Option<usize>>,
    /// rows with only non-unit entries, all in free columns
    residual: Vec<(Vec<(usize, u64)>, u64)>,
    /// some row reduced to `0 = b` with `b` nonzero
    inconsistent: bool,
}

struct Reducer {
    acc: Vec<u64>,
    mark: Vec<bool>,
    touched: Vec<usize>,
    heap: BinaryHeap<Reverse<usize>>,
}

impl Reducer {
    fn new(n: usize) -> Self {
        Self { acc: vec![0; n], mark: vec![false; n], touched: Vec::new(), heap: BinaryHeap::new() }
    }

    fn reduce(
        &mut self,
        l: &Local,
        pivots: &[Pivot],
        pivot_of_col: &[Option<usize>],
        row: &[(usize, u64)],
        mut rhs: u64,
    ) -> (Vec<(usize, u64)>, u64) {
        for &(c, v) in row {
            self.acc[c] = v;
            self.mark[c] = true;
            self.touched.push(c);
            if let Some(t) = pivot_of_col[c] {
                self.heap.push(Reverse(t));
            }
        }
        while let Some(Reverse(t)) = self.heap.pop() {
            let pv = &pivots[t];
            let a = self.acc[pv.col];
            if a == 0 {
                continue;
            }
            let f = mul_mod(a, pv.inv, l.q);
            self.acc[pv.col] = 0;
            for &(c, v) in &pv.rest {
                let old = self.acc[c];
                let new = l.sub_mul(old, f, v);
                self.acc[c] = new;
                if !self.mark[c] {
                    self.mark[c] = true;
                    self.touched.push(c);
                }
                if old == 0 && new != 0 {
                    if let Some(t2) = pivot_of_col[c] {
                        self.heap.push(Reverse(t2));
                    }
                }
            }
            rhs = l.sub_mul(rhs, f, pv.rhs);
        }
        let mut out: Vec<(usize, u64)> = Vec::new();
        for &c in &self.touched {
            if self.acc[c] != 0 {
                out.push((c, self.acc[c]));
            }
            self.acc[c] = 0;
            self.mark[c] = false;
        }
        self.touched.clear();
        out.sort_unstable_by_key(|&(c, _)| c);
        (out, rhs)
    }
}

fn eliminate(m: &SparseMatrix, l: &Local, rhs: Option<&[u64]>) -> Eliminated {
    let ncols = m.ncols();
    let mut colcount = vec![0usize; ncols];
    for r in m.rows() {
        for &(c, _) in r {
            colcount[c] += 1;
        }
    }
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by_key(|&i| (m.rows()[i].len(), i));
    let mut pivots: Vec<Pivot> = Vec::new();
    let mut pivot_of_col = vec![None; ncols];
    let mut residual = Vec::new();
    let mut inconsistent = false;
    let mut red = Reducer::new(ncols);
    for i in order {
        let row: Vec<(usize, u64)> = m.rows()[i].iter().map(|&(c, v)| (c, v % l.q)).filter(|e| e.1 != 0).collect();
        let b = rhs.map_or(0, |z| z[i] % l.q);
        let (row, b) = red.reduce(l, &pivots, &pivot_of_col, &row, b);
        let choice = row
            .iter()
            .filter(|&&(_, v)| l.is_unit(v))
            .min_by_key(|&&(c, _)| (colcount[c], c))
            .copied();
        match choice {
            Some((col, v)) => {
                pivot_of_col[col] = Some(pivots.len());
                let rest = row.into_iter().filter(|&(c, _)| c != col).collect();
                pivots.push(Pivot { col, inv: inv_mod(v, l.q).expect("unit"), rest, rhs: b });
            }
            None if row.is_empty() => inconsistent |= b != 0,
            None => residual.push((row, b)),
        }
    }
    // residual rows may meet pivots created after them
    let mut settled = Vec::new();
    for (row, b) in residual {
        let (row, b) = red.reduce(l, &pivots, &pivot_of_col, &row, b);
        if row.is_empty() {
            inconsistent |= b != 0;
        } else {
            settled.push((row, b));
        }
    }
    Eliminated { ncols, pivots, pivot_of_col, residual: settled, inconsistent }
}

impl Eliminated {
    fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_of_col[c].is_none()).collect()
    }

    /// Completes values on the free columns to a solution of the pivot rows.
    fn lift(&self, l: &Local, x: &mut [u64], with_rhs: bool) {
        for pv in self.pivots.iter().rev() {
            let mut acc = if with_rhs { pv.rhs } else { 0 };
            for &(c, v) in &pv.rest {
                acc = l.sub_mul(acc, v, x[c]);
            }
            x[pv.col] = mul_mod(acc, pv.inv, l.q);
        }
    }

    fn residual_dense(&self, free: &[usize]) -> Dense {
        let mut pos = vec![usize::MAX; self.ncols];
        for (i, &c) in free.iter().enumerate() {
            pos[c] = i;
        }
        let mut a = Dense::zeros(self.residual.len(), free.len());
        for (i, (row, _)) in self.residual.iter().enumerate() {
            for &(c, v) in row {
                a.data[i * free.len() + pos[c]] = v;
            }
        }
        a
    }
}

/// `(order, cocycle mod q)` for each cyclic summand of the `p`-primary part.
fn primary_part(d_in: &SparseMatrix, d_out: &SparseMatrix, l: &Local) -> Vec<(u64, Vec<u64>)> {
    let n = d_out.ncols();
    let el = eliminate(d_out, l, None);
    let free = el.free_columns();
    let f = free.len();
    // kernel generators in free coordinates: gen_i = Q e_i * (q / o_i)
    let kernel_snf = (!el.residual.is_empty()).then(|| {
        snf_local(el.residual_dense(&free), l, Track { q: true, q_inv: true, ..Track::default() })
    });
    let gen_val: Vec<u32> = (0..f)
        .map(|i| kernel_snf.as_ref().and_then(|s| s.valuations.get(i).copied()).unwrap_or(l.k))
        .collect();
    let keep: Vec<usize> = (0..f).filter(|&i| gen_val[i] > 0).collect();
    let g = keep.len();
    let orders: Vec<u64> = keep.iter().map(|&i| l.p.pow(gen_val[i])).collect();

    // coordinates of the columns of d_in
    let cols_in = d_in.transpose();
    let mut zc = Dense::zeros(g, d_in.ncols() + g);
    let mut free_vec = vec![0u64; f];
    let mut pos = vec![usize::MAX; n];
    for (i, &c) in free.iter().enumerate() {
        pos[c] = i;
    }
    for (j, col) in cols_in.rows().iter().enumerate() {
        free_vec.iter_mut().for_each(|x| *x = 0);
        for &(r, v) in col {
            if pos[r] != usize::MAX {
                free_vec[pos[r]] = v % l.q;
            }
        }
        for (gi, &i) in keep.iter().enumerate() {
            let y = match &kernel_snf {
                None => free_vec[i],
                Some(s) => {
                    let row = s.q_inv.as_ref().expect("tracked").row(i);
                    row.iter().zip(&free_vec).fold(0, |acc, (&a, &b)| (acc + mul_mod(a, b, l.q)) % l.q)
                }
            };
            let step = l.q / orders[gi];
            debug_assert_eq!(y % step, 0, "image column outside the kernel");
            zc.data[gi * zc.cols + j] = (y / step) % orders[gi];
        }
    }
    for gi in 0..g {
        zc.data[gi * zc.cols + d_in.ncols() + gi] = orders[gi] % l.q;
    }
    let quot = snf_local(zc, l, Track { p_inv: true, ..Track::default() });
    let p_inv_t = quot.p_inv_t.as_ref().expect("tracked");

    let mut out = Vec::new();
    for i in 0..g {
        let v = quot.valuations.get(i).copied().unwrap_or(l.k);
        if v == 0 {
            continue;
        }
        let w = p_inv_t.row(i);
        let mut x = vec![0u64; n];
        for (gi, &ki) in keep.iter().enumerate() {
            if w[gi] == 0 {
                continue;
            }
            let step = l.q / orders[gi];
            let coef = mul_mod(w[gi], step, l.q);
            match &kernel_snf {
                None => {
                    let c = free[ki];
                    x[c] = (x[c] + coef) % l.q;
                }
                Some(s) => {
                    let qrow = s.q_t.as_ref().expect("tracked").row(ki);
                    for (fi, &a) in qrow.iter().enumerate() {
                        let c = free[fi];
                        x[c] = (x[c] + mul_mod(coef, a, l.q)) % l.q;
                    }
                }
            }
        }
        el.lift(l, &mut x, false);
        out.push((l.p.pow(v), x));
    }
    out
}

/// `ker(d_out) / im(d_in)` over `Z/N`, with `N` the common modulus.
pub fn cohomology_mod(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<CohomologyResult> {
    let modulus = d_out.modulus();
    if d_in.modulus() != modulus {
        return Err(Error::ModulusMismatch(d_in.modulus(), modulus));
    }
    if d_in.nrows() != d_out.ncols() {
        return Err(Error::DimensionMismatch { expected: d_out.ncols(), found: d_in.nrows() });
    }
    if let Some(column) = d_out.first_nonzero_product_column(d_in)? {
        return Err(Error::NotAComplex { column, modulus });
    }
    let n = d_out.ncols();
    let mut parts: Vec<(u64, Vec<(u64, Vec<u64>)>)> = Vec::new();
    for (p, k) in factorize(modulus) {
        let l = Local::new(p, k);
        let mut summands = primary_part(d_in, d_out, &l);
        // largest first, to pair up across primes
        summands.sort_by_key(|s| std::cmp::Reverse(s.0));
        parts.push((idempotent(l.q, modulus), summands));
    }
    let count = parts.iter().map(|(_, s)| s.len()).max().unwrap_or(0);
    let mut factors = Vec::with_capacity(count);
    let mut generators = Vec::with_capacity(count);
    for i in 0..count {
        let mut d = 1u64;
        let mut x = vec![0u64; n];
        for (e, summands) in &parts {
            if let Some((o, v)) = summands.get(i) {
                d *= o;
                for (xi, &vi) in x.iter_mut().zip(v) {
                    *xi = (*xi + mul_mod(*e, vi, modulus)) % modulus;
                }
            }
        }
        factors.push(d);
        generators.push(x);
    }
    factors.reverse();
    generators.reverse();
    Ok(CohomologyResult::new(modulus, factors, generators))
}

/// Generators `(order, vector mod q)` of `ker(d)` over `Z/q`.
fn kernel_local(d: &SparseMatrix, l: &Local) -> Vec<(u64, Vec<u64>)> {
    let el = eliminate(d, l, None);
    let free = el.free_columns();
    let snf = (!el.residual.is_empty())
        .then(|| snf_local(el.residual_dense(&free), l, Track { q: true, ..Track::default() }));
    let mut out = Vec::new();
    for i in 0..free.len() {
        let v = snf.as_ref().and_then(|s| s.valuations.get(i).copied()).unwrap_or(l.k);
        if v == 0 {
            continue;
        }
        let step = l.q / l.p.pow(v);
        let mut x = vec![0u64; d.ncols()];
        match &snf {
            None => x[free[i]] = step,
            Some(s) => {
                for (fi, &a) in s.q_t.as_ref().expect("tracked").row(i).iter().enumerate() {
                    x[free[fi]] = mul_mod(step, a, l.q);
                }
            }
        }
        el.lift(l, &mut x, false);
        out.push((l.p.pow(v), x));
    }
    out
}

/// Generators of `ker(d)` over `Z/N`, each with its additive order. Every
/// kernel element is a combination of them, so random coefficients mod `N`
/// sample the kernel uniformly.
pub fn kernel_generators(d: &SparseMatrix) -> Vec<(u64, Vec<u64>)> {
    let modulus = d.modulus();
    let mut out = Vec::new();
    for (p, k) in factorize(modulus) {
        let l = Local::new(p, k);
        let e = idempotent(l.q, modulus);
        for (o, v) in kernel_local(d, &l) {
            out.push((o, v.iter().map(|&x| mul_mod(e, x, modulus)).collect()));
        }
    }
    out
}

fn solve_local(d: &SparseMatrix, z: &[u64], l: &Local) -> Option<Vec<u64>> {
    let el = eliminate(d, l, Some(z));
    if el.inconsistent {
        return None;
    }
    let n = d.ncols();
    let mut x = vec![0u64; n];
    if !el.residual.is_empty() {
        let free = el.free_columns();
        let snf = snf_local(el.residual_dense(&free), l, Track { p: true, q: true, ..Track::default() });
        let p = snf.p.as_ref().expect("tracked");
        let q_t = snf.q_t.as_ref().expect("tracked");
        let rhs: Vec<u64> = el.residual.iter().map(|(_, b)| *b).collect();
        let mut y = vec![0u64; free.len()];
        for i in 0..rhs.len() {
            let b = p.row(i).iter().zip(&rhs).fold(0, |acc, (&u, &v)| (acc + mul_mod(u, v, l.q)) % l.q);
            match snf.valuations.get(i) {
                Some(&e) => {
                    let pe = l.p.pow(e);
                    if b % pe != 0 {
                        return None;
                    }
                    y[i] = b / pe;
                }
                None if b != 0 => return None,
                None => {}
            }
        }
        for (i, &yi) in y.iter().enumerate() {
            if yi == 0 {
                continue;
            }
            for (fi, &qv) in q_t.row(i).iter().enumerate() {
                let c = free[fi];
                x[c] = (x[c] + mul_mod(yi, qv, l.q)) % l.q;
            }
        }
    }
    el.lift(l, &mut x, true);
    Some(x)
}

/// Some `x` with `d x = z (mod N)`, or `None` when no solution exists.
pub fn in_image(d: &SparseMatrix, z: &[u64]) -> Result<Option<Vec<u64>>> {
    if z.len() != d.nrows() {
        return Err(Error::DimensionMismatch { expected: d.nrows(), found: z.len() });
    }
    let modulus = d.modulus();
    let mut x = vec![0u64; d.ncols()];
    for (p, k) in factorize(modulus) {
        let l = Local::new(p, k);
        let Some(xq) = solve_local(d, z, &l) else { return Ok(None) };
        let e = idempotent(l.q, modulus);
        for (xi, &v) in x.iter_mut().zip(&xq) {
            *xi = (*xi + mul_mod(e, v, modulus)) % modulus;
        }
    }
    let check = d.apply(&x);
    let zr: Vec<u64> = z.iter().map(|&v| v % modulus).collect();
    assert_eq!(check, zr, "solver produced a non-solution");
    Ok(Some(x))
}
