//! Finite-rank birigs presented by structure constants over `N`.

use std::collections::BTreeMap;

use crate::double::{double_birig, DoubleCategorification};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::ng::NgCategorification;
use crate::report::Report;

/// Multiplication `e_i e_j = sum_k mult[i,j,k] e_k`, comultiplication
/// `Δ e_i = sum_{j,k} comult[i,j,k] e_j ⊗ e_k`, unit `1 = sum unit[i] e_i`
/// and counit `ε(e_i) = counit[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionBirig {
    basis: Vec<String>,
    mult: Vec<u64>,
    comult: Vec<u64>,
    unit: Vec<u64>,
    counit: Vec<u64>,
}

type Sparse = BTreeMap<usize, u64>;
type Sparse2 = BTreeMap<(usize, usize), u64>;

impl FusionBirig {
    /// All structure constants zero.
    pub fn empty(basis: Vec<String>) -> Self {
        let n = basis.len();
        Self { basis, mult: vec![0; n * n * n], comult: vec![0; n * n * n], unit: vec![0; n], counit: vec![0; n] }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    fn at(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim() + j) * self.dim() + k
    }

    pub fn mult(&self, i: usize, j: usize, k: usize) -> u64 {
        self.mult[self.at(i, j, k)]
    }

    pub fn comult(&self, i: usize, j: usize, k: usize) -> u64 {
        self.comult[self.at(i, j, k)]
    }

    pub fn unit(&self) -> &[u64] {
        &self.unit
    }

    pub fn counit(&self) -> &[u64] {
        &self.counit
    }

    pub fn add_mult(&mut self, i: usize, j: usize, k: usize, c: u64) {
        let p = self.at(i, j, k);
        self.mult[p] += c;
    }

    pub fn set_mult(&mut self, i: usize, j: usize, k: usize, c: u64) {
        let p = self.at(i, j, k);
        self.mult[p] = c;
    }

    pub fn add_comult(&mut self, i: usize, j: usize, k: usize, c: u64) {
        let p = self.at(i, j, k);
        self.comult[p] += c;
    }

    pub fn set_comult(&mut self, i: usize, j: usize, k: usize, c: u64) {
        let p = self.at(i, j, k);
        self.comult[p] = c;
    }

    pub fn set_unit(&mut self, i: usize, c: u64) {
        self.unit[i] = c;
    }

    pub fn set_counit(&mut self, i: usize, c: u64) {
        self.counit[i] = c;
    }

    /// `N[G]`: `g h = gh`, `Δ g = g ⊗ g`, unit `e`, `ε = 1`.
    pub fn group_birig(group: &FiniteGroup) -> Self {
        let mut b = Self::empty(group.elements().map(|g| group.name(g)).collect());
        for g in group.elements() {
            for h in group.elements() {
                b.add_mult(g, h, group.mul(g, h), 1);
            }
            b.add_comult(g, g, g, 1);
            b.set_counit(g, 1);
        }
        b.set_unit(group.identity(), 1);
        b
    }

    fn product(&self, i: usize, j: usize) -> Sparse {
        (0..self.dim()).filter_map(|k| Some((k, self.mult(i, j, k))).filter(|e| e.1 != 0)).collect()
    }

    fn coproduct(&self, i: usize) -> Sparse2 {
        let n = self.dim();
        let mut out = Sparse2::new();
        for j in 0..n {
            for k in 0..n {
                let c = self.comult(i, j, k);
                if c != 0 {
                    out.insert((j, k), c);
                }
            }
        }
        out
    }

    fn times(&self, x: &Sparse, y: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&i, &a) in x {
            for (&j, &b) in y {
                for (k, c) in self.product(i, j) {
                    *out.entry(k).or_default() += a * b * c;
                }
            }
        }
        out
    }
}

fn basis_vec(i: usize) -> Sparse {
    Sparse::from([(i, 1)])
}

/// First coordinate where two sparse vectors differ, with both values.
fn diff<K: Ord + Copy>(a: &BTreeMap<K, u64>, b: &BTreeMap<K, u64>) -> Option<(K, u64, u64)> {
    a.keys()
        .chain(b.keys())
        .copied()
        .filter_map(|k| {
            let (x, y) = (a.get(&k).copied().unwrap_or(0), b.get(&k).copied().unwrap_or(0));
            (x != y).then_some((k, x, y))
        })
        .min_by_key(|e| e.0)
}

fn instance<K: Ord + Copy>(
    mut indices: Vec<usize>,
    a: &BTreeMap<K, u64>,
    b: &BTreeMap<K, u64>,
    key: impl Fn(K) -> Vec<usize>,
) -> (Vec<usize>, u64, u64) {
    match diff(a, b) {
        None => (indices, 0, 0),
        Some((k, x, y)) => {
            indices.extend(key(k));
            (indices, x, y)
        }
    }
}

/// Brute-force check of every birig axiom on the structure constants.
pub fn verify_birig(b: &FusionBirig) -> Report {
    let n = b.dim();
    let mut report = Report::new();
    let one: Sparse = b.unit.iter().enumerate().filter(|e| *e.1 != 0).map(|(i, &c)| (i, c)).collect();
    let products: Vec<Vec<Sparse>> = (0..n).map(|i| (0..n).map(|j| b.product(i, j)).collect()).collect();
    let coproducts: Vec<Sparse2> = (0..n).map(|i| b.coproduct(i)).collect();
    let single = |k: usize| vec![k];
    let pair = |(j, k): (usize, usize)| vec![j, k];
    let triple = |(j, k, l): (usize, usize, usize)| vec![j, k, l];

    let mut assoc = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = b.times(&products[i][j], &basis_vec(k));
                let right = b.times(&basis_vec(i), &products[j][k]);
                assoc.push(instance(vec![i, j, k], &left, &right, single));
            }
        }
    }
    report.family("associativity", assoc);

    report.family(
        "unit",
        (0..n).flat_map(|i| {
            let e = basis_vec(i);
            let (l, r) = (b.times(&one, &e), b.times(&e, &one));
            [instance(vec![i, 0], &l, &e, single), instance(vec![i, 1], &r, &e, single)]
        }),
    );

    // (Δ ⊗ 1)Δ against (1 ⊗ Δ)Δ
    report.family(
        "coassociativity",
        (0..n).map(|i| {
            let mut left = BTreeMap::<(usize, usize, usize), u64>::new();
            let mut right = BTreeMap::<(usize, usize, usize), u64>::new();
            for (&(a, c), &x) in &coproducts[i] {
                for (&(p, q), &y) in &coproducts[a] {
                    *left.entry((p, q, c)).or_default() += x * y;
                }
                for (&(p, q), &y) in &coproducts[c] {
                    *right.entry((a, p, q)).or_default() += x * y;
                }
            }
            instance(vec![i], &left, &right, triple)
        }),
    );

    report.family(
        "counit",
        (0..n).flat_map(|i| {
            let mut l = Sparse::new();
            let mut r = Sparse::new();
            for (&(a, c), &x) in &coproducts[i] {
                *l.entry(c).or_default() += b.counit[a] * x;
                *r.entry(a).or_default() += b.counit[c] * x;
            }
            l.retain(|_, v| *v != 0);
            r.retain(|_, v| *v != 0);
            let e = basis_vec(i);
            [instance(vec![i, 0], &l, &e, single), instance(vec![i, 1], &r, &e, single)]
        }),
    );

    // Δ(xy) = Δ(x)Δ(y) in the componentwise product on the tensor square
    let mut hom = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut left = Sparse2::new();
            for (&a, &x) in &products[i][j] {
                for (&k, &y) in &coproducts[a] {
                    *left.entry(k).or_default() += x * y;
                }
            }
            let mut right = Sparse2::new();
            for (&(p, q), &x) in &coproducts[i] {
                for (&(r, s), &y) in &coproducts[j] {
                    for (&u, &c1) in &products[p][r] {
                        for (&v, &c2) in &products[q][s] {
                            *right.entry((u, v)).or_default() += x * y * c1 * c2;
                        }
                    }
                }
            }
            hom.push(instance(vec![i, j], &left, &right, pair));
        }
    }
    report.family("Δ multiplicative", hom);

    let mut delta_one = Sparse2::new();
    let mut one_one = Sparse2::new();
    for (&a, &x) in &one {
        for (&k, &y) in &coproducts[a] {
            *delta_one.entry(k).or_default() += x * y;
        }
        for (&c, &y) in &one {
            one_one.insert((a, c), x * y);
        }
    }
    report.family("Δ unital", [instance(vec![], &delta_one, &one_one, pair)]);

    let counit_of = |v: &Sparse| v.iter().map(|(&k, &c)| b.counit[k] * c).sum::<u64>();
    let mut eps = Vec::new();
    for i in 0..n {
        for j in 0..n {
            eps.push((vec![i, j], counit_of(&products[i][j]), b.counit[i] * b.counit[j]));
        }
    }
    report.family("ε multiplicative", eps);
    report.family("ε unital", [(vec![], counit_of(&one), 1)]);
    report
}

/// Categorifications that remember the birig they decategorify to.
pub trait Decategorify {
    fn groth_birig(&self) -> FusionBirig;
}

impl Decategorify for NgCategorification {
    fn groth_birig(&self) -> FusionBirig {
        FusionBirig::group_birig(&self.group)
    }
}

impl Decategorify for DoubleCategorification {
    fn groth_birig(&self) -> FusionBirig {
        double_birig(self.triple.group())
    }
}

/// Fusion rules of a skeletal categorification: simple objects, their
/// products and coproducts. The cochain data never enters.
pub fn groth_birig_of<C: Decategorify>(cat: &C) -> FusionBirig {
    cat.groth_birig()
}

/// Whether `m m' = m' m = 1` for square `N`-matrices. When they are
/// mutually inverse both must be permutation matrices; a counterexample is
/// reported as [`Error::NonPermutationInverse`].
pub fn inverse_permutation_check(m: &[Vec<i64>], m2: &[Vec<i64>]) -> Result<bool> {
    let n = m.len();
    for (mat, name_offset) in [(m, 0), (m2, n)] {
        if mat.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: mat.len() });
        }
        for (r, row) in mat.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            if let Some(c) = row.iter().position(|&v| v < 0) {
                return Err(Error::NegativeEntry { row: r + name_offset, col: c });
            }
        }
    }
    let is_identity = |a: &[Vec<i64>], b: &[Vec<i64>]| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s: i128 = (0..n).map(|k| i128::from(a[i][k]) * i128::from(b[k][j])).sum();
                s == i128::from(i == j)
            })
        })
    };
    if !(is_identity(m, m2) && is_identity(m2, m)) {
        return Ok(false);
    }
    let permutation = |a: &[Vec<i64>]| {
        a.iter().all(|row| row.iter().filter(|&&v| v == 1).count() == 1 && row.iter().all(|&v| v <= 1))
            && (0..n).all(|j| a.iter().filter(|row| row[j] == 1).count() == 1)
    };
    if permutation(m) && permutation(m2) {
        Ok(true)
    } else {
        Err(Error::NonPermutationInverse)
    }
}
