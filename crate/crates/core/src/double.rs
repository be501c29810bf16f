//! Categorifications of the Drinfel'd double `D(N[G])`.
//!
//! A bitensor categorification without unit data is a triple
//! `(alpha, phi, beta)` in `C_{3,1} + C_{2,2} + C_{1,3}` satisfying the
//! pentagon, the two compatibility cubes and the dual pentagon. Additively
//! these read `d1 alpha = 0`, `d2 alpha + d1 phi = 0`, `d2 phi + d1 beta = 0`
//! and `d2 beta = 0`. Equivalences are witnesses `(f~, f_sim)` in
//! `C_{2,1} + C_{1,2}` acting by
//! `(d1 f~, d1 f_sim - d2 f~, -d2 f_sim)`.
//!
//! The coherence table for the unit and counit data is written in terms of
//! the coherer in the opposite orientation, `Phi = -phi`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::cochain::{
    collect_row, d1_matrix, d1_twisted, d2_hatted, d2_matrix, decode, encode, same_group, tuple_count, BiCochain,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, ParityMap};
use crate::homology::{cohomology_mod, in_image, CohomologyResult, SparseMatrix};
use crate::ng::tuples;
use crate::report::Report;
use crate::rig::FusionBirig;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleTriple {
    pub alpha: BiCochain,
    pub phi: BiCochain,
    pub beta: BiCochain,
}

fn expect(c: &BiCochain, n: usize, m: usize) -> Result<()> {
    let (cn, cm) = c.bidegree();
    if (cn, cm) != (n, m) {
        return Err(Error::BidegreeMismatch(n, m, cn, cm));
    }
    Ok(())
}

fn compatible(a: &BiCochain, b: &BiCochain) -> Result<()> {
    if !same_group(a.group(), b.group()) {
        return Err(Error::GroupMismatch);
    }
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch(a.modulus(), b.modulus()));
    }
    Ok(())
}

impl CocycleTriple {
    pub fn new(alpha: BiCochain, phi: BiCochain, beta: BiCochain) -> Result<Self> {
        expect(&alpha, 3, 1)?;
        expect(&phi, 2, 2)?;
        expect(&beta, 1, 3)?;
        compatible(&alpha, &phi)?;
        compatible(&alpha, &beta)?;
        Ok(Self { alpha, phi, beta })
    }

    pub fn zero(group: Arc<FiniteGroup>, modulus: u64) -> Self {
        Self {
            alpha: BiCochain::zeros(group.clone(), modulus, 3, 1),
            phi: BiCochain::zeros(group.clone(), modulus, 2, 2),
            beta: BiCochain::zeros(group, modulus, 1, 3),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.alpha.group()
    }

    pub fn modulus(&self) -> u64 {
        self.alpha.modulus()
    }

    /// `alpha`, `phi`, `beta` concatenated.
    pub fn to_vector(&self) -> Vec<u64> {
        [&self.alpha, &self.phi, &self.beta].iter().flat_map(|c| c.values().iter().copied()).collect()
    }

    pub fn from_vector(group: Arc<FiniteGroup>, modulus: u64, v: &[u64]) -> Result<Self> {
        let size = tuple_count(group.order(), 4);
        if v.len() != 3 * size {
            return Err(Error::DimensionMismatch { expected: 3 * size, found: v.len() });
        }
        Self::new(
            BiCochain::from_values(group.clone(), modulus, 3, 1, v[..size].to_vec())?,
            BiCochain::from_values(group.clone(), modulus, 2, 2, v[size..2 * size].to_vec())?,
            BiCochain::from_values(group, modulus, 1, 3, v[2 * size..].to_vec())?,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { alpha: self.alpha.add(&other.alpha), phi: self.phi.add(&other.phi), beta: self.beta.add(&other.beta) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { alpha: self.alpha.sub(&other.alpha), phi: self.phi.sub(&other.phi), beta: self.beta.sub(&other.beta) }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.phi.is_zero() && self.beta.is_zero()
    }
}

/// Structure constants of `D(N[G])` on the basis `(g, h^)`, indexed `g * |G| + h`.
pub fn double_birig(group: &FiniteGroup) -> FusionBirig {
    let n = group.order();
    let e = group.identity();
    let idx = |g: usize, h: usize| g * n + h;
    let basis = (0..n * n).map(|i| format!("({},^{})", group.name(i / n), group.name(i % n))).collect();
    let mut b = FusionBirig::empty(basis);
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                // (g,h^)(k,l^) is nonzero only for l = k^-1 h k
                let l = group.mul(group.inv(k), group.mul(h, k));
                b.add_mult(idx(g, h), idx(k, l), idx(group.mul(g, k), l), 1);
            }
            for k in 0..n {
                // k l = h
                let l = group.mul(group.inv(k), h);
                b.add_comult(idx(g, h), idx(g, k), idx(g, l), 1);
            }
            b.set_counit(idx(g, h), u64::from(h == e));
        }
    }
    for h in 0..n {
        b.set_unit(idx(e, h), 1);
    }
    b
}

/// The four equation families on a triple, each over 5 arguments.
pub const TRIPLE_FAMILIES: [&str; 4] = ["pentagon", "Δ compatibility cube", "⊗ compatibility cube", "dual pentagon"];

/// Terms of one instance of a family, as `(block, position, on_lhs)` where
/// block 0, 1, 2 is `alpha`, `phi`, `beta`.
fn family_terms(group: &FiniteGroup, family: usize, x: &[usize], push: &mut impl FnMut(usize, usize, bool)) {
    let o = group.order();
    let enc = |a: &[usize]| encode(o, a);
    let mul = |a, b| group.mul(a, b);
    let conj = |a, b| group.conjugate(a, b);
    match family {
        0 => {
            let [g, k, m, p, q] = [x[0], x[1], x[2], x[3], x[4]];
            push(0, enc(&[k, m, p, q]), true);
            push(0, enc(&[g, mul(k, m), p, q]), true);
            push(0, enc(&[g, k, m, conj(p, q)]), true);
            push(0, enc(&[mul(g, k), m, p, q]), false);
            push(0, enc(&[g, k, mul(m, p), q]), false);
        }
        1 => {
            let [g, k, m, p, q] = [x[0], x[1], x[2], x[3], x[4]];
            push(0, enc(&[g, k, m, p]), true);
            push(0, enc(&[g, k, m, q]), true);
            push(1, enc(&[k, m, p, q]), true);
            push(1, enc(&[g, mul(k, m), p, q]), true);
            push(1, enc(&[g, k, conj(m, p), conj(m, q)]), false);
            push(1, enc(&[mul(g, k), m, p, q]), false);
            push(0, enc(&[g, k, m, mul(p, q)]), false);
        }
        2 => {
            let [g, k, p, r, s] = [x[0], x[1], x[2], x[3], x[4]];
            push(1, enc(&[g, k, p, r]), true);
            push(1, enc(&[g, k, mul(p, r), s]), true);
            push(2, enc(&[mul(g, k), p, r, s]), true);
            push(2, enc(&[g, conj(k, p), conj(k, r), conj(k, s)]), false);
            push(2, enc(&[k, p, r, s]), false);
            push(1, enc(&[g, k, r, s]), false);
            push(1, enc(&[g, k, p, mul(r, s)]), false);
        }
        _ => {
            let [g, i, j, k, l] = [x[0], x[1], x[2], x[3], x[4]];
            push(2, enc(&[g, j, k, l]), true);
            push(2, enc(&[g, i, mul(j, k), l]), true);
            push(2, enc(&[g, i, j, k]), true);
            push(2, enc(&[g, mul(i, j), k, l]), false);
            push(2, enc(&[g, i, j, mul(k, l)]), false);
        }
    }
}

/// Checks the pentagon, both compatibility cubes and the dual pentagon at
/// every index tuple, as printed (products of scalars on each side).
pub fn verify_triple(t: &CocycleTriple) -> Report {
    let group = t.group().clone();
    let n = t.modulus();
    let blocks = [t.alpha.values(), t.phi.values(), t.beta.values()];
    let count = tuple_count(group.order(), 5);
    let mut report = Report::new();
    for (f, name) in TRIPLE_FAMILIES.iter().enumerate() {
        let instances: Vec<(Vec<usize>, u64, u64)> = (0..count)
            .into_par_iter()
            .map(|i| {
                let mut x = [0usize; 5];
                decode(group.order(), i, &mut x);
                let (mut lhs, mut rhs) = (0u64, 0u64);
                family_terms(&group, f, &x, &mut |b, pos, left| {
                    let v = blocks[b][pos];
                    if left {
                        lhs = (lhs + v) % n;
                    } else {
                        rhs = (rhs + v) % n;
                    }
                });
                (x.to_vec(), lhs, rhs)
            })
            .collect();
        report.family(name, instances);
    }
    report
}

/// `L3`: the four families stacked, as a map from triples to `4 |G|^5`
/// residues (lhs minus rhs). Its kernel is the set of valid triples.
pub fn triple_constraint_matrix(group: &FiniteGroup, modulus: u64) -> SparseMatrix {
    let o = group.order();
    let count = tuple_count(o, 5);
    let size = tuple_count(o, 4);
    let rows: Vec<Vec<(usize, u64)>> = (0..4 * count)
        .into_par_iter()
        .map(|r| {
            let mut x = [0usize; 5];
            decode(o, r % count, &mut x);
            let mut row = Vec::with_capacity(7);
            family_terms(group, r / count, &x, &mut |b, pos, left| {
                row.push((b * size + pos, if left { 1 } else { -1 }));
            });
            collect_row(row, modulus)
        })
        .collect();
    SparseMatrix::from_rows(4 * count, 3 * size, modulus, rows)
}

/// `L2`: witnesses `(f~, f_sim)` to the triple `(d1 f~, d1 f_sim - d2 f~, -d2 f_sim)`.
pub fn equivalence_matrix(group: &FiniteGroup, modulus: u64) -> SparseMatrix {
    let size3 = tuple_count(group.order(), 3);
    let size4 = tuple_count(group.order(), 4);
    let neg = |v: u64| (modulus - v) % modulus;
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); 3 * size4];
    let blocks = [
        (d1_matrix(group, modulus, 2, 1), 0, 0, false),
        (d2_matrix(group, modulus, 2, 1), 1, 0, true),
        (d1_matrix(group, modulus, 1, 2), 1, 1, false),
        (d2_matrix(group, modulus, 1, 2), 2, 1, true),
    ];
    for (m, row_block, col_block, negate) in blocks {
        for (i, r) in m.rows().iter().enumerate() {
            rows[row_block * size4 + i]
                .extend(r.iter().map(|&(c, v)| (col_block * size3 + c, if negate { neg(v) } else { v })));
        }
    }
    SparseMatrix::from_rows(3 * size4, 2 * size3, modulus, rows)
}

/// Witness for an equivalence of double categorifications:
/// `t - t' = (d1 f~, d1 f_sim - d2 f~, -d2 f_sim)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleEquivalenceWitness {
    pub f_tilde: BiCochain,
    pub f_sim: BiCochain,
    /// present when unit and counit data are compared
    pub f0: Option<BiCochain>,
    pub f_sup0: Option<BiCochain>,
}

impl DoubleEquivalenceWitness {
    /// The triple difference this witness accounts for.
    pub fn coboundary(&self) -> CocycleTriple {
        CocycleTriple {
            alpha: d1_twisted(&self.f_tilde),
            phi: d1_twisted(&self.f_sim).sub(&d2_hatted(&self.f_tilde)),
            beta: d2_hatted(&self.f_sim).neg(),
        }
    }
}

fn require_valid(t: &CocycleTriple) -> Result<()> {
    let report = verify_triple(t);
    if report.valid {
        return Ok(());
    }
    Err(Error::InvalidTriple {
        failures: report.violations.len(),
        first: report.first_violation().map(|v| v.equation.clone()).unwrap_or_default(),
    })
}

/// `t - coboundary(w)`: an equivalent triple.
pub fn apply_equivalence(t: &CocycleTriple, w: &DoubleEquivalenceWitness) -> CocycleTriple {
    t.sub(&w.coboundary())
}

/// An equivalent triple with `phi(e,e;-,-) = 0`, using `f_sim(g;k,l) = phi(e,e;k,l)`.
pub fn normalize_triple(t: &CocycleTriple) -> Result<(CocycleTriple, DoubleEquivalenceWitness)> {
    require_valid(t)?;
    let g = t.group().clone();
    let n = t.modulus();
    let e = g.identity();
    let phi = &t.phi;
    let f_sim = BiCochain::from_fn(g.clone(), n, 1, 2, |x| phi.at(&[e, e, x[1], x[2]]) as i64);
    let w = DoubleEquivalenceWitness { f_tilde: BiCochain::zeros(g, n, 2, 1), f_sim, f0: None, f_sup0: None };
    Ok((apply_equivalence(t, &w), w))
}

/// A witness `w` with `t - t' = coboundary(w)`, or `None`.
pub fn equivalent_double(t: &CocycleTriple, t2: &CocycleTriple) -> Result<Option<DoubleEquivalenceWitness>> {
    compatible(&t.alpha, &t2.alpha)?;
    require_valid(t)?;
    require_valid(t2)?;
    let g = t.group().clone();
    let n = t.modulus();
    let l2 = equivalence_matrix(&g, n);
    let Some(x) = in_image(&l2, &t.sub(t2).to_vector())? else { return Ok(None) };
    let size3 = tuple_count(g.order(), 3);
    Ok(Some(DoubleEquivalenceWitness {
        f_tilde: BiCochain::from_values(g.clone(), n, 2, 1, x[..size3].to_vec())?,
        f_sim: BiCochain::from_values(g, n, 1, 2, x[size3..].to_vec())?,
        f0: None,
        f_sup0: None,
    }))
}

/// `ker(L3) / im(L2)`: equivalence classes of bitensor categorifications.
pub fn classify_double(group: &FiniteGroup, modulus: u64) -> Result<CohomologyResult> {
    crate::cochain::check_modulus(modulus)?;
    cohomology_mod(&equivalence_matrix(group, modulus), &triple_constraint_matrix(group, modulus))
}

/// Degree-3 cohomology of the row `(C_{n,1}, d1)`: the associators alone.
pub fn classify_double_algebra(group: &FiniteGroup, modulus: u64) -> Result<CohomologyResult> {
    crate::cochain::row_cohomology(group, modulus, 1, 3)
}

/// `(0, 0, beta)` with `beta(g;i,j,k) = N/2` exactly when all four are odd.
pub fn beta_example(group: Arc<FiniteGroup>, parity: &ParityMap, modulus: u64) -> Result<CocycleTriple> {
    crate::cochain::check_modulus(modulus)?;
    if !modulus.is_multiple_of(2) {
        return Err(Error::OddModulus(modulus));
    }
    if parity.as_slice().len() != group.order() {
        return Err(Error::ParityLength { found: parity.as_slice().len(), order: group.order() });
    }
    let half = (modulus / 2) as i64;
    let beta = BiCochain::from_fn(group.clone(), modulus, 1, 3, |x| {
        if x.iter().all(|&a| parity.is_odd(a)) {
            half
        } else {
            0
        }
    });
    let mut t = CocycleTriple::zero(group, modulus);
    t.beta = beta;
    Ok(t)
}

/// Unit and counit data of a biunital double categorification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleDerived {
    pub rho: BiCochain,
    pub lambda: BiCochain,
    pub r: BiCochain,
    pub l: BiCochain,
    pub tau: BiCochain,
    pub delta: BiCochain,
    pub eta: BiCochain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCategorification {
    pub triple: CocycleTriple,
    /// `rho(e; k^)`
    pub rho0: BiCochain,
    /// `r(g; e^)`
    pub r0: BiCochain,
    pub derived: Option<DoubleDerived>,
}

impl DoubleCategorification {
    pub fn new(triple: CocycleTriple, rho0: BiCochain, r0: BiCochain) -> Result<Self> {
        expect(&rho0, 0, 1)?;
        expect(&r0, 1, 0)?;
        compatible(&triple.alpha, &rho0)?;
        compatible(&triple.alpha, &r0)?;
        Ok(Self { triple, rho0, r0, derived: None })
    }

    /// Everything else in terms of the triple, `rho0` and `r0`.
    pub fn derive(&self) -> DoubleDerived {
        let t = &self.triple;
        let g = t.group().clone();
        let n = t.modulus();
        let e = g.identity();
        let (a, phi, b) = (&t.alpha, &t.phi, &t.beta);
        let (rho0, r0) = (&self.rho0, &self.r0);
        let v = |x: u64| x as i64;
        let rho = BiCochain::from_fn(g.clone(), n, 1, 1, |x| v(a.at(&[x[0], e, e, x[1]])) + v(rho0.at(&[x[1]])));
        let lambda = BiCochain::from_fn(g.clone(), n, 1, 1, |x| {
            -v(a.at(&[e, e, x[0], x[1]])) + v(rho0.at(&[g.conjugate(x[0], x[1])]))
        });
        let r = BiCochain::from_fn(g.clone(), n, 1, 1, |x| v(b.at(&[x[0], x[1], e, e])) + v(r0.at(&[x[0]])));
        let l = BiCochain::from_fn(g.clone(), n, 1, 1, |x| -v(b.at(&[x[0], e, e, x[1]])) + v(r0.at(&[x[0]])));
        // Phi = -phi in all three formulas below
        let d1r = d1_twisted(&r);
        let tau = BiCochain::from_fn(g.clone(), n, 2, 0, |x| -v(d1r.at(&[x[0], x[1], e])) + v(phi.at(&[x[0], x[1], e, e])));
        let d2rho = d2_hatted(&rho);
        let delta = BiCochain::from_fn(g.clone(), n, 0, 2, |x| -v(d2rho.at(&[e, x[0], x[1]])) + v(phi.at(&[e, e, x[0], x[1]])));
        let eta = v(rho0.at(&[e])) + v(r0.at(&[e])) - v(phi.at(&[e, e, e, e]));
        let eta = BiCochain::constant(g.clone(), n, 0, 0, crate::cochain::reduce(eta, n));
        DoubleDerived { rho, lambda, r, l, tau, delta, eta }
    }
}

fn delta_violation(group: &FiniteGroup, delta: &BiCochain) -> Option<(usize, usize, usize, usize, usize)> {
    let o = group.order();
    for c in 0..o {
        for k in 0..o {
            for l in 0..o {
                let (gk, gl) = (group.conjugate(c, k), group.conjugate(c, l));
                if delta.at(&[k, l]) != delta.at(&[gk, gl]) {
                    return Some((c, k, l, gk, gl));
                }
            }
        }
    }
    None
}

/// The biunital categorification with the given `rho(e;-)` and `r(-;e)`.
pub fn build_double_biunital(t: &CocycleTriple, rho0: &BiCochain, r0: &BiCochain) -> Result<DoubleCategorification> {
    require_valid(t)?;
    let mut dc = DoubleCategorification::new(t.clone(), rho0.clone(), r0.clone())?;
    let derived = dc.derive();
    if let Some((conjugator, k, l, gk, gl)) = delta_violation(t.group(), &derived.delta) {
        return Err(Error::ConstraintViolated { conjugator, k, l, gk, gl });
    }
    dc.derived = Some(derived);
    Ok(dc)
}

pub const TABLE_ROWS: [&str; 12] = [
    "triangle for tensor structure",
    "triangle for cotensor structure",
    "Δ respects right unit",
    "Δ respects left unit",
    "⊗ respects right counit",
    "⊗ respects left counit",
    "ε preserves ⊗",
    "I preserves Δ",
    "ε respects right unit",
    "ε respects left unit",
    "I respects right counit",
    "I respects left counit",
];

/// The twelve unit/counit coherence rows at every index tuple, plus the
/// conjugation invariance of `delta`.
pub fn verify_coherence_table(dc: &DoubleCategorification) -> Report {
    let t = &dc.triple;
    let g = t.group().clone();
    let o = g.order();
    let e = g.identity();
    let n = t.modulus();
    let md = |x: u64| x % n;
    let d = dc.derived.clone().unwrap_or_else(|| dc.derive());
    let (a, b) = (&t.alpha, &t.beta);
    let big_phi = t.phi.neg();
    let ph = |x: [usize; 4]| big_phi.at(&x);
    let (rho, lambda, r, l, tau, delta) = (&d.rho, &d.lambda, &d.r, &d.l, &d.tau, &d.delta);
    let eta = d.eta.scalar();
    let triples = tuples(o, 3);
    let mul = |x, y| g.mul(x, y);
    let conj = |x, y| g.conjugate(x, y);
    let mut report = Report::new();
    let rows: [Box<dyn Fn(&[usize]) -> (u64, u64) + Sync + '_>; 8] = [
        Box::new(|x| {
            let (p, k, q) = (x[0], x[1], x[2]);
            (rho.at(&[p, conj(k, q)]), md(a.at(&[p, e, k, q]) + lambda.at(&[k, q])))
        }),
        Box::new(|x| {
            let (p, k, q) = (x[0], x[1], x[2]);
            (r.at(&[p, k]), md(b.at(&[p, k, e, q]) + l.at(&[p, q])))
        }),
        Box::new(|x| {
            let (p, k, q) = (x[0], x[1], x[2]);
            (md(ph([p, e, k, q]) + delta.at(&[k, q]) + rho.at(&[p, k]) + rho.at(&[p, q])), rho.at(&[p, mul(k, q)]))
        }),
        Box::new(|x| {
            let (p, k, q) = (x[0], x[1], x[2]);
            (
                md(ph([e, p, k, q]) + delta.at(&[k, q]) + lambda.at(&[p, k]) + lambda.at(&[p, q])),
                lambda.at(&[p, mul(k, q)]),
            )
        }),
        Box::new(|x| {
            let (p, k, q) = (x[0], x[1], x[2]);
            (
                md(ph([p, k, q, e]) + tau.at(&[p, k]) + r.at(&[p, conj(k, q)]) + r.at(&[k, q])),
                r.at(&[mul(p, k), q]),
            )
        }),
        Box::new(|x| {
            let (p, k, q) = (x[0], x[1], x[2]);
            (
                md(ph([p, k, e, q]) + tau.at(&[p, k]) + l.at(&[p, conj(k, q)]) + l.at(&[k, q])),
                l.at(&[mul(p, k), q]),
            )
        }),
        Box::new(|x| {
            let (p, k, m) = (x[0], x[1], x[2]);
            (
                md(a.at(&[p, k, m, e]) + tau.at(&[p, mul(k, m)]) + tau.at(&[k, m])),
                md(tau.at(&[p, k]) + tau.at(&[mul(p, k), m])),
            )
        }),
        Box::new(|x| {
            let (k, q, m) = (x[0], x[1], x[2]);
            (
                md(b.at(&[e, k, q, m]) + delta.at(&[k, mul(q, m)]) + delta.at(&[q, m])),
                md(delta.at(&[k, q]) + delta.at(&[mul(k, q), m])),
            )
        }),
    ];
    for (name, row) in TABLE_ROWS.iter().zip(&rows) {
        let inst: Vec<_> = triples
            .par_iter()
            .map(|x| {
                let (lhs, rhs) = row(x);
                (x.clone(), lhs, rhs)
            })
            .collect();
        report.family(name, inst);
    }
    let singles: Vec<Vec<usize>> = (0..o).map(|x| vec![x]).collect();
    let unit_rows: [(&str, Box<dyn Fn(usize) -> (u64, u64) + '_>); 4] = [
        (TABLE_ROWS[8], Box::new(|x| (md(tau.at(&[x, e]) + eta), rho.at(&[x, e])))),
        (TABLE_ROWS[9], Box::new(|x| (md(tau.at(&[e, x]) + eta), lambda.at(&[x, e])))),
        (TABLE_ROWS[10], Box::new(|x| (md(delta.at(&[x, e]) + eta), r.at(&[e, x])))),
        (TABLE_ROWS[11], Box::new(|x| (md(delta.at(&[e, x]) + eta), l.at(&[e, x])))),
    ];
    for (name, row) in unit_rows {
        report.family(
            name,
            singles.iter().map(|x| {
                let (lhs, rhs) = row(x[0]);
                (x.clone(), lhs, rhs)
            }),
        );
    }
    report.family(
        "δ conjugation invariance",
        triples.iter().map(|x| {
            let (c, k, q) = (x[0], x[1], x[2]);
            (x.clone(), delta.at(&[k, q]), delta.at(&[conj(c, k), conj(c, q)]))
        }),
    );
    report
}

/// `verify_triple` followed by the coherence table.
pub fn verify_double(dc: &DoubleCategorification) -> Report {
    let mut report = verify_triple(&dc.triple);
    report.merge(verify_coherence_table(dc));
    report
}

/// Equivalence of biunital categorifications: the triple witness plus
/// `f0(k) = rho0(k) - rho0'(k) - f~(e,e;k)` and
/// `f^0(g) = r0(g) - r0'(g) - f_sim(g;e,e)`.
pub fn equivalent_biunital(
    a: &DoubleCategorification,
    b: &DoubleCategorification,
) -> Result<Option<DoubleEquivalenceWitness>> {
    let Some(mut w) = equivalent_double(&a.triple, &b.triple)? else { return Ok(None) };
    let g = a.triple.group().clone();
    let n = a.triple.modulus();
    let e = g.identity();
    let v = |x: u64| x as i64;
    let (ft, fs) = (&w.f_tilde, &w.f_sim);
    w.f0 = Some(BiCochain::from_fn(g.clone(), n, 0, 1, |x| {
        v(a.rho0.at(x)) - v(b.rho0.at(x)) - v(ft.at(&[e, e, x[0]]))
    }));
    w.f_sup0 = Some(BiCochain::from_fn(g, n, 1, 0, |x| v(a.r0.at(x)) - v(b.r0.at(x)) - v(fs.at(&[x[0], e, e]))));
    Ok(Some(w))
}
