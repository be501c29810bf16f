//! Categorifications of the group birig `N[G]`: a 3-cocycle `alpha` for the
//! tensor product, optionally a unit scalar `rho`, a coherer `phi` (which
//! forces `alpha = d1 phi` and a trivial coassociator) and a counit `r`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cochain::{d1_matrix, d1_twisted, same_group, BiCochain};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::homology::{cohomology_mod, in_image, CohomologyResult};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Algebra,
    Unital,
    Bialgebra,
    Biunital,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Algebra => "algebra",
            Level::Unital => "unital",
            Level::Bialgebra => "bialgebra",
            Level::Biunital => "biunital",
        }
    }

    pub fn has_unit(self) -> bool {
        matches!(self, Level::Unital | Level::Biunital)
    }

    pub fn has_coherer(self) -> bool {
        matches!(self, Level::Bialgebra | Level::Biunital)
    }
}

impl std::str::FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "algebra" => Ok(Level::Algebra),
            "unital" => Ok(Level::Unital),
            "bialgebra" => Ok(Level::Bialgebra),
            "biunital" => Ok(Level::Biunital),
            other => Err(Error::Invalid(format!("unknown level `{other}`"))),
        }
    }
}

/// Unit and counit data determined by `(alpha, phi, rho, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgDerived {
    /// `rho_g`, the right unitor at `g`
    pub rho_cochain: BiCochain,
    pub lambda: BiCochain,
    pub l: BiCochain,
    pub tau: BiCochain,
    pub delta: BiCochain,
    pub eta: BiCochain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgCategorification {
    pub group: Arc<FiniteGroup>,
    pub modulus: u64,
    pub level: Level,
    pub alpha: BiCochain,
    pub phi: Option<BiCochain>,
    pub rho: Option<BiCochain>,
    pub r: Option<BiCochain>,
    pub derived: Option<NgDerived>,
}

fn expect_bidegree(c: &BiCochain, n: usize, m: usize) -> Result<()> {
    let (cn, cm) = c.bidegree();
    if (cn, cm) != (n, m) {
        return Err(Error::BidegreeMismatch(n, m, cn, cm));
    }
    Ok(())
}

fn same_base(c: &BiCochain, group: &Arc<FiniteGroup>, modulus: u64) -> Result<()> {
    if !same_group(c.group(), group) {
        return Err(Error::GroupMismatch);
    }
    if c.modulus() != modulus {
        return Err(Error::ModulusMismatch(modulus, c.modulus()));
    }
    Ok(())
}

impl NgCategorification {
    /// Checks that every field the level needs is present with the right shape.
    /// At the coherer levels a missing `alpha` is filled in as `d1 phi`.
    pub fn new(
        level: Level,
        alpha: Option<BiCochain>,
        phi: Option<BiCochain>,
        rho: Option<BiCochain>,
        r: Option<BiCochain>,
    ) -> Result<Self> {
        let name = level.name();
        if level.has_coherer() && phi.is_none() {
            return Err(Error::MissingField { level: name, field: "phi" });
        }
        if level.has_unit() && rho.is_none() {
            return Err(Error::MissingField { level: name, field: "rho" });
        }
        if level == Level::Biunital && r.is_none() {
            return Err(Error::MissingField { level: name, field: "r" });
        }
        let alpha = match (alpha, &phi) {
            (Some(a), _) => a,
            (None, Some(p)) if level.has_coherer() => d1_twisted(p),
            _ => return Err(Error::MissingField { level: name, field: "alpha" }),
        };
        expect_bidegree(&alpha, 3, 0)?;
        let group = alpha.group().clone();
        let modulus = alpha.modulus();
        for (c, n) in [(&phi, 2), (&rho, 0), (&r, 1)] {
            if let Some(c) = c {
                expect_bidegree(c, n, 0)?;
                same_base(c, &group, modulus)?;
            }
        }
        Ok(Self { group, modulus, level, alpha, phi, rho, r, derived: None })
    }

    pub fn algebra(alpha: BiCochain) -> Result<Self> {
        Self::new(Level::Algebra, Some(alpha), None, None, None)
    }

    pub fn unital(alpha: BiCochain, rho: u64) -> Result<Self> {
        let rho = BiCochain::constant(alpha.group().clone(), alpha.modulus(), 0, 0, rho);
        Self::new(Level::Unital, Some(alpha), None, Some(rho), None)
    }

    pub fn bialgebra(phi: BiCochain) -> Result<Self> {
        Self::new(Level::Bialgebra, None, Some(phi), None, None)
    }

    fn scalar(&self, v: i64) -> BiCochain {
        BiCochain::constant(self.group.clone(), self.modulus, 0, 0, crate::cochain::reduce(v, self.modulus))
    }

    /// Unit/counit data from the formulas `rho_g = alpha(g,e,e) + rho`,
    /// `lambda_k = rho - alpha(e,e,k)`, `l = r`, `tau = -(d r) - phi`,
    /// `delta = -rho - phi(e,e)`, `eta = rho + r_e + phi(e,e)`. Fields the
    /// level lacks are taken as zero.
    pub fn derive(&self) -> NgDerived {
        let g = &self.group;
        let e = g.identity();
        let n = self.modulus;
        let rho = self.rho.as_ref().map_or(0, BiCochain::scalar) as i64;
        let zero1 = BiCochain::zeros(g.clone(), n, 1, 0);
        let zero2 = BiCochain::zeros(g.clone(), n, 2, 0);
        let r = self.r.clone().unwrap_or_else(|| zero1.clone());
        let phi = self.phi.clone().unwrap_or(zero2);
        let a = &self.alpha;
        let rho_cochain = BiCochain::from_fn(g.clone(), n, 1, 0, |x| a.at(&[x[0], e, e]) as i64 + rho);
        let lambda = BiCochain::from_fn(g.clone(), n, 1, 0, |x| rho - a.at(&[e, e, x[0]]) as i64);
        let dr = d1_twisted(&r);
        let tau = BiCochain::from_fn(g.clone(), n, 2, 0, |x| -(dr.at(x) as i64) - phi.at(x) as i64);
        let phi_ee = phi.at(&[e, e]) as i64;
        let delta = self.scalar(-rho - phi_ee);
        let eta = self.scalar(rho + r.at(&[e]) as i64 + phi_ee);
        NgDerived { rho_cochain, lambda, l: r, tau, delta, eta }
    }

    pub fn with_derived(mut self) -> Self {
        self.derived = Some(self.derive());
        self
    }
}

/// The biunital categorification determined by `(phi, rho, r)`.
pub fn build_ng_biunital(phi: &BiCochain, rho: u64, r: &BiCochain) -> Result<NgCategorification> {
    let rho = BiCochain::constant(phi.group().clone(), phi.modulus(), 0, 0, rho);
    let cat = NgCategorification::new(Level::Biunital, None, Some(phi.clone()), Some(rho), Some(r.clone()))?;
    Ok(cat.with_derived())
}

/// Checks every equation the level of `cat` imposes, at every index tuple.
pub fn verify_ng(cat: &NgCategorification) -> Result<Report> {
    let name = cat.level.name();
    if cat.level.has_unit() && cat.rho.is_none() {
        return Err(Error::MissingField { level: name, field: "rho" });
    }
    if cat.level.has_coherer() && cat.phi.is_none() {
        return Err(Error::MissingField { level: name, field: "phi" });
    }
    if cat.level == Level::Biunital && cat.r.is_none() {
        return Err(Error::MissingField { level: name, field: "r" });
    }
    let g = &cat.group;
    let order = g.order();
    let e = g.identity();
    let n = cat.modulus;
    let md = |v: u64| v % n;
    let a = &cat.alpha;
    let mut report = Report::new();

    let quads = tuples(order, 4);
    report.family(
        "pentagon",
        quads.iter().map(|x| {
            let (p, h, k, l) = (x[0], x[1], x[2], x[3]);
            let lhs = a.at(&[p, h, k]) + a.at(&[p, g.mul(h, k), l]) + a.at(&[h, k, l]);
            let rhs = a.at(&[g.mul(p, h), k, l]) + a.at(&[p, h, g.mul(k, l)]);
            (x.clone(), md(lhs), md(rhs))
        }),
    );

    let derived = cat.derived.clone().unwrap_or_else(|| cat.derive());
    let pairs = tuples(order, 2);
    if cat.level.has_unit() {
        let (rho, lambda) = (&derived.rho_cochain, &derived.lambda);
        report.family(
            "triangle for tensor structure",
            pairs.iter().map(|x| {
                let (p, k) = (x[0], x[1]);
                (x.clone(), rho.at(&[p]), md(a.at(&[p, e, k]) + lambda.at(&[k])))
            }),
        );
    }
    if let Some(phi) = cat.phi.as_ref().filter(|_| cat.level.has_coherer()) {
        let dphi = d1_twisted(phi);
        report.family(
            "alpha = d1(phi)",
            tuples(order, 3).into_iter().map(|x| {
                let (l, r) = (a.at(&x), dphi.at(&x));
                (x, l, r)
            }),
        );
    }
    if cat.level == Level::Biunital {
        let phi = cat.phi.as_ref().expect("checked");
        biunital_rows(&mut report, cat, phi, &derived);
    }
    Ok(report)
}

fn biunital_rows(report: &mut Report, cat: &NgCategorification, phi: &BiCochain, d: &NgDerived) {
    let g = &cat.group;
    let order = g.order();
    let e = g.identity();
    let n = cat.modulus;
    let md = |v: u64| v % n;
    let a = &cat.alpha;
    let r = cat.r.as_ref().expect("checked");
    let (rho, lambda, l, tau) = (&d.rho_cochain, &d.lambda, &d.l, &d.tau);
    let (delta, eta) = (d.delta.scalar(), d.eta.scalar());
    // the coassociator of N[G] is forced trivial
    let beta = 0u64;
    let singles: Vec<Vec<usize>> = (0..order).map(|x| vec![x]).collect();
    let pairs = tuples(order, 2);

    report.family(
        "triangle for cotensor structure",
        singles.iter().map(|x| (x.clone(), r.at(x), md(beta + l.at(x)))),
    );
    report.family(
        "Δ respects right unit",
        singles.iter().map(|x| {
            let p = x[0];
            (x.clone(), md(phi.at(&[p, e]) + delta + 2 * rho.at(x)), rho.at(x))
        }),
    );
    report.family(
        "Δ respects left unit",
        singles.iter().map(|x| {
            let p = x[0];
            (x.clone(), md(phi.at(&[e, p]) + delta + 2 * lambda.at(x)), lambda.at(x))
        }),
    );
    report.family(
        "⊗ respects right counit",
        pairs.iter().map(|x| {
            let (p, k) = (x[0], x[1]);
            (x.clone(), md(phi.at(x) + tau.at(x) + r.at(&[p]) + r.at(&[k])), r.at(&[g.mul(p, k)]))
        }),
    );
    report.family(
        "⊗ respects left counit",
        pairs.iter().map(|x| {
            let (p, k) = (x[0], x[1]);
            (x.clone(), md(phi.at(x) + tau.at(x) + l.at(&[p]) + l.at(&[k])), l.at(&[g.mul(p, k)]))
        }),
    );
    report.family(
        "ε preserves ⊗",
        tuples(order, 3).into_iter().map(|x| {
            let (p, k, m) = (x[0], x[1], x[2]);
            let lhs = a.at(&x) + tau.at(&[p, g.mul(k, m)]) + tau.at(&[k, m]);
            let rhs = tau.at(&[p, k]) + tau.at(&[g.mul(p, k), m]);
            (x, md(lhs), md(rhs))
        }),
    );
    report.family("I preserves Δ", [(Vec::new(), md(beta + 2 * delta), md(2 * delta))]);
    report.family(
        "ε respects right unit",
        singles.iter().map(|x| (x.clone(), md(tau.at(&[x[0], e]) + eta), rho.at(x))),
    );
    report.family(
        "ε respects left unit",
        singles.iter().map(|x| (x.clone(), md(tau.at(&[e, x[0]]) + eta), lambda.at(x))),
    );
    report.family("I respects right counit", [(Vec::new(), md(delta + eta), r.at(&[e]))]);
    report.family("I respects left counit", [(Vec::new(), md(delta + eta), l.at(&[e]))]);
}

/// All `arity`-tuples over `0..order` in index order.
pub(crate) fn tuples(order: usize, arity: usize) -> Vec<Vec<usize>> {
    let count = crate::cochain::tuple_count(order, arity);
    (0..count)
        .map(|i| {
            let mut t = vec![0; arity];
            crate::cochain::decode(order, i, &mut t);
            t
        })
        .collect()
}

/// Data exhibiting two categorifications as equivalent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgEquivalenceWitness {
    /// `alpha - alpha' = d1 psi`
    pub psi: BiCochain,
    /// present for biunital data
    pub f0: Option<BiCochain>,
    pub f_sup0: Option<BiCochain>,
}

fn check_pair(a: &NgCategorification, b: &NgCategorification) -> Result<()> {
    if !same_group(&a.group, &b.group) {
        return Err(Error::GroupMismatch);
    }
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch(a.modulus, b.modulus));
    }
    if a.level != b.level {
        return Err(Error::LevelMismatch(a.level.name(), b.level.name()));
    }
    Ok(())
}

/// An equivalence inducing the identity on the Grothendieck rig, or `None`.
pub fn equivalent_ng(a: &NgCategorification, b: &NgCategorification) -> Result<Option<NgEquivalenceWitness>> {
    check_pair(a, b)?;
    let g = &a.group;
    let e = g.identity();
    let n = a.modulus;
    let diff = a.alpha.sub(&b.alpha);
    let psi = match (&a.phi, &b.phi) {
        (Some(p), Some(q)) if a.level.has_coherer() => {
            let psi = p.sub(q);
            if d1_twisted(&psi) != diff {
                return Ok(None);
            }
            psi
        }
        _ => {
            let d = d1_matrix(g, n, 2, 0);
            let Some(x) = in_image(&d, diff.values())? else { return Ok(None) };
            BiCochain::from_values(g.clone(), n, 2, 0, x)?
        }
    };
    let rho_of = |c: &NgCategorification| c.rho.as_ref().map_or(0, BiCochain::scalar);
    let psi = if a.level == Level::Unital {
        // a constant shift is a 2-cocycle; use it to match the unit scalars
        let shift = (2 * n + rho_of(b) - rho_of(a) - psi.at(&[e, e])) % n;
        let psi = psi.add(&BiCochain::constant(g.clone(), n, 2, 0, shift));
        let (ra, rb) = (a.derive().rho_cochain, b.derive().rho_cochain);
        if (0..g.order()).any(|x| (ra.at(&[x]) + psi.at(&[x, e])) % n != rb.at(&[x])) {
            return Ok(None);
        }
        psi
    } else {
        psi
    };
    let (f0, f_sup0) = if a.level == Level::Biunital {
        let f0 = (2 * n + rho_of(a) - rho_of(b) - psi.at(&[e, e])) % n;
        let f0 = BiCochain::constant(g.clone(), n, 0, 0, f0);
        let f_sup0 = a.r.as_ref().expect("biunital").sub(b.r.as_ref().expect("biunital"));
        (Some(f0), Some(f_sup0))
    } else {
        (None, None)
    };
    Ok(Some(NgEquivalenceWitness { psi, f0, f_sup0 }))
}

/// `H^3(G, Z/N)` of the row complex `(C_{n,0}, d1)`, with representative
/// 3-cocycles as generators.
pub fn classify_ng(group: &FiniteGroup, modulus: u64) -> Result<CohomologyResult> {
    crate::cochain::check_modulus(modulus)?;
    let d_in = d1_matrix(group, modulus, 2, 0);
    let d_out = d1_matrix(group, modulus, 3, 0);
    cohomology_mod(&d_in, &d_out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2).unwrap())
    }

    fn parity_cocycle(g: &Arc<FiniteGroup>) -> BiCochain {
        BiCochain::from_fn(g.clone(), 2, 3, 0, |x| (x[0] * x[1] * x[2]) as i64)
    }

    #[test]
    fn zero_algebra_is_valid() {
        let g = c2();
        let cat = NgCategorification::algebra(BiCochain::zeros(g, 2, 3, 0)).unwrap();
        assert!(verify_ng(&cat).unwrap().valid);
    }

    #[test]
    fn parity_cocycle_pentagon() {
        let g = c2();
        let cat = NgCategorification::algebra(parity_cocycle(&g)).unwrap();
        let rep = verify_ng(&cat).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.check("pentagon").unwrap().instances, 16);
    }

    #[test]
    fn coherer_mismatch_reported() {
        let g = c2();
        let phi = BiCochain::zeros(g.clone(), 2, 2, 0);
        let rho = None;
        let cat = NgCategorification::new(Level::Bialgebra, Some(parity_cocycle(&g)), Some(phi), rho, None).unwrap();
        let rep = verify_ng(&cat).unwrap();
        assert!(!rep.valid);
        assert_eq!(rep.failed(), vec!["alpha = d1(phi)"]);
    }

    #[test]
    fn missing_fields() {
        let g = c2();
        let a = BiCochain::zeros(g.clone(), 2, 3, 0);
        assert!(matches!(
            NgCategorification::new(Level::Unital, Some(a.clone()), None, None, None),
            Err(Error::MissingField { field: "rho", .. })
        ));
        assert!(matches!(
            NgCategorification::new(Level::Bialgebra, Some(a), None, None, None),
            Err(Error::MissingField { field: "phi", .. })
        ));
    }

    #[test]
    fn eta_formula() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let phi = BiCochain::from_fn(g.clone(), 7, 2, 0, |x| if x == [0, 0] { 3 } else { (x[0] + 2 * x[1]) as i64 });
        let r = BiCochain::from_fn(g.clone(), 7, 1, 0, |x| if x[0] == 0 { 5 } else { 1 });
        let cat = build_ng_biunital(&phi, 4, &r).unwrap();
        assert_eq!(cat.derived.as_ref().unwrap().eta.scalar(), (4 + 5 + 3) % 7);
        assert!(verify_ng(&cat).unwrap().valid);
    }

    #[test]
    fn trivial_biunital() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let cat = build_ng_biunital(&BiCochain::zeros(g.clone(), 6, 2, 0), 0, &BiCochain::zeros(g, 6, 1, 0)).unwrap();
        let d = cat.derived.as_ref().unwrap();
        assert!(d.tau.is_zero() && d.delta.is_zero() && d.eta.is_zero() && d.lambda.is_zero());
        let rep = verify_ng(&cat).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.checks.len(), 3 + 11);
    }

    #[test]
    fn tampered_eta_fails_four_rows() {
        let g = c2();
        let mut cat = build_ng_biunital(&BiCochain::zeros(g.clone(), 2, 2, 0), 1, &BiCochain::zeros(g, 2, 1, 0)).unwrap();
        let d = cat.derived.as_mut().unwrap();
        d.eta = d.eta.add(&BiCochain::constant(d.eta.group().clone(), 2, 0, 0, 1));
        let rep = verify_ng(&cat).unwrap();
        let mut failed = rep.failed();
        failed.sort();
        assert_eq!(
            failed,
            vec!["I respects left counit", "I respects right counit", "ε respects left unit", "ε respects right unit"]
        );
    }

    #[test]
    fn inequivalent_cocycles() {
        let g = c2();
        let a = NgCategorification::algebra(BiCochain::zeros(g.clone(), 2, 3, 0)).unwrap();
        let b = NgCategorification::algebra(parity_cocycle(&g)).unwrap();
        assert!(equivalent_ng(&a, &b).unwrap().is_none());
        let w = equivalent_ng(&a, &a).unwrap().unwrap();
        assert!(w.psi.is_zero());
    }

    #[test]
    fn unital_witness_matches_units() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let psi0 = BiCochain::from_fn(g.clone(), 3, 2, 0, |x| (x[0] * 2 + x[1] * x[1]) as i64);
        let a = NgCategorification::unital(BiCochain::zeros(g.clone(), 3, 3, 0), 1).unwrap();
        let b = NgCategorification::unital(d1_twisted(&psi0).neg(), 2).unwrap();
        let w = equivalent_ng(&a, &b).unwrap().unwrap();
        assert_eq!(d1_twisted(&w.psi), a.alpha.sub(&b.alpha));
        assert_eq!(w.psi.at(&[0, 0]), 1);
    }

    #[test]
    fn level_mismatch() {
        let g = c2();
        let a = NgCategorification::algebra(BiCochain::zeros(g.clone(), 2, 3, 0)).unwrap();
        let b = NgCategorification::unital(BiCochain::zeros(g, 2, 3, 0), 0).unwrap();
        assert!(matches!(equivalent_ng(&a, &b), Err(Error::LevelMismatch("algebra", "unital"))));
    }

    #[test]
    fn classification_small() {
        assert!(classify_ng(&FiniteGroup::cyclic(1).unwrap(), 2).unwrap().is_trivial());
        assert_eq!(classify_ng(&FiniteGroup::cyclic(2).unwrap(), 2).unwrap().invariant_factors, vec![2]);
        assert_eq!(classify_ng(&FiniteGroup::cyclic(3).unwrap(), 3).unwrap().invariant_factors, vec![3]);
        assert_eq!(classify_ng(&FiniteGroup::cyclic(4).unwrap(), 4).unwrap().invariant_factors, vec![4]);
    }
}
