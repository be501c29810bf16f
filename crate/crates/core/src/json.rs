//! JSON forms of every input and output.
//!
//! Cochains are `{"modulus": N, "bidegree": [n, m], "values": [...]}` in the
//! storage order of [`BiCochain`]. Anything that holds cochains nests them by
//! field name. Reading a cochain needs the group it lives on, so the readers
//! take one.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cochain::BiCochain;
use crate::double::{CocycleTriple, DoubleCategorification, DoubleEquivalenceWitness};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, ParityMap};
use crate::ng::{Level, NgCategorification, NgEquivalenceWitness};
use crate::rig::FusionBirig;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Table {
        order: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        identity: Option<usize>,
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    Permutations {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

impl GroupJson {
    pub fn build(self) -> Result<FiniteGroup> {
        match self {
            GroupJson::Table { order, identity, table, names } => {
                if table.len() != order {
                    return Err(Error::DimensionMismatch { expected: order, found: table.len() });
                }
                let g = FiniteGroup::from_cayley(table)?;
                if let Some(i) = identity {
                    if i != g.identity() {
                        return Err(Error::Invalid(format!(
                            "declared identity {i} but the table's identity is {}",
                            g.identity()
                        )));
                    }
                }
                match names {
                    Some(n) => g.with_names(n),
                    None => Ok(g),
                }
            }
            GroupJson::Permutations { degree, generators } => FiniteGroup::from_permutations(degree, &generators),
        }
    }
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    let mut v = json!({ "order": g.order(), "identity": g.identity(), "table": g.table() });
    if let Some(names) = g.names() {
        v["names"] = json!(names);
    }
    v
}

pub fn group_from_json(v: &Value) -> Result<FiniteGroup> {
    GroupJson::deserialize(v).map_err(Error::Json)?.build()
}

pub fn parity_to_json(p: &ParityMap) -> Value {
    json!({ "parity": p.as_slice() })
}

pub fn parity_from_json(v: &Value, group: &FiniteGroup) -> Result<ParityMap> {
    #[derive(Deserialize)]
    struct P {
        parity: Vec<u8>,
    }
    let p = P::deserialize(v)?;
    ParityMap::new(group, p.parity)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CochainJson {
    modulus: u64,
    bidegree: [usize; 2],
    values: Vec<u64>,
}

pub fn cochain_to_json(c: &BiCochain) -> Value {
    let (n, m) = c.bidegree();
    json!({ "modulus": c.modulus(), "bidegree": [n, m], "values": c.values() })
}

pub fn cochain_from_json(v: &Value, group: &Arc<FiniteGroup>) -> Result<BiCochain> {
    let c = CochainJson::deserialize(v)?;
    BiCochain::from_values(group.clone(), c.modulus, c.bidegree[0], c.bidegree[1], c.values)
}

fn field<'a>(v: &'a Value, name: &'static str, owner: &'static str) -> Result<&'a Value> {
    v.get(name).ok_or(Error::MissingField { level: owner, field: name })
}

fn optional(v: &Value, name: &str, group: &Arc<FiniteGroup>) -> Result<Option<BiCochain>> {
    match v.get(name) {
        None | Some(Value::Null) => Ok(None),
        Some(c) => cochain_from_json(c, group).map(Some),
    }
}

pub fn triple_to_json(t: &CocycleTriple) -> Value {
    json!({
        "alpha": cochain_to_json(&t.alpha),
        "phi": cochain_to_json(&t.phi),
        "beta": cochain_to_json(&t.beta),
    })
}

pub fn triple_from_json(v: &Value, group: &Arc<FiniteGroup>) -> Result<CocycleTriple> {
    let get = |name| field(v, name, "triple").and_then(|c| cochain_from_json(c, group));
    CocycleTriple::new(get("alpha")?, get("phi")?, get("beta")?)
}

pub fn double_to_json(dc: &DoubleCategorification) -> Value {
    let mut v = triple_to_json(&dc.triple);
    v["rho0"] = cochain_to_json(&dc.rho0);
    v["r0"] = cochain_to_json(&dc.r0);
    if let Some(d) = &dc.derived {
        v["derived"] = json!({
            "rho": cochain_to_json(&d.rho),
            "lambda": cochain_to_json(&d.lambda),
            "r": cochain_to_json(&d.r),
            "l": cochain_to_json(&d.l),
            "tau": cochain_to_json(&d.tau),
            "delta": cochain_to_json(&d.delta),
            "eta": cochain_to_json(&d.eta),
        });
    }
    v
}

/// Reads the triple plus `rho0` and `r0`; any `derived` block is ignored.
pub fn double_from_json(v: &Value, group: &Arc<FiniteGroup>) -> Result<DoubleCategorification> {
    let t = triple_from_json(v, group)?;
    let rho0 = cochain_from_json(field(v, "rho0", "categorification")?, group)?;
    let r0 = cochain_from_json(field(v, "r0", "categorification")?, group)?;
    DoubleCategorification::new(t, rho0, r0)
}

pub fn double_witness_to_json(w: &DoubleEquivalenceWitness) -> Value {
    let mut v = json!({ "f_tilde": cochain_to_json(&w.f_tilde), "f_sim": cochain_to_json(&w.f_sim) });
    if let Some(f) = &w.f0 {
        v["f0"] = cochain_to_json(f);
    }
    if let Some(f) = &w.f_sup0 {
        v["f_sup0"] = cochain_to_json(f);
    }
    v
}

pub fn double_witness_from_json(v: &Value, group: &Arc<FiniteGroup>) -> Result<DoubleEquivalenceWitness> {
    let get = |name| field(v, name, "witness").and_then(|c| cochain_from_json(c, group));
    Ok(DoubleEquivalenceWitness {
        f_tilde: get("f_tilde")?,
        f_sim: get("f_sim")?,
        f0: optional(v, "f0", group)?,
        f_sup0: optional(v, "f_sup0", group)?,
    })
}

pub fn ng_to_json(c: &NgCategorification) -> Value {
    let mut v = Map::new();
    v.insert("level".into(), json!(c.level));
    v.insert("alpha".into(), cochain_to_json(&c.alpha));
    for (name, x) in [("phi", &c.phi), ("rho", &c.rho), ("r", &c.r)] {
        if let Some(x) = x {
            v.insert(name.into(), cochain_to_json(x));
        }
    }
    Value::Object(v)
}

/// `rho` may be given as a bare integer as well as a `(0,0)` cochain.
pub fn ng_from_json(v: &Value, group: &Arc<FiniteGroup>, modulus: u64) -> Result<NgCategorification> {
    let level: Level = Level::deserialize(field(v, "level", "categorification")?)?;
    let rho = match v.get("rho") {
        Some(Value::Number(n)) => {
            let x = n.as_u64().ok_or_else(|| Error::Invalid(format!("rho must be a residue, got {n}")))?;
            if x >= modulus {
                return Err(Error::ResidueOutOfRange { index: 0, value: x, modulus });
            }
            Some(BiCochain::constant(group.clone(), modulus, 0, 0, x))
        }
        _ => optional(v, "rho", group)?,
    };
    NgCategorification::new(
        level,
        optional(v, "alpha", group)?,
        optional(v, "phi", group)?,
        rho,
        optional(v, "r", group)?,
    )
}

pub fn ng_witness_to_json(w: &NgEquivalenceWitness) -> Value {
    let mut v = json!({ "psi": cochain_to_json(&w.psi) });
    if let Some(f) = &w.f0 {
        v["f0"] = cochain_to_json(f);
    }
    if let Some(f) = &w.f_sup0 {
        v["f_sup0"] = cochain_to_json(f);
    }
    v
}

fn key(parts: &[usize]) -> String {
    parts.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn parse_key(s: &str, len: usize) -> Result<Vec<usize>> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad index key `{s}`"))))
        .collect::<Result<_>>()?;
    if parts.len() != len {
        return Err(Error::Invalid(format!("index key `{s}` should have {len} parts")));
    }
    Ok(parts)
}

/// Sparse constant maps: `mult` keyed `"i,j"` then `"k"`, `comult` keyed
/// `"i"` then `"j,k"`.
pub fn birig_to_json(b: &FusionBirig) -> Value {
    let n = b.dim();
    let mut mult = BTreeMap::<String, BTreeMap<String, u64>>::new();
    let mut comult = BTreeMap::<String, BTreeMap<String, u64>>::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if b.mult(i, j, k) != 0 {
                    mult.entry(key(&[i, j])).or_default().insert(key(&[k]), b.mult(i, j, k));
                }
                if b.comult(i, j, k) != 0 {
                    comult.entry(key(&[i])).or_default().insert(key(&[j, k]), b.comult(i, j, k));
                }
            }
        }
    }
    json!({ "basis": b.basis(), "mult": mult, "comult": comult, "unit": b.unit(), "counit": b.counit() })
}

pub fn birig_from_json(v: &Value) -> Result<FusionBirig> {
    #[derive(Deserialize)]
    struct B {
        basis: Vec<String>,
        #[serde(default)]
        mult: BTreeMap<String, BTreeMap<String, u64>>,
        #[serde(default)]
        comult: BTreeMap<String, BTreeMap<String, u64>>,
        unit: Vec<u64>,
        counit: Vec<u64>,
    }
    let raw = B::deserialize(v)?;
    let n = raw.basis.len();
    for (name, vec) in [("unit", &raw.unit), ("counit", &raw.counit)] {
        if vec.len() != n {
            return Err(Error::Invalid(format!("{name} has {} entries for a basis of {n}", vec.len())));
        }
    }
    let mut b = FusionBirig::empty(raw.basis);
    let check = |idx: &[usize]| -> Result<()> {
        match idx.iter().find(|&&i| i >= n) {
            Some(i) => Err(Error::Invalid(format!("basis index {i} out of range"))),
            None => Ok(()),
        }
    };
    for (ij, out) in &raw.mult {
        let ij = parse_key(ij, 2)?;
        for (k, &c) in out {
            let k = parse_key(k, 1)?;
            check(&[ij[0], ij[1], k[0]])?;
            b.set_mult(ij[0], ij[1], k[0], c);
        }
    }
    for (i, out) in &raw.comult {
        let i = parse_key(i, 1)?;
        for (jk, &c) in out {
            let jk = parse_key(jk, 2)?;
            check(&[i[0], jk[0], jk[1]])?;
            b.set_comult(i[0], jk[0], jk[1], c);
        }
    }
    for i in 0..n {
        b.set_unit(i, raw.unit[i]);
        b.set_counit(i, raw.counit[i]);
    }
    Ok(b)
}

/// Pretty JSON with a trailing newline; key order is fixed, so equal values
/// print identically.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::{beta_example, double_birig};

    #[test]
    fn group_roundtrip() {
        let g = FiniteGroup::symmetric3();
        let back = group_from_json(&group_to_json(&g)).unwrap();
        assert_eq!(back.table(), g.table());
        let p = group_from_json(&json!({"degree": 4, "generators": [[1, 2, 3, 0]]})).unwrap();
        assert_eq!(p.order(), 4);
    }

    #[test]
    fn triple_roundtrip() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let t = beta_example(g.clone(), &ParityMap::identity_c2(&g).unwrap(), 2).unwrap();
        assert_eq!(triple_from_json(&triple_to_json(&t), &g).unwrap(), t);
    }

    #[test]
    fn birig_roundtrip() {
        let b = double_birig(&FiniteGroup::cyclic(3).unwrap());
        assert_eq!(birig_from_json(&birig_to_json(&b)).unwrap(), b);
    }

    #[test]
    fn ng_accepts_bare_rho() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let alpha = cochain_to_json(&BiCochain::zeros(g.clone(), 2, 3, 0));
        let c = ng_from_json(&json!({"level": "unital", "alpha": alpha, "rho": 1}), &g, 2).unwrap();
        assert_eq!(c.rho.unwrap().scalar(), 1);
        let missing = ng_from_json(&json!({"level": "biunital", "alpha": alpha, "rho": 1}), &g, 2);
        assert!(matches!(missing, Err(Error::MissingField { .. })));
    }
}
