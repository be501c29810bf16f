//! Finite groups given by a full multiplication table.
//!
//! Elements are dense indices `0..order`. Everything downstream (cochain
//! indexing, conjugation twists, structure constants) goes through the table.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Default cap on the size of a permutation-group closure.
pub const DEFAULT_ORDER_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a Cayley table and computes identity and inverses.
    pub fn from_cayley(table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::EmptyGroup);
        }
        let mut flat = Vec::with_capacity(order * order);
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotSquare { row: a, len: row.len(), expected: order });
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::NotClosed { a, b, value: v, order });
                }
                flat.push(v);
            }
        }
        let at = |a: usize, b: usize| flat[a * order + b];

        // an element whose left or right multiplication is not injective has
        // no inverse
        for x in 0..order {
            let mut by_row = vec![false; order];
            let mut by_col = vec![false; order];
            for y in 0..order {
                if std::mem::replace(&mut by_row[at(x, y)], true)
                    || std::mem::replace(&mut by_col[at(y, x)], true)
                {
                    return Err(Error::NoInverse { element: x });
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(Error::NoIdentity)?;
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(Error::NoInverse { element: a })?;
            inverses.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(Self { order, table: flat, identity, inverses, names: None })
    }

    /// Closure of a set of permutations of `0..degree` under composition.
    ///
    /// The product is composition of maps, `(a*b)(x) = a(b(x))`. Element 0 is
    /// the identity permutation; the remaining elements are numbered in
    /// breadth-first order of discovery.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutations_capped(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn from_permutations_capped(
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self> {
        for (index, g) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::NotAPermutation { index, degree });
            }
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::NotAPermutation { index, degree });
                }
                seen[x] = true;
            }
        }
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };

        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut next = 0;
        while next < elements.len() {
            for g in generators {
                let p = compose(&elements[next], g);
                if !index.contains_key(&p) {
                    if elements.len() == cap {
                        return Err(Error::ClosureTooLarge { cap });
                    }
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            next += 1;
        }
        let order = elements.len();
        let mut table = vec![0; order * order];
        let mut inverses = vec![0; order];
        for a in 0..order {
            for b in 0..order {
                let p = compose(&elements[a], &elements[b]);
                let ab = index[&p];
                table[a * order + b] = ab;
                if ab == 0 {
                    inverses[a] = b;
                }
            }
        }
        let names = elements.iter().map(|p| cycle_notation(p)).collect();
        Ok(Self { order, table, identity: 0, inverses, names: Some(names) })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroup);
        }
        let gens = if n == 1 { vec![] } else { vec![(0..n).map(|i| (i + 1) % n).collect()] };
        Self::from_permutations(n, &gens)
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3 generators are valid")
    }

    /// Direct product realised on the disjoint union of the two left-regular
    /// representations.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let degree = a.order + b.order;
        let mut gens = Vec::new();
        for x in 0..a.order {
            let mut p: Vec<usize> = (0..degree).collect();
            for y in 0..a.order {
                p[y] = a.mul(x, y);
            }
            gens.push(p);
        }
        for x in 0..b.order {
            let mut p: Vec<usize> = (0..degree).collect();
            for y in 0..b.order {
                p[a.order + y] = a.order + b.mul(x, y);
            }
            gens.push(p);
        }
        Self::from_permutations_capped(degree, &gens, a.order * b.order)
    }

    /// `c1`..`c8`, `s3`, `c2xc2`.
    pub fn builtin(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "s3" => Ok(Self::symmetric3()),
            "c2xc2" | "v4" | "klein" => {
                let c2 = Self::cyclic(2)?;
                Self::direct_product(&c2, &c2)
            }
            _ => match lower.strip_prefix('c').and_then(|n| n.parse::<usize>().ok()) {
                Some(n) if (1..=8).contains(&n) => Self::cyclic(n),
                _ => Err(Error::UnknownBuiltin(name.to_string())),
            },
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::Invalid(format!(
                "{} names given for a group of order {}",
                names.len(),
                self.order
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `a * b * a^-1`.
    #[inline]
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inverses[a])
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        out.push('(');
        out.push_str(&cycle.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

/// A surjection-or-trivial homomorphism `G -> C2`, stored as one bit per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityMap {
    parity: Vec<u8>,
}

impl ParityMap {
    pub fn new(group: &FiniteGroup, parity: Vec<u8>) -> Result<Self> {
        if parity.len() != group.order() {
            return Err(Error::ParityLength { found: parity.len(), order: group.order() });
        }
        for (a, &p) in parity.iter().enumerate() {
            if p > 1 {
                return Err(Error::Invalid(format!("parity of element {a} is {p}, expected 0 or 1")));
            }
        }
        for a in group.elements() {
            for b in group.elements() {
                if parity[group.mul(a, b)] != parity[a] ^ parity[b] {
                    return Err(Error::InvalidParity { a, b });
                }
            }
        }
        Ok(Self { parity })
    }

    /// Every element even.
    pub fn trivial(group: &FiniteGroup) -> Self {
        Self { parity: vec![0; group.order()] }
    }

    /// Sign of the underlying permutation. Only meaningful for groups built by
    /// [`FiniteGroup::from_permutations`], whose names are cycle notation.
    pub fn sign(group: &FiniteGroup) -> Result<Self> {
        let names = group
            .names()
            .ok_or_else(|| Error::Invalid("sign parity needs a permutation group".into()))?;
        let mut parity = Vec::with_capacity(group.order());
        for name in names {
            // a k-cycle contributes k-1 transpositions
            let mut odd = 0u8;
            for cycle in name.split(')').filter(|c| !c.trim_start_matches('(').is_empty()) {
                let len = cycle.trim_start_matches('(').split_whitespace().count();
                odd ^= ((len + 1) % 2) as u8;
            }
            parity.push(odd);
        }
        Self::new(group, parity)
    }

    /// The identity map on `C2` (element 1 odd), for a group of order 2.
    pub fn identity_c2(group: &FiniteGroup) -> Result<Self> {
        if group.order() != 2 {
            return Err(Error::Invalid("identity parity needs a group of order 2".into()));
        }
        let e = group.identity();
        Self::new(group, (0..2).map(|a| u8::from(a != e)).collect())
    }

    pub fn is_odd(&self, a: usize) -> bool {
        self.parity[a] == 1
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.parity
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_from_table() {
        let g = FiniteGroup::from_cayley(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn repeated_row_has_no_inverse() {
        let err = FiniteGroup::from_cayley(vec![vec![0, 1], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::NoInverse { .. }), "{err}");
    }

    #[test]
    fn out_of_range_entry() {
        let err = FiniteGroup::from_cayley(vec![vec![0, 2], vec![1, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotClosed { a: 0, b: 1, value: 2, .. }));
    }

    #[test]
    fn non_associative_loop() {
        // a latin square with identity 0 that is not a group (order-5 loop)
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_cayley(t).unwrap_err();
        assert!(matches!(err, Error::NotAssociative { .. }), "{err}");
    }

    #[test]
    fn identity_need_not_be_zero() {
        let g = FiniteGroup::from_cayley(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.identity(), 1);
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn permutation_closures() {
        let s3 = FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let c4 = FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.is_abelian());
        let trivial = FiniteGroup::from_permutations(3, &[]).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(trivial.identity(), 0);
    }

    #[test]
    fn bad_generator() {
        let err = FiniteGroup::from_permutations(3, &[vec![0, 0, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotAPermutation { index: 0, degree: 3 }));
        let err = FiniteGroup::from_permutations(3, &[vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotAPermutation { .. }));
    }

    #[test]
    fn closure_cap() {
        // S4 has 24 elements
        let gens = [vec![1, 0, 2, 3], vec![1, 2, 3, 0]];
        let err = FiniteGroup::from_permutations_capped(4, &gens, 10).unwrap_err();
        assert!(matches!(err, Error::ClosureTooLarge { cap: 10 }));
        assert_eq!(FiniteGroup::from_permutations(4, &gens).unwrap().order(), 24);
    }

    #[test]
    fn builtins() {
        for n in 1..=8 {
            assert_eq!(FiniteGroup::builtin(&format!("c{n}")).unwrap().order(), n);
        }
        assert_eq!(FiniteGroup::builtin("s3").unwrap().order(), 6);
        let v4 = FiniteGroup::builtin("c2xc2").unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.is_abelian());
        assert!((0..4).all(|a| v4.mul(a, a) == v4.identity()));
        assert!(FiniteGroup::builtin("c9").is_err());
        assert!(FiniteGroup::builtin("q8").is_err());
    }

    #[test]
    fn parity_validation() {
        let s3 = FiniteGroup::symmetric3();
        let sign = ParityMap::sign(&s3).unwrap();
        assert_eq!(sign.as_slice().iter().filter(|&&p| p == 1).count(), 3);
        assert!(!sign.is_odd(s3.identity()));
        // marking a 3-cycle odd breaks the homomorphism property
        let mut bad = sign.as_slice().to_vec();
        let three_cycle = (0..6).find(|&a| a != s3.identity() && !sign.is_odd(a)).unwrap();
        bad[three_cycle] = 1;
        assert!(matches!(ParityMap::new(&s3, bad), Err(Error::InvalidParity { .. })));
        assert!(ParityMap::new(&s3, vec![0; 5]).is_err());
    }
}
