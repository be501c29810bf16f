//! Exact linear algebra behind every classification: Smith normal forms over
//! `Z` and over `Z/p^k`, kernel/image quotients of `Z/N`-module complexes,
//! and membership-in-image solves.
//!
//! Two routes compute the same quotients. [`cohomology`] lifts to `Z` and
//! takes big-integer Smith forms of `[d | N I]`; it is simple and serves as a
//! reference. [`cohomology_mod`] splits `N` into prime powers, eliminates
//! sparse unit pivots and finishes with a dense Smith form over `Z/p^k` on
//! whatever is left. Only the second one scales to the double-complex
//! matrices of non-abelian groups.

mod int;
mod modq;
mod sparse;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

pub use int::{cohomology, in_image_int, smith_normal_form, IntMatrix, Snf};
pub use modq::{cohomology_mod, in_image, kernel_generators, local_smith_form, LocalSnf};
pub use sparse::SparseMatrix;

/// A finite `Z/N`-module `Z/d_1 + ... + Z/d_r` with `d_1 | d_2 | ...`, together
/// with one cocycle representing a generator of each summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    pub modulus: u64,
    pub invariant_factors: Vec<u64>,
    pub free_rank: usize,
    pub generators: Vec<Vec<u64>>,
}

impl CohomologyResult {
    pub fn new(modulus: u64, invariant_factors: Vec<u64>, generators: Vec<Vec<u64>>) -> Self {
        Self { modulus, invariant_factors, free_rank: 0, generators }
    }

    /// Number of classes.
    pub fn order(&self) -> BigUint {
        self.invariant_factors.iter().map(|&d| BigUint::from(d)).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

/// Prime factorization `[(p, k)]` by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

/// Inverse of `a` mod `m`, if it is a unit.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    use num_integer::Integer;
    let g = (a as i128).extended_gcd(&(m as i128));
    (g.gcd == 1).then(|| g.x.rem_euclid(m as i128) as u64)
}

/// CRT idempotent: `1 mod q`, `0 mod n / q`.
pub(crate) fn idempotent(q: u64, n: u64) -> u64 {
    let rest = n / q;
    if rest == 1 {
        return 1;
    }
    let inv = inv_mod(rest % q, q).expect("coprime factors");
    mul_mod(rest, inv, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(2), vec![(2, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(factorize(1), vec![]);
    }

    #[test]
    fn idempotents() {
        assert_eq!(idempotent(4, 12), 9);
        assert_eq!(idempotent(3, 12), 4);
        assert_eq!(idempotent(5, 5), 1);
        assert_eq!(inv_mod(3, 8), Some(3));
        assert_eq!(inv_mod(2, 8), None);
    }
}
