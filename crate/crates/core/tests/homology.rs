mod common;

use cohomcat::cochain::{d1_matrix, row_cohomology, total_matrix};
use cohomcat::double::beta_example;
use cohomcat::homology::{cohomology, cohomology_mod, in_image, in_image_int, kernel_generators, smith_normal_form};
use cohomcat::{Error, FiniteGroup, IntMatrix, ParityMap, SparseMatrix};
use common::{group, rank_mod_p, rng};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn check_snf(m: &IntMatrix) -> Vec<BigInt> {
    let snf = smith_normal_form(m);
    assert_eq!(snf.u.mul(m).unwrap().mul(&snf.v).unwrap(), snf.s);
    for t in [&snf.u, &snf.v] {
        assert_eq!(t.determinant().unwrap().abs(), BigInt::one());
    }
    let d = snf.diagonal();
    for i in 0..snf.s.rows() {
        for j in 0..snf.s.cols() {
            if i != j {
                assert!(snf.s.get(i, j).is_zero());
            }
        }
    }
    let nz: Vec<BigInt> = d.iter().filter(|x| !x.is_zero()).cloned().collect();
    for w in nz.windows(2) {
        assert!((&w[1] % &w[0]).is_zero(), "divisibility chain {d:?}");
    }
    d
}

#[test]
fn snf_examples() {
    let id = IntMatrix::identity(3);
    assert_eq!(check_snf(&id), vec![BigInt::one(); 3]);
    let zero = IntMatrix::zeros(2, 3);
    assert!(check_snf(&zero).iter().all(|x| x.is_zero()));
    // gcd of entries and |det| pin down both factors
    let m = IntMatrix::from_rows(2, &[vec![2i64, 4], vec![6, 8]]).unwrap();
    let d = check_snf(&m);
    let gcd = 2;
    let det = (2 * 8 - 4 * 6_i64).abs();
    assert_eq!(d, vec![BigInt::from(gcd), BigInt::from(det / gcd)]);
}

/// The 3-cocycle condition on `C_{3,0}(C2)`, written out by hand.
fn c2_pentagon(a: &[u64; 8]) -> bool {
    let at = |x: usize, y: usize, z: usize| a[x * 4 + y * 2 + z];
    (0..16).all(|i| {
        let (g, h, k, l) = (i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1);
        (at(h, k, l) + at(g, h ^ k, l) + at(g, h, k)) % 2 == (at(g ^ h, k, l) + at(g, h, k ^ l)) % 2
    })
}

fn c2_coboundary(f: &[u64; 4]) -> [u64; 8] {
    let at = |x: usize, y: usize| f[x * 2 + y];
    let mut out = [0; 8];
    for (i, o) in out.iter_mut().enumerate() {
        let (g, h, k) = (i >> 2 & 1, i >> 1 & 1, i & 1);
        *o = (at(h, k) + at(g ^ h, k) + at(g, h ^ k) + at(g, h)) % 2;
    }
    out
}

#[test]
fn h3_c2_exhaustive() {
    let cocycles: Vec<[u64; 8]> = (0u32..256)
        .map(|m| std::array::from_fn(|i| u64::from(m >> i & 1)))
        .filter(c2_pentagon)
        .collect();
    let mut coboundaries: Vec<[u64; 8]> =
        (0u32..16).map(|m| c2_coboundary(&std::array::from_fn(|i| u64::from(m >> i & 1)))).collect();
    coboundaries.sort();
    coboundaries.dedup();
    assert_eq!(cocycles.len() % coboundaries.len(), 0);
    // over Z/2 any group of order 2 is Z/2
    assert_eq!(cocycles.len() / coboundaries.len(), 2);

    let g = FiniteGroup::cyclic(2).unwrap();
    let h = row_cohomology(&g, 2, 0, 3).unwrap();
    assert_eq!(h.invariant_factors, vec![2]);
    let gen: [u64; 8] = h.generators[0].clone().try_into().unwrap();
    assert!(c2_pentagon(&gen));
    assert!(!coboundaries.contains(&gen));

    let d_in = IntMatrix::from_rows(4, &d1_matrix(&g, 2, 2, 0).to_dense()).unwrap();
    let d_out = IntMatrix::from_rows(8, &d1_matrix(&g, 2, 3, 0).to_dense()).unwrap();
    assert_eq!(cohomology(&d_in, &d_out, 2).unwrap().invariant_factors, vec![2]);
}

#[test]
fn h3_matches_prime_field_rank() {
    for (name, p) in [("c2", 2u64), ("c3", 3)] {
        let g = group(name);
        let d2 = d1_matrix(&g, p, 2, 0).to_dense();
        let d3 = d1_matrix(&g, p, 3, 0).to_dense();
        let dim = g.order().pow(3);
        let exponent = dim - rank_mod_p(&d3, p) - rank_mod_p(&d2, p);
        let h = row_cohomology(&g, p, 0, 3).unwrap();
        assert_eq!(h.invariant_factors, vec![p]);
        assert_eq!(h.order(), num_bigint::BigUint::from(p.pow(exponent as u32)));
    }
    let c4 = group("c4");
    assert_eq!(row_cohomology(&c4, 4, 0, 3).unwrap().invariant_factors, vec![4]);
}

#[test]
fn generators_are_nontrivial_cocycles() {
    for (name, n) in [("c2", 2u64), ("c4", 4), ("s3", 6), ("c2xc2", 2)] {
        let g = group(name);
        let d_in = d1_matrix(&g, n, 2, 0);
        let d_out = d1_matrix(&g, n, 3, 0);
        let h = cohomology_mod(&d_in, &d_out).unwrap();
        for (gen, &o) in h.generators.iter().zip(&h.invariant_factors) {
            assert!(d_out.apply(gen).iter().all(|&x| x == 0));
            // the class has exactly order o
            for k in 1..o {
                let z: Vec<u64> = gen.iter().map(|x| x * k % n).collect();
                assert!(in_image(&d_in, &z).unwrap().is_none(), "{name}: {k} * generator is a coboundary");
            }
            let z: Vec<u64> = gen.iter().map(|x| x * o % n).collect();
            assert!(in_image(&d_in, &z).unwrap().is_some());
        }
    }
}

#[test]
fn routes_agree_on_group_cohomology() {
    for (name, n) in [("c2", 4u64), ("c3", 6), ("c4", 2), ("c2xc2", 2), ("s3", 6)] {
        let g = group(name);
        for k in 1..=3 {
            let d_in = d1_matrix(&g, n, k - 1, 0);
            let d_out = d1_matrix(&g, n, k, 0);
            let fast = cohomology_mod(&d_in, &d_out).unwrap();
            let slow = cohomology(
                &IntMatrix::from_rows(d_in.ncols(), &d_in.to_dense()).unwrap(),
                &IntMatrix::from_rows(d_out.ncols(), &d_out.to_dense()).unwrap(),
                n,
            )
            .unwrap();
            assert_eq!(fast.invariant_factors, slow.invariant_factors, "{name} N={n} k={k}");
        }
    }
}

#[test]
fn not_a_complex_is_reported() {
    let a = SparseMatrix::from_dense(4, &[vec![1]]);
    assert!(matches!(cohomology_mod(&a, &a), Err(Error::NotAComplex { column: 0, modulus: 4 })));
}

#[test]
fn trivial_differentials_give_free_module() {
    let z_in = SparseMatrix::zeros(3, 0, 6);
    let z_out = SparseMatrix::zeros(0, 3, 6);
    assert_eq!(cohomology_mod(&z_in, &z_out).unwrap().invariant_factors, vec![6, 6, 6]);
}

/// The parity triple, as a total-degree-3 cochain `(-alpha, phi, beta)`, is
/// hit by no total-degree-2 cochain: all 2^16 of them are tried.
#[test]
fn parity_class_not_a_coboundary_exhaustive() {
    let g = group("c2");
    let t = beta_example(g.clone(), &ParityMap::identity_c2(&g).unwrap(), 2).unwrap();
    let z: Vec<u64> = [t.alpha.neg(), t.phi.clone(), t.beta.clone()].iter().flat_map(|c| c.values().to_vec()).collect();
    let d = total_matrix(&g, 2, 2);
    assert_eq!(d.ncols(), 16);
    let hits = (0u32..1 << 16)
        .filter(|m| {
            let x: Vec<u64> = (0..16).map(|i| u64::from(m >> i & 1)).collect();
            d.apply(&x) == z
        })
        .count();
    assert_eq!(hits, 0);
    assert!(in_image(&d, &z).unwrap().is_none());
    let dense = IntMatrix::from_rows(16, &d.to_dense()).unwrap();
    assert!(in_image_int(&dense, &z, 2).unwrap().is_none());
}

fn exhaustive_preimage(d: &SparseMatrix, z: &[u64]) -> bool {
    let n = d.modulus();
    let cols = d.ncols();
    let total = n.pow(cols as u32);
    (0..total).any(|mut code| {
        let x: Vec<u64> = (0..cols)
            .map(|_| {
                let v = code % n;
                code /= n;
                v
            })
            .collect();
        d.apply(&x) == z
    })
}

#[test]
fn in_image_matches_enumeration() {
    let mut r = rng(11);
    for n in [2u64, 4, 6, 8, 12] {
        for _ in 0..40 {
            let rows = r.gen_range(1..4);
            let cols = r.gen_range(1..4);
            let dense: Vec<Vec<u64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(0..n)).collect()).collect();
            let d = SparseMatrix::from_dense(n, &dense);
            let z: Vec<u64> = (0..rows).map(|_| r.gen_range(0..n)).collect();
            let found = in_image(&d, &z).unwrap();
            assert_eq!(found.is_some(), exhaustive_preimage(&d, &z), "{dense:?} z={z:?} N={n}");
            if let Some(x) = found {
                assert_eq!(d.apply(&x), z);
            }
            let int = IntMatrix::from_rows(cols, &dense).unwrap();
            assert_eq!(in_image_int(&int, &z, n).unwrap().is_some(), exhaustive_preimage(&d, &z));
        }
    }
    let d = SparseMatrix::from_dense(6, &[vec![2, 3]]);
    assert_eq!(in_image(&d, &[0]).unwrap().map(|x| d.apply(&x)), Some(vec![0]));
    assert!(matches!(in_image(&d, &[0, 1]), Err(Error::DimensionMismatch { .. })));
}

/// A random complex `Z/N^a -> Z/N^b -> Z/N^c`: `d_in` is built from kernel
/// vectors of a random `d_out`.
fn random_complex(seed: u64, n: u64) -> (SparseMatrix, SparseMatrix) {
    let mut r = rng(seed);
    let (b, c) = (r.gen_range(1..7), r.gen_range(1..5));
    let dense: Vec<Vec<u64>> = (0..c).map(|_| (0..b).map(|_| r.gen_range(0..n)).collect()).collect();
    let d_out = SparseMatrix::from_dense(n, &dense);
    let kernel = kernel_generators(&d_out);
    let a = r.gen_range(0..5);
    let mut in_rows = vec![vec![0u64; a]; b];
    for j in 0..a {
        for (_, gen) in &kernel {
            let k = r.gen_range(0..n);
            for (row, &x) in in_rows.iter_mut().zip(gen) {
                row[j] = (row[j] + k * x) % n;
            }
        }
    }
    let d_in = if a == 0 { SparseMatrix::zeros(b, 0, n) } else { SparseMatrix::from_dense(n, &in_rows) };
    (d_in, d_out)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn snf_is_unimodular(entries in proptest::collection::vec(-20i64..20, 1..16), cols in 1usize..5) {
        let rows: Vec<Vec<i64>> = entries.chunks(cols).filter(|c| c.len() == cols).map(|c| c.to_vec()).collect();
        prop_assume!(!rows.is_empty());
        let m = IntMatrix::from_rows(cols, &rows).unwrap();
        check_snf(&m);
    }

    #[test]
    fn shuffling_preserves_cohomology(seed in any::<u64>(), n in prop::sample::select(vec![2u64, 4, 6, 12])) {
        let (d_in, d_out) = random_complex(seed, n);
        let base = cohomology_mod(&d_in, &d_out).unwrap();
        let mut r = rng(seed ^ 0x5eed);
        let mut mid: Vec<usize> = (0..d_out.ncols()).collect();
        mid.shuffle(&mut r);
        let mut out_rows: Vec<usize> = (0..d_out.nrows()).collect();
        out_rows.shuffle(&mut r);
        let mut in_cols: Vec<usize> = (0..d_in.ncols()).collect();
        in_cols.shuffle(&mut r);
        // the middle space is permuted consistently on both sides
        let inv_mid: Vec<usize> = {
            let mut v = vec![0; mid.len()];
            for (i, &m) in mid.iter().enumerate() { v[m] = i; }
            v
        };
        let d_out2 = d_out.permute(&out_rows, &mid);
        let d_in2 = d_in.permute(&inv_mid, &in_cols);
        let shuffled = cohomology_mod(&d_in2, &d_out2).unwrap();
        prop_assert_eq!(&base.invariant_factors, &shuffled.invariant_factors);
        let int = cohomology(
            &IntMatrix::from_rows(d_in2.ncols(), &d_in2.to_dense()).unwrap(),
            &IntMatrix::from_rows(d_out2.ncols(), &d_out2.to_dense()).unwrap(),
            n,
        ).unwrap();
        prop_assert_eq!(&base.invariant_factors, &int.invariant_factors);
    }

    #[test]
    fn image_roundtrip(seed in any::<u64>(), n in prop::sample::select(vec![2u64, 3, 4, 6, 9, 12])) {
        let (_, d) = random_complex(seed, n);
        let mut r = rng(seed);
        let x0: Vec<u64> = (0..d.ncols()).map(|_| r.gen_range(0..n)).collect();
        let z = d.apply(&x0);
        let x = in_image(&d, &z).unwrap().expect("z is in the image by construction");
        prop_assert_eq!(d.apply(&x), z);
        prop_assert_eq!(in_image(&d, &vec![0; d.nrows()]).unwrap().map(|x| d.apply(&x)), Some(vec![0; d.nrows()]));
    }
}
