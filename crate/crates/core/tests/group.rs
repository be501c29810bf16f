use cohomcat::{Error, FiniteGroup, ParityMap};
use proptest::prelude::*;

/// All permutations of {0,1,2} in lexicographic order, composed as functions
/// `(a b)(x) = a(b(x))`.
fn s3_oracle() -> (Vec<[usize; 3]>, Vec<Vec<usize>>) {
    let mut perms = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                if a != b && b != c && a != c {
                    perms.push([a, b, c]);
                }
            }
        }
    }
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let r = [p[q[0]], p[q[1]], p[q[2]]];
                    perms.iter().position(|s| *s == r).unwrap()
                })
                .collect()
        })
        .collect();
    (perms, table)
}

fn check_axioms(g: &FiniteGroup) {
    let e = g.identity();
    for a in g.elements() {
        assert_eq!(g.mul(e, a), a);
        assert_eq!(g.mul(a, e), a);
        assert_eq!(g.mul(a, g.inv(a)), e);
        assert_eq!(g.mul(g.inv(a), a), e);
        for b in g.elements() {
            for c in g.elements() {
                assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
            }
        }
    }
}

#[test]
fn cayley_c2() {
    let g = FiniteGroup::from_cayley(vec![vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(g.order(), 2);
    assert_eq!(g.identity(), 0);
}

#[test]
fn repeated_row_has_no_inverse() {
    let err = FiniteGroup::from_cayley(vec![vec![0, 1], vec![0, 1]]).unwrap_err();
    assert!(matches!(err, Error::NoInverse { .. }), "{err:?}");
}

#[test]
fn cayley_rejections_name_indices() {
    assert!(matches!(
        FiniteGroup::from_cayley(vec![vec![0, 2], vec![1, 0]]),
        Err(Error::NotClosed { a: 0, b: 1, value: 2, .. })
    ));
    // a Latin square without identity: x*y = -x-y mod 3
    let t = (0..3).map(|x| (0..3).map(|y| (6 - x - y) % 3).collect()).collect();
    assert!(FiniteGroup::from_cayley(t).is_err());
    // identity and inverses, but not associative
    let t = vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
    assert!(matches!(FiniteGroup::from_cayley(t), Err(Error::NotAssociative { .. })));
}

#[test]
fn s3_table_from_oracle() {
    let (_, table) = s3_oracle();
    let g = FiniteGroup::from_cayley(table.clone()).unwrap();
    assert_eq!(g.order(), 6);
    check_axioms(&g);
    assert!(!g.is_abelian());
    // the built-in S3 is isomorphic: same number of elements of each order
    let orders = |g: &FiniteGroup| {
        let mut o: Vec<usize> = g
            .elements()
            .map(|a| {
                let mut k = 1;
                let mut x = a;
                while x != g.identity() {
                    x = g.mul(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        o.sort();
        o
    };
    assert_eq!(orders(&g), orders(&FiniteGroup::symmetric3()));
}

#[test]
fn permutation_closures() {
    let s3 = FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
    assert_eq!(s3.order(), 6);
    assert_eq!(s3.identity(), 0);
    let c4 = FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 0]]).unwrap();
    assert_eq!(c4.order(), 4);
    assert!(c4.is_abelian());
    let trivial = FiniteGroup::from_permutations(3, &[]).unwrap();
    assert_eq!(trivial.order(), 1);
    assert!(matches!(
        FiniteGroup::from_permutations(3, &[vec![0, 0, 1]]),
        Err(Error::NotAPermutation { index: 0, degree: 3 })
    ));
    assert!(matches!(
        FiniteGroup::from_permutations_capped(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], 10),
        Err(Error::ClosureTooLarge { cap: 10 })
    ));
}

#[test]
fn conjugating_three_cycle_by_transposition() {
    let g = FiniteGroup::symmetric3();
    let find = |name: &str| g.elements().find(|&a| g.name(a) == name).unwrap();
    // (0 1)(0 1 2)(0 1) sends 0->2, 2->1, 1->0
    assert_eq!(g.conjugate(find("(0 1)"), find("(0 1 2)")), find("(0 2 1)"));
}

#[test]
fn conjugation_is_an_automorphism() {
    for name in ["c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "s3", "c2xc2"] {
        let g = FiniteGroup::builtin(name).unwrap();
        check_axioms(&g);
        for a in g.elements() {
            assert_eq!(g.conjugate(g.identity(), a), a);
            for b in g.elements() {
                if g.is_abelian() {
                    assert_eq!(g.conjugate(a, b), b);
                }
                for c in g.elements() {
                    assert_eq!(g.conjugate(a, g.mul(b, c)), g.mul(g.conjugate(a, b), g.conjugate(a, c)));
                }
            }
        }
    }
}

#[test]
fn builtin_names() {
    let v4 = FiniteGroup::builtin("c2xc2").unwrap();
    assert_eq!(v4.order(), 4);
    assert!(v4.elements().all(|a| v4.mul(a, a) == v4.identity()));
    assert!(matches!(FiniteGroup::builtin("c9"), Err(Error::UnknownBuiltin(_))));
}

#[test]
fn parity_validation_is_exhaustive() {
    for name in ["c2", "c3", "c4", "s3", "c2xc2"] {
        let g = FiniteGroup::builtin(name).unwrap();
        let n = g.order();
        for mask in 0u32..(1 << n) {
            let bits: Vec<u8> = (0..n).map(|i| ((mask >> i) & 1) as u8).collect();
            let hom = g
                .elements()
                .all(|a| g.elements().all(|b| bits[g.mul(a, b)] == bits[a] ^ bits[b]));
            assert_eq!(ParityMap::new(&g, bits).is_ok(), hom, "{name} mask {mask}");
        }
    }
}

#[test]
fn sign_of_s3() {
    let g = FiniteGroup::symmetric3();
    let p = ParityMap::sign(&g).unwrap();
    let odd = g.elements().filter(|&a| p.is_odd(a)).count();
    assert_eq!(odd, 3);
    assert!(g.elements().filter(|&a| p.is_odd(a)).all(|a| g.mul(a, a) == g.identity()));
}

proptest! {
    #[test]
    fn random_permutation_groups_are_groups(
        gens in proptest::collection::vec(Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(), 0..3)
    ) {
        let g = FiniteGroup::from_permutations(5, &gens).unwrap();
        prop_assert_eq!(120 % g.order(), 0);
        check_axioms(&g);
        let back = FiniteGroup::from_cayley(g.table()).unwrap();
        prop_assert_eq!(back.identity(), g.identity());
    }
}
