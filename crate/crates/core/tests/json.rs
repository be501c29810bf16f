mod common;

use cohomcat::double::{build_double_biunital, double_birig, normalize_triple};
use cohomcat::json::*;
use cohomcat::ng::build_ng_biunital;
use cohomcat::{BiCochain, FiniteGroup, ParityMap};
use common::{group, random_cochain, rng, TripleSampler};
use serde_json::json;

#[test]
fn groups_round_trip() {
    for name in ["c1", "c4", "s3", "c2xc2"] {
        let g = FiniteGroup::builtin(name).unwrap();
        let back = group_from_json(&group_to_json(&g)).unwrap();
        assert_eq!(back.table(), g.table());
        assert_eq!(back.identity(), g.identity());
    }
    let g = group_from_json(&json!({"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]})).unwrap();
    assert_eq!(g.order(), 6);
    assert!(group_from_json(&json!({"order": 2, "table": [[0, 1], [0, 1]]})).is_err());
    assert!(group_from_json(&json!({"nonsense": true})).is_err());
}

#[test]
fn cochains_and_triples_round_trip() {
    let mut r = rng(51);
    let g = group("s3");
    let c = random_cochain(&g, 6, 2, 1, &mut r);
    assert_eq!(cochain_from_json(&cochain_to_json(&c), &g).unwrap(), c);
    let bad = json!({"modulus": 6, "bidegree": [1, 0], "values": [0, 1, 2]});
    assert!(cochain_from_json(&bad, &g).is_err());
    let bad = json!({"modulus": 6, "bidegree": [1, 0], "values": [0, 1, 2, 3, 4, 6]});
    assert!(cochain_from_json(&bad, &g).is_err());

    let t = TripleSampler::new(g.clone(), 6).sample(&mut r);
    assert_eq!(triple_from_json(&triple_to_json(&t), &g).unwrap(), t);

    let (t, w) = normalize_triple(&t).unwrap();
    assert_eq!(double_witness_from_json(&double_witness_to_json(&w), &g).unwrap(), w);
    let dc = build_double_biunital(&t, &BiCochain::constant(g.clone(), 6, 0, 1, 2), &random_cochain(&g, 6, 1, 0, &mut r))
        .unwrap();
    let back = double_from_json(&double_to_json(&dc), &g).unwrap();
    assert_eq!((back.triple, back.rho0, back.r0), (dc.triple.clone(), dc.rho0.clone(), dc.r0.clone()));
}

#[test]
fn ng_and_parity_round_trip() {
    let mut r = rng(52);
    let g = group("c3");
    let cat = build_ng_biunital(&random_cochain(&g, 3, 2, 0, &mut r), 1, &random_cochain(&g, 3, 1, 0, &mut r)).unwrap();
    // derived data is recomputed, not stored
    let back = ng_from_json(&ng_to_json(&cat), &g, 3).unwrap();
    assert_eq!((back.level, back.alpha, back.phi, back.rho, back.r), (cat.level, cat.alpha, cat.phi, cat.rho, cat.r));

    let s3 = group("s3");
    let p = ParityMap::sign(&s3).unwrap();
    assert_eq!(parity_from_json(&parity_to_json(&p), &s3).unwrap(), p);
    assert!(parity_from_json(&json!({"parity": [1, 1, 1, 1, 1, 1]}), &s3).is_err());
}

#[test]
fn birigs_round_trip_and_print_stably() {
    let b = double_birig(&group("s3"));
    let v = birig_to_json(&b);
    assert_eq!(birig_from_json(&v).unwrap(), b);
    let s = to_pretty(&v);
    assert!(s.ends_with('\n'));
    assert_eq!(s, to_pretty(&birig_to_json(&birig_from_json(&v).unwrap())));
}
