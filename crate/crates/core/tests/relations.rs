use qosp_core::centre::{
    comemf_mirror_relation, comemf_relation, scasimir_product_relation, scasimir_relations,
    Relation,
};
use qosp_core::ScalarField;

#[test]
fn scasimir_suite_generic() {
    let k = ScalarField::generic();
    for r in scasimir_relations(&k).unwrap() {
        assert!(r.holds(), "{}", r.name);
    }
}

#[test]
fn comemf_and_mirror_to_ten() {
    let k = ScalarField::generic();
    for m in 1..=10 {
        assert!(comemf_relation(&k, m).unwrap().holds(), "m = {m}");
        assert!(
            comemf_mirror_relation(&k, m).unwrap().holds(),
            "mirror m = {m}"
        );
    }
}

#[test]
fn scasm_generic_to_six() {
    let k = ScalarField::generic();
    for m in 1..=6 {
        assert!(scasimir_product_relation(&k, m).unwrap().holds(), "m = {m}");
    }
}

#[test]
fn scasm_roots_to_big_l() {
    for l in 3..=6 {
        let k = ScalarField::root(l).unwrap();
        let big = k.root_data().unwrap().big_l;
        for m in 1..=big {
            let r = scasimir_product_relation(&k, m).unwrap();
            assert!(r.holds(), "l = {l}, m = {m}");
        }
    }
}

#[test]
fn a_wrong_sign_is_reported() {
    let k = ScalarField::generic();
    let r = comemf_relation(&k, 3).unwrap();
    let bad = Relation::new("bad", r.lhs.clone(), r.rhs.neg());
    let out = bad.check();
    assert!(!out.pass);
    assert_eq!(out.lhs.as_deref(), Some(r.lhs.to_text().as_str()));
    assert_eq!(out.rhs.as_deref(), Some(r.rhs.neg().to_text().as_str()));
}
