use qaffine_core::flagcomb::Composition;
use qaffine_core::polyrep::{apply_e, apply_f, sample_polys, verify_relation, Relation, WeightVector};
use qaffine_core::symmetrize::is_invariant;
use qaffine_core::LaurentPoly;

#[test]
fn every_relation_on_two_steps() {
    for rel in Relation::ALL {
        let r = verify_relation(rel, 2, 2, 2, 4, 9).unwrap();
        assert!(r.passed(), "{rel}: {:?}", r.failures.first());
    }
}

#[test]
fn reports_are_reproducible() {
    let a = verify_relation(Relation::E, 3, 2, 1, 3, 17).unwrap();
    let b = verify_relation(Relation::E, 3, 2, 1, 3, 17).unwrap();
    assert_eq!(a, b);
    assert!(a.checks > 0);
}

#[test]
fn operators_preserve_invariance() {
    for v in Composition::all(3, 3) {
        for f in sample_polys(&v, 4, 3) {
            for i in 0..2 {
                for k in -1..=1 {
                    if let Some((w, p)) = apply_e(i, k, &v, &f).unwrap() {
                        assert!(is_invariant(&p, &w.segments()), "E v={v}");
                    }
                    if let Some((w, p)) = apply_f(i, k, &v, &f).unwrap() {
                        assert!(is_invariant(&p, &w.segments()), "F v={v}");
                    }
                }
            }
        }
    }
}

#[test]
fn far_generators_commute_on_vectors() {
    let v = Composition::new(vec![0, 1, 1, 1]);
    let x = WeightVector::single(v, LaurentPoly::one(3));
    let a = x.e(2, 1).unwrap().e(0, 0).unwrap();
    let b = x.e(0, 0).unwrap().e(2, 1).unwrap();
    assert_eq!(a, b);
}
