use semiinf::format::{fixture, CORRUPTED, FIXTURES};
use semiinf::setup::verify_setup;
use semiinf::Rationals;

#[test]
fn fixtures_satisfy_all_conditions() {
    for (name, _) in FIXTURES {
        let s = fixture(name).unwrap().setup(&Rationals).unwrap();
        let r = verify_setup(&s);
        assert!(r.passed(), "{name}: {r:?}");
    }
}

#[test]
fn corrupted_fixtures_fail_with_witnesses() {
    let expected = [
        ("degree0-nilpotent", 2, "x"),
        ("positive-in-b", 1, "x"),
        ("multiplication-not-bijective", 2, "rank 3"),
        ("not-injective", 3, ""),
    ];
    for (name, cond, witness) in expected {
        let s = fixture(name).unwrap().setup(&Rationals).unwrap();
        let r = verify_setup(&s);
        let c = [&r.condition1, &r.condition2, &r.condition3][cond - 1];
        assert!(!r.passed(), "{name}");
        assert!(!c.pass, "{name}: {r:?}");
        let w = c.witness.clone().unwrap();
        assert!(w.contains(witness), "{name}: witness {w}");
        for earlier in [&r.condition1, &r.condition2, &r.condition3].iter().take(cond - 1) {
            assert!(earlier.pass, "{name}: {r:?}");
        }
    }
    assert_eq!(CORRUPTED.len(), expected.len());
}

#[test]
fn corings_satisfy_axioms() {
    for (name, _) in FIXTURES {
        let s = fixture(name).unwrap().setup(&Rationals).unwrap();
        let c = s.coring().unwrap();
        c.check_coring_axioms().unwrap();
        assert_eq!(c.dim(), s.n.dim(), "{name}");
        assert_eq!(c.n_sharp.dim(), s.n.dim(), "{name}");
    }
}

#[test]
fn cotensor_with_the_coring_is_identity() {
    use semiinf::module::Bimodule;
    for (name, _) in FIXTURES {
        let s = fixture(name).unwrap().setup(&Rationals).unwrap();
        let c = s.coring().unwrap();
        let reg_sharp = Bimodule::regular(&c.n_sharp).forget_right();
        let left = c.cotensor(&c.dual, &reg_sharp).unwrap();
        assert_eq!(left.module.dim(), c.n_sharp.dim(), "{name}: N∨ □ N^#");
        let reg_n = Bimodule::regular(&c.n).forget_left();
        let right = c.cotensor(&reg_n, &c.dual).unwrap();
        assert_eq!(right.module.dim(), c.dim(), "{name}: N □ N∨");
        assert_eq!(right.module.space().dims_by_degree(), c.n.basis().dims_by_degree(), "{name}");
        assert_eq!(left.module.space().dims_by_degree(), c.n_sharp.basis().dims_by_degree(), "{name}");
    }
}
