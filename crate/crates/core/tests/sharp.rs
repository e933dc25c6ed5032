use semiinf::format::{fixture, FIXTURES};
use semiinf::sharp::{all_pass, build_sharp, entwining_sharp, frobenius_sharp, verify_sdi, Sharp};
use semiinf::{Error, Rationals};

fn sharp(name: &str) -> Sharp<Rationals> {
    build_sharp(&fixture(name).unwrap().setup(&Rationals).unwrap()).unwrap()
}

#[test]
fn sdi_checks_pass_on_fixtures() {
    for (name, _) in FIXTURES {
        let sh = sharp(name);
        let checks = verify_sdi(&sh).unwrap();
        assert!(all_pass(&checks), "{name}: {checks:#?}");
        assert_eq!(sh.a_sharp.dim(), sh.setup.a.dim(), "{name}");
    }
}

#[test]
fn entwining_agrees_with_commutant() {
    for (name, _) in FIXTURES {
        let sh = sharp(name);
        let e = entwining_sharp(&sh).unwrap();
        assert!(all_pass(&e.checks), "{name}: {:#?}", e.checks);
    }
}

#[test]
fn frobenius_isomorphisms() {
    for name in ["F1", "F2", "F3"] {
        let sh = sharp(name);
        let fr = frobenius_sharp(&sh).unwrap();
        assert!(all_pass(&fr.checks), "{name}: {:#?}", fr.checks);
    }
    assert!(matches!(frobenius_sharp(&sharp("F4")), Err(Error::NotApplicable(_))));
}

#[test]
fn a_sharp_degrees() {
    let sh = sharp("F2");
    let mut d = sh.a_sharp.basis().degrees().to_vec();
    d.sort();
    assert_eq!(d, vec![-1, 0, 0, 1]);
    let sh = sharp("F4");
    let mut d = sh.a_sharp.basis().degrees().to_vec();
    d.sort();
    assert_eq!(d, vec![0, 0, 1]);
}
