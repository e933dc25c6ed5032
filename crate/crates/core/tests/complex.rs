use std::collections::BTreeMap;

use semiinf::complex::{ChainMap, Complex};
use semiinf::format::fixture;
use semiinf::matrix::Matrix;
use semiinf::module::Bimodule;
use semiinf::resolution::{Resolution, Strategy};
use semiinf::sharp::{build_sharp, Sharp};
use semiinf::{Error, Rationals};

fn sharp(name: &str) -> Sharp<Rationals> {
    build_sharp(&fixture(name).unwrap().setup(&Rationals).unwrap()).unwrap()
}

fn resolution_complex(name: &str, depth: usize) -> Complex<Rationals> {
    let sh = sharp(name);
    let k = sh.ring_a.semisimple_top(0).unwrap();
    Resolution::concave(&sh, &k, Strategy::InductionStep, 64).unwrap().complex(depth).unwrap()
}

#[test]
fn cone_of_identity_is_acyclic() {
    for name in ["F1", "F2", "F4"] {
        let c = resolution_complex(name, 3);
        let id = ChainMap::identity(&c);
        assert!(id.cone().unwrap().is_acyclic(), "{name}");
        assert!(id.is_quasi_iso().unwrap());
    }
}

#[test]
fn resolution_cohomology_sits_at_the_ends() {
    let c = resolution_complex("F1", 3);
    let h = c.cohomology();
    assert_eq!(h.get(0, 0), 1);
    // only the augmentation class and the unresolved top kernel survive
    assert!(h.entries.keys().all(|&(i, _)| i == 0 || i == -3), "{h:?}");
}

#[test]
fn shifts_and_truncations() {
    let c = resolution_complex("F2", 3);
    let h = c.cohomology();
    let back = c.shift(1).shift(-1);
    assert_eq!(back.cohomology(), h);
    let s = c.shift(2).cohomology();
    for (&(i, n), &v) in &h.entries {
        assert_eq!(s.get(i - 2, n), v);
    }
    let t = c.stupid_truncation(-1);
    assert_eq!(t.range(), Some((-1, 0)));
    assert_eq!(t.term_dim(-1), c.term_dim(-1));
}

#[test]
fn shapes_of_resolutions() {
    let c = resolution_complex("F3", 4);
    let shape = c.classify_shape();
    assert!(shape.concave && shape.non_strictly_concave && !shape.convex);
    let sh = sharp("F2");
    let k = sh.ring_a_sharp.semisimple_top(0).unwrap();
    let q = Resolution::convex(&sh, &k, Strategy::Bar, 64).unwrap().complex(3).unwrap();
    assert!(q.classify_shape().non_strictly_convex);
}

#[test]
fn square_of_differential_is_checked() {
    let sh = sharp("F0");
    let k = Bimodule::regular(&sh.setup.a).forget_right();
    let id = Matrix::identity(&Rationals, 1);
    let terms: BTreeMap<i32, Bimodule<Rationals>> = (0..3).map(|i| (i, k.clone())).collect();
    let diffs: BTreeMap<i32, Matrix<Rationals>> = (0..2).map(|i| (i, id.clone())).collect();
    assert!(matches!(Complex::new(terms, diffs), Err(Error::NotAComplex(0))));
}
