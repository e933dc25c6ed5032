use semiinf::format::fixture;
use semiinf::module::Bimodule;
use semiinf::resolution::Strategy;
use semiinf::semiinf::{
    hom_through, is_semiinfinite_object, les_check, oracle_finite_projdim, oracle_induced, oracle_tate, semiinf_ext,
    tate_applicable, transport_to_sharp, Policy, Side, Window,
};
use semiinf::sharp::{build_sharp, Sharp};
use semiinf::Rationals;

fn sharp(name: &str) -> Sharp<Rationals> {
    build_sharp(&fixture(name).unwrap().setup(&Rationals).unwrap()).unwrap()
}

fn trivial(sh: &Sharp<Rationals>) -> (Bimodule<Rationals>, Bimodule<Rationals>) {
    (sh.ring_a_sharp.semisimple_top(0).unwrap(), sh.ring_a.semisimple_top(0).unwrap())
}

#[test]
fn point_has_one_class() {
    let sh = sharp("F0");
    let (x, y) = trivial(&sh);
    let t = semiinf_ext(&sh, &x, &y, Window::new((-2, 2), (-2, 2)), &Policy::default()).unwrap();
    assert_eq!(t.table.entries.len(), 1);
    assert_eq!(t.get(0, 0), 1);
}

#[test]
fn dual_numbers_diagonal() {
    let sh = sharp("F1");
    let (x, y) = trivial(&sh);
    let w = Window::new((-3, 1), (-1, 3));
    let t = semiinf_ext(&sh, &x, &y, w, &Policy::default()).unwrap();
    println!("{}", t.render());
    for i in w.is() {
        for n in w.ns() {
            assert_eq!(t.get(i, n), usize::from(i <= 0 && n == -i), "({i},{n})");
        }
    }
    let h = hom_through(&sh, &x, &y, w, &Policy::default()).unwrap();
    assert_eq!(h.table, t.table);
}

#[test]
fn quantum_plane_strategies_agree() {
    let sh = sharp("F2");
    let (x, y) = trivial(&sh);
    let w = Window::new((-2, 2), (-2, 2));
    let a = semiinf_ext(&sh, &x, &y, w, &Policy::default()).unwrap();
    println!("{}\nbound {:?}", a.render(), a.bound);
    let b = semiinf_ext(&sh, &x, &y, w, &Policy { strategy: Strategy::Bar, ..Policy::default() }).unwrap();
    println!("{}\nbound {:?}", b.render(), b.bound);
    assert_eq!(a.table, b.table);
}

fn regular(sh: &Sharp<Rationals>) -> (Bimodule<Rationals>, Bimodule<Rationals>) {
    (Bimodule::regular(&sh.a_sharp).forget_right(), Bimodule::regular(&sh.setup.a).forget_right())
}

#[test]
fn path_algebra_oracles() {
    let sh = sharp("F4");
    let w = Window::new((-4, 4), (-4, 4));
    for (x, y) in [trivial(&sh), regular(&sh)] {
        let e = semiinf_ext(&sh, &x, &y, w, &Policy::default()).unwrap();
        println!("{}", e.render());
        let a = oracle_finite_projdim(&sh, &x, &y, w, &Policy::default()).unwrap();
        let b = oracle_induced(&sh, &x, &y, w, &Policy::default()).unwrap();
        let h = hom_through(&sh, &x, &y, w, &Policy::default()).unwrap();
        assert_eq!(a.table, e.table);
        assert_eq!(b.table, e.table);
        assert_eq!(h.table, e.table);
    }
}

#[test]
fn tate_on_truncated_polynomials() {
    for name in ["F1", "F3"] {
        let sh = sharp(name);
        let fr = tate_applicable(&sh).unwrap();
        let ya = sh.ring_a.semisimple_top(0).unwrap();
        let x = transport_to_sharp(&sh, &fr, &ya).unwrap();
        let w = Window::new((-4, 1), (-1, 6));
        let e = semiinf_ext(&sh, &x, &ya, w, &Policy::default()).unwrap();
        let t = oracle_tate(&sh, &ya, &ya, w, &Policy::default()).unwrap();
        println!("{name}\n{}\n{}", e.render(), t.render());
        assert_eq!(e.table, t.table);
        let r = les_check(&sh, &ya, &ya, (-2, 4), &Policy::default()).unwrap();
        assert!(r.pass, "{r:#?}");
    }
}

#[test]
fn semiinfinite_objects() {
    let sh = sharp("F1");
    let (x, y) = trivial(&sh);
    assert!(!is_semiinfinite_object(&sh, &y, Side::A, 8).unwrap());
    assert!(!is_semiinfinite_object(&sh, &x, Side::ASharp, 8).unwrap());
    let sh = sharp("F4");
    let (x, y) = trivial(&sh);
    assert!(is_semiinfinite_object(&sh, &y, Side::A, 8).unwrap());
    assert!(is_semiinfinite_object(&sh, &x, Side::ASharp, 8).unwrap());
    let sh = sharp("F2");
    let (x, y) = regular(&sh);
    assert!(is_semiinfinite_object(&sh, &y, Side::A, 8).unwrap());
    assert!(is_semiinfinite_object(&sh, &x, Side::ASharp, 8).unwrap());
}
