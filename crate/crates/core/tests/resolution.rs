use semiinf::format::{fixture, FIXTURES};
use semiinf::resolution::{
    detect_finite_relative_projdim, induced_filtration, Direction, ProjDim, RelPair, Resolution, Strategy, TermBound,
};
use semiinf::sharp::{build_sharp, Sharp};
use semiinf::module::Bimodule;
use semiinf::Rationals;

fn sharp(name: &str) -> Sharp<Rationals> {
    build_sharp(&fixture(name).unwrap().setup(&Rationals).unwrap()).unwrap()
}

fn k_a(sh: &Sharp<Rationals>) -> Bimodule<Rationals> {
    sh.ring_a.semisimple_top(0).unwrap()
}

fn k_sharp(sh: &Sharp<Rationals>) -> Bimodule<Rationals> {
    sh.ring_a_sharp.semisimple_top(0).unwrap()
}

fn min_degrees(r: &Resolution<Rationals>) -> Vec<i32> {
    r.terms().iter().map(|t| t.degree_range().unwrap().0).collect()
}

#[test]
fn concave_resolution_of_k_over_dual_numbers() {
    let sh = sharp("F1");
    let mut r = Resolution::concave(&sh, &k_a(&sh), Strategy::InductionStep, 64).unwrap();
    r.extend_to(3).unwrap();
    assert_eq!(min_degrees(&r), vec![0, 1, 2, 3]);
    assert!(r.terms().iter().all(|t| t.dim() == 2));
    assert!(r.is_exact_below(3).unwrap());
}

#[test]
fn resolutions_are_exact_and_move_degrees() {
    for (name, _) in FIXTURES {
        let sh = sharp(name);
        for strategy in [Strategy::InductionStep, Strategy::Bar] {
            let mut p = Resolution::concave(&sh, &k_a(&sh), strategy, 64).unwrap();
            assert!(p.is_exact_below(4).unwrap(), "{name} {strategy:?} concave");
            let mut q = Resolution::convex(&sh, &k_sharp(&sh), strategy, 64).unwrap();
            assert!(q.is_exact_below(4).unwrap(), "{name} {strategy:?} convex");
            for j in 0..p.computed() {
                assert!(p.terms()[j].degree_range().unwrap().0 >= j as i32 / 2, "{name} {strategy:?}");
                assert!(sh.is_n_projective(&p.terms()[j]).unwrap());
            }
            for t in q.terms() {
                assert!(t.degree_range().unwrap().1 <= 0, "{name} {strategy:?}");
            }
        }
    }
}

#[test]
fn bounds_dominate_computed_terms() {
    for (name, _) in FIXTURES {
        let sh = sharp(name);
        for strategy in [Strategy::InductionStep, Strategy::Bar] {
            let mut p = Resolution::concave(&sh, &k_a(&sh), strategy, 64).unwrap();
            p.extend_to(2).unwrap();
            let early: Vec<TermBound> = (0..8).map(|j| p.bound(j)).collect();
            p.extend_to(7).unwrap();
            for (j, b) in early.into_iter().enumerate() {
                match (b, p.terms().get(j)) {
                    (TermBound::Degree(d), Some(t)) => assert!(t.degree_range().unwrap().0 >= d, "{name} {j}"),
                    (TermBound::Vanishes, Some(_)) => panic!("{name}: term {j} should vanish"),
                    _ => {}
                }
            }
            assert!(p.bound_is_effective(), "{name} {strategy:?}");
        }
    }
}

#[test]
fn convex_resolution_over_dual_numbers() {
    let sh = sharp("F1");
    let q = Resolution::convex(&sh, &k_sharp(&sh), Strategy::InductionStep, 64).unwrap();
    assert_eq!(q.length(), Some(1));
    assert_eq!(q.terms()[0].dim(), 1);
}

#[test]
fn projective_resolutions() {
    let sh = sharp("F1");
    let mut r = Resolution::projective(sh.ring_a.clone(), &k_a(&sh), 64).unwrap();
    r.extend_to(4).unwrap();
    assert!(r.terms().iter().all(|t| t.dim() == 2));
    assert_eq!(min_degrees(&r), vec![0, 1, 2, 3, 4]);
    let sh = sharp("F4");
    let mut r = Resolution::projective(sh.ring_a.clone(), &k_a(&sh), 64).unwrap();
    r.extend_to(5).unwrap();
    assert!(r.length().unwrap() <= 2);
    assert!(r.is_exact_below(5).unwrap());
}

#[test]
fn finite_relative_projective_dimension() {
    let sh = sharp("F1");
    assert!(matches!(detect_finite_relative_projdim(&sh, &k_a(&sh), 6).unwrap(), ProjDim::Periodic(_)));
    let sh = sharp("F4");
    match detect_finite_relative_projdim(&sh, &k_a(&sh), 6).unwrap() {
        ProjDim::Finite(d, mut r) => {
            assert!(d <= 1);
            assert!(r.is_exact_below(3).unwrap());
        }
        _ => panic!("k over the path algebra has finite projective dimension"),
    }
    let sh = sharp("F2");
    let reg = Bimodule::regular(&sh.setup.a).forget_right();
    assert!(matches!(detect_finite_relative_projdim(&sh, &reg, 6).unwrap(), ProjDim::Finite(0, _)));
}

#[test]
fn filtration_detector() {
    let sh = sharp("F2");
    let pair = RelPair::concave(&sh);
    let reg = Bimodule::regular(&sh.setup.a).forget_right();
    let rep = induced_filtration(&pair, &reg, Direction::Up).unwrap();
    assert!(rep.found);
    let rep = induced_filtration(&pair, &k_a(&sh), Direction::Up).unwrap();
    assert!(!rep.found);
    assert_eq!(rep.failed_at, Some(0));
    let conv = RelPair::convex(&sh);
    let reg = Bimodule::regular(&sh.a_sharp).forget_right();
    assert!(induced_filtration(&conv, &reg, Direction::Down).unwrap().found);
}
