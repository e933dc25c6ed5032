use proptest::prelude::*;
use semiinf::format::{fixture, FIXTURES};
use semiinf::random::{random_module, random_n_projective, random_n_sharp_injective, rng};
use semiinf::resolution::{coinduced_filtration, induced_filtration, Direction, RelPair, Resolution, Strategy};
use semiinf::sharp::{build_sharp, Sharp};
use semiinf::Rationals;
use std::sync::OnceLock;

fn corpus() -> &'static Vec<Sharp<Rationals>> {
    static C: OnceLock<Vec<Sharp<Rationals>>> = OnceLock::new();
    C.get_or_init(|| {
        FIXTURES
            .iter()
            .map(|(n, _)| build_sharp(&fixture(n).unwrap().setup(&Rationals).unwrap()).unwrap())
            .collect()
    })
}

#[test]
fn adjunction_on_relative_projectives_and_injectives() {
    for (i, sh) in corpus().iter().enumerate() {
        let mut r = rng(100 + i as u64);
        for _ in 0..20 {
            let p = random_n_projective(sh, &mut r).unwrap();
            assert!(sh.is_n_projective(&p).unwrap());
            assert!(sh.unit_is_iso(&p).unwrap(), "{}", FIXTURES[i].0);
            let m = random_n_sharp_injective(sh, &mut r).unwrap();
            assert!(sh.is_n_sharp_injective(&m).unwrap());
            assert!(sh.counit_is_iso(&m).unwrap(), "{}", FIXTURES[i].0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn filtration_iff_relative_projective(seed in any::<u64>(), which in 0usize..5) {
        let sh = &corpus()[which];
        let mut r = rng(seed);
        let m = random_module(&sh.setup.a, &mut r, 2, 2).unwrap();
        let found = induced_filtration(&RelPair::concave(sh), &m, Direction::Up).unwrap().found;
        prop_assert_eq!(found, sh.is_n_projective(&m).unwrap());
    }

    #[test]
    fn coinduced_filtration_iff_relative_injective(seed in any::<u64>(), which in 0usize..5) {
        let sh = &corpus()[which];
        let mut r = rng(seed);
        let m = random_module(&sh.a_sharp, &mut r, 2, 2).unwrap();
        let found = coinduced_filtration(sh, &m).unwrap().found;
        prop_assert_eq!(found, sh.is_n_sharp_injective(&m).unwrap());
    }

    #[test]
    fn resolutions_of_random_modules(seed in any::<u64>(), which in 0usize..5, bar in any::<bool>()) {
        let sh = &corpus()[which];
        let strategy = if bar { Strategy::Bar } else { Strategy::InductionStep };
        let mut r = rng(seed);
        let y = random_module(&sh.setup.a, &mut r, 1, 2).unwrap();
        let mut p = Resolution::concave(sh, &y, strategy, 64).unwrap();
        prop_assert!(p.is_exact_below(3).unwrap());
        for t in p.terms() {
            prop_assert!(sh.is_n_projective(t).unwrap());
        }
        let x = random_module(&sh.a_sharp, &mut r, 1, 2).unwrap();
        let mut q = Resolution::convex(sh, &x, strategy, 64).unwrap();
        prop_assert!(q.is_exact_below(3).unwrap());
    }

    #[test]
    fn twisting_moves_cohomology(seed in any::<u64>(), which in 0usize..5, n in -3i32..=3) {
        let sh = &corpus()[which];
        let mut r = rng(seed);
        let y = random_module(&sh.setup.a, &mut r, 1, 2).unwrap();
        let mut p = Resolution::concave(sh, &y, Strategy::InductionStep, 64).unwrap();
        let c = p.complex(3).unwrap();
        for i in c.terms().keys() {
            let d = c.diff(sh.field(), *i);
            if c.terms().contains_key(&(i + 2)) {
                prop_assert!(c.diff(sh.field(), i + 1).mul(&d).is_zero());
            }
        }
        let h = c.cohomology();
        let ht = c.twist(n).cohomology();
        for (&(i, d), &v) in &h.entries {
            prop_assert_eq!(ht.get(i, d - n), v);
        }
        prop_assert_eq!(h.entries.len(), ht.entries.len());
    }
}
