//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};

use semiinf::format::{fixture, CORRUPTED, FIXTURES};
use semiinf::module::Bimodule;
use semiinf::random::{random_module, random_n_projective, random_n_sharp_injective, rng};
use semiinf::resolution::Strategy;
use semiinf::semiinf::{
    hom_through, les_check, oracle_finite_projdim, oracle_induced, semiinf_ext, ExtTable, Policy, Window,
};
use semiinf::setup::verify_setup;
use semiinf::sharp::{all_pass, build_sharp, entwining_sharp, frobenius_sharp, verify_sdi, Sharp};
use semiinf::Rationals;

type Outcome = Result<String, String>;

fn sharp(name: &str) -> Sharp<Rationals> {
    build_sharp(&fixture(name).unwrap().setup(&Rationals).unwrap()).unwrap()
}

fn corpus() -> Vec<(&'static str, Sharp<Rationals>)> {
    FIXTURES.iter().map(|(n, _)| (*n, sharp(n))).collect()
}

fn trivial(sh: &Sharp<Rationals>) -> (Bimodule<Rationals>, Bimodule<Rationals>) {
    (sh.ring_a_sharp.semisimple_top(0).unwrap(), sh.ring_a.semisimple_top(0).unwrap())
}

fn regular(sh: &Sharp<Rationals>) -> (Bimodule<Rationals>, Bimodule<Rationals>) {
    (Bimodule::regular(&sh.a_sharp).forget_right(), Bimodule::regular(&sh.setup.a).forget_right())
}

fn pairs(sh: &Sharp<Rationals>) -> [(&'static str, (Bimodule<Rationals>, Bimodule<Rationals>)); 2] {
    [("k", trivial(sh)), ("A", regular(sh))]
}

const FULL: Window = Window { i: (-4, 4), n: (-4, 4) };

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e < limit, || format!("{what} took {e:.2?}, limit {limit:?}"))
}

fn compare(a: &ExtTable, b: &ExtTable, what: &str) -> Result<(), String> {
    match a.first_difference(b) {
        None => Ok(()),
        Some((i, n, x, y)) => Err(format!("{what}: differs at (i={i}, n={n}): {x} vs {y}")),
    }
}

fn setup_gate() -> Outcome {
    for (name, text) in FIXTURES {
        let t = Instant::now();
        let s = semiinf::format::AlgebraDocument::from_json(text).unwrap().setup(&Rationals).unwrap();
        let r = verify_setup(&s);
        ensure(r.passed(), || format!("{name} fails: {r:?}"))?;
        within(t, Duration::from_secs(1), name)?;
    }
    let expected = [
        ("degree0-nilpotent", 2, "x"),
        ("positive-in-b", 1, "x"),
        ("multiplication-not-bijective", 2, "rank 3"),
        ("not-injective", 3, "simple"),
    ];
    ensure(expected.len() == CORRUPTED.len(), || "corrupted corpus changed".into())?;
    for (name, cond, witness) in expected {
        let t = Instant::now();
        let r = verify_setup(&fixture(name).unwrap().setup(&Rationals).unwrap());
        let c = [&r.condition1, &r.condition2, &r.condition3][cond - 1];
        let w = c.witness.clone().unwrap_or_default();
        ensure(!r.passed() && !c.pass && w.contains(witness), || format!("{name}: {r:?}"))?;
        within(t, Duration::from_secs(1), name)?;
    }
    Ok("5 fixtures pass, 4 corrupted fail with witnesses".into())
}

fn sharp_identities() -> Outcome {
    for (name, _) in FIXTURES {
        let t = Instant::now();
        let sh = sharp(name);
        let sdi = verify_sdi(&sh).map_err(|e| format!("{name}: {e}"))?;
        ensure(all_pass(&sdi), || format!("{name}: {sdi:?}"))?;
        if *name == "F2" {
            let e = entwining_sharp(&sh).map_err(|e| e.to_string())?;
            ensure(all_pass(&e.checks), || format!("entwining: {:?}", e.checks))?;
        }
        if ["F1", "F2", "F3"].contains(name) {
            let fr = frobenius_sharp(&sh).map_err(|e| format!("{name}: {e}"))?;
            ensure(all_pass(&fr.checks), || format!("{name} Frobenius: {:?}", fr.checks))?;
        }
        within(t, Duration::from_secs(5), name)?;
    }
    Ok("identities on F0-F4, entwining on F2, Frobenius on F1-F3".into())
}

fn equivalence_suite() -> Outcome {
    let t = Instant::now();
    let mut count = 0;
    for (k, (name, sh)) in corpus().iter().enumerate() {
        let mut r = rng(1000 + k as u64);
        for _ in 0..20 {
            let p = random_n_projective(sh, &mut r).unwrap();
            ensure(sh.unit_is_iso(&p).unwrap(), || format!("{name}: unit fails on {p:?}"))?;
            let m = random_n_sharp_injective(sh, &mut r).unwrap();
            ensure(sh.counit_is_iso(&m).unwrap(), || format!("{name}: counit fails on {m:?}"))?;
            count += 2;
        }
    }
    within(t, Duration::from_secs(30), "equivalence suite")?;
    Ok(format!("{count} modules, {:.2?}", t.elapsed()))
}

fn central_identity() -> Outcome {
    let t = Instant::now();
    for (name, sh) in corpus() {
        for (label, (x, y)) in pairs(&sh) {
            let p = Policy::default();
            let e = semiinf_ext(&sh, &x, &y, FULL, &p).map_err(|e| format!("{name} {label}: {e}"))?;
            let h = hom_through(&sh, &x, &y, FULL, &p).map_err(|e| format!("{name} {label}: {e}"))?;
            compare(&e, &h, &format!("{name} {label}"))?;
        }
    }
    within(t, Duration::from_secs(120), "central identity")?;
    Ok(format!("F0-F4 with k and regular modules, {:.2?}", t.elapsed()))
}

fn resolution_independence() -> Outcome {
    for (name, sh) in corpus() {
        for (label, (x, y)) in pairs(&sh) {
            let a = semiinf_ext(&sh, &x, &y, FULL, &Policy::default()).map_err(|e| e.to_string())?;
            let bar = Policy { strategy: Strategy::Bar, ..Policy::default() };
            let b = semiinf_ext(&sh, &x, &y, FULL, &bar).map_err(|e| e.to_string())?;
            compare(&a, &b, &format!("{name} {label}"))?;
        }
    }
    Ok("induction-step and bar agree on F0-F4".into())
}

/// `dim Tor_j^A(k, k)` in internal degree `d` for `A = k[x]/(x^m)`, `deg x = 1`,
/// from the normalized bar complex `k ⊗ Ā^{⊗j} ⊗ k`.
fn bar_tor(m: usize, j: usize, d: usize) -> usize {
    // words (a_1, ..., a_j) with 1 <= a_r < m and sum a_r = d
    fn words(m: usize, j: usize, d: usize) -> Vec<Vec<usize>> {
        if j == 0 {
            return if d == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for a in 1..m.min(d + 1) {
            for mut w in words(m, j - 1, d - a) {
                w.insert(0, a);
                out.push(w);
            }
        }
        out
    }
    let diff = |j: usize| -> (usize, usize, usize) {
        // rank of d: degree j -> degree j-1, with sizes
        let src = words(m, j, d);
        if j == 0 {
            return (src.len(), 0, 0);
        }
        let tgt = words(m, j - 1, d);
        let idx: BTreeMap<Vec<usize>, usize> = tgt.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut mat = vec![vec![BigRational::zero(); src.len()]; tgt.len()];
        for (c, w) in src.iter().enumerate() {
            for r in 0..j - 1 {
                if w[r] + w[r + 1] < m {
                    let mut v = w.clone();
                    v[r] += v.remove(r + 1);
                    let sign = if r % 2 == 0 { -BigRational::one() } else { BigRational::one() };
                    mat[idx[&v]][c] += sign;
                }
            }
        }
        (src.len(), tgt.len(), rank(mat))
    };
    let (dim, _, out) = diff(j);
    let (_, _, inc) = diff(j + 1);
    dim - out - inc
}

fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

fn tate_oracle() -> Outcome {
    let w = Window::new((-4, 1), (-1, 7));
    for (name, m) in [("F1", 2), ("F3", 3)] {
        let sh = sharp(name);
        let (x, y) = trivial(&sh);
        let e = semiinf_ext(&sh, &x, &y, w, &Policy::default()).map_err(|e| e.to_string())?;
        for i in w.is() {
            for n in w.ns() {
                let tor = if i > 0 || n < 0 { 0 } else { bar_tor(m, (-i) as usize, n as usize) };
                ensure(e.get(i, n) == tor, || format!("{name} (i={i}, n={n}): engine {}, Tor {tor}", e.get(i, n)))?;
                if name == "F1" {
                    ensure(e.get(i, n) == usize::from(i <= 0 && n == -i), || format!("F1 (i={i}, n={n})"))?;
                }
            }
        }
    }
    Ok("F1 diagonal and F3 equal bar-complex Tor".into())
}

fn oracle_agreement() -> Outcome {
    let sh = sharp("F4");
    for (label, (x, y)) in pairs(&sh) {
        let p = Policy::default();
        let e = semiinf_ext(&sh, &x, &y, FULL, &p).map_err(|e| e.to_string())?;
        let a = oracle_finite_projdim(&sh, &x, &y, FULL, &p).map_err(|e| e.to_string())?;
        let b = oracle_induced(&sh, &x, &y, FULL, &p).map_err(|e| e.to_string())?;
        compare(&e, &a, &format!("finite-projdim {label}"))?;
        compare(&e, &b, &format!("induced {label}"))?;
    }
    Ok("F4: finite-projdim and induced equal the engine".into())
}

fn stabilization_witnesses() -> Outcome {
    let mut count = 0;
    for (name, sh) in corpus() {
        for (label, (x, y)) in pairs(&sh) {
            for strategy in [Strategy::InductionStep, Strategy::Bar] {
                let p = Policy { strategy, ..Policy::default() };
                let e = semiinf_ext(&sh, &x, &y, FULL, &p).map_err(|e| format!("{name} {label}: {e}"))?;
                for i in FULL.is() {
                    for n in FULL.ns() {
                        let w = e.witnesses.get(&(i, n)).ok_or_else(|| format!("{name} {label}: no witness ({i},{n})"))?;
                        let v = &w.values[w.bound..w.bound + 3];
                        ensure(v[0] == v[1] && v[1] == v[2] && v[2] == e.get(i, n), || {
                            format!("{name} {label} ({i},{n}): {:?}", w.values)
                        })?;
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{count} entries witnessed"))
}

fn les() -> Outcome {
    for (k, name) in ["F1", "F3"].into_iter().enumerate() {
        let sh = sharp(name);
        let ka = sh.ring_a.semisimple_top(0).unwrap();
        let reg = Bimodule::regular(&sh.setup.a).forget_right();
        let mut r = rng(77 + k as u64);
        let m1 = random_module(&sh.setup.a, &mut r, 2, 2).unwrap();
        let m2 = random_module(&sh.setup.a, &mut r, 2, 2).unwrap();
        let pairs = [(&ka, &ka), (&ka, &reg), (&reg, &ka), (&reg, &reg), (&m1, &m2)];
        for (j, (x, y)) in pairs.into_iter().enumerate() {
            let rep = les_check(&sh, x, y, (-3, 4), &Policy::default()).map_err(|e| e.to_string())?;
            ensure(rep.pass, || format!("{name} pair {j}: {rep:?}"))?;
        }
    }
    Ok("F1 and F3, 5 pairs each".into())
}

fn corpus_json() -> Result<String, String> {
    let mut all = Vec::new();
    for (name, sh) in corpus() {
        for (label, (x, y)) in pairs(&sh) {
            let e = semiinf_ext(&sh, &x, &y, FULL, &Policy::default()).map_err(|e| e.to_string())?;
            all.push(serde_json::json!({ "algebra": name, "modules": label, "table": e.to_json() }));
        }
    }
    serde_json::to_string(&all).map_err(|e| e.to_string())
}

fn determinism() -> Outcome {
    let a = corpus_json()?;
    let b = corpus_json()?;
    ensure(a == b, || "runs differ".into())?;
    Ok(format!("{} bytes, identical", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("setup gate", setup_gate),
        ("sharp identities", sharp_identities),
        ("equivalence suite", equivalence_suite),
        ("central identity", central_identity),
        ("resolution independence", resolution_independence),
        ("Tate oracle", tate_oracle),
        ("oracle agreement", oracle_agreement),
        ("stabilization witnesses", stabilization_witnesses),
        ("long exact sequence", les),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{:.2?}]", k + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{:.2?}]", k + 1, t.elapsed());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria pass");
}
