use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use semiinf::format::fixture;
use semiinf::semiinf::{semiinf_ext, Policy, Window};
use semiinf::sharp::build_sharp;
use semiinf::Rationals;

fn engine(c: &mut Criterion) {
    let mut g = c.benchmark_group("semiinf_ext");
    g.sample_size(10);
    for (name, window) in [("F2", Window::new((-4, 4), (-4, 4))), ("F3", Window::new((-3, 1), (-1, 4)))] {
        let sh = build_sharp(&fixture(name).unwrap().setup(&Rationals).unwrap()).unwrap();
        let x = sh.ring_a_sharp.semisimple_top(0).unwrap();
        let y = sh.ring_a.semisimple_top(0).unwrap();
        for parallel in [false, true] {
            let label = if parallel { "parallel" } else { "sequential" };
            let policy = Policy { parallel, ..Policy::default() };
            g.bench_with_input(BenchmarkId::new(label, name), &policy, |b, p| {
                b.iter(|| semiinf_ext(&sh, &x, &y, window, p).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, engine);
criterion_main!(benches);
