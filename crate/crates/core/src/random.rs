//! Seeded random modules for tests and benchmarks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraRef;
use crate::error::Result;
use crate::field::Field;
use crate::module::Bimodule;
use crate::sharp::Sharp;

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

fn scalar<F: Field>(f: &F, rng: &mut Rng8) -> F::Elem {
    f.from_i64(rng.gen_range(-2..=2))
}

/// A free left module on one to `max_gens` generators placed in degrees
/// `-1..=1`.
pub fn random_free<F: Field>(alg: &AlgebraRef<F>, rng: &mut Rng8, max_gens: usize) -> Result<Bimodule<F>> {
    let reg = Bimodule::regular(alg).forget_right();
    let gens = rng.gen_range(1..=max_gens.max(1));
    let mut m = reg.shifted(rng.gen_range(-1..=1));
    for _ in 1..gens {
        m = m.direct_sum(&reg.shifted(rng.gen_range(-1..=1)))?;
    }
    Ok(m)
}

/// A quotient of a random free module by the submodule generated by up to
/// `max_rels` random homogeneous vectors.
pub fn random_module<F: Field>(
    alg: &AlgebraRef<F>,
    rng: &mut Rng8,
    max_gens: usize,
    max_rels: usize,
) -> Result<Bimodule<F>> {
    let free = random_free(alg, rng, max_gens)?;
    let f = free.field().clone();
    let support = free.space().support();
    let rels = rng.gen_range(0..=max_rels);
    let mut vectors = Vec::new();
    for _ in 0..rels {
        let d = support[rng.gen_range(0..support.len())];
        let v: Vec<F::Elem> = (0..free.dim())
            .map(|i| if free.space().degree(i) == d { scalar(&f, rng) } else { f.zero() })
            .collect();
        vectors.push(v);
    }
    let sub = free.generated_subspace(vectors);
    Ok(free.quotient(&sub).0)
}

/// `A ⊗_B M` for a random `B`-module `M`; projective over `N`.
pub fn random_n_projective<F: Field>(sh: &Sharp<F>, rng: &mut Rng8) -> Result<Bimodule<F>> {
    let m = random_module(&sh.setup.b, rng, 2, 2)?;
    Ok(sh.setup.ind_b(&m)?.module)
}

/// `S ⊗_A P` for a random `N`-projective `P`; injective over `N^#`.
pub fn random_n_sharp_injective<F: Field>(sh: &Sharp<F>, rng: &mut Rng8) -> Result<Bimodule<F>> {
    let p = random_n_projective(sh, rng)?;
    Ok(sh.induce(&p)?.module)
}
