//! The algebra `A^#` and the bimodule `S = N∨ ⊗_N A`.
//!
//! `A^#` is realized as the algebra of operators on `S` commuting with the
//! right `A`-action. Its basis starts with the operators of `N^#`, so `N^#`
//! is the subalgebra on the first `dim N` basis elements.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraRef};
use crate::coring::Coring;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{graded_rank, GradedSpace};
use crate::hom::{hom_dim, hom_from_bimodule, hom_space, possible_shifts, HomModule, Linearity};
use crate::matrix::{EchelonBasis, Matrix};
use crate::module::Bimodule;
use crate::ring::RingData;
use crate::setup::{verify_setup, TriangularSetup};
use crate::tensor::{tensor, Tensor};

#[derive(Clone, Debug)]
pub struct Sharp<F: Field> {
    pub setup: TriangularSetup<F>,
    pub coring: Coring<F>,
    pub a_sharp: AlgebraRef<F>,
    /// Columns: the basis of `N^#` inside `A^#`.
    pub n_sharp_in: Matrix<F>,
    /// Columns: the basis of `K` inside `A^#`.
    pub k_in_a_sharp: Matrix<F>,
    /// `S` as an `A^#`-`A` bimodule.
    pub s: Bimodule<F>,
    /// `S = N∨ ⊗_N A` with its pure tensors.
    pub s_tensor: Tensor<F>,
    pub ring_a: RingData<F>,
    pub ring_n: RingData<F>,
    pub ring_a_sharp: RingData<F>,
    pub ring_n_sharp: RingData<F>,
}

fn flatten<F: Field>(m: &Matrix<F>) -> Vec<F::Elem> {
    (0..m.rows()).flat_map(|r| (0..m.cols()).map(move |c| m.get(r, c).clone())).collect()
}

/// Builds `A^#` from a setup satisfying the three conditions.
pub fn build_sharp<F: Field>(setup: &TriangularSetup<F>) -> Result<Sharp<F>> {
    let report = verify_setup(setup);
    if !report.passed() {
        let failed = [&report.condition1, &report.condition2, &report.condition3]
            .into_iter()
            .find(|c| !c.pass)
            .map(|c| c.detail.clone())
            .unwrap_or_default();
        return Err(Error::SetupNotVerified(failed));
    }
    let f = setup.field().clone();
    let coring = setup.coring()?;
    let s_tensor = setup.s_module(&coring)?;
    let sm = &s_tensor.module;
    let dn = coring.n_sharp.dim();

    let mut span = EchelonBasis::new(&f, sm.dim() * sm.dim());
    let mut ops: Vec<Matrix<F>> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut degrees: Vec<i32> = Vec::new();
    for k in 0..dn {
        if !span.insert(flatten(sm.lact(k))) {
            return Err(Error::UnsupportedShape("N^# does not act faithfully on S".into()));
        }
        ops.push(sm.lact(k).clone());
        names.push(coring.n_sharp.basis().name(k).to_string());
        degrees.push(coring.n_sharp.degree(k));
    }
    let sr = sm.forget_left();
    let mut total = 0;
    for h in possible_shifts(&sr, &sr) {
        let hs = hom_space(&sr, &sr, Linearity::Right, h)?;
        total += hs.dim();
        for b in hs.basis() {
            if span.insert(flatten(b)) {
                names.push(format!("t{}", ops.len() - dn));
                degrees.push(h);
                ops.push(b.clone());
            }
        }
    }
    if ops.len() != total {
        return Err(Error::UnsupportedShape("N^# is not inside the commutant of A on S".into()));
    }
    let a_sharp = Arc::new(Algebra::from_operators(&f, GradedSpace::new(degrees, names), &ops)?);
    let mut n_sharp_in = Matrix::zeros(&f, a_sharp.dim(), dn);
    for k in 0..dn {
        n_sharp_in.set(k, k, f.one());
    }
    let k_in_a_sharp = n_sharp_in.mul(&coring.k_in_n_sharp);
    let s = Bimodule::new(a_sharp.clone(), setup.a.clone(), sm.space().clone(), ops, sm.racts().to_vec())?;
    let idem = |incl: &Matrix<F>| -> Result<Vec<Vec<F::Elem>>> {
        Ok(setup.k_idempotents()?.iter().map(|e| incl.mul_vec(e)).collect())
    };
    let ring_a_sharp = RingData::new(a_sharp.clone(), idem(&k_in_a_sharp)?)?;
    let ring_n_sharp = RingData::new(coring.n_sharp.clone(), idem(&coring.k_in_n_sharp)?)?;
    Ok(Sharp {
        ring_a: setup.ring_a()?,
        ring_n: setup.ring_n()?,
        ring_a_sharp,
        ring_n_sharp,
        setup: setup.clone(),
        coring,
        a_sharp,
        n_sharp_in,
        k_in_a_sharp,
        s,
        s_tensor,
    })
}

/// One named check with its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

impl<F: Field> Sharp<F> {
    pub fn field(&self) -> &F {
        self.setup.field()
    }

    /// An `A^#`-module restricted to `N^#`.
    pub fn res_n_sharp(&self, m: &Bimodule<F>) -> Bimodule<F> {
        let id = Matrix::identity(self.field(), m.right_algebra().dim());
        m.restrict(self.coring.n_sharp.clone(), &self.n_sharp_in, m.right_algebra().clone(), &id)
    }

    /// `S` with its right action restricted to `N`.
    pub fn s_over_n(&self) -> Bimodule<F> {
        let id = Matrix::identity(self.field(), self.a_sharp.dim());
        self.s.restrict(self.a_sharp.clone(), &id, self.setup.n.clone(), &self.setup.n_in_a())
    }

    pub fn is_n_projective(&self, p: &Bimodule<F>) -> Result<bool> {
        self.ring_n.is_projective(&self.setup.res_n(p).forget_right())
    }

    pub fn is_n_sharp_injective(&self, m: &Bimodule<F>) -> Result<bool> {
        self.ring_n_sharp.is_injective(&self.res_n_sharp(m).forget_right())
    }

    /// `S ⊗_A P` for a left `A`-module `P`.
    pub fn induce(&self, p: &Bimodule<F>) -> Result<Tensor<F>> {
        tensor(&self.s, p)
    }

    /// `Hom_{A^#}(S, M)` for a left `A^#`-module `M`.
    pub fn coinduce(&self, m: &Bimodule<F>) -> Result<HomModule<F>> {
        hom_from_bimodule(&self.s, m)
    }

    /// Whether `P -> Hom_{A^#}(S, S ⊗_A P)`, `p ↦ (s ↦ s ⊗ p)`, is bijective.
    pub fn unit_is_iso(&self, p: &Bimodule<F>) -> Result<bool> {
        let f = self.field();
        let t = self.induce(p)?;
        let h = self.coinduce(&t.module)?;
        if h.module.dim() != p.dim() {
            return Ok(false);
        }
        let cols: Vec<Vec<F::Elem>> = (0..p.dim())
            .map(|j| {
                let map_cols: Vec<Vec<F::Elem>> = (0..self.s.dim()).map(|i| t.class_of_basis(i, j)).collect();
                let map = Matrix::from_columns(f, t.dim(), &map_cols);
                h.coords(f, &map, p.space().degree(j))
            })
            .collect();
        let m = Matrix::from_columns(f, h.module.dim(), &cols);
        Ok(graded_rank(&m, p.space(), h.module.space(), 0) == p.dim())
    }

    /// Whether `S ⊗_A Hom_{A^#}(S, M) -> M`, `s ⊗ g ↦ g(s)`, is bijective.
    pub fn counit_is_iso(&self, m: &Bimodule<F>) -> Result<bool> {
        let f = self.field();
        let h = self.coinduce(m)?;
        let t = tensor(&self.s, &h.module)?;
        if t.dim() != m.dim() {
            return Ok(false);
        }
        let cols: Vec<Vec<F::Elem>> = (0..t.dim())
            .map(|j| {
                let (s, g) = t.pure_index(j);
                let mut e = vec![f.zero(); h.module.dim()];
                e[g] = f.one();
                h.map(f, &e).map(|mm| mm.column(s)).unwrap_or_else(|| vec![f.zero(); m.dim()])
            })
            .collect();
        let mat = Matrix::from_columns(f, m.dim(), &cols);
        Ok(graded_rank(&mat, t.module.space(), m.space(), 0) == m.dim())
    }
}

/// Checks the structure around `A^#`: the coring axioms, the description of
/// `A^#` as a cotensor product, the double centralizer property of `S`, and
/// the isomorphism `A^# ⊗_{N^#} N∨ ≅ S`.
pub fn verify_sdi<F: Field>(sh: &Sharp<F>) -> Result<Vec<Check>> {
    let f = sh.field();
    let mut out = Vec::new();
    out.push(match sh.coring.check_coring_axioms() {
        Ok(()) => Check::new("coring", true, "N∨ is coassociative and counital"),
        Err(e) => Check::new("coring", false, e.to_string()),
    });

    let sn = sh.s_over_n();
    let s_n_sharp = sn.restrict(
        sh.coring.n_sharp.clone(),
        &sh.n_sharp_in,
        sh.setup.n.clone(),
        &Matrix::identity(f, sh.setup.n.dim()),
    );
    let reg = Bimodule::regular(&sh.coring.n_sharp).forget_right();
    let co = sh.coring.cotensor(&s_n_sharp.forget_left(), &reg)?;
    let dual_r = sh.coring.dual.forget_left();
    let sr = sn.forget_left();
    let mut hom_total = 0;
    for h in possible_shifts(&dual_r, &sr) {
        hom_total += hom_dim(&dual_r, &sr, Linearity::Right, h)?;
    }
    let bk = sh.setup.b.clone();
    let b_kk = Bimodule::regular(&bk).restrict(
        sh.setup.k.clone(),
        &sh.setup.k_in_b(),
        sh.setup.k.clone(),
        &sh.setup.k_in_b(),
    );
    let ns_kk = Bimodule::regular(&sh.coring.n_sharp).restrict(
        sh.setup.k.clone(),
        &sh.coring.k_in_n_sharp,
        sh.setup.k.clone(),
        &sh.coring.k_in_n_sharp,
    );
    let bn = tensor(&b_kk, &ns_kk)?;
    let d = sh.a_sharp.dim();
    out.push(Check::new(
        "a_sharp_dimension",
        co.module.dim() == d && hom_total == d && bn.dim() == d,
        format!(
            "End_A(S) {d}, S □ N^# {}, Hom_N(N∨, S) {hom_total}, B ⊗_K N^# {}",
            co.module.dim(),
            bn.dim()
        ),
    ));
    out.push(Check::new(
        "a_sharp_profile",
        co.module.space().dims_by_degree() == sh.a_sharp.basis().dims_by_degree(),
        "S □ N^# and End_A(S) have the same degrees",
    ));

    // End_{A^#}(S) is A acting on the right
    let sl = sh.s.forget_right();
    let mut end_total = 0;
    for h in possible_shifts(&sl, &sl) {
        end_total += hom_dim(&sl, &sl, Linearity::Left, h)?;
    }
    let mut rspan = EchelonBasis::new(f, sh.s.dim() * sh.s.dim());
    for r in sh.s.racts() {
        rspan.insert(flatten(r));
    }
    out.push(Check::new(
        "double_centralizer",
        end_total == sh.setup.a.dim() && rspan.rank() == sh.setup.a.dim(),
        format!("End_(A^#)(S) has dimension {end_total}, A acts faithfully with rank {}", rspan.rank()),
    ));

    // A^# ⊗_{N^#} N∨ -> S, x ⊗ ξ ↦ x (ξ ⊗ 1)
    let a_reg = Bimodule::regular(&sh.a_sharp).restrict(
        sh.a_sharp.clone(),
        &Matrix::identity(f, d),
        sh.coring.n_sharp.clone(),
        &sh.n_sharp_in,
    );
    let ssharp = tensor(&a_reg, &sh.coring.dual)?;
    let one = sh.setup.a.unit().to_vec();
    let cols: Vec<Vec<F::Elem>> = (0..ssharp.dim())
        .map(|j| {
            let (x, xi) = ssharp.pure_index(j);
            let mut e = vec![f.zero(); sh.coring.dim()];
            e[xi] = f.one();
            sh.s.lact(x).mul_vec(&sh.s_tensor.class(&e, &one))
        })
        .collect();
    let map = Matrix::from_columns(f, sh.s.dim(), &cols);
    let bij = ssharp.dim() == sh.s.dim() && graded_rank(&map, ssharp.module.space(), sh.s.space(), 0) == sh.s.dim();
    let right_linear = (0..sh.setup.n.dim()).all(|i| {
        let a = sh.setup.n_in_a().column(i);
        map.mul(ssharp.module.ract(i)) == sh.s.right_action_of(&a).mul(&map)
    });
    out.push(Check::new(
        "s_sharp",
        bij && right_linear,
        format!("A^# ⊗_N^# N∨ (dimension {}) -> S is bijective and right N-linear", ssharp.dim()),
    ));
    Ok(out)
}

/// `B` inside `A^#` obtained from the entwining map, with the checks that it
/// agrees with the construction of `A^#` as a commutant.
#[derive(Clone, Debug)]
pub struct Entwining<F: Field> {
    /// `ψ: N∨ ⊗_K B -> B ⊗_K N∨`.
    pub psi: Matrix<F>,
    /// Columns: the basis of `B` inside `A^#`.
    pub b_in_a_sharp: Matrix<F>,
    pub checks: Vec<Check>,
}

/// Builds the entwining map from the multiplication of `A` and uses its
/// inverse to let `B` act on `S ≅ N∨ ⊗_K B`.
pub fn entwining_sharp<F: Field>(sh: &Sharp<F>) -> Result<Entwining<F>> {
    let f = sh.field().clone();
    let st = &sh.setup;
    let c = &sh.coring;
    let (nb, mult) = st.multiplication_map()?;
    let tau = mult.inverse().ok_or_else(|| Error::NotApplicable("N ⊗_K B -> A is not invertible".into()))?;
    let b_kk = Bimodule::regular(&st.b).restrict(st.k.clone(), &st.k_in_b(), st.k.clone(), &st.k_in_b());
    let b_kb = Bimodule::regular(&st.b).restrict(st.k.clone(), &st.k_in_b(), st.b.clone(), &Matrix::identity(&f, st.b.dim()));
    let src = tensor(&c.dual_kk, &b_kb)?;
    let tgt = tensor(&b_kk, &c.dual_kk)?;
    let n_in_a = st.n_in_a();
    let b_in_a = st.b_in_a();
    let dn = c.dim();
    // ψ(ξ ⊗ b) = Σ_k f(u_k) ⊗ ξ_k with f(n) = Σ ξ(n_r) b_r for b n = Σ n_r b_r
    let cols: Vec<Vec<F::Elem>> = (0..src.dim())
        .map(|j| {
            let (l, bi) = src.pure_index(j);
            let mut xi = vec![f.zero(); dn];
            xi[l] = f.one();
            let mut out = vec![f.zero(); tgt.dim()];
            for k in 0..dn {
                let bn = st.a.mul(&b_in_a.column(bi), &n_in_a.mul_vec(&c.u(k)));
                let coeffs = tau.mul_vec(&bn);
                let mut val = vec![f.zero(); st.b.dim()];
                for (t, x) in coeffs.iter().enumerate() {
                    if f.is_zero(x) {
                        continue;
                    }
                    let (p, q) = nb.pure_index(t);
                    let kv = c.evaluate(&xi, &st.n.basis_vector(p));
                    let kb = st.b.mul(&st.k_in_b().mul_vec(&kv), &st.b.basis_vector(q));
                    for (v, y) in val.iter_mut().zip(&kb) {
                        *v = f.mul_add(v, x, y);
                    }
                }
                let mut ek = vec![f.zero(); dn];
                ek[k] = f.one();
                let term = tgt.class(&val, &ek);
                for (o, y) in out.iter_mut().zip(&term) {
                    *o = f.add(o, y);
                }
            }
            out
        })
        .collect();
    let psi = Matrix::from_columns(&f, tgt.dim(), &cols);
    let mut checks = Vec::new();
    let Some(psi_inv) = psi.inverse() else {
        return Err(Error::NotApplicable("the entwining map is not invertible".into()));
    };
    // N∨ ⊗_K B ≅ S, ξ ⊗ b ↦ ξ ⊗ b
    let jcols: Vec<Vec<F::Elem>> = (0..src.dim())
        .map(|j| {
            let (l, bi) = src.pure_index(j);
            let mut xi = vec![f.zero(); dn];
            xi[l] = f.one();
            sh.s_tensor.class(&xi, &b_in_a.column(bi))
        })
        .collect();
    let jm = Matrix::from_columns(&f, sh.s.dim(), &jcols);
    let jinv = jm
        .inverse()
        .ok_or_else(|| Error::NotApplicable("N∨ ⊗_K B -> S is not bijective".into()))?;
    // b' (ξ ⊗ b) = ψ^{-1}(b' ⊗ ξ) b
    let ops: Vec<Matrix<F>> = (0..st.b.dim())
        .map(|b1| {
            let cols: Vec<Vec<F::Elem>> = (0..src.dim())
                .map(|j| {
                    let (l, bi) = src.pure_index(j);
                    let mut xi = vec![f.zero(); dn];
                    xi[l] = f.one();
                    let v = psi_inv.mul_vec(&tgt.class(&st.b.basis_vector(b1), &xi));
                    src.module.ract(bi).mul_vec(&v)
                })
                .collect();
            jm.mul(&Matrix::from_columns(&f, src.dim(), &cols)).mul(&jinv)
        })
        .collect();
    let commutes = ops
        .iter()
        .all(|op| sh.s.racts().iter().all(|r| op.mul(r) == r.mul(op)));
    checks.push(Check::new("b_commutes_with_a", commutes, "B acts on S by right A-linear maps"));
    let mut ok_mult = true;
    for i in 0..st.b.dim() {
        for j in 0..st.b.dim() {
            let p = st.b.product_of_basis(i, j);
            let mut lhs = Matrix::zeros(&f, sh.s.dim(), sh.s.dim());
            for (k, x) in p.iter().enumerate() {
                lhs.add_scaled(x, &ops[k]);
            }
            if lhs != ops[i].mul(&ops[j]) {
                ok_mult = false;
            }
        }
    }
    checks.push(Check::new("b_algebra_map", ok_mult, "B -> End(S) is multiplicative"));
    // coordinates in A^#
    let sys = Matrix::from_columns(&f, sh.s.dim() * sh.s.dim(), &sh.s.lacts().iter().map(flatten).collect::<Vec<_>>());
    let rhs = Matrix::from_columns(&f, sh.s.dim() * sh.s.dim(), &ops.iter().map(flatten).collect::<Vec<_>>());
    let b_in_a_sharp = sys
        .preimage(&rhs)
        .map_err(|_| Error::NotApplicable("B does not land in A^#".into()))?;
    let k_ok = b_in_a_sharp.mul(&st.k_in_b()) == sh.k_in_a_sharp;
    checks.push(Check::new("k_square", k_ok, "K -> B -> A^# equals K -> N^# -> A^#"));
    // B ⊗_K N^# -> A^#
    let ns_kn = Bimodule::regular(&c.n_sharp).restrict(
        st.k.clone(),
        &c.k_in_n_sharp,
        c.n_sharp.clone(),
        &Matrix::identity(&f, c.n_sharp.dim()),
    );
    let bn = tensor(&b_kk, &ns_kn)?;
    let pcols: Vec<Vec<F::Elem>> = (0..bn.dim())
        .map(|j| {
            let (b, p) = bn.pure_index(j);
            sh.a_sharp.mul(&b_in_a_sharp.column(b), &sh.n_sharp_in.column(p))
        })
        .collect();
    let pm = Matrix::from_columns(&f, sh.a_sharp.dim(), &pcols);
    let bij = bn.dim() == sh.a_sharp.dim() && pm.rank() == bn.dim();
    checks.push(Check::new("b_tensor_n_sharp", bij, "B ⊗_K N^# -> A^# is bijective"));
    let degrees_ok = (0..st.b.dim()).all(|b| {
        sh.a_sharp
            .basis()
            .degree_of(&f, &b_in_a_sharp.column(b))
            .map(|d| d.is_none_or(|d| d == st.b.degree(b)))
            .unwrap_or(false)
    });
    checks.push(Check::new("b_degrees", degrees_ok, "B -> A^# preserves degrees"));
    Ok(Entwining { psi, b_in_a_sharp, checks })
}

/// The isomorphisms `A^# ≅ A` and `N^# ≅ N` given by a homogeneous Frobenius
/// element `t ∈ N∨` (one for which `n ↦ t n` is bijective `N -> N∨`).
#[derive(Clone, Debug)]
pub struct FrobeniusIso<F: Field> {
    /// Coordinates of `t` in `N∨`.
    pub t: Vec<F::Elem>,
    /// `A^# -> A`.
    pub alpha: Matrix<F>,
    /// `N^# -> N`.
    pub nu: Matrix<F>,
    pub checks: Vec<Check>,
}

fn is_algebra_map<F: Field>(src: &Algebra<F>, tgt: &Algebra<F>, m: &Matrix<F>) -> bool {
    if m.mul_vec(src.unit()) != tgt.unit() {
        return false;
    }
    (0..src.dim()).all(|i| {
        (0..src.dim()).all(|j| m.mul_vec(&src.product_of_basis(i, j)) == tgt.mul(&m.column(i), &m.column(j)))
    })
}

fn preserves_degrees<F: Field>(src: &Algebra<F>, tgt: &Algebra<F>, m: &Matrix<F>) -> bool {
    (0..src.dim()).all(|i| {
        tgt.basis()
            .degree_of(src.field(), &m.column(i))
            .map(|d| d.is_none_or(|d| d == src.degree(i)))
            .unwrap_or(false)
    })
}

/// Searches for a homogeneous Frobenius element among sums of basis
/// functionals of one degree and builds the isomorphisms from it.
pub fn frobenius_sharp<F: Field>(sh: &Sharp<F>) -> Result<FrobeniusIso<F>> {
    let f = sh.field().clone();
    let c = &sh.coring;
    let dn = c.dim();
    let nd = c.dual.space();
    let times = |t: &[F::Elem]| -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> = (0..dn).map(|i| c.dual.ract(i).mul_vec(t)).collect();
        Matrix::from_columns(&f, dn, &cols)
    };
    let mut found = None;
    'search: for (_, idx) in nd.by_degree() {
        if idx.len() > 16 {
            continue;
        }
        for mask in 1u32..(1 << idx.len()) {
            let mut t = vec![f.zero(); dn];
            for (b, &i) in idx.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    t[i] = f.one();
                }
            }
            let m = times(&t);
            if let Some(inv) = m.inverse() {
                found = Some((t, inv));
                break 'search;
            }
        }
    }
    let Some((t, finv)) = found else {
        return Err(Error::NotApplicable("no homogeneous Frobenius element: N is not Frobenius".into()));
    };
    let st = &sh.setup;
    let da = st.a.dim();
    let theta_cols: Vec<Vec<F::Elem>> = (0..da).map(|a| sh.s_tensor.class(&t, &st.a.basis_vector(a))).collect();
    let theta = Matrix::from_columns(&f, sh.s.dim(), &theta_cols);
    let theta_inv = theta
        .inverse()
        .ok_or_else(|| Error::NotApplicable("a ↦ t ⊗ a is not bijective".into()))?;
    let t1 = theta.mul_vec(st.a.unit());
    let alpha_cols: Vec<Vec<F::Elem>> = (0..sh.a_sharp.dim()).map(|x| theta_inv.mul_vec(&sh.s.lact(x).mul_vec(&t1))).collect();
    let alpha = Matrix::from_columns(&f, da, &alpha_cols);
    let nu_cols: Vec<Vec<F::Elem>> = (0..dn).map(|k| finv.mul_vec(&c.dual.lact(k).mul_vec(&t))).collect();
    let nu = Matrix::from_columns(&f, dn, &nu_cols);
    let mut checks = Vec::new();
    checks.push(Check::new(
        "alpha_iso",
        alpha.inverse().is_some() && is_algebra_map(&sh.a_sharp, &st.a, &alpha),
        "A^# -> A is an algebra isomorphism",
    ));
    checks.push(Check::new(
        "nu_iso",
        nu.inverse().is_some() && is_algebra_map(&c.n_sharp, &st.n, &nu),
        "N^# -> N is an algebra isomorphism",
    ));
    let shift_ok = preserves_degrees(&c.n_sharp, &st.n, &nu) && preserves_degrees(&sh.a_sharp, &st.a, &alpha);
    checks.push(Check::new("degrees", shift_ok, "both isomorphisms preserve degrees"));
    let compatible = alpha.mul(&sh.n_sharp_in) == st.n_in_a().mul(&nu);
    checks.push(Check::new("compatible", compatible, "N^# -> A^# -> A equals N^# -> N -> A"));
    Ok(FrobeniusIso { t, alpha, nu, checks })
}
