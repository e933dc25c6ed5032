//! Algebras together with their radical and a split idempotent decomposition
//! of the degree-zero semisimple part: what is needed to build projective
//! covers, test projectivity, and list simple modules.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{graded_kernel, GradedSpace, GradedSubspace};
use crate::matrix::{EchelonBasis, Matrix};
use crate::module::Bimodule;

#[derive(Clone, Debug)]
pub struct RingData<F: Field> {
    pub alg: AlgebraRef<F>,
    pub radical: GradedSubspace<F>,
    /// Orthogonal idempotents summing to 1, in the algebra's coordinates.
    pub idempotents: Vec<Vec<F::Elem>>,
}

/// Radical of a graded algebra. For algebras graded in one sign whose
/// degree-zero part is semisimple it is the span of the nonzero degrees;
/// otherwise the trace form is used.
pub fn graded_radical<F: Field>(alg: &Algebra<F>) -> Result<GradedSubspace<F>> {
    let f = alg.field();
    let degs = alg.basis().degrees();
    let one_sided = degs.iter().all(|&d| d >= 0) || degs.iter().all(|&d| d <= 0);
    if one_sided {
        let zero: Vec<usize> = (0..alg.dim()).filter(|&i| alg.degree(i) == 0).collect();
        let sub = alg.subalgebra(&zero)?;
        if sub.dim() == 1 || sub.is_semisimple()? {
            let vecs = (0..alg.dim()).filter(|&i| alg.degree(i) != 0).map(|i| alg.basis_vector(i));
            return Ok(GradedSubspace::span(f, alg.basis(), vecs));
        }
    }
    alg.radical()
}

impl<F: Field> RingData<F> {
    pub fn new(alg: AlgebraRef<F>, idempotents: Vec<Vec<F::Elem>>) -> Result<Self> {
        let radical = graded_radical(&alg)?;
        check_idempotents(&alg, &idempotents)?;
        Ok(RingData { alg, radical, idempotents })
    }

    pub fn field(&self) -> &F {
        self.alg.field()
    }

    /// Whether `R / rad R` is spanned by the idempotents, so that the covers
    /// built here are minimal.
    pub fn is_basic_split(&self) -> bool {
        self.alg.dim() - self.radical.dim() == self.idempotents.len()
    }

    pub fn opposite(&self) -> RingData<F> {
        RingData {
            alg: Arc::new(self.alg.opposite()),
            radical: self.radical.clone(),
            idempotents: self.idempotents.clone(),
        }
    }

    /// The indecomposable projective `R e_i`, shifted so that `e_i` sits in degree `deg`.
    pub fn indecomposable_projective(&self, i: usize, deg: i32) -> Result<(Bimodule<F>, Vec<Vec<F::Elem>>)> {
        let f = self.field();
        let e = &self.idempotents[i];
        let rm = self.alg.right_mult(e);
        let vecs: Vec<Vec<F::Elem>> = (0..self.alg.dim()).map(|j| rm.column(j)).collect();
        let sub = GradedSubspace::span(f, self.alg.basis(), vecs);
        let reg = Bimodule::regular(&self.alg).forget_right();
        let (m, _) = reg.submodule(&sub)?;
        let basis = sub.basis();
        Ok((m.shifted(deg), basis))
    }

    /// Simple module `e_i (R / rad R)` in degree `deg`, when the ring is basic split.
    pub fn simple(&self, i: usize, deg: i32) -> Result<Bimodule<F>> {
        if !self.is_basic_split() {
            return Err(Error::UnsupportedShape("simples need R/rad R split by the idempotents".into()));
        }
        let f = self.field();
        let n = self.alg.dim();
        // r acts on the simple by the coefficient of e_i in r e_i modulo the radical
        let q = self.radical.quotient();
        let ei = q.project(&self.idempotents[i]);
        let acts: Result<Vec<Matrix<F>>> = (0..n)
            .map(|r| {
                let v = q.project(&self.alg.mul(&self.alg.basis_vector(r), &self.idempotents[i]));
                let m = Matrix::from_columns(f, q.dim(), std::slice::from_ref(&ei));
                let c = m.preimage(&Matrix::from_columns(f, q.dim(), &[v])).map_err(|_| {
                    Error::UnsupportedShape("idempotent quotient is not one-dimensional".into())
                })?;
                Ok(Matrix::from_rows(f, vec![vec![c.get(0, 0).clone()]]))
            })
            .collect();
        Bimodule::left_module(self.alg.clone(), GradedSpace::new(vec![deg], vec![format!("S{i}")]), acts?)
    }

    /// All simples placed in every degree of `window`.
    pub fn simples(&self, window: std::ops::RangeInclusive<i32>) -> Result<Vec<Bimodule<F>>> {
        let mut out = Vec::new();
        for d in window {
            for i in 0..self.idempotents.len() {
                out.push(self.simple(i, d)?);
            }
        }
        Ok(out)
    }

    /// `R / rad R` concentrated in degree `deg`: the sum of all simples.
    pub fn semisimple_top(&self, deg: i32) -> Result<Bimodule<F>> {
        let mut out: Option<Bimodule<F>> = None;
        for s in self.simples(deg..=deg)? {
            out = Some(match out {
                None => s,
                Some(o) => o.direct_sum(&s)?,
            });
        }
        Ok(out.unwrap_or_else(|| {
            let g = Arc::new(Algebra::ground(self.field()));
            Bimodule::zero(self.alg.clone(), g)
        }))
    }

    /// `rad(R) M` as a subspace of a left module.
    pub fn radical_of_module(&self, m: &Bimodule<F>) -> GradedSubspace<F> {
        let f = self.field();
        let mut vecs = Vec::new();
        for r in self.radical.basis() {
            let act = m.left_action_of(&r);
            for j in 0..m.dim() {
                vecs.push(act.column(j));
            }
        }
        GradedSubspace::span(f, m.space(), vecs)
    }

    /// Generators of the top of `m`: homogeneous vectors `v` with `e_i v = v`
    /// spanning `m / rad m`, in canonical order.
    pub fn top_generators(&self, m: &Bimodule<F>) -> Vec<(usize, Vec<F::Elem>)> {
        let f = self.field();
        let rad = self.radical_of_module(m);
        let mut span = rad.clone();
        let mut out = Vec::new();
        let mut order: Vec<usize> = (0..m.dim()).collect();
        order.sort_by_key(|&j| (m.space().degree(j), j));
        for j in order {
            for (i, e) in self.idempotents.iter().enumerate() {
                let v = m.left_action_of(e).column(j);
                if v.iter().all(|x| f.is_zero(x)) || span.contains(&v) {
                    continue;
                }
                span.add(&v);
                out.push((i, v));
            }
        }
        out
    }

    /// A projective cover `P -> m` of a left module.
    pub fn projective_cover(&self, m: &Bimodule<F>) -> Result<(Bimodule<F>, Matrix<F>)> {
        let f = self.field();
        let gens = self.top_generators(m);
        let mut p: Option<Bimodule<F>> = None;
        let mut cols: Vec<Vec<F::Elem>> = Vec::new();
        for (i, v) in gens {
            let d = m.space().degree_of(f, &v)?.expect("nonzero generator");
            let (pi, basis) = self.indecomposable_projective(i, d)?;
            for b in &basis {
                cols.push(m.left_action_of(b).mul_vec(&v));
            }
            p = Some(match p {
                None => pi,
                Some(q) => q.direct_sum(&pi)?,
            });
        }
        let p = p.unwrap_or_else(|| {
            let g = Arc::new(Algebra::ground(f));
            Bimodule::zero(self.alg.clone(), g)
        });
        let map = Matrix::from_columns(f, m.dim(), &cols);
        Ok((p, map))
    }

    /// `None` when `m` is projective, otherwise a witness: the index and
    /// degree of a simple module `T` with `Ext^1(m, T) != 0`.
    pub fn projectivity_witness(&self, m: &Bimodule<F>) -> Result<Option<(usize, i32)>> {
        if !self.is_basic_split() {
            return Err(Error::UnsupportedShape("projectivity test needs R/rad R split by the idempotents".into()));
        }
        let (p, map) = self.projective_cover(m)?;
        let ker = graded_kernel(&map, p.space(), m.space(), 0);
        if ker.is_empty() {
            return Ok(None);
        }
        let sub = GradedSubspace::span(self.field(), p.space(), ker);
        let (omega, _) = p.submodule(&sub)?;
        let top = self.top_generators(&omega);
        let (i, v) = &top[0];
        let d = omega.space().degree_of(self.field(), v)?.expect("nonzero");
        Ok(Some((*i, d)))
    }

    pub fn is_projective(&self, m: &Bimodule<F>) -> Result<bool> {
        Ok(self.projectivity_witness(m)?.is_none())
    }

    /// Injectivity of a left module, via projectivity of its dual over the opposite ring.
    pub fn is_injective(&self, m: &Bimodule<F>) -> Result<bool> {
        let op = self.opposite();
        let d = m.forget_right().dual().right_as_left_opposite(op.alg.clone());
        op.is_projective(&d)
    }

    /// Injectivity of a right module: its dual is a left module.
    pub fn is_injective_right(&self, m: &Bimodule<F>) -> Result<Option<(usize, i32)>> {
        let d = m.forget_left().dual();
        let d = d.rebind(self.alg.clone(), d.right_algebra().clone())?;
        self.projectivity_witness(&d)
    }

    pub fn is_projective_right(&self, m: &Bimodule<F>) -> Result<bool> {
        let op = self.opposite();
        op.is_projective(&m.forget_left().right_as_left_opposite(op.alg.clone()))
    }
}

/// Checks that the vectors are orthogonal idempotents of degree 0 summing to 1.
pub fn check_idempotents<F: Field>(alg: &Algebra<F>, es: &[Vec<F::Elem>]) -> Result<()> {
    let f = alg.field();
    let n = alg.dim();
    let mut sum = vec![f.zero(); n];
    for (i, e) in es.iter().enumerate() {
        if e.len() != n {
            return Err(Error::Dimension("idempotent length".into()));
        }
        if alg.basis().degree_of(f, e)?.is_some_and(|d| d != 0) {
            return Err(Error::UnsupportedShape("idempotent not in degree 0".into()));
        }
        for (j, e2) in es.iter().enumerate() {
            let p = alg.mul(e, e2);
            let expect = if i == j { e.clone() } else { vec![f.zero(); n] };
            if p != expect {
                return Err(Error::UnsupportedShape("idempotents are not orthogonal".into()));
            }
        }
        for (s, x) in sum.iter_mut().zip(e) {
            *s = f.add(s, x);
        }
    }
    if sum != alg.unit() {
        return Err(Error::UnsupportedShape("idempotents do not sum to 1".into()));
    }
    Ok(())
}

/// A split decomposition of a commutative semisimple algebra `k^r`: either the
/// unit of a one-dimensional algebra or a basis of orthogonal idempotents.
pub fn detect_split_idempotents<F: Field>(alg: &Algebra<F>) -> Result<Vec<Vec<F::Elem>>> {
    if alg.dim() == 1 {
        return Ok(vec![alg.unit().to_vec()]);
    }
    let es: Vec<Vec<F::Elem>> = (0..alg.dim()).map(|i| alg.basis_vector(i)).collect();
    check_idempotents(alg, &es).map_err(|_| {
        Error::UnsupportedShape("degree-0 part needs a split idempotent basis or certificate".into())
    })?;
    Ok(es)
}

/// Degree profile of a module: dimension of each degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profile(pub Vec<(i32, usize)>);

pub fn profile<F: Field>(m: &Bimodule<F>) -> Profile {
    Profile(m.space().dims_by_degree().into_iter().collect())
}

/// Independent check of projectivity used by tests: a module is projective
/// iff its cover map splits, i.e. admits a module section.
pub fn cover_splits<F: Field>(ring: &RingData<F>, m: &Bimodule<F>) -> Result<bool> {
    let (p, map) = ring.projective_cover(m)?;
    let hs = crate::hom::hom_space(m, &p, crate::hom::Linearity::Left, 0)?;
    // look for s with map . s = id: linear in the coordinates of s
    let f = ring.field();
    let n = m.dim();
    let mut eqs = EchelonBasis::new(f, hs.dim() + 1);
    for r in 0..n {
        for c in 0..n {
            let mut row: Vec<F::Elem> = hs.basis().iter().map(|b| map.mul(b).get(r, c).clone()).collect();
            row.push(if r == c { f.neg(&f.one()) } else { f.zero() });
            eqs.insert(row);
        }
    }
    // solvable iff the augmented column is not a pivot
    Ok(!eqs.pivots().contains(&hs.dim()))
}
