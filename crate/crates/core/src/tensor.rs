//! Tensor products of bimodules over an algebra, as cokernels of the
//! balancing relations.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{GradedQuotient, GradedSpace, GradedSubspace};
use crate::matrix::Matrix;
use crate::module::{same_algebra, Bimodule};

/// `P ⊗_R Q` together with the data needed to map pure tensors into it.
/// Basis elements are classes of pure tensors `p_i ⊗ q_j` of basis vectors.
#[derive(Clone, Debug)]
pub struct Tensor<F: Field> {
    pub module: Bimodule<F>,
    quot: GradedQuotient<F>,
    dp: usize,
    dq: usize,
}

impl<F: Field> Tensor<F> {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// The pair of basis indices whose pure tensor is basis element `j`.
    pub fn pure_index(&self, j: usize) -> (usize, usize) {
        let a = self.quot.basis_indices()[j];
        (a / self.dq, a % self.dq)
    }

    /// Coordinates of the class of `p ⊗ q`.
    pub fn class(&self, p: &[F::Elem], q: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.module.field();
        let mut v = vec![f.zero(); self.dp * self.dq];
        for (i, x) in p.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in q.iter().enumerate() {
                if !f.is_zero(y) {
                    v[i * self.dq + j] = f.mul(x, y);
                }
            }
        }
        self.quot.project(&v)
    }

    /// Class of the pure tensor of basis vectors.
    pub fn class_of_basis(&self, i: usize, j: usize) -> Vec<F::Elem> {
        let f = self.module.field();
        let mut v = vec![f.zero(); self.dp * self.dq];
        v[i * self.dq + j] = f.one();
        self.quot.project(&v)
    }

    /// Matrix of `f ⊗ g` from `self` to `target`.
    pub fn map_to(&self, target: &Tensor<F>, f: &Matrix<F>, g: &Matrix<F>) -> Matrix<F> {
        let fl = self.module.field();
        let cols: Vec<Vec<F::Elem>> = (0..self.dim())
            .map(|j| {
                let (p, q) = self.pure_index(j);
                target.class(&f.column(p), &g.column(q))
            })
            .collect();
        Matrix::from_columns(fl, target.dim(), &cols)
    }
}

/// Tensor product of a `L-R` bimodule `p` with an `R-M` bimodule `q`.
pub fn tensor<F: Field>(p: &Bimodule<F>, q: &Bimodule<F>) -> Result<Tensor<F>> {
    if !same_algebra(p.right_algebra(), q.left_algebra()) {
        return Err(Error::AlgebraMismatch("tensor product over different algebras".into()));
    }
    let f = p.field().clone();
    let (dp, dq) = (p.dim(), q.dim());
    let mut degrees = Vec::with_capacity(dp * dq);
    let mut names = Vec::with_capacity(dp * dq);
    for i in 0..dp {
        for j in 0..dq {
            degrees.push(p.space().degree(i) + q.space().degree(j));
            names.push(format!("{}⊗{}", p.space().name(i), q.space().name(j)));
        }
    }
    let ambient = GradedSpace::new(degrees, names);
    let mut sub = GradedSubspace::zero(&f, &ambient);
    let by_deg = ambient.by_degree();
    let local: BTreeMap<usize, usize> = by_deg
        .values()
        .flat_map(|idx| idx.iter().enumerate().map(|(k, &i)| (i, k)))
        .collect();
    let r = p.right_algebra().clone();
    for &g in r.generators() {
        let pg = p.ract(g);
        let gq = q.lact(g);
        let dg = r.degree(g);
        for i in 0..dp {
            for j in 0..dq {
                let d = p.space().degree(i) + q.space().degree(j) + dg;
                let Some(idx) = by_deg.get(&d) else { continue };
                let mut v = vec![f.zero(); idx.len()];
                let mut nonzero = false;
                // (p_i g) ⊗ q_j
                for a in 0..dp {
                    let c = pg.get(a, i);
                    if !f.is_zero(c) {
                        let k = local[&(a * dq + j)];
                        v[k] = f.add(&v[k], c);
                        nonzero = true;
                    }
                }
                // - p_i ⊗ (g q_j)
                for b in 0..dq {
                    let c = gq.get(b, j);
                    if !f.is_zero(c) {
                        let k = local[&(i * dq + b)];
                        v[k] = f.sub(&v[k], c);
                        nonzero = true;
                    }
                }
                if nonzero {
                    sub.add_local(d, v);
                }
            }
        }
    }
    let quot = sub.quotient();
    let n = quot.dim();
    let mut t = Tensor {
        module: Bimodule::zero(p.left_algebra().clone(), q.right_algebra().clone()),
        quot,
        dp,
        dq,
    };
    let lact: Vec<Matrix<F>> = p
        .lacts()
        .iter()
        .map(|a| {
            let cols: Vec<Vec<F::Elem>> = (0..n)
                .map(|j| {
                    let (i, k) = t.pure_index(j);
                    let mut e = vec![f.zero(); dq];
                    e[k] = f.one();
                    t.class(&a.column(i), &e)
                })
                .collect();
            Matrix::from_columns(&f, n, &cols)
        })
        .collect();
    let ract: Vec<Matrix<F>> = q
        .racts()
        .iter()
        .map(|a| {
            let cols: Vec<Vec<F::Elem>> = (0..n)
                .map(|j| {
                    let (i, k) = t.pure_index(j);
                    let mut e = vec![f.zero(); dp];
                    e[i] = f.one();
                    t.class(&e, &a.column(k))
                })
                .collect();
            Matrix::from_columns(&f, n, &cols)
        })
        .collect();
    t.module = Bimodule::new_unchecked(
        p.left_algebra().clone(),
        q.right_algebra().clone(),
        t.quot.space(),
        lact,
        ract,
    );
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::Rationals;
    use std::sync::Arc;

    fn dual_numbers() -> Arc<Algebra<Rationals>> {
        let f = Rationals;
        let basis = GradedSpace::new(vec![0, 1], vec!["1".into(), "x".into()]);
        let one = f.one();
        let c = vec![(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one)];
        Arc::new(Algebra::from_structure_constants(&f, basis, &c, vec![f.one(), f.zero()]).unwrap())
    }

    #[test]
    fn trivial_tensor_trivial_is_one_dimensional() {
        let a = dual_numbers();
        let f = Rationals;
        let kl = Bimodule::left_module(
            a.clone(),
            GradedSpace::new(vec![0], vec!["k".into()]),
            vec![Matrix::identity(&f, 1), Matrix::zeros(&f, 1, 1)],
        )
        .unwrap();
        let kr = Bimodule::right_module(
            a.clone(),
            GradedSpace::new(vec![0], vec!["k".into()]),
            vec![Matrix::identity(&f, 1), Matrix::zeros(&f, 1, 1)],
        )
        .unwrap();
        let t = tensor(&kr, &kl).unwrap();
        assert_eq!(t.dim(), 1);
    }

    #[test]
    fn regular_tensor_is_identity() {
        let a = dual_numbers();
        let reg = Bimodule::regular(&a);
        let t = tensor(&reg, &reg.forget_right()).unwrap();
        assert_eq!(t.dim(), 2);
        t.module.validate().unwrap();
        assert_eq!(t.module.space().degrees(), &[0, 1]);
    }
}
