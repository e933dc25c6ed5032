//! Finite-dimensional graded algebras given by structure constants.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{graded_kernel, GradedSpace, GradedSubspace};
use crate::matrix::{EchelonBasis, Matrix};

/// A graded associative unital algebra with a homogeneous basis.
///
/// `left[i]` is the matrix of left multiplication by basis element `i`, so
/// the structure constant `c_{ij}^k` is `left[i][k, j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<F: Field> {
    field: F,
    basis: GradedSpace,
    left: Vec<Matrix<F>>,
    unit: Vec<F::Elem>,
    generators: Vec<usize>,
}

pub type AlgebraRef<F> = Arc<Algebra<F>>;

impl<F: Field> Algebra<F> {
    /// Builds and validates an algebra from sparse structure constants
    /// `(i, j, k, c)` meaning `e_i e_j` has coefficient `c` on `e_k`.
    pub fn from_structure_constants(
        field: &F,
        basis: GradedSpace,
        constants: &[(usize, usize, usize, F::Elem)],
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        let n = basis.dim();
        let mut left = vec![Matrix::zeros(field, n, n); n];
        for (i, j, k, c) in constants {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Parse(format!("structure constant index out of range: ({i},{j},{k})")));
            }
            let cur = left[*i].get(*k, *j).clone();
            left[*i].set(*k, *j, field.add(&cur, c));
        }
        Self::from_left_matrices(field, basis, left, unit)
    }

    pub fn from_left_matrices(
        field: &F,
        basis: GradedSpace,
        left: Vec<Matrix<F>>,
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        let n = basis.dim();
        if unit.len() != n || left.len() != n {
            return Err(Error::Dimension("algebra data does not match basis".into()));
        }
        let mut a = Algebra { field: field.clone(), basis, left, unit, generators: Vec::new() };
        a.validate()?;
        a.generators = a.compute_generators();
        Ok(a)
    }

    /// The algebra spanned by a family of operators on some vector space,
    /// closed under composition and containing the identity. Multiplication is
    /// composition.
    pub fn from_operators(field: &F, basis: GradedSpace, ops: &[Matrix<F>]) -> Result<Self> {
        let n = ops.len();
        if n != basis.dim() || n == 0 {
            return Err(Error::Dimension("operator algebra basis".into()));
        }
        let d = ops[0].rows();
        let flat: Vec<Vec<F::Elem>> = ops
            .iter()
            .map(|m| (0..d).flat_map(|r| (0..d).map(move |c| (r, c))).map(|(r, c)| m.get(r, c).clone()).collect())
            .collect();
        let system = Matrix::from_columns(field, d * d, &flat);
        if system.rank() != n {
            return Err(Error::AssociativityFailure("operators are linearly dependent".into()));
        }
        let flatten = |m: &Matrix<F>| -> Matrix<F> {
            let v: Vec<F::Elem> = (0..d).flat_map(|r| (0..d).map(move |c| (r, c))).map(|(r, c)| m.get(r, c).clone()).collect();
            Matrix::from_columns(field, d * d, &[v])
        };
        let mut left = vec![Matrix::zeros(field, n, n); n];
        for i in 0..n {
            for j in 0..n {
                let prod = ops[i].mul(&ops[j]);
                let coords = system.preimage(&flatten(&prod)).map_err(|_| {
                    Error::AssociativityFailure(format!("operators not closed under composition ({i},{j})"))
                })?;
                for k in 0..n {
                    left[i].set(k, j, coords.get(k, 0).clone());
                }
            }
        }
        let unit = system
            .preimage(&flatten(&Matrix::identity(field, d)))
            .map_err(|_| Error::AssociativityFailure("identity not in operator span".into()))?
            .column(0);
        Self::from_left_matrices(field, basis, left, unit)
    }

    /// The ground field as a one-dimensional algebra in degree 0.
    pub fn ground(field: &F) -> Self {
        let basis = GradedSpace::new(vec![0], vec!["1".into()]);
        let left = vec![Matrix::identity(field, 1)];
        Algebra { field: field.clone(), basis, left, unit: vec![field.one()], generators: Vec::new() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
    pub fn basis(&self) -> &GradedSpace {
        &self.basis
    }
    pub fn degree(&self, i: usize) -> i32 {
        self.basis.degree(i)
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }
    pub fn left_matrix(&self, i: usize) -> &Matrix<F> {
        &self.left[i]
    }
    pub fn left_matrices(&self) -> &[Matrix<F>] {
        &self.left
    }

    /// Basis indices generating the algebra (together with the unit).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// `e_i e_j` in coordinates.
    pub fn product_of_basis(&self, i: usize, j: usize) -> Vec<F::Elem> {
        self.left[i].column(j)
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.left_mult(x).mul_vec(y)
    }

    /// Matrix of `y -> x y`.
    pub fn left_mult(&self, x: &[F::Elem]) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(&self.field, n, n);
        for (i, c) in x.iter().enumerate() {
            m.add_scaled(c, &self.left[i]);
        }
        m
    }

    /// Matrix of `y -> y x`.
    pub fn right_mult(&self, x: &[F::Elem]) -> Matrix<F> {
        let n = self.dim();
        let cols: Vec<Vec<F::Elem>> = (0..n).map(|j| self.left[j].mul_vec(x)).collect();
        Matrix::from_columns(&self.field, n, &cols)
    }

    pub fn right_matrix(&self, i: usize) -> Matrix<F> {
        self.right_mult(&self.basis_vector(i))
    }

    fn validate(&self) -> Result<()> {
        let f = &self.field;
        let n = self.dim();
        let name = |i: usize| self.basis.name(i).to_string();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !f.is_zero(self.left[i].get(k, j)) && self.degree(k) != self.degree(i) + self.degree(j) {
                        return Err(Error::DegreeViolation(name(i), name(j)));
                    }
                }
            }
        }
        if self.basis.degree_of(f, &self.unit).map_err(|_| Error::UnitFailure("unit is not homogeneous".into()))?
            .is_some_and(|d| d != 0)
        {
            return Err(Error::UnitFailure("unit is not in degree 0".into()));
        }
        let lu = self.left_mult(&self.unit);
        let ru = self.right_mult(&self.unit);
        let id = Matrix::identity(f, n);
        for i in 0..n {
            if lu.column(i) != id.column(i) || ru.column(i) != id.column(i) {
                return Err(Error::UnitFailure(name(i)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_of_basis(i, j);
                for k in 0..n {
                    // (e_i e_j) e_k
                    let mut lhs = vec![f.zero(); n];
                    for (a, c) in ij.iter().enumerate() {
                        if f.is_zero(c) {
                            continue;
                        }
                        let col = self.left[a].column(k);
                        for (x, y) in lhs.iter_mut().zip(&col) {
                            *x = f.mul_add(x, c, y);
                        }
                    }
                    let jk = self.product_of_basis(j, k);
                    let rhs = self.left[i].mul_vec(&jk);
                    if lhs != rhs {
                        return Err(Error::NonAssociative(name(i), name(j), name(k)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Greedy minimal-ish generating set: a basis element is kept when it is
    /// not in the subalgebra generated by the ones kept before it.
    fn compute_generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut span = self.generated_span(&gens);
        // degree-0 elements first, then by increasing |degree|
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by_key(|&i| (self.degree(i).abs(), i));
        for i in order {
            if span.contains(&self.basis_vector(i)) {
                continue;
            }
            gens.push(i);
            span = self.generated_span(&gens);
            if span.rank() == self.dim() {
                break;
            }
        }
        gens.sort_unstable();
        gens
    }

    fn generated_span(&self, gens: &[usize]) -> EchelonBasis<F> {
        let mut span = EchelonBasis::new(&self.field, self.dim());
        let mut frontier = vec![self.unit.clone()];
        span.insert(self.unit.clone());
        while let Some(v) = frontier.pop() {
            for &g in gens {
                let w = self.left[g].mul_vec(&v);
                if span.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        span
    }

    /// The opposite algebra on the same basis.
    pub fn opposite(&self) -> Self {
        let left: Vec<Matrix<F>> = (0..self.dim()).map(|i| self.right_matrix(i)).collect();
        let mut a = Algebra {
            field: self.field.clone(),
            basis: self.basis.clone(),
            left,
            unit: self.unit.clone(),
            generators: Vec::new(),
        };
        a.generators = a.compute_generators();
        a
    }

    /// The subalgebra spanned by a subset of basis vectors, with its basis in
    /// the given order.
    pub fn subalgebra(&self, indices: &[usize]) -> Result<Algebra<F>> {
        let f = &self.field;
        let pos = |k: usize| indices.iter().position(|&x| x == k);
        for &k in self.unit.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(k, _)| k).collect::<Vec<_>>().iter() {
            if pos(k).is_none() {
                return Err(Error::NotASubalgebra("unit not contained".into()));
            }
        }
        let m = indices.len();
        let mut left = vec![Matrix::zeros(f, m, m); m];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                for (k, c) in self.product_of_basis(i, j).into_iter().enumerate() {
                    if f.is_zero(&c) {
                        continue;
                    }
                    let Some(p) = pos(k) else {
                        return Err(Error::NotASubalgebra(format!(
                            "{}*{} leaves the span",
                            self.basis.name(i),
                            self.basis.name(j)
                        )));
                    };
                    left[a].set(p, b, c);
                }
            }
        }
        let basis = GradedSpace::new(
            indices.iter().map(|&i| self.degree(i)).collect(),
            indices.iter().map(|&i| self.basis.name(i).to_string()).collect(),
        );
        let unit = indices.iter().map(|&i| self.unit[i].clone()).collect();
        Algebra::from_left_matrices(f, basis, left, unit)
    }

    /// Gram matrix of the trace form `(x, y) -> tr(L_{xy})`.
    pub fn trace_form(&self) -> Matrix<F> {
        let f = &self.field;
        let n = self.dim();
        let traces: Vec<F::Elem> = self
            .left
            .iter()
            .map(|m| (0..n).fold(f.zero(), |acc, i| f.add(&acc, m.get(i, i))))
            .collect();
        let mut g = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                let prod = self.product_of_basis(i, j);
                let t = prod.iter().zip(&traces).fold(f.zero(), |acc, (c, t)| f.mul_add(&acc, c, t));
                g.set(i, j, t);
            }
        }
        g
    }

    /// Jacobson radical via the kernel of the trace form. Valid in
    /// characteristic 0 and for primes larger than the dimension.
    pub fn radical(&self) -> Result<GradedSubspace<F>> {
        let p = self.field.spec().characteristic();
        if p != 0 && p <= self.dim() as u64 {
            return Err(Error::UnsupportedCharacteristic(p, self.dim()));
        }
        let g = self.trace_form();
        // the trace form pairs degree d with degree -d
        let target = self.basis.negated();
        let vecs = graded_kernel(&g, &self.basis, &target, 0);
        Ok(GradedSubspace::span(&self.field, &self.basis, vecs))
    }

    pub fn is_semisimple(&self) -> Result<bool> {
        Ok(self.radical()?.dim() == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn dual_numbers(deg: i32) -> Algebra<Rationals> {
        let f = Rationals;
        let basis = GradedSpace::new(vec![0, deg], vec!["1".into(), "x".into()]);
        let one = f.one();
        let c = vec![(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one)];
        Algebra::from_structure_constants(&f, basis, &c, vec![f.one(), f.zero()]).unwrap()
    }

    #[test]
    fn degree_violation_detected() {
        let f = Rationals;
        let basis = GradedSpace::new(vec![0, 1], vec!["1".into(), "x".into()]);
        let one = f.one();
        let c = vec![(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one.clone()), (1, 1, 0, one)];
        let err = Algebra::from_structure_constants(&f, basis, &c, vec![f.one(), f.zero()]).unwrap_err();
        assert_eq!(err, Error::DegreeViolation("x".into(), "x".into()));
    }

    #[test]
    fn unit_failure_detected() {
        let f = Rationals;
        let basis = GradedSpace::new(vec![0, 1], vec!["1".into(), "x".into()]);
        let c = vec![(0, 0, 0, f.one())];
        let err = Algebra::from_structure_constants(&f, basis, &c, vec![f.one(), f.zero()]).unwrap_err();
        assert!(matches!(err, Error::UnitFailure(_)));
    }

    #[test]
    fn radical_of_dual_numbers() {
        let a = dual_numbers(0);
        let r = a.radical().unwrap();
        assert_eq!(r.basis(), vec![vec![Rationals.zero(), Rationals.one()]]);
    }

    #[test]
    fn radical_of_upper_triangular() {
        // e11, e12, e22
        let f = Rationals;
        let basis = GradedSpace::new(vec![0, 0, 0], vec!["e11".into(), "e12".into(), "e22".into()]);
        let one = f.one();
        let c = vec![
            (0, 0, 0, one.clone()),
            (0, 1, 1, one.clone()),
            (1, 2, 1, one.clone()),
            (2, 2, 2, one.clone()),
        ];
        let a = Algebra::from_structure_constants(&f, basis, &c, vec![f.one(), f.zero(), f.one()]).unwrap();
        let r = a.radical().unwrap();
        assert_eq!(r.basis(), vec![vec![f.zero(), f.one(), f.zero()]]);
    }

    #[test]
    fn product_of_fields_is_semisimple() {
        let f = Rationals;
        let basis = GradedSpace::new(vec![0, 0], vec!["e1".into(), "e2".into()]);
        let one = f.one();
        let c = vec![(0, 0, 0, one.clone()), (1, 1, 1, one)];
        let a = Algebra::from_structure_constants(&f, basis, &c, vec![f.one(), f.one()]).unwrap();
        assert!(a.is_semisimple().unwrap());
    }

    #[test]
    fn opposite_twice_is_identity() {
        let a = dual_numbers(1);
        assert_eq!(a.opposite().opposite(), a);
        assert_eq!(a.generators(), &[1]);
    }
}
