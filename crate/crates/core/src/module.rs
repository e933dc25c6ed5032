//! Graded bimodules. A left module is a bimodule whose right algebra is the
//! ground field, a right module one whose left algebra is the ground field.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{GradedQuotient, GradedSpace, GradedSubspace};
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// `lact[i]` is the action of left basis element `i` (`v -> a_i v`),
/// `ract[i]` the action of right basis element `i` (`v -> v a_i`).
#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    left: AlgebraRef<F>,
    right: AlgebraRef<F>,
    space: GradedSpace,
    lact: Vec<Matrix<F>>,
    ract: Vec<Matrix<F>>,
}

pub type Module<F> = Bimodule<F>;

pub fn same_algebra<F: Field>(a: &AlgebraRef<F>, b: &AlgebraRef<F>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Field> Bimodule<F> {
    /// Builds and validates a bimodule.
    pub fn new(
        left: AlgebraRef<F>,
        right: AlgebraRef<F>,
        space: GradedSpace,
        lact: Vec<Matrix<F>>,
        ract: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let m = Bimodule { left, right, space, lact, ract };
        m.validate()?;
        Ok(m)
    }

    /// Builds without validation; callers guarantee the axioms by construction.
    pub(crate) fn new_unchecked(
        left: AlgebraRef<F>,
        right: AlgebraRef<F>,
        space: GradedSpace,
        lact: Vec<Matrix<F>>,
        ract: Vec<Matrix<F>>,
    ) -> Self {
        Bimodule { left, right, space, lact, ract }
    }

    pub fn left_module(alg: AlgebraRef<F>, space: GradedSpace, lact: Vec<Matrix<F>>) -> Result<Self> {
        let f = alg.field().clone();
        let n = space.dim();
        let ground = Arc::new(Algebra::ground(&f));
        Self::new(alg, ground, space, lact, vec![Matrix::identity(&f, n)])
    }

    pub fn right_module(alg: AlgebraRef<F>, space: GradedSpace, ract: Vec<Matrix<F>>) -> Result<Self> {
        let f = alg.field().clone();
        let n = space.dim();
        let ground = Arc::new(Algebra::ground(&f));
        Self::new(ground, alg, space, vec![Matrix::identity(&f, n)], ract)
    }

    /// The algebra as a bimodule over itself.
    pub fn regular(alg: &AlgebraRef<F>) -> Self {
        let n = alg.dim();
        Bimodule {
            left: alg.clone(),
            right: alg.clone(),
            space: alg.basis().clone(),
            lact: alg.left_matrices().to_vec(),
            ract: (0..n).map(|i| alg.right_matrix(i)).collect(),
        }
    }

    /// The zero module over the given algebras.
    pub fn zero(left: AlgebraRef<F>, right: AlgebraRef<F>) -> Self {
        let f = left.field().clone();
        let lact = vec![Matrix::zeros(&f, 0, 0); left.dim()];
        let ract = vec![Matrix::zeros(&f, 0, 0); right.dim()];
        Bimodule { left, right, space: GradedSpace::default(), lact, ract }
    }

    pub fn field(&self) -> &F {
        self.left.field()
    }
    pub fn left_algebra(&self) -> &AlgebraRef<F> {
        &self.left
    }
    pub fn right_algebra(&self) -> &AlgebraRef<F> {
        &self.right
    }
    pub fn space(&self) -> &GradedSpace {
        &self.space
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn lact(&self, i: usize) -> &Matrix<F> {
        &self.lact[i]
    }
    pub fn ract(&self, i: usize) -> &Matrix<F> {
        &self.ract[i]
    }
    pub fn lacts(&self) -> &[Matrix<F>] {
        &self.lact
    }
    pub fn racts(&self) -> &[Matrix<F>] {
        &self.ract
    }

    pub fn is_left_trivial(&self) -> bool {
        self.left.dim() == 1
    }
    pub fn is_right_trivial(&self) -> bool {
        self.right.dim() == 1
    }

    /// Action of an arbitrary left algebra element.
    pub fn left_action_of(&self, x: &[F::Elem]) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        for (i, c) in x.iter().enumerate() {
            m.add_scaled(c, &self.lact[i]);
        }
        m
    }

    pub fn right_action_of(&self, x: &[F::Elem]) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        for (i, c) in x.iter().enumerate() {
            m.add_scaled(c, &self.ract[i]);
        }
        m
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let f = self.field().clone();
        let bad = |s: String| Err(Error::InvalidModule(s));
        if self.lact.len() != self.left.dim() || self.ract.len() != self.right.dim() {
            return bad("action count does not match algebra dimension".into());
        }
        for m in self.lact.iter().chain(&self.ract) {
            if m.rows() != n || m.cols() != n {
                return bad("action matrix shape".into());
            }
        }
        let check_degrees = |acts: &[Matrix<F>], alg: &Algebra<F>, side: &str| -> Result<()> {
            for (i, m) in acts.iter().enumerate() {
                for r in 0..n {
                    for c in 0..n {
                        if !f.is_zero(m.get(r, c)) && self.space.degree(r) != self.space.degree(c) + alg.degree(i) {
                            return Err(Error::InvalidModule(format!(
                                "{side} action of {} does not respect degrees",
                                alg.basis().name(i)
                            )));
                        }
                    }
                }
            }
            Ok(())
        };
        check_degrees(&self.lact, &self.left, "left")?;
        check_degrees(&self.ract, &self.right, "right")?;
        let id = Matrix::identity(&f, n);
        if self.left_action_of(self.left.unit()) != id {
            return bad("left unit does not act as identity".into());
        }
        if self.right_action_of(self.right.unit()) != id {
            return bad("right unit does not act as identity".into());
        }
        for i in 0..self.left.dim() {
            for j in 0..self.left.dim() {
                let lhs = self.lact[i].mul(&self.lact[j]);
                let rhs = self.left_action_of(&self.left.product_of_basis(i, j));
                if lhs != rhs {
                    return bad(format!(
                        "left action not associative at ({}, {})",
                        self.left.basis().name(i),
                        self.left.basis().name(j)
                    ));
                }
            }
        }
        for i in 0..self.right.dim() {
            for j in 0..self.right.dim() {
                // v (a_i a_j) = (v a_i) a_j
                let lhs = self.ract[j].mul(&self.ract[i]);
                let rhs = self.right_action_of(&self.right.product_of_basis(i, j));
                if lhs != rhs {
                    return bad(format!(
                        "right action not associative at ({}, {})",
                        self.right.basis().name(i),
                        self.right.basis().name(j)
                    ));
                }
            }
        }
        for &i in self.left.generators() {
            for &j in self.right.generators() {
                if self.lact[i].mul(&self.ract[j]) != self.ract[j].mul(&self.lact[i]) {
                    return bad("left and right actions do not commute".into());
                }
            }
        }
        Ok(())
    }

    /// Whether `v`'s span is stable is the caller's concern; this computes the
    /// submodule generated by the given vectors.
    pub fn generated_subspace(&self, vectors: Vec<Vec<F::Elem>>) -> GradedSubspace<F> {
        let f = self.field().clone();
        let mut sub = GradedSubspace::span(&f, &self.space, Vec::<Vec<F::Elem>>::new());
        let mut frontier = Vec::new();
        for v in vectors {
            for (_, part) in self.space.homogeneous_parts(&f, &v) {
                if !sub.contains(&part) {
                    sub.add(&part);
                    frontier.push(part);
                }
            }
        }
        let lg: Vec<usize> = self.left.generators().to_vec();
        let rg: Vec<usize> = self.right.generators().to_vec();
        while let Some(v) = frontier.pop() {
            for w in lg
                .iter()
                .map(|&i| self.lact[i].mul_vec(&v))
                .chain(rg.iter().map(|&i| self.ract[i].mul_vec(&v)))
            {
                if !sub.contains(&w) {
                    sub.add(&w);
                    frontier.push(w);
                }
            }
        }
        sub
    }

    /// The submodule on a stable graded subspace, with the inclusion matrix
    /// (ambient x sub).
    pub fn submodule(&self, sub: &GradedSubspace<F>) -> Result<(Bimodule<F>, Matrix<F>)> {
        let f = self.field().clone();
        let basis = sub.basis();
        let incl = Matrix::from_columns(&f, self.dim(), &basis);
        let degrees = sub.basis_degrees();
        let restrict = |m: &Matrix<F>| -> Result<Matrix<F>> {
            let img = m.mul(&incl);
            let cols: Result<Vec<Vec<F::Elem>>> =
                (0..img.cols()).map(|j| sub.coords(&img.column(j))).collect();
            let cols = cols.map_err(|_| Error::InvalidModule("subspace is not a submodule".into()))?;
            Ok(Matrix::from_columns(&f, basis.len(), &cols))
        };
        let lact: Result<Vec<_>> = self.lact.iter().map(restrict).collect();
        let ract: Result<Vec<_>> = self.ract.iter().map(restrict).collect();
        let space = GradedSpace::anonymous(degrees, "s");
        Ok((
            Bimodule::new_unchecked(self.left.clone(), self.right.clone(), space, lact?, ract?),
            incl,
        ))
    }

    /// The quotient by a stable graded subspace, with the projection matrix.
    pub fn quotient(&self, sub: &GradedSubspace<F>) -> (Bimodule<F>, Matrix<F>, GradedQuotient<F>) {
        let q = sub.quotient();
        let f = self.field().clone();
        let proj = q.projection_matrix();
        let act = |m: &Matrix<F>| -> Matrix<F> {
            let cols: Vec<Vec<F::Elem>> = (0..q.dim()).map(|j| q.project(&m.mul_vec(&q.lift(j)))).collect();
            Matrix::from_columns(&f, q.dim(), &cols)
        };
        let lact = self.lact.iter().map(act).collect();
        let ract = self.ract.iter().map(act).collect();
        (
            Bimodule::new_unchecked(self.left.clone(), self.right.clone(), q.space(), lact, ract),
            proj,
            q,
        )
    }

    /// Internal degrees moved by `by` (`M(n)` with `n = -by`).
    pub fn shifted(&self, by: i32) -> Self {
        let mut m = self.clone();
        m.space = self.space.shifted(by);
        m
    }

    /// `Y(n)`: the grading shifted by `-n`.
    pub fn twist(&self, n: i32) -> Self {
        self.shifted(-n)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !same_algebra(&self.left, &other.left) || !same_algebra(&self.right, &other.right) {
            return Err(Error::AlgebraMismatch("direct sum of modules over different algebras".into()));
        }
        let f = self.field().clone();
        let (a, b) = (self.dim(), other.dim());
        let blockdiag = |x: &Matrix<F>, y: &Matrix<F>| {
            let mut m = Matrix::zeros(&f, a + b, a + b);
            for r in 0..a {
                for c in 0..a {
                    m.set(r, c, x.get(r, c).clone());
                }
            }
            for r in 0..b {
                for c in 0..b {
                    m.set(a + r, a + c, y.get(r, c).clone());
                }
            }
            m
        };
        let lact = self.lact.iter().zip(&other.lact).map(|(x, y)| blockdiag(x, y)).collect();
        let ract = self.ract.iter().zip(&other.ract).map(|(x, y)| blockdiag(x, y)).collect();
        Ok(Bimodule::new_unchecked(
            self.left.clone(),
            self.right.clone(),
            self.space.direct_sum(&other.space),
            lact,
            ract,
        ))
    }

    /// Graded dual `Hom_k(M, k)`: the degree `d` part is dual to the degree
    /// `-d` part, and the sides swap: an L-R bimodule becomes an R-L bimodule.
    pub fn dual(&self) -> Self {
        let lact = self.ract.iter().map(|m| m.transpose()).collect();
        let ract = self.lact.iter().map(|m| m.transpose()).collect();
        Bimodule::new_unchecked(self.right.clone(), self.left.clone(), self.space.negated(), lact, ract)
    }

    /// Restriction of scalars along algebra maps given as matrices from the new
    /// algebras into the old ones (columns are images of basis elements).
    pub fn restrict(
        &self,
        new_left: AlgebraRef<F>,
        left_map: &Matrix<F>,
        new_right: AlgebraRef<F>,
        right_map: &Matrix<F>,
    ) -> Self {
        let lact = (0..new_left.dim()).map(|i| self.left_action_of(&left_map.column(i))).collect();
        let ract = (0..new_right.dim()).map(|i| self.right_action_of(&right_map.column(i))).collect();
        Bimodule::new_unchecked(new_left, new_right, self.space.clone(), lact, ract)
    }

    /// Forgets the right action.
    pub fn forget_right(&self) -> Self {
        let f = self.field().clone();
        let g = Arc::new(Algebra::ground(&f));
        Bimodule::new_unchecked(
            self.left.clone(),
            g,
            self.space.clone(),
            self.lact.clone(),
            vec![Matrix::identity(&f, self.dim())],
        )
    }

    /// Forgets the left action.
    pub fn forget_left(&self) -> Self {
        let f = self.field().clone();
        let g = Arc::new(Algebra::ground(&f));
        Bimodule::new_unchecked(
            g,
            self.right.clone(),
            self.space.clone(),
            vec![Matrix::identity(&f, self.dim())],
            self.ract.clone(),
        )
    }

    /// A right module viewed as a left module over the opposite algebra.
    pub fn right_as_left_opposite(&self, op: AlgebraRef<F>) -> Self {
        let f = self.field().clone();
        let g = Arc::new(Algebra::ground(&f));
        Bimodule::new_unchecked(op, g, self.space.clone(), self.ract.clone(), vec![Matrix::identity(&f, self.dim())])
    }

    /// Rebinds the action algebras to equal copies (checked).
    pub fn rebind(&self, left: AlgebraRef<F>, right: AlgebraRef<F>) -> Result<Self> {
        if !same_algebra(&self.left, &left) || !same_algebra(&self.right, &right) {
            return Err(Error::AlgebraMismatch("rebind to different algebra".into()));
        }
        let mut m = self.clone();
        m.left = left;
        m.right = right;
        Ok(m)
    }

    pub fn with_space(&self, space: GradedSpace) -> Self {
        assert_eq!(space.dim(), self.dim());
        let mut m = self.clone();
        m.space = space;
        m
    }

    /// Minimum and maximum internal degree.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        Some((self.space.min_degree()?, self.space.max_degree()?))
    }
}

/// Whether `f: M -> Q` (matrix `dim Q x dim M`) commutes with the left
/// actions (and right actions when `both`), and raises degree by `shift`.
pub fn is_module_map<F: Field>(m: &Bimodule<F>, q: &Bimodule<F>, f: &Matrix<F>, shift: i32, both: bool) -> bool {
    let fl = m.field();
    for r in 0..f.rows() {
        for c in 0..f.cols() {
            if !fl.is_zero(f.get(r, c)) && q.space().degree(r) != m.space().degree(c) + shift {
                return false;
            }
        }
    }
    for &i in m.left_algebra().generators() {
        if q.lact(i).mul(f) != f.mul(m.lact(i)) {
            return false;
        }
    }
    if both {
        for &i in m.right_algebra().generators() {
            if q.ract(i).mul(f) != f.mul(m.ract(i)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn dual_numbers() -> AlgebraRef<Rationals> {
        let f = Rationals;
        let basis = GradedSpace::new(vec![0, 1], vec!["1".into(), "x".into()]);
        let one = f.one();
        let c = vec![(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one)];
        Arc::new(Algebra::from_structure_constants(&f, basis, &c, vec![f.one(), f.zero()]).unwrap())
    }

    #[test]
    fn regular_module_is_valid_and_dual_negates_degrees() {
        let a = dual_numbers();
        let n = Bimodule::regular(&a).forget_right();
        n.validate().unwrap();
        let d = n.dual();
        d.validate().unwrap();
        assert_eq!(d.space().degrees(), &[0, -1]);
        assert!(d.left_algebra().dim() == 1);
        let dd = d.dual();
        assert_eq!(dd.space().degrees(), n.space().degrees());
        assert_eq!(dd.lacts(), n.lacts());
    }

    #[test]
    fn quotient_by_radical_gives_trivial_module() {
        let a = dual_numbers();
        let n = Bimodule::regular(&a).forget_right();
        let sub = n.generated_subspace(vec![vec![Rationals.zero(), Rationals.one()]]);
        let (k, _, _) = n.quotient(&sub);
        k.validate().unwrap();
        assert_eq!(k.dim(), 1);
        assert!(k.lact(1).is_zero());
    }
}
