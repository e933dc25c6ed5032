//! Graded vector spaces and degreewise linear algebra.
//!
//! A graded space is a finite list of homogeneous basis vectors, each with an
//! internal degree. Subspaces, quotients and kernels are always computed one
//! degree at a time, which keeps the echelon problems small and makes every
//! result homogeneous.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{EchelonBasis, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedSpace {
    degrees: Vec<i32>,
    names: Vec<String>,
}

impl GradedSpace {
    pub fn new(degrees: Vec<i32>, names: Vec<String>) -> Self {
        assert_eq!(degrees.len(), names.len());
        GradedSpace { degrees, names }
    }

    /// Basis named `prefix0, prefix1, ...`.
    pub fn anonymous(degrees: Vec<i32>, prefix: &str) -> Self {
        let names = (0..degrees.len()).map(|i| format!("{prefix}{i}")).collect();
        GradedSpace { degrees, names }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }
    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }
    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Degrees with nonzero component, ascending.
    pub fn support(&self) -> Vec<i32> {
        let mut s = self.degrees.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().min()
    }
    pub fn max_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().max()
    }

    pub fn indices_in_degree(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    /// `degree -> basis indices`, ascending degrees.
    pub fn by_degree(&self) -> BTreeMap<i32, Vec<usize>> {
        let mut m: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, &d) in self.degrees.iter().enumerate() {
            m.entry(d).or_default().push(i);
        }
        m
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i32, usize> {
        self.by_degree().into_iter().map(|(d, v)| (d, v.len())).collect()
    }

    /// Every degree moved by `by`.
    pub fn shifted(&self, by: i32) -> Self {
        GradedSpace {
            degrees: self.degrees.iter().map(|d| d + by).collect(),
            names: self.names.clone(),
        }
    }

    pub fn negated(&self) -> Self {
        GradedSpace {
            degrees: self.degrees.iter().map(|d| -d).collect(),
            names: self.names.iter().map(|n| format!("{n}*")).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        GradedSpace { degrees, names }
    }

    /// Degree of a vector, `None` when it is zero. Errors on inhomogeneous vectors.
    pub fn degree_of<F: Field>(&self, field: &F, v: &[F::Elem]) -> Result<Option<i32>> {
        let mut deg = None;
        for (i, x) in v.iter().enumerate() {
            if field.is_zero(x) {
                continue;
            }
            match deg {
                None => deg = Some(self.degrees[i]),
                Some(d) if d != self.degrees[i] => {
                    return Err(Error::Dimension(format!(
                        "vector is not homogeneous (degrees {d} and {})",
                        self.degrees[i]
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Splits a vector into homogeneous pieces.
    pub fn homogeneous_parts<F: Field>(
        &self,
        field: &F,
        v: &[F::Elem],
    ) -> BTreeMap<i32, Vec<F::Elem>> {
        let mut out: BTreeMap<i32, Vec<F::Elem>> = BTreeMap::new();
        for (i, x) in v.iter().enumerate() {
            if field.is_zero(x) {
                continue;
            }
            out.entry(self.degrees[i])
                .or_insert_with(|| vec![field.zero(); v.len()])[i] = x.clone();
        }
        out
    }
}

/// A linear map between graded spaces raising degrees by `shift`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<F: Field> {
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub shift: i32,
    pub matrix: Matrix<F>,
}

impl<F: Field> GradedMap<F> {
    pub fn new(source: GradedSpace, target: GradedSpace, shift: i32, matrix: Matrix<F>) -> Result<Self> {
        let m = GradedMap { source, target, shift, matrix };
        m.check()?;
        Ok(m)
    }

    pub fn check(&self) -> Result<()> {
        if self.matrix.rows() != self.target.dim() || self.matrix.cols() != self.source.dim() {
            return Err(Error::Dimension("graded map shape".into()));
        }
        let f = self.matrix.field();
        for r in 0..self.matrix.rows() {
            for c in 0..self.matrix.cols() {
                if !f.is_zero(self.matrix.get(r, c))
                    && self.target.degree(r) != self.source.degree(c) + self.shift
                {
                    return Err(Error::Dimension(format!(
                        "graded map entry ({r},{c}) violates shift {}",
                        self.shift
                    )));
                }
            }
        }
        Ok(())
    }

    /// The block `source_d -> target_{d+shift}`.
    pub fn block(&self, d: i32) -> Matrix<F> {
        let rows = self.target.indices_in_degree(d + self.shift);
        let cols = self.source.indices_in_degree(d);
        self.matrix.select_rows(&rows).select_columns(&cols)
    }
}

/// A homogeneous subspace, stored as one echelon basis per degree in the
/// local coordinates of that degree.
#[derive(Clone, Debug)]
pub struct GradedSubspace<F: Field> {
    field: F,
    space: GradedSpace,
    parts: BTreeMap<i32, (Vec<usize>, EchelonBasis<F>)>,
}

impl<F: Field> GradedSubspace<F> {
    pub fn zero(field: &F, space: &GradedSpace) -> Self {
        let parts = space
            .by_degree()
            .into_iter()
            .map(|(d, idx)| {
                let n = idx.len();
                (d, (idx, EchelonBasis::new(field, n)))
            })
            .collect();
        GradedSubspace { field: field.clone(), space: space.clone(), parts }
    }

    /// Span of vectors; each is split into homogeneous parts first, so the
    /// result is the smallest graded subspace containing them.
    pub fn span(field: &F, space: &GradedSpace, vectors: impl IntoIterator<Item = Vec<F::Elem>>) -> Self {
        let mut s = Self::zero(field, space);
        for v in vectors {
            s.add(&v);
        }
        s
    }

    pub fn add(&mut self, v: &[F::Elem]) {
        for (d, part) in self.space.homogeneous_parts(&self.field, v) {
            let (idx, e) = self.parts.get_mut(&d).expect("degree present");
            let local: Vec<F::Elem> = idx.iter().map(|&i| part[i].clone()).collect();
            e.insert(local);
        }
    }

    /// Adds a vector known to be supported in degree `d` given in local coordinates.
    pub fn add_local(&mut self, d: i32, local: Vec<F::Elem>) {
        if let Some((_, e)) = self.parts.get_mut(&d) {
            e.insert(local);
        }
    }

    pub fn local_indices(&self, d: i32) -> &[usize] {
        self.parts.get(&d).map_or(&[], |(i, _)| i.as_slice())
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.parts.values().map(|(_, e)| e.rank()).sum()
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.space
            .homogeneous_parts(&self.field, v)
            .into_iter()
            .all(|(d, part)| {
                let (idx, e) = &self.parts[&d];
                let local: Vec<F::Elem> = idx.iter().map(|&i| part[i].clone()).collect();
                e.contains(&local)
            })
    }

    /// Canonical basis (degrees ascending, RREF inside each degree) as global vectors.
    pub fn basis(&self) -> Vec<Vec<F::Elem>> {
        let n = self.space.dim();
        let mut out = Vec::new();
        for (idx, e) in self.parts.values() {
            for row in e.basis_rows() {
                let mut v = vec![self.field.zero(); n];
                for (k, &i) in idx.iter().enumerate() {
                    v[i] = row[k].clone();
                }
                out.push(v);
            }
        }
        out
    }

    pub fn basis_degrees(&self) -> Vec<i32> {
        self.parts
            .iter()
            .flat_map(|(d, (_, e))| std::iter::repeat_n(*d, e.rank()))
            .collect()
    }

    /// The quotient `space / self` with canonical complement basis.
    pub fn quotient(&self) -> GradedQuotient<F> {
        let mut basis = Vec::new();
        for (idx, e) in self.parts.values() {
            for c in e.free_columns() {
                basis.push(idx[c]);
            }
        }
        GradedQuotient { sub: self.clone(), basis }
    }

    /// Coordinates of `v` (assumed in the subspace) in the canonical basis.
    pub fn coords(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let parts = self.space.homogeneous_parts(&self.field, v);
        let mut out = Vec::new();
        for (d, (idx, e)) in &self.parts {
            let local: Vec<F::Elem> = match parts.get(d) {
                Some(p) => idx.iter().map(|&i| p[i].clone()).collect(),
                None => vec![self.field.zero(); idx.len()],
            };
            let piv = e.pivots();
            // coordinate of basis row r is the entry at its pivot
            let coords: Vec<F::Elem> = piv.iter().map(|&p| local[p].clone()).collect();
            let mut check = local.clone();
            for (row, c) in e.basis_rows().iter().zip(&coords) {
                if self.field.is_zero(c) {
                    continue;
                }
                let nc = self.field.neg(c);
                for (x, r) in check.iter_mut().zip(row) {
                    *x = self.field.mul_add(x, &nc, r);
                }
            }
            if check.iter().any(|x| !self.field.is_zero(x)) {
                return Err(Error::NoSolution);
            }
            out.extend(coords);
        }
        Ok(out)
    }
}

/// `space / sub` with basis given by the non-pivot coordinates of `sub` in
/// each degree.
#[derive(Clone, Debug)]
pub struct GradedQuotient<F: Field> {
    sub: GradedSubspace<F>,
    basis: Vec<usize>,
}

impl<F: Field> GradedQuotient<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Ambient indices of the complement basis vectors.
    pub fn basis_indices(&self) -> &[usize] {
        &self.basis
    }

    pub fn space(&self) -> GradedSpace {
        let amb = &self.sub.space;
        GradedSpace::new(
            self.basis.iter().map(|&i| amb.degree(i)).collect(),
            self.basis.iter().map(|&i| amb.name(i).to_string()).collect(),
        )
    }

    pub fn ambient(&self) -> &GradedSpace {
        &self.sub.space
    }

    pub fn subspace(&self) -> &GradedSubspace<F> {
        &self.sub
    }

    /// Class of an ambient vector in quotient coordinates.
    pub fn project(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.sub.field;
        let mut out = vec![f.zero(); self.basis.len()];
        let mut pos = 0;
        for (d, (idx, e)) in &self.sub.parts {
            let free = e.free_columns();
            let touched = idx.iter().any(|&i| !f.is_zero(&v[i]));
            if touched {
                let local: Vec<F::Elem> = idx.iter().map(|&i| v[i].clone()).collect();
                let q = e.quotient_coords(&local);
                for (k, x) in q.into_iter().enumerate() {
                    out[pos + k] = x;
                }
            }
            let _ = d;
            pos += free.len();
        }
        out
    }

    /// Matrix of the projection, `dim x ambient_dim`.
    pub fn projection_matrix(&self) -> Matrix<F> {
        let f = &self.sub.field;
        let n = self.sub.space.dim();
        let cols: Vec<Vec<F::Elem>> = (0..n)
            .map(|i| {
                let mut e = vec![f.zero(); n];
                e[i] = f.one();
                self.project(&e)
            })
            .collect();
        Matrix::from_columns(f, self.dim(), &cols)
    }

    /// Canonical lift of quotient basis vector `j`.
    pub fn lift(&self, j: usize) -> Vec<F::Elem> {
        let f = &self.sub.field;
        let mut v = vec![f.zero(); self.sub.space.dim()];
        v[self.basis[j]] = f.one();
        v
    }

    pub fn lift_vec(&self, q: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.sub.field;
        let mut v = vec![f.zero(); self.sub.space.dim()];
        for (j, x) in q.iter().enumerate() {
            v[self.basis[j]] = x.clone();
        }
        v
    }
}

/// Kernel of a homogeneous map `source -> target` raising degree by `shift`,
/// computed degree by degree. Returns basis vectors (global coordinates of
/// `source`) with degrees ascending.
pub fn graded_kernel<F: Field>(
    m: &Matrix<F>,
    source: &GradedSpace,
    target: &GradedSpace,
    shift: i32,
) -> Vec<Vec<F::Elem>> {
    let f = m.field();
    let tdeg = target.by_degree();
    let mut out = Vec::new();
    for (d, cols) in source.by_degree() {
        let rows = tdeg.get(&(d + shift)).cloned().unwrap_or_default();
        let block = m.select_rows(&rows).select_columns(&cols);
        let k = block.kernel_basis();
        for j in 0..k.cols() {
            let mut v = vec![f.zero(); source.dim()];
            for (a, &c) in cols.iter().enumerate() {
                v[c] = k.get(a, j).clone();
            }
            out.push(v);
        }
    }
    out
}

/// Rank of a homogeneous map computed blockwise.
pub fn graded_rank<F: Field>(m: &Matrix<F>, source: &GradedSpace, target: &GradedSpace, shift: i32) -> usize {
    let tdeg = target.by_degree();
    source
        .by_degree()
        .into_iter()
        .map(|(d, cols)| {
            let rows = tdeg.get(&(d + shift)).cloned().unwrap_or_default();
            if rows.is_empty() {
                0
            } else {
                m.select_rows(&rows).select_columns(&cols).rank()
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn quotient_by_homogeneous_span() {
        let f = Rationals;
        let sp = GradedSpace::anonymous(vec![0, 0, 1], "e");
        let v = vec![f.from_i64(1), f.from_i64(1), f.zero()];
        let sub = GradedSubspace::span(&f, &sp, vec![v.clone()]);
        assert_eq!(sub.dim(), 1);
        let q = sub.quotient();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.space().degrees(), &[0, 1]);
        assert!(q.project(&v).iter().all(|x| f.is_zero(x)));
        assert_eq!(sub.coords(&v).unwrap(), vec![f.one()]);
    }

    #[test]
    fn kernel_is_degreewise() {
        let f = Rationals;
        let src = GradedSpace::anonymous(vec![0, 1], "s");
        let tgt = GradedSpace::anonymous(vec![1, 2], "t");
        // s0 -> t0, s1 -> 0
        let m = Matrix::from_i64(&f, &[&[1, 0], &[0, 0]]);
        let k = graded_kernel(&m, &src, &tgt, 1);
        assert_eq!(k, vec![vec![f.zero(), f.one()]]);
        assert_eq!(graded_rank(&m, &src, &tgt, 1), 1);
    }
}
