//! Dense exact matrices and the echelon machinery behind every kernel, image
//! and quotient in the crate.
//!
//! Columns are the convention for vectors: a matrix acts on column vectors,
//! and bases of subspaces are returned as the columns of a matrix.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.field.render(self.get(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { field: field.clone(), rows: r, cols: c, data }
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, nrows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = f.mul_add(&out.data[idx], a, b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !f.is_zero(a) {
                    *o = f.mul_add(o, a, x);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, s)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &F::Elem, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if self.field.is_zero(s) {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !self.field.is_zero(b) {
                *a = self.field.mul_add(a, s, b);
            }
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut m = Self::zeros(&self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                m.set(i, c, self.get(r, c).clone());
            }
        }
        m
    }

    /// Echelon basis of the row space.
    pub fn row_echelon(&self) -> EchelonBasis<F> {
        let mut e = EchelonBasis::new(&self.field, self.cols);
        for r in 0..self.rows {
            e.insert(self.row(r).to_vec());
        }
        e
    }

    /// Reduced row echelon form (nonzero rows only) and pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let e = self.row_echelon();
        let pivots = e.pivots();
        (e.to_matrix(), pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.row_echelon().rank()
        } else {
            self.transpose().row_echelon().rank()
        }
    }

    /// Columns form the canonical basis of the null space: one vector per
    /// non-pivot column, ascending.
    pub fn kernel_basis(&self) -> Matrix<F> {
        self.row_echelon().null_space()
    }

    /// Columns form a canonical basis of the column space (RREF of the transpose).
    pub fn image_basis(&self) -> Matrix<F> {
        self.transpose().row_echelon().to_matrix().transpose()
    }

    /// Solves `self * x = target` column by column.
    pub fn preimage(&self, target: &Matrix<F>) -> Result<Matrix<F>> {
        if target.rows != self.rows {
            return Err(Error::Dimension(format!(
                "preimage: matrix has {} rows, target {}",
                self.rows, target.rows
            )));
        }
        let aug = self.hstack(target);
        let e = aug.row_echelon();
        let f = &self.field;
        let mut x = Matrix::zeros(f, self.cols, target.cols);
        for (row, &p) in e.rows.iter().zip(&e.pivot_cols) {
            if p >= self.cols {
                return Err(Error::NoSolution);
            }
            for j in 0..target.cols {
                x.set(p, j, row[self.cols + j].clone());
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(&self.field, self.rows);
        if self.rank() != self.rows {
            return None;
        }
        self.preimage(&id).ok()
    }
}

/// An incrementally maintained reduced row echelon basis of a subspace of
/// `F^ncols`. The stored basis is the unique RREF of the span, so it does not
/// depend on insertion order.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivot_cols: Vec<usize>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: &F, ncols: usize) -> Self {
        EchelonBasis { field: field.clone(), ncols, rows: Vec::new(), pivot_cols: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns in ascending order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p = self.pivot_cols.clone();
        p.sort_unstable();
        p
    }

    /// Subtracts basis rows to clear every pivot position of `v`.
    pub fn reduce(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivot_cols) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = f.neg(&v[p]);
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.mul_add(x, &c, r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }

    /// Inserts a vector; returns `true` when it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.ncols);
        self.reduce(&mut v);
        let f = &self.field;
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero pivot");
        for x in v.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = f.neg(&row[p]);
            for (x, r) in row.iter_mut().zip(&v) {
                if !f.is_zero(r) {
                    *x = f.mul_add(x, &c, r);
                }
            }
        }
        // keep rows sorted by pivot so the stored form is the canonical RREF
        let pos = self.pivot_cols.partition_point(|&q| q < p);
        self.pivot_cols.insert(pos, p);
        self.rows.insert(pos, v);
        true
    }

    pub fn insert_sparse(&mut self, entries: &[(usize, F::Elem)]) -> bool {
        let mut v = vec![self.field.zero(); self.ncols];
        for (i, x) in entries {
            v[*i] = self.field.add(&v[*i], x);
        }
        self.insert(v)
    }

    /// Basis rows (RREF, pivots ascending) as a matrix.
    pub fn to_matrix(&self) -> Matrix<F> {
        if self.rows.is_empty() {
            return Matrix::zeros(&self.field, 0, self.ncols);
        }
        Matrix::from_rows(&self.field, self.rows.clone())
    }

    pub fn basis_rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    /// Non-pivot columns, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let piv = self.pivots();
        let mut out = Vec::with_capacity(self.ncols - piv.len());
        let mut k = 0;
        for c in 0..self.ncols {
            if k < piv.len() && piv[k] == c {
                k += 1;
            } else {
                out.push(c);
            }
        }
        out
    }

    /// Basis (as columns) of `{x : r . x = 0 for every basis row r}`. The
    /// vector for free column `j` has a 1 at `j` and zeros at the other free
    /// columns, so coordinates in this basis are read off at free positions.
    pub fn null_space(&self) -> Matrix<F> {
        let f = &self.field;
        let free = self.free_columns();
        let mut k = Matrix::zeros(f, self.ncols, free.len());
        for (j, &c) in free.iter().enumerate() {
            k.set(c, j, f.one());
            for (row, &p) in self.rows.iter().zip(&self.pivot_cols) {
                if !f.is_zero(&row[c]) {
                    k.set(p, j, f.neg(&row[c]));
                }
            }
        }
        k
    }

    /// Coordinates of the residue of `v` in the complement spanned by free columns.
    pub fn quotient_coords(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        self.free_columns().into_iter().map(|c| w[c].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, PrimeField, Rationals};

    #[test]
    fn rank_examples() {
        let f = Rationals;
        assert_eq!(Matrix::identity(&f, 2).rank(), 2);
        assert_eq!(Matrix::zeros(&f, 3, 4).rank(), 0);
        let p5 = PrimeField::new(5).unwrap();
        assert_eq!(Matrix::from_i64(&p5, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f = Rationals;
        assert_eq!(Matrix::identity(&f, 3).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(&f, 3, 3).kernel_basis().cols(), 3);
        let k = Matrix::from_i64(&f, &[&[1, 1]]).kernel_basis();
        assert_eq!(k.column(0), vec![q(-1, 1), q(1, 1)]);
    }

    #[test]
    fn preimage_examples() {
        let f = Rationals;
        let v = Matrix::from_i64(&f, &[&[3], &[-2]]);
        assert_eq!(Matrix::identity(&f, 2).preimage(&v).unwrap(), v);
        let z = Matrix::zeros(&f, 2, 2);
        assert_eq!(z.preimage(&v), Err(Error::NoSolution));
        let two = Matrix::from_i64(&f, &[&[2]]);
        let x = two.preimage(&Matrix::from_i64(&f, &[&[1]])).unwrap();
        assert_eq!(x.get(0, 0), &q(1, 2));
    }

    #[test]
    fn insertion_order_does_not_matter() {
        let f = Rationals;
        let a = Matrix::from_i64(&f, &[&[1, 2, 3], &[0, 1, 1], &[2, 5, 7]]);
        let b = Matrix::from_i64(&f, &[&[2, 5, 7], &[1, 2, 3], &[0, 1, 1]]);
        assert_eq!(a.rref(), b.rref());
    }
}
