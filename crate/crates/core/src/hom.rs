//! Spaces of homogeneous module maps, solved as commutation equations.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{EchelonBasis, Matrix};
use crate::module::{same_algebra, Bimodule};

/// Which actions a map must commute with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Linearity {
    Left,
    Right,
    Both,
}

/// The space of maps `M -> Q` raising degree by `shift` and commuting with
/// the chosen actions. Basis maps are indexed by the free unknowns of the
/// solved system, so coordinates of any member are read off at those entries.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pub shift: i32,
    rows: usize,
    cols: usize,
    /// (row, col) of each unknown.
    unknowns: Vec<(usize, usize)>,
    free: Vec<usize>,
    basis: Vec<Matrix<F>>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix<F>] {
        &self.basis
    }

    /// Coordinates of a member of the space.
    pub fn coords(&self, m: &Matrix<F>) -> Vec<F::Elem> {
        debug_assert_eq!((m.rows(), m.cols()), (self.rows, self.cols));
        self.free
            .iter()
            .map(|&u| {
                let (r, c) = self.unknowns[u];
                m.get(r, c).clone()
            })
            .collect()
    }

    /// Coordinates of `l * r`, assumed to lie in the space, without forming
    /// the whole product.
    pub fn coords_of_product(&self, field: &F, l: &Matrix<F>, r: &Matrix<F>) -> Vec<F::Elem> {
        debug_assert_eq!((l.rows(), r.cols()), (self.rows, self.cols));
        self.free
            .iter()
            .map(|&u| {
                let (row, col) = self.unknowns[u];
                let mut acc = field.zero();
                for k in 0..l.cols() {
                    let a = l.get(row, k);
                    if !field.is_zero(a) {
                        let b = r.get(k, col);
                        if !field.is_zero(b) {
                            acc = field.mul_add(&acc, a, b);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// The member with given coordinates.
    pub fn element(&self, field: &F, coords: &[F::Elem]) -> Matrix<F> {
        let mut m = Matrix::zeros(field, self.rows, self.cols);
        for (b, c) in self.basis.iter().zip(coords) {
            if !field.is_zero(c) {
                m.add_scaled(c, b);
            }
        }
        m
    }
}

/// Computes `Hom(M, Q)` in internal degree `shift` (maps `M_d -> Q_{d+shift}`).
pub fn hom_space<F: Field>(m: &Bimodule<F>, q: &Bimodule<F>, lin: Linearity, shift: i32) -> Result<HomSpace<F>> {
    let use_left = matches!(lin, Linearity::Left | Linearity::Both);
    let use_right = matches!(lin, Linearity::Right | Linearity::Both);
    if use_left && !same_algebra(m.left_algebra(), q.left_algebra()) {
        return Err(Error::AlgebraMismatch("hom between modules over different algebras".into()));
    }
    if use_right && !same_algebra(m.right_algebra(), q.right_algebra()) {
        return Err(Error::AlgebraMismatch("hom between modules over different algebras".into()));
    }
    let f = m.field().clone();
    let (dm, dq) = (m.dim(), q.dim());
    let qdeg = q.space().by_degree();
    let mut unknowns = Vec::new();
    let mut index = vec![usize::MAX; dm * dq];
    for c in 0..dm {
        if let Some(rows) = qdeg.get(&(m.space().degree(c) + shift)) {
            for &r in rows {
                index[r * dm + c] = unknowns.len();
                unknowns.push((r, c));
            }
        }
    }
    let nu = unknowns.len();
    let mut eqs = EchelonBasis::new(&f, nu);
    // phi commutes with an action when qa . phi = phi . ma
    let mut add_equations = |qa: &Matrix<F>, ma: &Matrix<F>, deg: i32| {
        for c in 0..dm {
            let target_deg = m.space().degree(c) + deg + shift;
            let Some(rows) = qdeg.get(&target_deg) else { continue };
            for &r in rows {
                let mut entries: Vec<(usize, F::Elem)> = Vec::new();
                // (qa . phi)[r, c] = sum_k qa[r,k] phi[k,c]
                if let Some(krows) = qdeg.get(&(m.space().degree(c) + shift)) {
                    for &k in krows {
                        let a = qa.get(r, k);
                        if !f.is_zero(a) {
                            entries.push((index[k * dm + c], a.clone()));
                        }
                    }
                }
                // - (phi . ma)[r, c] = - sum_k phi[r,k] ma[k,c]
                for k in 0..dm {
                    let a = ma.get(k, c);
                    if !f.is_zero(a) {
                        let u = index[r * dm + k];
                        if u != usize::MAX {
                            entries.push((u, f.neg(a)));
                        }
                    }
                }
                if !entries.is_empty() {
                    eqs.insert_sparse(&entries);
                }
            }
        }
    };
    if use_left {
        let alg = m.left_algebra();
        for &g in alg.generators() {
            add_equations(q.lact(g), m.lact(g), alg.degree(g));
        }
    }
    if use_right {
        let alg = m.right_algebra();
        for &g in alg.generators() {
            add_equations(q.ract(g), m.ract(g), alg.degree(g));
        }
    }
    let free = eqs.free_columns();
    let ns = eqs.null_space();
    let basis = (0..ns.cols())
        .map(|j| {
            let mut b = Matrix::zeros(&f, dq, dm);
            for (u, &(r, c)) in unknowns.iter().enumerate() {
                let x = ns.get(u, j);
                if !f.is_zero(x) {
                    b.set(r, c, x.clone());
                }
            }
            b
        })
        .collect();
    Ok(HomSpace { shift, rows: dq, cols: dm, unknowns, free, basis })
}

/// Dimension of `Hom(M, Q)` in degree `shift`.
pub fn hom_dim<F: Field>(m: &Bimodule<F>, q: &Bimodule<F>, lin: Linearity, shift: i32) -> Result<usize> {
    Ok(hom_space(m, q, lin, shift)?.dim())
}

/// All shifts in which a homogeneous map `M -> Q` can be nonzero.
pub fn possible_shifts<F: Field>(m: &Bimodule<F>, q: &Bimodule<F>) -> Vec<i32> {
    match (m.degree_range(), q.degree_range()) {
        (Some((mlo, mhi)), Some((qlo, qhi))) => (qlo - mhi..=qhi - mlo).collect(),
        _ => Vec::new(),
    }
}

/// A graded space of module maps made into a module, together with the
/// pieces it is assembled from. Basis element `offset + t` of the module is
/// basis map `t` of the piece starting at `offset`.
#[derive(Clone, Debug)]
pub struct HomModule<F: Field> {
    pub module: Bimodule<F>,
    pub pieces: Vec<(usize, HomSpace<F>)>,
}

impl<F: Field> HomModule<F> {
    /// The map with the given module coordinates.
    pub fn map(&self, field: &F, v: &[F::Elem]) -> Option<Matrix<F>> {
        let mut out: Option<Matrix<F>> = None;
        for (off, hs) in &self.pieces {
            let m = hs.element(field, &v[*off..*off + hs.dim()]);
            out = Some(match out {
                None => m,
                Some(o) => o.add(&m),
            });
        }
        out
    }

    /// Module coordinates of a homogeneous map of degree `shift`.
    pub fn coords(&self, field: &F, m: &Matrix<F>, shift: i32) -> Vec<F::Elem> {
        let total = self.pieces.last().map_or(0, |(o, h)| o + h.dim());
        let mut v = vec![field.zero(); total];
        if let Some((off, hs)) = self.pieces.iter().find(|(_, h)| h.shift == shift) {
            for (k, c) in hs.coords(m).into_iter().enumerate() {
                v[off + k] = c;
            }
        }
        v
    }
}

fn assemble<F: Field>(
    src: &Bimodule<F>,
    tgt: &Bimodule<F>,
    acting: &crate::algebra::AlgebraRef<F>,
    on_left: bool,
    act: impl Fn(usize, &Matrix<F>) -> Matrix<F>,
) -> Result<HomModule<F>> {
    let f = src.field().clone();
    let mut pieces = Vec::new();
    let mut degrees = Vec::new();
    let mut names = Vec::new();
    let mut off = 0;
    for h in possible_shifts(src, tgt) {
        let hs = hom_space(src, tgt, Linearity::Left, h)?;
        if hs.dim() == 0 {
            continue;
        }
        for t in 0..hs.dim() {
            degrees.push(h);
            names.push(format!("f{}", off + t));
        }
        let d = hs.dim();
        pieces.push((off, hs));
        off += d;
    }
    let mut hm = HomModule {
        module: Bimodule::zero(acting.clone(), acting.clone()),
        pieces,
    };
    let n = off;
    let acts: Vec<Matrix<F>> = (0..acting.dim())
        .map(|i| {
            let da = acting.degree(i);
            let mut cols = Vec::with_capacity(n);
            for (_, hs) in &hm.pieces {
                for b in hs.basis() {
                    cols.push(hm.coords(&f, &act(i, b), hs.shift + da));
                }
            }
            Matrix::from_columns(&f, n, &cols)
        })
        .collect();
    let space = crate::graded::GradedSpace::new(degrees, names);
    hm.module = if on_left {
        Bimodule::left_module(acting.clone(), space, acts)?
    } else {
        Bimodule::right_module(acting.clone(), space, acts)?
    };
    Ok(hm)
}

/// `Hom_L(S, M)` for an `L`-`R` bimodule `S` and a left `L`-module `M`, as a
/// left `R`-module: `(r f)(s) = f(s r)`.
pub fn hom_from_bimodule<F: Field>(s: &Bimodule<F>, m: &Bimodule<F>) -> Result<HomModule<F>> {
    let r = s.right_algebra().clone();
    assemble(s, m, &r, true, |i, b| b.mul(s.ract(i)))
}

/// `Hom_L(Q, S)` for a left `L`-module `Q` and an `L`-`R` bimodule `S`, as a
/// right `R`-module: `(f r)(q) = f(q) r`.
pub fn hom_into_bimodule<F: Field>(q: &Bimodule<F>, s: &Bimodule<F>) -> Result<HomModule<F>> {
    let r = s.right_algebra().clone();
    assemble(q, s, &r, false, |i, b| s.ract(i).mul(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::Rationals;
    use crate::graded::GradedSpace;
    use std::sync::Arc;

    #[test]
    fn endomorphisms_of_regular_module_are_right_multiplications() {
        let f = Rationals;
        let basis = GradedSpace::new(vec![0, 1], vec!["1".into(), "x".into()]);
        let one = f.one();
        let c = vec![(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one)];
        let a = Arc::new(Algebra::from_structure_constants(&f, basis, &c, vec![f.one(), f.zero()]).unwrap());
        let reg = Bimodule::regular(&a).forget_right();
        assert_eq!(hom_dim(&reg, &reg, Linearity::Left, 0).unwrap(), 1);
        assert_eq!(hom_dim(&reg, &reg, Linearity::Left, 1).unwrap(), 1);
        assert_eq!(hom_dim(&reg, &reg, Linearity::Left, -1).unwrap(), 0);
        let h = hom_space(&reg, &reg, Linearity::Left, 1).unwrap();
        let b = &h.basis()[0];
        assert_eq!(h.coords(b), vec![f.one()]);
    }
}
