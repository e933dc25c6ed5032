//! The coring `N∨ = Hom_{K^op}(N, K)` and the algebra `N^#` acting on it.
//!
//! `K` is split commutative with idempotents `e_i`. The basis `u_k` of `N`
//! is adapted to the decomposition `N = ⊕ e_j N e_i`, and `ξ_k` is the dual
//! basis: `ξ_k(u_l) = δ_kl e_i` where `u_k ∈ e_j N e_i`. `N^#` is realized as
//! the algebra of endomorphisms of `N∨` commuting with the right `N`-action,
//! with adapted basis `φ_k` satisfying `ε(φ_k · ξ_l) = δ_kl e_j`.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{graded_kernel, GradedSpace, GradedSubspace};
use crate::hom::{hom_space, possible_shifts, Linearity};
use crate::matrix::Matrix;
use crate::module::{same_algebra, Bimodule};
use crate::tensor::{tensor, Tensor};

#[derive(Clone, Debug)]
pub struct Coring<F: Field> {
    field: F,
    pub k: AlgebraRef<F>,
    pub n: AlgebraRef<F>,
    /// Idempotents of `K` in `K`-coordinates.
    pub k_idempotents: Vec<Vec<F::Elem>>,
    /// `K`-coordinates to coefficients on the idempotents.
    idem_coords: Matrix<F>,
    /// Column `i` is the image of `K`'s basis vector `i` in `N`.
    pub k_in_n: Matrix<F>,
    /// Adapted basis of `N` (columns) and its inverse.
    u: Matrix<F>,
    uinv: Matrix<F>,
    /// `u_k ∈ e_{left[k]} N e_{right[k]}`.
    pub u_left: Vec<usize>,
    pub u_right: Vec<usize>,
    /// `N∨` as a `K`-`N` bimodule.
    pub dual_kn: Bimodule<F>,
    /// `N∨` as a `K`-`K` bimodule.
    pub dual_kk: Bimodule<F>,
    /// `N∨ ⊗_K N∨`.
    pub nn: Tensor<F>,
    /// Comultiplication `N∨ -> N∨ ⊗_K N∨`.
    pub comult: Matrix<F>,
    /// Counit `N∨ -> K`.
    pub counit: Matrix<F>,
    /// The algebra `N^#`.
    pub n_sharp: AlgebraRef<F>,
    /// Columns: images of `K`'s basis in `N^#`.
    pub k_in_n_sharp: Matrix<F>,
    /// `N∨` as an `N^#`-`N` bimodule.
    pub dual: Bimodule<F>,
}

impl<F: Field> Coring<F> {
    /// Builds the coring from `N`, its degree-0 subalgebra `K` (given by the
    /// inclusion `k_in_n`), and split idempotents of `K`.
    pub fn build(
        n: AlgebraRef<F>,
        k: AlgebraRef<F>,
        k_in_n: Matrix<F>,
        k_idempotents: Vec<Vec<F::Elem>>,
    ) -> Result<Self> {
        let f = n.field().clone();
        let dn = n.dim();
        let dk = k.dim();
        if k_idempotents.len() != dk {
            return Err(Error::UnsupportedShape("K must be split commutative".into()));
        }
        let emat = Matrix::from_columns(&f, dk, &k_idempotents);
        let idem_coords = emat
            .inverse()
            .ok_or_else(|| Error::UnsupportedShape("idempotents do not form a basis of K".into()))?;
        let en: Vec<Vec<F::Elem>> = k_idempotents.iter().map(|e| k_in_n.mul_vec(e)).collect();

        // adapted basis of N, ordered by degree, then (left, right) idempotent
        let mut cols = Vec::new();
        let mut u_left = Vec::new();
        let mut u_right = Vec::new();
        let mut blocks: Vec<(i32, usize, usize, Vec<F::Elem>)> = Vec::new();
        for (j, ej) in en.iter().enumerate() {
            let lj = n.left_mult(ej);
            for (i, ei) in en.iter().enumerate() {
                let ri = n.right_mult(ei);
                let proj = lj.mul(&ri);
                let vecs: Vec<Vec<F::Elem>> = (0..dn).map(|c| proj.column(c)).collect();
                let sub = GradedSubspace::span(&f, n.basis(), vecs);
                for (v, d) in sub.basis().into_iter().zip(sub.basis_degrees()) {
                    blocks.push((d, j, i, v));
                }
            }
        }
        blocks.sort_by_key(|a| (a.0, a.1, a.2));
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for (d, j, i, v) in blocks {
            let nz: Vec<usize> = (0..dn).filter(|&c| !f.is_zero(&v[c])).collect();
            let name = if nz.len() == 1 && f.is_one(&v[nz[0]]) {
                format!("{}∨", n.basis().name(nz[0]))
            } else {
                format!("ξ{}", cols.len())
            };
            names.push(name);
            degrees.push(-d);
            u_left.push(j);
            u_right.push(i);
            cols.push(v);
        }
        if cols.len() != dn {
            return Err(Error::UnsupportedShape("idempotents do not decompose N".into()));
        }
        let u = Matrix::from_columns(&f, dn, &cols);
        let uinv = u.inverse().ok_or_else(|| Error::UnsupportedShape("adapted basis of N".into()))?;
        let space = GradedSpace::new(degrees, names);

        let mut c = Coring {
            field: f.clone(),
            k: k.clone(),
            n: n.clone(),
            k_idempotents,
            idem_coords,
            k_in_n,
            u,
            uinv,
            u_left,
            u_right,
            dual_kn: Bimodule::zero(k.clone(), n.clone()),
            dual_kk: Bimodule::zero(k.clone(), k.clone()),
            nn: tensor(&Bimodule::zero(k.clone(), k.clone()), &Bimodule::zero(k.clone(), k.clone()))?,
            comult: Matrix::zeros(&f, 0, 0),
            counit: Matrix::zeros(&f, 0, 0),
            n_sharp: Arc::new(Algebra::ground(&f)),
            k_in_n_sharp: Matrix::zeros(&f, 0, 0),
            dual: Bimodule::zero(k.clone(), n.clone()),
        };

        let lact: Vec<Matrix<F>> = (0..dk).map(|a| c.functional_action(|g| k.left_matrix(a).mul(g))).collect();
        let ract: Vec<Matrix<F>> = (0..dn).map(|b| c.functional_action(|g| g.mul(n.left_matrix(b)))).collect();
        c.dual_kn = Bimodule::new(k.clone(), n.clone(), space, lact, ract)?;
        c.dual_kk = c.dual_kn.restrict(k.clone(), &Matrix::identity(&f, dk), k.clone(), &c.k_in_n);
        c.nn = tensor(&c.dual_kk, &c.dual_kk)?;
        c.build_comultiplication()?;
        c.build_n_sharp()?;
        Ok(c)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n.dim()
    }

    /// The adapted basis vector `u_k` of `N`.
    pub fn u(&self, k: usize) -> Vec<F::Elem> {
        self.u.column(k)
    }

    /// Matrix (`dim K x dim N`) of the functional with coordinates `z`.
    pub fn functional(&self, z: &[F::Elem]) -> Matrix<F> {
        let f = &self.field;
        let dk = self.k.dim();
        let dn = self.n.dim();
        let mut g = Matrix::zeros(f, dk, dn);
        for (k, c) in z.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let e = &self.k_idempotents[self.u_right[k]];
            for col in 0..dn {
                let coef = self.uinv.get(k, col);
                if f.is_zero(coef) {
                    continue;
                }
                let s = f.mul(c, coef);
                for r in 0..dk {
                    let cur = g.get(r, col).clone();
                    g.set(r, col, f.mul_add(&cur, &s, &e[r]));
                }
            }
        }
        g
    }

    /// Coordinates of a right `K`-linear functional given as a matrix.
    pub fn coords_of_functional(&self, g: &Matrix<F>) -> Vec<F::Elem> {
        (0..self.dim())
            .map(|k| {
                let val = g.mul_vec(&self.u.column(k));
                self.idem_coords.mul_vec(&val)[self.u_right[k]].clone()
            })
            .collect()
    }

    /// Coefficient vector of a `K`-element on the idempotents.
    pub fn idempotent_coeffs(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.idem_coords.mul_vec(x)
    }

    fn functional_action(&self, op: impl Fn(&Matrix<F>) -> Matrix<F>) -> Matrix<F> {
        let f = &self.field;
        let dn = self.dim();
        let cols: Vec<Vec<F::Elem>> = (0..dn)
            .map(|k| {
                let mut z = vec![f.zero(); dn];
                z[k] = f.one();
                self.coords_of_functional(&op(&self.functional(&z)))
            })
            .collect();
        Matrix::from_columns(f, dn, &cols)
    }

    /// Value `ζ(n)` in `K`-coordinates.
    pub fn evaluate(&self, z: &[F::Elem], n: &[F::Elem]) -> Vec<F::Elem> {
        self.functional(z).mul_vec(n)
    }

    fn basis_functional(&self, k: usize) -> Vec<F::Elem> {
        let mut z = vec![self.field.zero(); self.dim()];
        z[k] = self.field.one();
        z
    }

    /// Pairing of `N∨ ⊗_K N∨` with `N ⊗_K N`: `<η ⊗ ξ, n ⊗ n'> = η(ξ(n) n')`,
    /// evaluated on all pairs of adapted basis vectors.
    fn pairing_matrix(&self) -> Matrix<F> {
        let f = &self.field;
        let dn = self.dim();
        let dk = self.k.dim();
        let cols: Vec<Vec<F::Elem>> = (0..self.nn.dim())
            .map(|j| {
                let (p, q) = self.nn.pure_index(j);
                let eta = self.basis_functional(p);
                let xi = self.basis_functional(q);
                let mut col = Vec::with_capacity(dn * dn * dk);
                for k in 0..dn {
                    let xk = self.k_in_n.mul_vec(&self.evaluate(&xi, &self.u.column(k)));
                    for l in 0..dn {
                        let prod = self.n.mul(&xk, &self.u.column(l));
                        col.extend(self.evaluate(&eta, &prod));
                    }
                }
                col
            })
            .collect();
        Matrix::from_columns(f, dn * dn * dk, &cols)
    }

    fn build_comultiplication(&mut self) -> Result<()> {
        let f = self.field.clone();
        let dn = self.dim();
        let dk = self.k.dim();
        let pm = self.pairing_matrix();
        if pm.rank() != self.nn.dim() {
            return Err(Error::CoringMismatch("pairing N∨⊗N∨ with N⊗N is degenerate".into()));
        }
        let targets: Vec<Vec<F::Elem>> = (0..dn)
            .map(|z| {
                let zeta = self.basis_functional(z);
                let mut col = Vec::with_capacity(dn * dn * dk);
                for k in 0..dn {
                    for l in 0..dn {
                        let prod = self.n.mul(&self.u.column(k), &self.u.column(l));
                        col.extend(self.evaluate(&zeta, &prod));
                    }
                }
                col
            })
            .collect();
        let t = Matrix::from_columns(&f, dn * dn * dk, &targets);
        self.comult = pm
            .preimage(&t)
            .map_err(|_| Error::CoringMismatch("multiplication of N has no dual".into()))?;
        let one = self.n.unit().to_vec();
        let cols: Vec<Vec<F::Elem>> = (0..dn).map(|z| self.evaluate(&self.basis_functional(z), &one)).collect();
        self.counit = Matrix::from_columns(&f, dk, &cols);
        self.check_coring_axioms()
    }

    /// Coassociativity and counit laws as matrix identities.
    pub fn check_coring_axioms(&self) -> Result<()> {
        let f = &self.field;
        let dn = self.dim();
        let id = Matrix::identity(f, dn);
        let t12_3 = tensor(&self.nn.module, &self.dual_kk)?;
        let t23 = &self.nn;
        let t1_23 = tensor(&self.dual_kk, &t23.module)?;
        // canonical (a⊗b)⊗c -> a⊗(b⊗c)
        let assoc_cols: Vec<Vec<F::Elem>> = (0..t12_3.dim())
            .map(|j| {
                let (t, c) = t12_3.pure_index(j);
                let (a, b) = self.nn.pure_index(t);
                let mut ea = vec![f.zero(); dn];
                ea[a] = f.one();
                t1_23.class(&ea, &t23.class_of_basis(b, c))
            })
            .collect();
        let assoc = Matrix::from_columns(f, t1_23.dim(), &assoc_cols);
        let left = assoc.mul(&self.nn.map_to(&t12_3, &self.comult, &id)).mul(&self.comult);
        let right = self.nn.map_to(&t1_23, &id, &self.comult).mul(&self.comult);
        if left != right {
            return Err(Error::CoassociativityFailure("(Δ⊗id)Δ != (id⊗Δ)Δ".into()));
        }
        // (ε⊗id)Δ = id and (id⊗ε)Δ = id
        let cols_l: Vec<Vec<F::Elem>> = (0..self.nn.dim())
            .map(|j| {
                let (p, q) = self.nn.pure_index(j);
                let e = self.counit.column(p);
                self.dual_kk.left_action_of(&e).column(q)
            })
            .collect();
        let cols_r: Vec<Vec<F::Elem>> = (0..self.nn.dim())
            .map(|j| {
                let (p, q) = self.nn.pure_index(j);
                let e = self.counit.column(q);
                self.dual_kk.right_action_of(&e).column(p)
            })
            .collect();
        let el = Matrix::from_columns(f, dn, &cols_l).mul(&self.comult);
        let er = Matrix::from_columns(f, dn, &cols_r).mul(&self.comult);
        if el != id || er != id {
            return Err(Error::CoassociativityFailure("counit law".into()));
        }
        Ok(())
    }

    /// Value of `φ` (as an operator on `N∨`) on `ξ`: `ε(φ ξ)` in `K`-coordinates.
    pub fn sharp_value(&self, op: &Matrix<F>, xi: &[F::Elem]) -> Vec<F::Elem> {
        self.counit.mul_vec(&op.mul_vec(xi))
    }

    fn build_n_sharp(&mut self) -> Result<()> {
        let f = self.field.clone();
        let dn = self.dim();
        let dk = self.k.dim();
        let mut ops: Vec<Matrix<F>> = Vec::new();
        for h in possible_shifts(&self.dual_kn, &self.dual_kn) {
            let hs = hom_space(&self.dual_kn, &self.dual_kn, Linearity::Right, h)?;
            ops.extend(hs.basis().iter().cloned());
        }
        if ops.len() != dn {
            return Err(Error::CoringMismatch(format!(
                "commutant of the right N-action has dimension {} instead of {dn}",
                ops.len()
            )));
        }
        // values (ε(L ξ_l))_l of each operator
        let values = |op: &Matrix<F>| -> Vec<F::Elem> {
            (0..dn).flat_map(|l| self.sharp_value(op, &self.basis_functional(l))).collect()
        };
        let vmat = Matrix::from_columns(&f, dn * dk, &ops.iter().map(values).collect::<Vec<_>>());
        let mut targets = Vec::new();
        for k in 0..dn {
            let mut t = vec![f.zero(); dn * dk];
            let e = &self.k_idempotents[self.u_left[k]];
            for r in 0..dk {
                t[k * dk + r] = e[r].clone();
            }
            targets.push(t);
        }
        let coeffs = vmat
            .preimage(&Matrix::from_columns(&f, dn * dk, &targets))
            .map_err(|_| Error::CoringMismatch("dual basis of N^# not found".into()))?;
        let basis_ops: Vec<Matrix<F>> = (0..dn)
            .map(|k| {
                let mut m = Matrix::zeros(&f, dn, dn);
                for (o, op) in ops.iter().enumerate() {
                    m.add_scaled(coeffs.get(o, k), op);
                }
                m
            })
            .collect();
        let names: Vec<String> = (0..dn)
            .map(|k| {
                let nm = self.dual_kn.space().name(k);
                match nm.strip_suffix('∨') {
                    Some(s) => format!("{s}#"),
                    None => format!("φ{k}"),
                }
            })
            .collect();
        let degrees: Vec<i32> = (0..dn).map(|k| -self.dual_kn.space().degree(k)).collect();
        let alg = Algebra::from_operators(&f, GradedSpace::new(degrees, names), &basis_ops)?;
        // the action formula φ·ζ = Σ φ(ζ_(1)) ζ_(2)
        for (k, op) in basis_ops.iter().enumerate() {
            for z in 0..dn {
                let dz = self.comult.column(z);
                let mut rhs = vec![f.zero(); dn];
                for (j, c) in dz.iter().enumerate() {
                    if f.is_zero(c) {
                        continue;
                    }
                    let (p, q) = self.nn.pure_index(j);
                    if p != k {
                        continue;
                    }
                    let e = &self.k_idempotents[self.u_left[k]];
                    let v = self.dual_kk.left_action_of(e).column(q);
                    for (x, y) in rhs.iter_mut().zip(&v) {
                        *x = f.mul_add(x, c, y);
                    }
                }
                if op.column(z) != rhs {
                    return Err(Error::CoringMismatch("N^# action disagrees with the comultiplication".into()));
                }
            }
        }
        let alg = Arc::new(alg);
        // K inside N^#: the left K-action on N∨
        let flat = |m: &Matrix<F>| -> Vec<F::Elem> {
            (0..dn).flat_map(|r| (0..dn).map(move |c| (r, c))).map(|(r, c)| m.get(r, c).clone()).collect()
        };
        let opmat = Matrix::from_columns(&f, dn * dn, &basis_ops.iter().map(flat).collect::<Vec<_>>());
        let kcols: Vec<Vec<F::Elem>> = (0..dk).map(|a| flat(self.dual_kn.lact(a))).collect();
        self.k_in_n_sharp = opmat
            .preimage(&Matrix::from_columns(&f, dn * dn, &kcols))
            .map_err(|_| Error::CoringMismatch("K does not embed in N^#".into()))?;
        self.dual = Bimodule::new(
            alg.clone(),
            self.n.clone(),
            self.dual_kn.space().clone(),
            basis_ops,
            self.dual_kn.racts().to_vec(),
        )?;
        self.n_sharp = alg;
        Ok(())
    }

    /// Idempotents of `K` mapped into `N^#`.
    pub fn n_sharp_idempotents(&self) -> Vec<Vec<F::Elem>> {
        self.k_idempotents.iter().map(|e| self.k_in_n_sharp.mul_vec(e)).collect()
    }

    /// Right coaction of a module with a right `N`-action (given by a
    /// function producing the action matrix of an element of `N`):
    /// `ρ(p) = Σ_k p u_k ⊗ ξ_k`.
    pub fn right_coaction_terms(&self, act: impl Fn(&[F::Elem]) -> Matrix<F>) -> Vec<Matrix<F>> {
        (0..self.dim()).map(|k| act(&self.u.column(k))).collect()
    }

    /// The cotensor product `P □ Q` of a module `P` with a right `N`-action
    /// (a right `N∨`-comodule via `ρ(p) = Σ_k p u_k ⊗ ξ_k`) and a module `Q`
    /// with a left `N^#`-action (a left comodule via `λ(q) = Σ_k ξ_k ⊗ φ_k q`):
    /// the kernel of `ρ ⊗ id - id ⊗ λ` on `P ⊗_K Q`.
    pub fn cotensor(&self, p: &Bimodule<F>, q: &Bimodule<F>) -> Result<Cotensor<F>> {
        if !same_algebra(p.right_algebra(), &self.n) || !same_algebra(q.left_algebra(), &self.n_sharp) {
            return Err(Error::CoringMismatch("cotensor needs a right N-module and a left N^#-module".into()));
        }
        let f = self.field.clone();
        let dn = self.dim();
        let pk = p.restrict(p.left_algebra().clone(), &Matrix::identity(&f, p.left_algebra().dim()), self.k.clone(), &self.k_in_n);
        let qk = q.restrict(self.k.clone(), &self.k_in_n_sharp, q.right_algebra().clone(), &Matrix::identity(&f, q.right_algebra().dim()));
        let pq = tensor(&pk, &qk)?;
        let pn = tensor(&pk, &self.dual_kk)?;
        let pnq = tensor(&pn.module, &qk)?;
        let rho: Vec<Matrix<F>> = (0..dn).map(|k| p.right_action_of(&self.u.column(k))).collect();
        let lam: Vec<&Matrix<F>> = (0..dn).map(|k| q.lact(k)).collect();
        let mut cols = Vec::with_capacity(pq.dim());
        for j in 0..pq.dim() {
            let (a, b) = pq.pure_index(j);
            let mut col = vec![f.zero(); pnq.dim()];
            let mut eb = vec![f.zero(); q.dim()];
            eb[b] = f.one();
            let mut ea = vec![f.zero(); p.dim()];
            ea[a] = f.one();
            for k in 0..dn {
                let xi = self.basis_functional(k);
                let left = pnq.class(&pn.class(&rho[k].column(a), &xi), &eb);
                let right = pnq.class(&pn.class(&ea, &xi), &lam[k].column(b));
                for ((c, x), y) in col.iter_mut().zip(&left).zip(&right) {
                    *c = f.add(c, &f.sub(x, y));
                }
            }
            cols.push(col);
        }
        let map = Matrix::from_columns(&f, pnq.dim(), &cols);
        let ker = graded_kernel(&map, pq.module.space(), pnq.module.space(), 0);
        let sub = GradedSubspace::span(&f, pq.module.space(), ker);
        let (module, inclusion) = pq.module.submodule(&sub)?;
        Ok(Cotensor { module, inclusion, ambient: pq })
    }
}

/// `P □ Q` as a submodule of `P ⊗_K Q`.
#[derive(Clone, Debug)]
pub struct Cotensor<F: Field> {
    pub module: Bimodule<F>,
    /// Columns: the basis of the cotensor product inside `ambient`.
    pub inclusion: Matrix<F>,
    pub ambient: Tensor<F>,
}
