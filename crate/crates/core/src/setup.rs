//! Triangular data `(K, B, N)` inside a graded algebra `A` and the check of
//! the three structural conditions.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::AlgebraRef;
use crate::coring::Coring;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::graded_rank;
use crate::matrix::Matrix;
use crate::module::Bimodule;
use crate::ring::{check_idempotents, detect_split_idempotents, RingData};
use crate::tensor::{tensor, Tensor};

#[derive(Clone, Debug)]
pub struct TriangularSetup<F: Field> {
    pub a: AlgebraRef<F>,
    pub k: AlgebraRef<F>,
    pub b: AlgebraRef<F>,
    pub n: AlgebraRef<F>,
    pub k_idx: Vec<usize>,
    pub b_idx: Vec<usize>,
    pub n_idx: Vec<usize>,
    /// Split idempotents of `K` in `K`-coordinates, when supplied.
    pub certificate: Option<Vec<Vec<F::Elem>>>,
}

/// Outcome of one structural condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub pass: bool,
    pub witness: Option<String>,
    pub detail: String,
}

impl ConditionResult {
    fn ok(detail: impl Into<String>) -> Self {
        ConditionResult { pass: true, witness: None, detail: detail.into() }
    }
    fn fail(witness: impl Into<String>, detail: impl Into<String>) -> Self {
        ConditionResult { pass: false, witness: Some(witness.into()), detail: detail.into() }
    }
    fn skipped() -> Self {
        ConditionResult { pass: false, witness: None, detail: "not checked: an earlier condition failed".into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetupReport {
    pub condition1: ConditionResult,
    pub condition2: ConditionResult,
    pub condition3: ConditionResult,
}

impl SetupReport {
    pub fn passed(&self) -> bool {
        self.condition1.pass && self.condition2.pass && self.condition3.pass
    }
}

fn inclusion<F: Field>(f: &F, sub: &[usize], sup: &[usize]) -> Matrix<F> {
    let mut m = Matrix::zeros(f, sup.len(), sub.len());
    for (c, i) in sub.iter().enumerate() {
        let r = sup.iter().position(|x| x == i).expect("index subset");
        m.set(r, c, f.one());
    }
    m
}

impl<F: Field> TriangularSetup<F> {
    /// Subalgebras given by basis-index subsets of `A`.
    pub fn new(
        a: AlgebraRef<F>,
        k_idx: Vec<usize>,
        b_idx: Vec<usize>,
        n_idx: Vec<usize>,
        certificate: Option<Vec<Vec<F::Elem>>>,
    ) -> Result<Self> {
        let sub = |idx: &[usize]| -> Result<AlgebraRef<F>> { Ok(Arc::new(a.subalgebra(idx)?)) };
        for (small, big, what) in [(&k_idx, &b_idx, "K ⊂ B"), (&k_idx, &n_idx, "K ⊂ N")] {
            if small.iter().any(|i| !big.contains(i)) {
                return Err(Error::NotASubalgebra(format!("{what} fails")));
            }
        }
        Ok(TriangularSetup {
            k: sub(&k_idx)?,
            b: sub(&b_idx)?,
            n: sub(&n_idx)?,
            a,
            k_idx,
            b_idx,
            n_idx,
            certificate,
        })
    }

    /// `K`, `B`, `N` read off from the degrees of the basis.
    pub fn from_degrees(a: AlgebraRef<F>) -> Result<Self> {
        let idx = |p: fn(i32) -> bool| (0..a.dim()).filter(|&i| p(a.degree(i))).collect::<Vec<_>>();
        let (k, b, n) = (idx(|d| d == 0), idx(|d| d <= 0), idx(|d| d >= 0));
        Self::new(a, k, b, n, None)
    }

    pub fn field(&self) -> &F {
        self.a.field()
    }

    pub fn k_in_a(&self) -> Matrix<F> {
        inclusion(self.field(), &self.k_idx, &(0..self.a.dim()).collect::<Vec<_>>())
    }
    pub fn b_in_a(&self) -> Matrix<F> {
        inclusion(self.field(), &self.b_idx, &(0..self.a.dim()).collect::<Vec<_>>())
    }
    pub fn n_in_a(&self) -> Matrix<F> {
        inclusion(self.field(), &self.n_idx, &(0..self.a.dim()).collect::<Vec<_>>())
    }
    pub fn k_in_n(&self) -> Matrix<F> {
        inclusion(self.field(), &self.k_idx, &self.n_idx)
    }
    pub fn k_in_b(&self) -> Matrix<F> {
        inclusion(self.field(), &self.k_idx, &self.b_idx)
    }

    /// Split idempotents of `K` in `K`-coordinates.
    pub fn k_idempotents(&self) -> Result<Vec<Vec<F::Elem>>> {
        match &self.certificate {
            Some(c) => {
                check_idempotents(&self.k, c)?;
                if c.len() != self.k.dim() {
                    return Err(Error::UnsupportedShape("certificate does not split K into fields".into()));
                }
                Ok(c.clone())
            }
            None => detect_split_idempotents(&self.k),
        }
    }

    fn ring(&self, alg: &AlgebraRef<F>, k_in: &Matrix<F>) -> Result<RingData<F>> {
        let es = self.k_idempotents()?.iter().map(|e| k_in.mul_vec(e)).collect();
        RingData::new(alg.clone(), es)
    }

    pub fn ring_a(&self) -> Result<RingData<F>> {
        self.ring(&self.a, &self.k_in_a())
    }
    pub fn ring_n(&self) -> Result<RingData<F>> {
        self.ring(&self.n, &self.k_in_n())
    }
    pub fn ring_b(&self) -> Result<RingData<F>> {
        self.ring(&self.b, &self.k_in_b())
    }
    pub fn ring_k(&self) -> Result<RingData<F>> {
        self.ring(&self.k, &Matrix::identity(self.field(), self.k.dim()))
    }

    /// `A` as a bimodule over the given subalgebras (each given with its inclusion).
    pub fn a_over(
        &self,
        left: &AlgebraRef<F>,
        left_in: &Matrix<F>,
        right: &AlgebraRef<F>,
        right_in: &Matrix<F>,
    ) -> Bimodule<F> {
        Bimodule::regular(&self.a).restrict(left.clone(), left_in, right.clone(), right_in)
    }

    /// Restriction of a left `A`-module to a subalgebra.
    pub fn restrict_left(&self, m: &Bimodule<F>, sub: &AlgebraRef<F>, incl: &Matrix<F>) -> Bimodule<F> {
        let id = Matrix::identity(self.field(), m.right_algebra().dim());
        m.restrict(sub.clone(), incl, m.right_algebra().clone(), &id)
    }

    pub fn res_b(&self, m: &Bimodule<F>) -> Bimodule<F> {
        self.restrict_left(m, &self.b, &self.b_in_a())
    }
    pub fn res_n(&self, m: &Bimodule<F>) -> Bimodule<F> {
        self.restrict_left(m, &self.n, &self.n_in_a())
    }
    pub fn res_k(&self, m: &Bimodule<F>) -> Bimodule<F> {
        self.restrict_left(m, &self.k, &self.k_in_a())
    }

    /// `Ind_B^A M = A ⊗_B M` for a left `B`-module.
    pub fn ind_b(&self, m: &Bimodule<F>) -> Result<Tensor<F>> {
        let f = self.field();
        let a = self.a_over(&self.a, &Matrix::identity(f, self.a.dim()), &self.b, &self.b_in_a());
        tensor(&a, m)
    }

    /// `Ind_K^N M = N ⊗_K M` for a left `K`-module.
    pub fn ind_k_n(&self, m: &Bimodule<F>) -> Result<Tensor<F>> {
        let f = self.field();
        let nreg = Bimodule::regular(&self.n).restrict(
            self.n.clone(),
            &Matrix::identity(f, self.n.dim()),
            self.k.clone(),
            &self.k_in_n(),
        );
        tensor(&nreg, m)
    }

    /// The multiplication map `N ⊗_K B -> A` and its source.
    pub fn multiplication_map(&self) -> Result<(Tensor<F>, Matrix<F>)> {
        let f = self.field();
        let nreg = Bimodule::regular(&self.n).restrict(
            self.n.clone(),
            &Matrix::identity(f, self.n.dim()),
            self.k.clone(),
            &self.k_in_n(),
        );
        let breg = Bimodule::regular(&self.b).restrict(
            self.k.clone(),
            &self.k_in_b(),
            self.b.clone(),
            &Matrix::identity(f, self.b.dim()),
        );
        let t = tensor(&nreg, &breg)?;
        let cols: Vec<Vec<F::Elem>> = (0..t.dim())
            .map(|j| {
                let (p, q) = t.pure_index(j);
                self.a.product_of_basis(self.n_idx[p], self.b_idx[q])
            })
            .collect();
        let m = Matrix::from_columns(f, self.a.dim(), &cols);
        Ok((t, m))
    }

    pub fn coring(&self) -> Result<Coring<F>> {
        Coring::build(self.n.clone(), self.k.clone(), self.k_in_n(), self.k_idempotents()?)
    }

    /// `S = N∨ ⊗_N A` as an `N^#`-`A` bimodule.
    pub fn s_module(&self, coring: &Coring<F>) -> Result<Tensor<F>> {
        let f = self.field();
        let a = self.a_over(&self.n, &self.n_in_a(), &self.a, &Matrix::identity(f, self.a.dim()));
        tensor(&coring.dual, &a)
    }
}

/// Checks the three structural conditions, returning witnesses on failure.
pub fn verify_setup<F: Field>(s: &TriangularSetup<F>) -> SetupReport {
    let a = &s.a;
    let mut c1 = ConditionResult::ok("B is nonpositively and N nonnegatively graded, K = B ∩ N = N^0");
    for i in 0..a.dim() {
        let d = a.degree(i);
        let (in_k, in_b, in_n) = (s.k_idx.contains(&i), s.b_idx.contains(&i), s.n_idx.contains(&i));
        let problem = if in_b && d > 0 {
            Some("element of B in positive degree")
        } else if in_n && d < 0 {
            Some("element of N in negative degree")
        } else if in_k != (in_b && in_n) {
            Some("K differs from B ∩ N")
        } else if in_n && (d == 0) != in_k {
            Some("K differs from the degree-0 part of N")
        } else {
            None
        };
        if let Some(p) = problem {
            c1 = ConditionResult::fail(a.basis().name(i), format!("{p} (degree {d})"));
            break;
        }
    }
    if !c1.pass {
        return SetupReport { condition1: c1, condition2: ConditionResult::skipped(), condition3: ConditionResult::skipped() };
    }
    let c2 = condition2(s);
    if !c2.pass {
        return SetupReport { condition1: c1, condition2: c2, condition3: ConditionResult::skipped() };
    }
    let c3 = condition3(s);
    SetupReport { condition1: c1, condition2: c2, condition3: c3 }
}

fn condition2<F: Field>(s: &TriangularSetup<F>) -> ConditionResult {
    let f = s.field();
    let semisimple = match &s.certificate {
        Some(_) => s.k_idempotents().map(|_| None).map_err(|e| e.to_string()),
        None => match s.k.radical() {
            Ok(r) if r.dim() == 0 => Ok(None),
            Ok(r) => {
                let v = &r.basis()[0];
                let i = v.iter().position(|x| !f.is_zero(x)).unwrap_or(0);
                Ok(Some(s.k.basis().name(i).to_string()))
            }
            Err(e) => Err(e.to_string()),
        },
    };
    match semisimple {
        Ok(None) => {}
        Ok(Some(w)) => return ConditionResult::fail(w, "K is not semisimple: radical is nonzero"),
        Err(e) => return ConditionResult::fail("K", e),
    }
    match s.multiplication_map() {
        Ok((t, m)) => {
            let r = graded_rank(&m, t.module.space(), s.a.basis(), 0);
            if r == t.dim() && r == s.a.dim() {
                ConditionResult::ok(format!("N ⊗_K B -> A is bijective (dimension {r})"))
            } else {
                ConditionResult::fail(
                    format!("rank {r}"),
                    format!("N ⊗_K B has dimension {}, A has dimension {}, multiplication has rank {r}", t.dim(), s.a.dim()),
                )
            }
        }
        Err(e) => ConditionResult::fail("N ⊗_K B", e.to_string()),
    }
}

fn condition3<F: Field>(s: &TriangularSetup<F>) -> ConditionResult {
    let run = || -> Result<ConditionResult> {
        let coring = s.coring()?;
        let sm = s.s_module(&coring)?;
        let ring = s.ring_n()?;
        let sn = sm.module.restrict(
            coring.n_sharp.clone(),
            &Matrix::identity(s.field(), coring.n_sharp.dim()),
            s.n.clone(),
            &s.n_in_a(),
        );
        Ok(match ring.is_injective_right(&sn)? {
            None => ConditionResult::ok(format!("S = N∨ ⊗_N A (dimension {}) is an injective right N-module", sm.dim())),
            Some((i, d)) => ConditionResult::fail(
                format!("simple {i} in degree {d}"),
                "the dual of S is not a projective left N-module",
            ),
        })
    };
    run().unwrap_or_else(|e| ConditionResult::fail("construction", e.to_string()))
}
