//! Bounded complexes of graded modules and complexes of graded Hom spaces.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{graded_rank, GradedSpace};
use crate::hom::{hom_space, HomSpace, Linearity};
use crate::matrix::Matrix;
use crate::module::{is_module_map, Bimodule};
use crate::tensor::tensor;

/// A bounded complex `C^i` with differentials `d^i: C^i -> C^{i+1}` of internal degree 0.
#[derive(Clone, Debug)]
pub struct Complex<F: Field> {
    terms: BTreeMap<i32, Bimodule<F>>,
    diffs: BTreeMap<i32, Matrix<F>>,
}

/// A chain map between complexes, of internal degree 0.
#[derive(Clone, Debug)]
pub struct ChainMap<F: Field> {
    pub source: Complex<F>,
    pub target: Complex<F>,
    pub maps: BTreeMap<i32, Matrix<F>>,
}

/// Dimensions indexed by cohomological degree and internal degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BigradedTable {
    pub entries: BTreeMap<(i32, i32), usize>,
}

impl BigradedTable {
    pub fn get(&self, i: i32, n: i32) -> usize {
        self.entries.get(&(i, n)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: i32, n: i32, v: usize) {
        if v == 0 {
            self.entries.remove(&(i, n));
        } else {
            self.entries.insert((i, n), v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Degree-growth flags with the bounds that witness them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub convex: bool,
    pub concave: bool,
    pub non_strictly_convex: bool,
    pub non_strictly_concave: bool,
    /// `(cohomological degree, min internal degree, max internal degree)` of each nonzero term.
    pub supports: Vec<(i32, i32, i32)>,
}

fn zeros<F: Field>(f: &F, r: usize, c: usize) -> Matrix<F> {
    Matrix::zeros(f, r, c)
}

impl<F: Field> Complex<F> {
    /// Builds a complex, checking shapes, module-map property and `d∘d = 0`.
    pub fn new(terms: BTreeMap<i32, Bimodule<F>>, diffs: BTreeMap<i32, Matrix<F>>) -> Result<Self> {
        let c = Complex { terms, diffs };
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(terms: BTreeMap<i32, Bimodule<F>>, diffs: BTreeMap<i32, Matrix<F>>) -> Self {
        Complex { terms, diffs }
    }

    pub fn single(m: Bimodule<F>, degree: i32) -> Self {
        Complex { terms: BTreeMap::from([(degree, m)]), diffs: BTreeMap::new() }
    }

    pub fn validate(&self) -> Result<()> {
        for (&i, d) in &self.diffs {
            let (Some(s), Some(t)) = (self.terms.get(&i), self.terms.get(&(i + 1))) else {
                return Err(Error::NotAComplex(i));
            };
            if d.rows() != t.dim() || d.cols() != s.dim() || !is_module_map(s, t, d, 0, false) {
                return Err(Error::NotAComplex(i));
            }
        }
        for (&i, d) in &self.diffs {
            if let Some(d2) = self.diffs.get(&(i + 1)) {
                if !d2.mul(d).is_zero() {
                    return Err(Error::NotAComplex(i));
                }
            }
        }
        Ok(())
    }

    pub fn terms(&self) -> &BTreeMap<i32, Bimodule<F>> {
        &self.terms
    }

    pub fn term(&self, i: i32) -> Option<&Bimodule<F>> {
        self.terms.get(&i)
    }

    pub fn term_dim(&self, i: i32) -> usize {
        self.terms.get(&i).map_or(0, |m| m.dim())
    }

    /// `d^i`, zero when absent.
    pub fn diff(&self, f: &F, i: i32) -> Matrix<F> {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| zeros(f, self.term_dim(i + 1), self.term_dim(i)))
    }

    pub fn range(&self) -> Option<(i32, i32)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    /// `C(n)`: every term twisted.
    pub fn twist(&self, n: i32) -> Self {
        Complex {
            terms: self.terms.iter().map(|(&i, m)| (i, m.twist(n))).collect(),
            diffs: self.diffs.clone(),
        }
    }

    /// `C[k]^i = C^{i+k}` with differential `(-1)^k d`.
    pub fn shift(&self, k: i32) -> Self {
        let sign = k.rem_euclid(2) == 1;
        Complex {
            terms: self.terms.iter().map(|(&i, m)| (i - k, m.clone())).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(&i, d)| (i - k, if sign { d.scale(&d.field().neg(&d.field().one())) } else { d.clone() }))
                .collect(),
        }
    }

    /// The stupid truncation keeping cohomological degrees `>= lo`.
    pub fn stupid_truncation(&self, lo: i32) -> Self {
        Complex {
            terms: self.terms.range(lo..).map(|(&i, m)| (i, m.clone())).collect(),
            diffs: self.diffs.range(lo..).map(|(&i, d)| (i, d.clone())).collect(),
        }
    }

    /// Termwise `S ⊗ C` for a bimodule `S` whose right algebra acts on `C`.
    pub fn tensor_with_bimodule(&self, s: &Bimodule<F>) -> Result<Self> {
        let ts: BTreeMap<i32, _> = self.terms.iter().map(|(&i, m)| Ok((i, tensor(s, m)?))).collect::<Result<_>>()?;
        let id = Matrix::identity(s.field(), s.dim());
        let diffs = self
            .diffs
            .iter()
            .map(|(&i, d)| (i, ts[&i].map_to(&ts[&(i + 1)], &id, d)))
            .collect();
        Ok(Complex { terms: ts.into_iter().map(|(i, t)| (i, t.module)).collect(), diffs })
    }

    /// Cohomology dimensions per (cohomological degree, internal degree).
    pub fn cohomology(&self) -> BigradedTable {
        let mut t = BigradedTable::default();
        let Some(f) = self.terms.values().next().map(|m| m.field().clone()) else {
            return t;
        };
        for (&i, m) in &self.terms {
            for (deg, idx) in m.space().by_degree() {
                let d_out = self.diff(&f, i).select_columns(&idx);
                let out_rank = match self.terms.get(&(i + 1)) {
                    Some(n) => d_out.select_rows(&n.space().indices_in_degree(deg)).rank(),
                    None => 0,
                };
                let in_rank = match self.terms.get(&(i - 1)) {
                    Some(p) => self
                        .diff(&f, i - 1)
                        .select_rows(&idx)
                        .select_columns(&p.space().indices_in_degree(deg))
                        .rank(),
                    None => 0,
                };
                t.set(i, deg, idx.len() - out_rank - in_rank);
            }
        }
        t
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology().is_zero()
    }

    pub fn classify_shape(&self) -> ShapeReport {
        let supports: Vec<(i32, i32, i32)> = self
            .terms
            .iter()
            .filter_map(|(&i, m)| m.degree_range().map(|(lo, hi)| (i, lo, hi)))
            .collect();
        // going down the complex (decreasing i) internal degrees rise (concave) or fall (convex)
        let mut concave = true;
        let mut convex = true;
        let mut ns_concave = true;
        let mut ns_convex = true;
        for w in supports.windows(2) {
            let ((_, lo0, hi0), (_, lo1, hi1)) = (w[0], w[1]);
            // w[0] is the lower cohomological degree
            if lo0 <= lo1 {
                concave = false;
            }
            if lo0 < lo1 {
                ns_concave = false;
            }
            if hi0 >= hi1 {
                convex = false;
            }
            if hi0 > hi1 {
                ns_convex = false;
            }
        }
        ShapeReport {
            convex,
            concave,
            non_strictly_convex: ns_convex,
            non_strictly_concave: ns_concave,
            supports,
        }
    }
}

impl<F: Field> ChainMap<F> {
    pub fn new(source: Complex<F>, target: Complex<F>, maps: BTreeMap<i32, Matrix<F>>) -> Result<Self> {
        let f = source
            .terms
            .values()
            .chain(target.terms.values())
            .next()
            .map(|m| m.field().clone());
        if let Some(f) = f {
            let keys: Vec<i32> = source.terms.keys().chain(target.terms.keys()).copied().collect();
            for i in keys {
                let fi = maps.get(&i).cloned().unwrap_or_else(|| zeros(&f, target.term_dim(i), source.term_dim(i)));
                let fi1 = maps
                    .get(&(i + 1))
                    .cloned()
                    .unwrap_or_else(|| zeros(&f, target.term_dim(i + 1), source.term_dim(i + 1)));
                if target.diff(&f, i).mul(&fi) != fi1.mul(&source.diff(&f, i)) {
                    return Err(Error::NotAChainMap(format!("square at degree {i} does not commute")));
                }
            }
        }
        Ok(ChainMap { source, target, maps })
    }

    pub fn identity(c: &Complex<F>) -> Self {
        let maps = c.terms.iter().map(|(&i, m)| (i, Matrix::identity(m.field(), m.dim()))).collect();
        ChainMap { source: c.clone(), target: c.clone(), maps }
    }

    /// `cone(f)^i = source^{i+1} ⊕ target^i`, `d(x, y) = (-d x, f x + d y)`.
    pub fn cone(&self) -> Result<Complex<F>> {
        let s = &self.source;
        let t = &self.target;
        let Some(f) = s.terms.values().chain(t.terms.values()).next().map(|m| m.field().clone()) else {
            return Ok(Complex::new_unchecked(BTreeMap::new(), BTreeMap::new()));
        };
        let mut keys: Vec<i32> = s.terms.keys().map(|i| i - 1).chain(t.terms.keys().copied()).collect();
        keys.sort_unstable();
        keys.dedup();
        let mut terms = BTreeMap::new();
        for &i in &keys {
            let m = match (s.terms.get(&(i + 1)), t.terms.get(&i)) {
                (Some(a), Some(b)) => a.direct_sum(b)?,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => continue,
            };
            terms.insert(i, m);
        }
        let mut diffs = BTreeMap::new();
        for &i in &keys {
            if !terms.contains_key(&i) || !terms.contains_key(&(i + 1)) {
                continue;
            }
            let (sa, ta) = (s.term_dim(i + 1), t.term_dim(i));
            let (sb, tb) = (s.term_dim(i + 2), t.term_dim(i + 1));
            let mut d = zeros(&f, sb + tb, sa + ta);
            let ds = s.diff(&f, i + 1).scale(&f.neg(&f.one()));
            let fm = self.maps.get(&(i + 1)).cloned().unwrap_or_else(|| zeros(&f, tb, sa));
            let dt = t.diff(&f, i);
            for r in 0..sb {
                for c in 0..sa {
                    d.set(r, c, ds.get(r, c).clone());
                }
            }
            for r in 0..tb {
                for c in 0..sa {
                    d.set(sb + r, c, fm.get(r, c).clone());
                }
                for c in 0..ta {
                    d.set(sb + r, sa + c, dt.get(r, c).clone());
                }
            }
            diffs.insert(i, d);
        }
        Complex::new(terms, diffs)
    }

    pub fn is_quasi_iso(&self) -> Result<bool> {
        Ok(self.cone()?.is_acyclic())
    }
}

type Piece<F> = (Option<Matrix<F>>, Option<Matrix<F>>);

/// The complex `Hom^•(P, Q)` in one internal degree `shift`, built lazily:
/// `Hom^j = ⊕_p Hom(P^p, Q^{p+j})_shift` with `d f = d_Q f - (-1)^j f d_P`.
pub struct HomComplex<'a, F: Field> {
    p: &'a Complex<F>,
    q: &'a Complex<F>,
    lin: Linearity,
    shift: i32,
    field: F,
    target_lo: Option<i32>,
    cache: HashMap<(i32, i32), HomSpace<F>>,
    /// Pieces of `d` on the summand `Hom(P^a, Q^{a+j})`, keyed by `(a, j)`:
    /// the `d_Q` part into `Hom(P^a, Q^{a+j+1})` and the `d_P` part into
    /// `Hom(P^{a-1}, Q^{a+j})`.
    pieces: HashMap<(i32, i32), Piece<F>>,
    ranks: HashMap<(i32, Option<i32>), usize>,
}

impl<'a, F: Field> HomComplex<'a, F> {
    pub fn new(p: &'a Complex<F>, q: &'a Complex<F>, lin: Linearity, shift: i32) -> Option<Self> {
        let field = p.terms.values().chain(q.terms.values()).next()?.field().clone();
        Some(HomComplex {
            p,
            q,
            lin,
            shift,
            field,
            target_lo: None,
            cache: HashMap::new(),
            pieces: HashMap::new(),
            ranks: HashMap::new(),
        })
    }

    /// Restricts the target to its stupid truncation in degrees `>= lo`.
    pub fn truncate_target(&mut self, lo: Option<i32>) {
        self.target_lo = lo;
    }

    fn full_space(&mut self, a: i32, b: i32) -> Result<Option<&HomSpace<F>>> {
        let (Some(pm), Some(qm)) = (self.p.term(a), self.q.term(b)) else {
            return Ok(None);
        };
        if !self.cache.contains_key(&(a, b)) {
            let hs = hom_space(pm, qm, self.lin, self.shift)?;
            self.cache.insert((a, b), hs);
        }
        Ok(self.cache.get(&(a, b)))
    }

    fn space(&mut self, a: i32, b: i32) -> Result<Option<&HomSpace<F>>> {
        if self.target_lo.is_some_and(|lo| b < lo) {
            return Ok(None);
        }
        self.full_space(a, b)
    }

    /// Summands `(p, dim)` of `Hom^j` with nonzero dimension.
    fn blocks(&mut self, j: i32) -> Result<Vec<(i32, usize)>> {
        let ps: Vec<i32> = self.p.terms.keys().copied().collect();
        let mut out = Vec::new();
        for a in ps {
            if let Some(hs) = self.space(a, a + j)? {
                if hs.dim() > 0 {
                    out.push((a, hs.dim()));
                }
            }
        }
        Ok(out)
    }

    pub fn dim(&mut self, j: i32) -> Result<usize> {
        Ok(self.blocks(j)?.iter().map(|b| b.1).sum())
    }

    fn piece(&mut self, a: i32, j: i32) -> Result<&Piece<F>> {
        if !self.pieces.contains_key(&(a, j)) {
            let f = self.field.clone();
            let basis: Vec<Matrix<F>> = self.full_space(a, a + j)?.expect("block").basis().to_vec();
            let sign = if j.rem_euclid(2) == 0 { f.neg(&f.one()) } else { f.one() };
            let to_q = match self.full_space(a, a + j + 1)?.filter(|h| h.dim() > 0).cloned() {
                Some(hs) => {
                    let dq = self.q.diff(&f, a + j);
                    let cols: Vec<Vec<F::Elem>> = basis.iter().map(|phi| hs.coords_of_product(&f, &dq, phi)).collect();
                    Some(Matrix::from_columns(&f, hs.dim(), &cols))
                }
                None => None,
            };
            let to_p = match self.full_space(a - 1, a + j)?.filter(|h| h.dim() > 0).cloned() {
                Some(hs) => {
                    let dp = self.p.diff(&f, a - 1);
                    let cols: Vec<Vec<F::Elem>> = basis
                        .iter()
                        .map(|phi| hs.coords_of_product(&f, phi, &dp).iter().map(|x| f.mul(&sign, x)).collect())
                        .collect();
                    Some(Matrix::from_columns(&f, hs.dim(), &cols))
                }
                None => None,
            };
            self.pieces.insert((a, j), (to_q, to_p));
        }
        Ok(&self.pieces[&(a, j)])
    }

    /// Matrix of `d: Hom^j -> Hom^{j+1}` in the block bases, with
    /// `d f = d_Q f - (-1)^j f d_P`.
    pub fn differential(&mut self, j: i32) -> Result<Matrix<F>> {
        let f = self.field.clone();
        let src = self.blocks(j)?;
        let tgt = self.blocks(j + 1)?;
        let rows: usize = tgt.iter().map(|b| b.1).sum();
        let cols: usize = src.iter().map(|b| b.1).sum();
        let mut offs = BTreeMap::new();
        let mut o = 0;
        for &(a, d) in &tgt {
            offs.insert(a, o);
            o += d;
        }
        let mut m = zeros(&f, rows, cols);
        let mut c0 = 0;
        for &(a, d) in &src {
            let (to_q, to_p) = self.piece(a, j)?.clone();
            for (block, row_key) in [(to_q, a), (to_p, a - 1)] {
                if let (Some(b), Some(&off)) = (block, offs.get(&row_key)) {
                    for r in 0..b.rows() {
                        for c in 0..b.cols() {
                            let x = b.get(r, c);
                            if !f.is_zero(x) {
                                let cur = m.get(off + r, c0 + c).clone();
                                m.set(off + r, c0 + c, f.add(&cur, x));
                            }
                        }
                    }
                }
            }
            c0 += d;
        }
        Ok(m)
    }

    fn rank(&mut self, j: i32) -> Result<usize> {
        let key = (j, self.target_lo);
        if let Some(&r) = self.ranks.get(&key) {
            return Ok(r);
        }
        let r = self.differential(j)?.rank();
        self.ranks.insert(key, r);
        Ok(r)
    }

    /// `dim H^j`.
    pub fn cohomology(&mut self, j: i32) -> Result<usize> {
        let d = self.dim(j)?;
        if d == 0 {
            return Ok(0);
        }
        let out = self.rank(j)?;
        let inc = self.rank(j - 1)?;
        Ok(d - out - inc)
    }
}

/// `dim H^j(Hom^•(P, Q))` in internal degree `shift`.
pub fn hom_cohomology<F: Field>(p: &Complex<F>, q: &Complex<F>, lin: Linearity, shift: i32, j: i32) -> Result<usize> {
    match HomComplex::new(p, q, lin, shift) {
        Some(mut h) => h.cohomology(j),
        None => Ok(0),
    }
}

/// The graded space of a complex term, for convenience in reports.
pub fn support<F: Field>(c: &Complex<F>) -> BTreeMap<i32, GradedSpace> {
    c.terms.iter().map(|(&i, m)| (i, m.space().clone())).collect()
}

/// Rank of a degree-0 map between modules, counted degree by degree.
pub fn map_rank<F: Field>(m: &Matrix<F>, src: &Bimodule<F>, tgt: &Bimodule<F>) -> usize {
    graded_rank(m, src.space(), tgt.space(), 0)
}
