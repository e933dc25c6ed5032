//! Semi-infinite Ext and the routes used to cross-check it.
//!
//! `Ext^{∞/2+i}(X, Y(n))` is `H^i` of `Hom_{A^#}(Q, S ⊗_A P)` in internal
//! degree `n`, where `Q -> X` is a non-strictly convex resolution by modules
//! induced from `N^#` and `P -> Y` a concave resolution by `N`-projective
//! modules. Only finitely many terms of `P` matter for a given window; the
//! engine computes a bound `D` from degree supports and evaluates the
//! truncations `P^{<=m}` for every `m <= D + 2`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::complex::{BigradedTable, Complex, HomComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::GradedSpace;
use crate::hom::{hom_into_bimodule, hom_space, HomModule, Linearity};
use crate::matrix::Matrix;
use crate::module::{same_algebra, Bimodule};
use crate::resolution::{
    detect_finite_relative_projdim, projective_dimension, ProjDim, Resolution, Strategy, TermBound,
    DEFAULT_DEPTH_CAP,
};
use crate::ring::RingData;
use crate::sharp::{frobenius_sharp, FrobeniusIso, Sharp};
use crate::tensor::{tensor, Tensor};

pub const TABLE_SCHEMA: &str = "semiinf/ext-table/v1";

/// Cohomological and internal-degree ranges, both inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub i: (i32, i32),
    pub n: (i32, i32),
}

impl Window {
    pub fn new(i: (i32, i32), n: (i32, i32)) -> Self {
        Window { i, n }
    }

    pub fn is(&self) -> std::ops::RangeInclusive<i32> {
        self.i.0..=self.i.1
    }

    pub fn ns(&self) -> std::ops::RangeInclusive<i32> {
        self.n.0..=self.n.1
    }
}

#[derive(Clone, Debug)]
pub struct Policy {
    pub strategy: Strategy,
    pub cap: usize,
    pub parallel: bool,
}

impl Default for Policy {
    fn default() -> Self {
        Policy { strategy: Strategy::InductionStep, cap: DEFAULT_DEPTH_CAP, parallel: true }
    }
}

/// Truncation values `H^i(Hom(Q, S ⊗ P^{<=m}))` for `m = 0..=bound+2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub bound: usize,
    /// Smallest `m` from which the value no longer changes.
    pub stable_from: usize,
    pub values: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub name: String,
    /// `None` when the oracle does not apply.
    pub agreed: Option<bool>,
    pub detail: String,
}

/// Dimensions of `Ext^{∞/2+i}(X, Y(n))` over a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    pub method: String,
    pub window: Window,
    pub table: BigradedTable,
    pub bound: Option<usize>,
    pub witnesses: BTreeMap<(i32, i32), Witness>,
    pub oracle_checks: Vec<OracleCheck>,
}

impl ExtTable {
    fn plain(method: &str, window: Window, table: BigradedTable) -> Self {
        ExtTable { method: method.into(), window, table, bound: None, witnesses: BTreeMap::new(), oracle_checks: Vec::new() }
    }

    pub fn get(&self, i: i32, n: i32) -> usize {
        self.table.get(i, n)
    }

    /// Whether two tables agree on the common window.
    pub fn same_values(&self, other: &ExtTable) -> bool {
        let i = (self.window.i.0.max(other.window.i.0), self.window.i.1.min(other.window.i.1));
        let n = (self.window.n.0.max(other.window.n.0), self.window.n.1.min(other.window.n.1));
        let w = Window::new(i, n);
        w.is().all(|i| w.ns().all(|n| self.get(i, n) == other.get(i, n)))
    }

    /// First entry where two tables differ.
    pub fn first_difference(&self, other: &ExtTable) -> Option<(i32, i32, usize, usize)> {
        let w = self.window;
        w.is()
            .flat_map(|i| w.ns().map(move |n| (i, n)))
            .find(|&(i, n)| self.get(i, n) != other.get(i, n))
            .map(|(i, n)| (i, n, self.get(i, n), other.get(i, n)))
    }

    /// Rows `i` (descending), columns `n`.
    pub fn render(&self) -> String {
        let w = self.window;
        let mut s = String::from("  i \\ n");
        for n in w.ns() {
            s.push_str(&format!("{n:>4}"));
        }
        s.push('\n');
        for i in w.is().rev() {
            s.push_str(&format!("{i:>7}"));
            for n in w.ns() {
                let v = self.get(i, n);
                if v == 0 {
                    s.push_str("   .");
                } else {
                    s.push_str(&format!("{v:>4}"));
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .window
            .is()
            .flat_map(|i| self.window.ns().map(move |n| (i, n)))
            .map(|(i, n)| {
                let mut e = json!({ "i": i, "n": n, "dim": self.get(i, n) });
                if let Some(w) = self.witnesses.get(&(i, n)) {
                    e["stable_from"] = json!(w.stable_from);
                    e["truncations"] = json!(w.values);
                }
                e
            })
            .collect();
        json!({
            "schema": TABLE_SCHEMA,
            "method": self.method,
            "window": { "i": [self.window.i.0, self.window.i.1], "n": [self.window.n.0, self.window.n.1] },
            "bound": self.bound,
            "entries": entries,
            "oracles": self.oracle_checks,
        })
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, G>(items: Vec<T>, parallel: bool, g: G) -> Vec<R>
where
    T: Send,
    R: Send,
    G: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    if parallel {
        items.into_par_iter().map(g).collect()
    } else {
        items.into_iter().map(g).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, G>(items: Vec<T>, _parallel: bool, g: G) -> Vec<R>
where
    G: Fn(T) -> R,
{
    items.into_iter().map(g).collect()
}

fn check_left<F: Field>(m: &Bimodule<F>, alg: &crate::algebra::AlgebraRef<F>, what: &str) -> Result<()> {
    if same_algebra(m.left_algebra(), alg) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch(format!("{what} is not a module over the expected algebra")))
    }
}

/// Values of `H^i(Hom(src, tgt^{>= -m}))` for `m = 0..=top`, per window entry.
fn truncation_values<F: Field>(
    src: &Complex<F>,
    tgt: &Complex<F>,
    window: Window,
    top: usize,
    parallel: bool,
) -> Result<BTreeMap<(i32, i32), Vec<usize>>> {
    let ns: Vec<i32> = window.ns().collect();
    let per_n = par_map(ns, parallel, |n| -> Result<Vec<((i32, i32), Vec<usize>)>> {
        let mut vals: BTreeMap<i32, Vec<usize>> = window.is().map(|i| (i, Vec::new())).collect();
        match HomComplex::new(src, tgt, Linearity::Left, n) {
            Some(mut h) => {
                for m in 0..=top {
                    h.truncate_target(Some(-(m as i32)));
                    for i in window.is() {
                        let v = h.cohomology(i)?;
                        vals.get_mut(&i).expect("row").push(v);
                    }
                }
            }
            None => {
                for v in vals.values_mut() {
                    v.resize(top + 1, 0);
                }
            }
        }
        Ok(vals.into_iter().map(|(i, v)| ((i, n), v)).collect())
    });
    let mut out = BTreeMap::new();
    for r in per_n {
        out.extend(r?);
    }
    Ok(out)
}

/// Values of `H^i(Hom(src, tgt))` over the window.
fn hom_values<F: Field>(src: &Complex<F>, tgt: &Complex<F>, window: Window, parallel: bool) -> Result<BigradedTable> {
    let ns: Vec<i32> = window.ns().collect();
    let per_n = par_map(ns, parallel, |n| -> Result<Vec<(i32, i32, usize)>> {
        let mut out = Vec::new();
        if let Some(mut h) = HomComplex::new(src, tgt, Linearity::Left, n) {
            for i in window.is() {
                out.push((i, n, h.cohomology(i)?));
            }
        }
        Ok(out)
    });
    let mut t = BigradedTable::default();
    for r in per_n {
        for (i, n, v) in r? {
            t.set(i, n, v);
        }
    }
    Ok(t)
}

fn witnesses(
    values: BTreeMap<(i32, i32), Vec<usize>>,
    bound: usize,
) -> Result<(BigradedTable, BTreeMap<(i32, i32), Witness>)> {
    let mut table = BigradedTable::default();
    let mut ws = BTreeMap::new();
    for ((i, n), v) in values {
        let (a, b, c) = (v[bound], v[bound + 1], v[bound + 2]);
        if a != b || b != c {
            return Err(Error::StabilizationFailure { i, n, depth: bound, a, b: if a != b { b } else { c } });
        }
        let mut stable_from = bound + 2;
        while stable_from > 0 && v[stable_from - 1] == c {
            stable_from -= 1;
        }
        table.set(i, n, c);
        ws.insert((i, n), Witness { bound, stable_from, values: v });
    }
    Ok((table, ws))
}

/// The truncation depth `D` beyond which no term of `P` can contribute to
/// the window: for `b > D`, `Hom(Q^{-(b+j)}, S ⊗ P^{-b})_n = 0` for every
/// relevant `j` and `n`, read off from degree bounds of both resolutions.
pub fn depth_bound<F: Field>(
    sh: &Sharp<F>,
    q: &mut Resolution<F>,
    p: &mut Resolution<F>,
    window: Window,
    cap: usize,
) -> Result<usize> {
    let max_n = sh.setup.n.basis().max_degree().unwrap_or(0);
    let j_lo = window.i.0 - 1;
    let j_hi = window.i.1 + 1;
    let tail_ok = |q: &Resolution<F>, p: &Resolution<F>, b0: usize| -> bool {
        match p.tail_bound(b0) {
            TermBound::Vanishes => true,
            TermBound::Unknown => false,
            TermBound::Degree(lp) => {
                let a0 = (b0 as i32 + j_lo).max(0) as usize;
                match q.tail_bound(a0) {
                    TermBound::Vanishes => true,
                    TermBound::Unknown => false,
                    TermBound::Degree(uq) => lp - max_n > uq + window.n.1,
                }
            }
        }
    };
    let q_stride = q.model().map_or(1, |m| m.stride);
    q.extend_to(q_stride)?;
    loop {
        let pc = p.computed();
        if let Some(b0) = (0..=pc).find(|&b0| tail_ok(q, p, b0)) {
            return Ok(b0.saturating_sub(1));
        }
        if pc > cap {
            return Err(Error::DepthCapExceeded(cap));
        }
        p.extend_to(pc)?;
        let want = (p.computed() as i32 + j_hi + 1).max(q_stride as i32) as usize;
        q.extend_to(want)?;
        if p.is_finished() && p.computed() == pc && q.is_finished() {
            return Ok(pc);
        }
    }
}

fn resolutions<F: Field>(
    sh: &Sharp<F>,
    x: &Bimodule<F>,
    y: &Bimodule<F>,
    window: Window,
    policy: &Policy,
) -> Result<(Resolution<F>, Resolution<F>)> {
    check_left(x, &sh.a_sharp, "X")?;
    check_left(y, &sh.setup.a, "Y")?;
    let slack = (window.i.1 - window.i.0).max(0) as usize + 4;
    let q = Resolution::convex(sh, &x.forget_right(), policy.strategy, policy.cap + slack)?;
    let p = Resolution::concave(sh, &y.forget_right(), policy.strategy, policy.cap + slack)?;
    Ok((q, p))
}

/// `Ext^{∞/2+i}(X, Y(n))` for an `A^#`-module `X` and an `A`-module `Y`.
pub fn semiinf_ext<F: Field>(
    sh: &Sharp<F>,
    x: &Bimodule<F>,
    y: &Bimodule<F>,
    window: Window,
    policy: &Policy,
) -> Result<ExtTable> {
    let (mut q, mut p) = resolutions(sh, x, y, window, policy)?;
    let d = depth_bound(sh, &mut q, &mut p, window, policy.cap)?;
    let top = d + 2;
    let t = p.complex(top)?.tensor_with_bimodule(&sh.s)?;
    let qdepth = (top as i32 + window.i.1 + 1).max(0) as usize;
    let qc = q.complex(qdepth)?;
    let vals = truncation_values(&qc, &t, window, top, policy.parallel)?;
    let (table, ws) = witnesses(vals, d)?;
    Ok(ExtTable {
        method: format!("semiinf/{}", policy.strategy.name()),
        window,
        table,
        bound: Some(d),
        witnesses: ws,
        oracle_checks: Vec::new(),
    })
}

/// `colim_m Hom_{D(A^#)}(X, S ⊗_A P^{<=m}[i])`, each term computed from a
/// projective resolution of `X` over `A^#`.
pub fn hom_through<F: Field>(
    sh: &Sharp<F>,
    x: &Bimodule<F>,
    y: &Bimodule<F>,
    window: Window,
    policy: &Policy,
) -> Result<ExtTable> {
    let (mut q, mut p) = resolutions(sh, x, y, window, policy)?;
    let d = depth_bound(sh, &mut q, &mut p, window, policy.cap)?;
    let top = d + 2;
    let t = p.complex(top)?.tensor_with_bimodule(&sh.s)?;
    let depth = (top as i32 + window.i.1 + 1).max(0) as usize;
    let mut px = Resolution::projective(sh.ring_a_sharp.clone(), x, depth + 1)?;
    let xc = px.complex(depth)?;
    let vals = truncation_values(&xc, &t, window, top, policy.parallel)?;
    let (table, ws) = witnesses(vals, d)?;
    Ok(ExtTable {
        method: "hom-through".into(),
        window,
        table,
        bound: Some(d),
        witnesses: ws,
        oracle_checks: Vec::new(),
    })
}

/// Derived Hom over `A^#` into `S ⊗_A P` for a finite `N`-projective
/// resolution `P` of `Y`.
pub fn oracle_finite_projdim<F: Field>(
    sh: &Sharp<F>,
    x: &Bimodule<F>,
    y: &Bimodule<F>,
    window: Window,
    policy: &Policy,
) -> Result<ExtTable> {
    check_left(x, &sh.a_sharp, "X")?;
    check_left(y, &sh.setup.a, "Y")?;
    let mut r = match detect_finite_relative_projdim(sh, &y.forget_right(), policy.cap)? {
        ProjDim::Finite(_, r) => *r,
        _ => return Err(Error::NotApplicable("Y has infinite projective dimension relative to N".into())),
    };
    let len = r.computed();
    let t = r.complex(len)?.tensor_with_bimodule(&sh.s)?;
    let depth = (len as i32 + window.i.1 + 1).max(0) as usize;
    let mut px = Resolution::projective(sh.ring_a_sharp.clone(), x, depth + 1)?;
    let xc = px.complex(depth)?;
    let table = hom_values(&xc, &t, window, policy.parallel)?;
    Ok(ExtTable::plain("oracle/finite-projdim", window, table))
}

/// A graded vector space as a module over the ground field.
fn plain<F: Field>(f: &F, space: GradedSpace) -> Bimodule<F> {
    let g = Arc::new(Algebra::ground(f));
    let id = Matrix::identity(f, space.dim());
    Bimodule::new_unchecked(g.clone(), g, space, vec![id.clone()], vec![id])
}

/// Total complex of a double complex given by summands `(row, col)` in
/// total degree `row - col`, with horizontal maps `(r, c) -> (r + 1, c)` and
/// vertical maps `(r, c) -> (r, c - 1)`.
struct DoubleComplex<F: Field> {
    field: F,
    blocks: BTreeMap<(i32, i32), GradedSpace>,
    horizontal: BTreeMap<(i32, i32), Matrix<F>>,
    vertical: BTreeMap<(i32, i32), Matrix<F>>,
}

impl<F: Field> DoubleComplex<F> {
    fn total(&self, lo: i32, hi: i32) -> Complex<F> {
        let f = &self.field;
        let mut layout: BTreeMap<i32, Vec<((i32, i32), usize)>> = BTreeMap::new();
        let mut terms = BTreeMap::new();
        for k in lo..=hi {
            let mut space = GradedSpace::default();
            let mut offs = Vec::new();
            for (&(r, c), s) in &self.blocks {
                if r - c == k {
                    offs.push(((r, c), space.dim()));
                    space = space.direct_sum(s);
                }
            }
            layout.insert(k, offs);
            terms.insert(k, plain(f, space));
        }
        let mut diffs = BTreeMap::new();
        for k in lo..hi {
            let (src, tgt) = (&terms[&k], &terms[&(k + 1)]);
            let mut m = Matrix::zeros(f, tgt.dim(), src.dim());
            let toff: BTreeMap<(i32, i32), usize> = layout[&(k + 1)].iter().copied().collect();
            for &((r, c), so) in &layout[&k] {
                for (map, key) in [(self.horizontal.get(&(r, c)), (r + 1, c)), (self.vertical.get(&(r, c)), (r, c - 1))] {
                    if let (Some(map), Some(&to)) = (map, toff.get(&key)) {
                        for i in 0..map.rows() {
                            for j in 0..map.cols() {
                                let v = map.get(i, j);
                                if !f.is_zero(v) {
                                    let cur = m.get(to + i, so + j).clone();
                                    m.set(to + i, so + j, f.add(&cur, v));
                                }
                            }
                        }
                    }
                }
            }
            diffs.insert(k, m);
        }
        Complex::new_unchecked(terms, diffs)
    }
}

/// `f ↦ f ∘ d` between Hom modules.
fn precompose<F: Field>(f: &F, from: &HomModule<F>, to: &HomModule<F>, d: &Matrix<F>, sign: &F::Elem) -> Matrix<F> {
    let mut cols = Vec::with_capacity(from.module.dim());
    for (_, hs) in &from.pieces {
        for b in hs.basis() {
            let v = to.coords(f, &b.mul(d).scale(sign), hs.shift);
            cols.push(v);
        }
    }
    Matrix::from_columns(f, to.module.dim(), &cols)
}

/// `H(RHom_{A^#}(X, S) ⊗^L_A Y)` from a finite convex resolution of `X`
/// whose terms are filtered by induced modules.
pub fn oracle_induced<F: Field>(
    sh: &Sharp<F>,
    x: &Bimodule<F>,
    y: &Bimodule<F>,
    window: Window,
    policy: &Policy,
) -> Result<ExtTable> {
    check_left(x, &sh.a_sharp, "X")?;
    check_left(y, &sh.setup.a, "Y")?;
    let f = sh.field().clone();
    let mut q = Resolution::convex(sh, &x.forget_right(), Strategy::InductionStep, policy.cap)?;
    while !q.is_finished() {
        if q.computed() >= policy.cap {
            return Err(Error::NotApplicable("convex resolution of X does not terminate within the cap".into()));
        }
        let c = q.computed();
        q.extend_to(c)?;
    }
    let len = q.computed() as i32;
    let homs: Vec<HomModule<F>> =
        q.terms().iter().map(|t| hom_into_bimodule(t, &sh.s)).collect::<Result<_>>()?;
    let c_max = (len - window.i.0).max(0) as usize;
    let mut py = Resolution::projective(sh.ring_a.clone(), y, c_max + 1)?;
    py.extend_to(c_max)?;
    let pc = py.computed().min(c_max + 1);
    let mut tensors: BTreeMap<(i32, i32), Tensor<F>> = BTreeMap::new();
    for (a, h) in homs.iter().enumerate() {
        for c in 0..pc {
            tensors.insert((a as i32, c as i32), tensor(&h.module, &py.terms()[c])?);
        }
    }
    let neg = f.neg(&f.one());
    let mut dc = DoubleComplex { field: f.clone(), blocks: BTreeMap::new(), horizontal: BTreeMap::new(), vertical: BTreeMap::new() };
    for (&(a, c), t) in &tensors {
        dc.blocks.insert((a, c), t.module.space().clone());
        let sign_a = if a % 2 == 0 { f.one() } else { neg.clone() };
        if let Some(next) = tensors.get(&(a + 1, c)) {
            let d = q.differential(a as usize).expect("differential");
            let delta = precompose(&f, &homs[a as usize], &homs[a as usize + 1], d, &f.neg(&sign_a));
            let id = Matrix::identity(&f, py.terms()[c as usize].dim());
            dc.horizontal.insert((a, c), t.map_to(next, &delta, &id));
        }
        if c > 0 {
            if let Some(next) = tensors.get(&(a, c - 1)) {
                let d = py.differential(c as usize - 1).expect("differential").scale(&sign_a);
                let id = Matrix::identity(&f, homs[a as usize].module.dim());
                dc.vertical.insert((a, c), t.map_to(next, &id, &d));
            }
        }
    }
    let total = dc.total(window.i.0 - 1, window.i.1 + 1);
    let h = total.cohomology();
    let mut table = BigradedTable::default();
    for i in window.is() {
        for n in window.ns() {
            table.set(i, n, h.get(i, n));
        }
    }
    Ok(ExtTable::plain("oracle/induced", window, table))
}

/// Whether the setup is the Frobenius case with `A = N` and `K` the ground field.
pub fn tate_applicable<F: Field>(sh: &Sharp<F>) -> Result<FrobeniusIso<F>> {
    let s = &sh.setup;
    if s.k.dim() != 1 || s.b_idx != s.k_idx || s.n_idx.len() != s.a.dim() {
        return Err(Error::NotApplicable("needs A = N and K = k".into()));
    }
    frobenius_sharp(sh)
}

/// Moves a left `A`-module to `A^#` along the Frobenius isomorphism.
pub fn transport_to_sharp<F: Field>(sh: &Sharp<F>, fr: &FrobeniusIso<F>, x: &Bimodule<F>) -> Result<Bimodule<F>> {
    check_left(x, &sh.setup.a, "module")?;
    let lact = (0..sh.a_sharp.dim()).map(|i| x.left_action_of(&fr.alpha.column(i))).collect();
    Bimodule::left_module(sh.a_sharp.clone(), x.space().clone(), lact)
}

/// `dim Tor^A_{-i}(X*, Y)` in internal degree `n` for `A`-modules `X`, `Y`.
pub fn oracle_tate<F: Field>(
    sh: &Sharp<F>,
    x: &Bimodule<F>,
    y: &Bimodule<F>,
    window: Window,
    policy: &Policy,
) -> Result<ExtTable> {
    tate_applicable(sh)?;
    check_left(x, &sh.setup.a, "X")?;
    check_left(y, &sh.setup.a, "Y")?;
    let f = sh.field().clone();
    let table = tor_table(&f, &sh.ring_a, &x.forget_right().dual(), y, window, policy.cap)?;
    Ok(ExtTable::plain("oracle/tate", window, table))
}

/// `dim Tor_{-i}(M, Y)_n` for a right module `M`.
fn tor_table<F: Field>(
    f: &F,
    ring: &RingData<F>,
    m: &Bimodule<F>,
    y: &Bimodule<F>,
    window: Window,
    cap: usize,
) -> Result<BigradedTable> {
    let mut table = BigradedTable::default();
    if window.i.0 > 0 {
        return Ok(table);
    }
    let depth = (1 - window.i.0) as usize;
    let mut py = Resolution::projective(ring.clone(), y, cap.max(depth + 1))?;
    py.extend_to(depth)?;
    let n = py.computed().min(depth + 1);
    let ts: Vec<Tensor<F>> = (0..n).map(|c| tensor(m, &py.terms()[c])).collect::<Result<_>>()?;
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    let id = Matrix::identity(f, m.dim());
    for c in 0..n {
        terms.insert(-(c as i32), plain(f, ts[c].module.space().clone()));
        if c > 0 {
            let d = py.differential(c - 1).expect("differential");
            diffs.insert(-(c as i32), ts[c].map_to(&ts[c - 1], &id, d));
        }
    }
    let h = Complex::new_unchecked(terms, diffs).cohomology();
    for i in window.is() {
        for nn in window.ns() {
            if i <= 0 && -i < depth as i32 {
                table.set(i, nn, h.get(i, nn));
            }
        }
    }
    Ok(table)
}

/// Stable Hom in one internal degree, computed two ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableHomEntry {
    pub n: i32,
    pub hom: usize,
    /// Rank of `Hom_A(X, A) ⊗_A Y -> Hom_A(X, Y)`.
    pub rank_evaluation: usize,
    /// Rank of `Hom_A(X, P) -> Hom_A(X, Y)` for a projective cover `P -> Y`.
    pub rank_cover: usize,
    pub stable: usize,
}

/// `dim Hom_A(X, Y(n))` modulo maps factoring through projectives.
pub fn stable_hom<F: Field>(ring: &RingData<F>, x: &Bimodule<F>, y: &Bimodule<F>, ns: (i32, i32)) -> Result<Vec<StableHomEntry>> {
    let f = ring.field().clone();
    let x = x.forget_right();
    let y = y.forget_right();
    let reg = Bimodule::regular(&ring.alg);
    let hx = hom_into_bimodule(&x, &reg)?;
    let t = tensor(&hx.module, &y)?;
    let (p, cover) = ring.projective_cover(&y)?;
    let mut out = Vec::new();
    for n in ns.0..=ns.1 {
        let hs = hom_space(&x, &y, Linearity::Left, n)?;
        let mut cols = Vec::new();
        for j in t.module.space().indices_in_degree(n) {
            let (g, yi) = t.pure_index(j);
            let mut e = vec![f.zero(); hx.module.dim()];
            e[g] = f.one();
            let gm = hx.map(&f, &e).expect("nonzero hom");
            let mut yv = vec![f.zero(); y.dim()];
            yv[yi] = f.one();
            let map_cols: Vec<Vec<F::Elem>> =
                (0..x.dim()).map(|c| y.left_action_of(&gm.column(c)).mul_vec(&yv)).collect();
            let map = Matrix::from_columns(&f, y.dim(), &map_cols);
            cols.push(hs.coords(&map));
        }
        let rank_evaluation = Matrix::from_columns(&f, hs.dim(), &cols).rank();
        let hp = hom_space(&x, &p, Linearity::Left, n)?;
        let cols: Vec<Vec<F::Elem>> = hp.basis().iter().map(|g| hs.coords(&cover.mul(g))).collect();
        let rank_cover = Matrix::from_columns(&f, hs.dim(), &cols).rank();
        out.push(StableHomEntry { n, hom: hs.dim(), rank_evaluation, rank_cover, stable: hs.dim() - rank_evaluation });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesEntry {
    pub n: i32,
    pub ext0: usize,
    pub ext1: usize,
    pub tor0: usize,
    pub hom: StableHomEntry,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesReport {
    /// `Ext^{∞/2+i}(X, Y(n))` is compared with `Hom_A(X, Y(n + shift))`,
    /// where `shift` is minus the degree of the Frobenius element.
    pub shift: i32,
    pub entries: Vec<LesEntry>,
    pub pass: bool,
}

/// Checks the exact sequence `Ext^{∞/2+0}(X, Y) -> Hom_A(X, Y) -> StableHom(X, Y) -> Ext^{∞/2+1}(X, Y)`
/// for `A`-modules over a Frobenius algebra with `A = N`, `K = k`:
/// `Ext^{∞/2+1}` vanishes, both descriptions of maps through projectives
/// agree, and the image of `Ext^{∞/2+0}` fits inside it.
pub fn les_check<F: Field>(sh: &Sharp<F>, x: &Bimodule<F>, y: &Bimodule<F>, ns: (i32, i32), policy: &Policy) -> Result<LesReport> {
    let fr = tate_applicable(sh)?;
    let t_deg = sh
        .coring
        .dual
        .space()
        .degree_of(sh.field(), &fr.t)?
        .ok_or_else(|| Error::NotApplicable("Frobenius element is zero".into()))?;
    let shift = -t_deg;
    let xs = transport_to_sharp(sh, &fr, x)?;
    let w = Window::new((0, 1), (ns.0 - shift, ns.1 - shift));
    let ext = semiinf_ext(sh, &xs, y, w, policy)?;
    let tate = oracle_tate(sh, x, y, w, policy)?;
    let sh_entries = stable_hom(&sh.ring_a, x, y, ns)?;
    let entries: Vec<LesEntry> = sh_entries
        .into_iter()
        .map(|h| {
            let n = h.n - shift;
            let (ext0, ext1, tor0) = (ext.get(0, n), ext.get(1, n), tate.get(0, n));
            let pass = ext1 == 0
                && tate.get(1, n) == 0
                && ext0 == tor0
                && h.rank_evaluation == h.rank_cover
                && h.rank_evaluation <= ext0
                && h.stable + h.rank_evaluation == h.hom;
            LesEntry { n: h.n, ext0, ext1, tor0, hom: h, pass }
        })
        .collect();
    let pass = entries.iter().all(|e| e.pass);
    Ok(LesReport { shift, entries, pass })
}

/// Which algebra a module lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    A,
    ASharp,
}

/// Whether an `A`-module is `N`-projective up to finite resolution (resp. an
/// `A^#`-module has finite injective dimension over `N^#`).
pub fn is_semiinfinite_object<F: Field>(sh: &Sharp<F>, m: &Bimodule<F>, side: Side, cap: usize) -> Result<bool> {
    let outcome = match side {
        Side::A => {
            check_left(m, &sh.setup.a, "module")?;
            detect_finite_relative_projdim(sh, &m.forget_right(), cap)?
        }
        Side::ASharp => {
            check_left(m, &sh.a_sharp, "module")?;
            let op = sh.ring_n_sharp.opposite();
            let d = sh.res_n_sharp(&m.forget_right()).dual().right_as_left_opposite(op.alg.clone());
            projective_dimension(&op, &d, cap)?
        }
    };
    match outcome {
        ProjDim::Finite(..) => Ok(true),
        ProjDim::Periodic(_) => Ok(false),
        ProjDim::Infinite(c) => Err(Error::DepthCapExceeded(c)),
    }
}

/// Runs the named comparison route.
pub fn run_oracle<F: Field>(
    name: &str,
    sh: &Sharp<F>,
    x: &Bimodule<F>,
    x_over_a: Option<&Bimodule<F>>,
    y: &Bimodule<F>,
    window: Window,
    policy: &Policy,
) -> Result<ExtTable> {
    match name {
        "finite-projdim" => oracle_finite_projdim(sh, x, y, window, policy),
        "induced" => oracle_induced(sh, x, y, window, policy),
        "hom-through" => hom_through(sh, x, y, window, policy),
        "tate" => match x_over_a {
            Some(xa) => oracle_tate(sh, xa, y, window, policy),
            None => Err(Error::NotApplicable("needs X as an A-module".into())),
        },
        other => Err(Error::Parse(format!("unknown oracle {other}"))),
    }
}

pub const ORACLES: [&str; 4] = ["finite-projdim", "induced", "tate", "hom-through"];

/// Compares `table` against every applicable route, recording the outcome.
/// Any disagreement is returned as an error after all checks are recorded.
pub fn cross_check<F: Field>(
    table: &mut ExtTable,
    names: &[&str],
    sh: &Sharp<F>,
    x: &Bimodule<F>,
    x_over_a: Option<&Bimodule<F>>,
    y: &Bimodule<F>,
    policy: &Policy,
) -> Result<()> {
    let mut bad = Vec::new();
    for &name in names {
        let check = match run_oracle(name, sh, x, x_over_a, y, table.window, policy) {
            Ok(o) => match table.first_difference(&o) {
                None => OracleCheck { name: name.into(), agreed: Some(true), detail: "equal".into() },
                Some((i, n, a, b)) => {
                    let detail = format!("differs at (i={i}, n={n}): engine {a}, oracle {b}");
                    bad.push(format!("{name}: {detail}"));
                    OracleCheck { name: name.into(), agreed: Some(false), detail }
                }
            },
            Err(Error::NotApplicable(why)) => OracleCheck { name: name.into(), agreed: None, detail: why },
            Err(Error::DepthCapExceeded(c)) => {
                OracleCheck { name: name.into(), agreed: None, detail: format!("depth cap {c} reached") }
            }
            Err(e) => return Err(e),
        };
        table.oracle_checks.push(check);
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::OracleDisagreement(bad.join("; ")))
    }
}
