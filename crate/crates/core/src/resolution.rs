//! Relative and absolute resolutions, extended lazily.
//!
//! A resolution `P_j -> ... -> P_0 -> M` is stored with `P_j` in
//! cohomological degree `-j`. Concave resolutions (over `A`, relative to `B`)
//! push internal degrees up along the resolution; convex ones (over `A^#`,
//! relative to `N^#`) push them down.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraRef};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{graded_kernel, GradedQuotient, GradedSubspace};
use crate::matrix::Matrix;
use crate::module::Bimodule;
use crate::ring::RingData;
use crate::sharp::Sharp;
use crate::tensor::{tensor, Tensor};

pub const DEFAULT_DEPTH_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    InductionStep,
    Bar,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::InductionStep => "induction-step",
            Strategy::Bar => "bar",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "induction-step" | "induction" => Ok(Strategy::InductionStep),
            "bar" => Ok(Strategy::Bar),
            _ => Err(Error::Parse(format!("unknown strategy {s}"))),
        }
    }
}

/// Which way internal degrees move along the resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Minimal degrees grow: bounds are lower bounds on `min P_j`.
    Up,
    /// Maximal degrees shrink: bounds are upper bounds on `max P_j`.
    Down,
}

/// A subalgebra `sub ⊂ big` given by the matrix of its inclusion.
#[derive(Clone, Debug)]
pub struct RelPair<F: Field> {
    pub big: AlgebraRef<F>,
    pub sub: AlgebraRef<F>,
    pub incl: Matrix<F>,
}

impl<F: Field> RelPair<F> {
    pub fn concave(sh: &Sharp<F>) -> Self {
        RelPair { big: sh.setup.a.clone(), sub: sh.setup.b.clone(), incl: sh.setup.b_in_a() }
    }

    pub fn convex(sh: &Sharp<F>) -> Self {
        RelPair { big: sh.a_sharp.clone(), sub: sh.coring.n_sharp.clone(), incl: sh.n_sharp_in.clone() }
    }

    fn field(&self) -> &F {
        self.big.field()
    }

    /// `big` as a `big`-`sub` bimodule.
    pub fn big_over_sub(&self) -> Bimodule<F> {
        let id = Matrix::identity(self.field(), self.big.dim());
        Bimodule::regular(&self.big).restrict(self.big.clone(), &id, self.sub.clone(), &self.incl)
    }

    /// Restriction of a left `big`-module to `sub`.
    pub fn restrict(&self, m: &Bimodule<F>) -> Bimodule<F> {
        let id = Matrix::identity(self.field(), m.right_algebra().dim());
        m.restrict(self.sub.clone(), &self.incl, m.right_algebra().clone(), &id)
    }

    /// `big ⊗_sub V` for a left `sub`-module `V`.
    pub fn induce(&self, v: &Bimodule<F>) -> Result<Tensor<F>> {
        tensor(&self.big_over_sub(), v)
    }

    /// `big ⊗_sub Res M -> M`, `a ⊗ m ↦ a m`, with its source.
    pub fn counit(&self, m: &Bimodule<F>) -> Result<(Tensor<F>, Matrix<F>)> {
        let t = self.induce(&self.restrict(m))?;
        let cols: Vec<Vec<F::Elem>> = (0..t.dim())
            .map(|j| {
                let (a, q) = t.pure_index(j);
                m.lact(a).column(q)
            })
            .collect();
        let map = Matrix::from_columns(self.field(), m.dim(), &cols);
        Ok((t, map))
    }

    /// `big / sub` as a `sub`-`sub` bimodule, with the quotient data.
    pub fn quotient_bimodule(&self) -> (Bimodule<F>, GradedQuotient<F>) {
        let f = self.field();
        let reg = Bimodule::regular(&self.big).restrict(self.sub.clone(), &self.incl, self.sub.clone(), &self.incl);
        let sub = GradedSubspace::span(f, reg.space(), self.incl.columns());
        let (q, _, quot) = reg.quotient(&sub);
        (q, quot)
    }
}

/// What is known about a term of a resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermBound {
    Vanishes,
    /// A lower bound on the minimal degree (direction up) or an upper bound
    /// on the maximal degree (direction down).
    Degree(i32),
    Unknown,
}

/// A bound for terms not yet computed: with stride `t` and gain `g`, the
/// extremal degree of `P_{j+t}` is at least `g` beyond that of `P_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundModel {
    pub stride: usize,
    /// `None` means terms `t` steps after a computed one vanish.
    pub gain: Option<i32>,
}

#[derive(Clone, Debug)]
enum Engine<F: Field> {
    Induction { pair: RelPair<F>, stop: Stop<F> },
    Projective { ring: RingData<F> },
    Bar(BarData<F>),
}

/// When an induction-step resolution may end early with the current kernel.
#[derive(Clone, Debug)]
pub enum Stop<F: Field> {
    Never,
    /// The kernel is projective over the subalgebra with this inclusion.
    Projective { ring: RingData<F>, incl: Matrix<F> },
    /// The kernel admits a filtration by induced modules.
    Induced,
}

#[derive(Clone, Debug)]
struct BarData<F: Field> {
    pair: RelPair<F>,
    big_over: Bimodule<F>,
    abar: Bimodule<F>,
    quot: GradedQuotient<F>,
    /// `R_0 = Res M`, `R_j = Ā ⊗ R_{j-1}`.
    r: Vec<Bimodule<F>>,
    r_t: Vec<Option<Tensor<F>>>,
    /// `P_j = big ⊗ R_j`.
    p_t: Vec<Tensor<F>>,
}

/// A resolution of a module, built term by term.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub label: String,
    pub direction: Option<Direction>,
    target: Bimodule<F>,
    terms: Vec<Bimodule<F>>,
    /// `diffs[j]: P_{j+1} -> P_j`.
    diffs: Vec<Matrix<F>>,
    augmentation: Matrix<F>,
    /// Kernel of the last map and its inclusion into the last term.
    kernel: Option<(Bimodule<F>, Matrix<F>)>,
    finished: bool,
    cap: usize,
    engine: Engine<F>,
    model: Option<BoundModel>,
}

fn kernel_of<F: Field>(src: &Bimodule<F>, tgt: &Bimodule<F>, map: &Matrix<F>) -> Result<(Bimodule<F>, Matrix<F>)> {
    let f = src.field();
    let vs = graded_kernel(map, src.space(), tgt.space(), 0);
    let sub = GradedSubspace::span(f, src.space(), vs);
    src.submodule(&sub)
}

impl<F: Field> Resolution<F> {
    fn start(label: String, target: &Bimodule<F>, engine: Engine<F>, direction: Option<Direction>, cap: usize) -> Self {
        let f = target.field();
        Resolution {
            label,
            direction,
            target: target.clone(),
            terms: Vec::new(),
            diffs: Vec::new(),
            augmentation: Matrix::zeros(f, target.dim(), 0),
            kernel: Some((target.clone(), Matrix::identity(f, target.dim()))),
            finished: target.dim() == 0,
            cap,
            engine,
            model: None,
        }
    }

    /// Resolution by induced modules `big ⊗_sub Res(K)` of successive kernels.
    pub fn induction(pair: RelPair<F>, m: &Bimodule<F>, direction: Direction, cap: usize) -> Result<Self> {
        Self::induction_with_stop(pair, m, direction, Stop::Never, cap)
    }

    /// As [`Resolution::induction`], ending as soon as a kernel passes `stop`.
    pub fn induction_with_stop(
        pair: RelPair<F>,
        m: &Bimodule<F>,
        direction: Direction,
        stop: Stop<F>,
        cap: usize,
    ) -> Result<Self> {
        let mut r = Self::start("induction-step".into(), m, Engine::Induction { pair, stop }, Some(direction), cap);
        r.model = Some(BoundModel { stride: 1, gain: Some(1) });
        r.extend_to(0)?;
        Ok(r)
    }

    /// The normalized relative bar resolution `big ⊗ Ā^{⊗j} ⊗ M`.
    pub fn bar(pair: RelPair<F>, m: &Bimodule<F>, direction: Direction, cap: usize) -> Result<Self> {
        let (abar, quot) = pair.quotient_bimodule();
        let r0 = pair.restrict(m);
        let model = bar_model(&abar, direction)?;
        let data = BarData {
            big_over: pair.big_over_sub(),
            pair,
            abar,
            quot,
            r: vec![r0],
            r_t: vec![None],
            p_t: Vec::new(),
        };
        let mut r = Self::start("bar".into(), m, Engine::Bar(data), Some(direction), cap);
        r.model = Some(model);
        r.kernel = None;
        r.extend_to(0)?;
        Ok(r)
    }

    /// Resolution by projective covers.
    pub fn projective(ring: RingData<F>, m: &Bimodule<F>, cap: usize) -> Result<Self> {
        let mut r = Self::start("projective".into(), &m.forget_right(), Engine::Projective { ring }, None, cap);
        r.extend_to(0)?;
        Ok(r)
    }

    /// The concave resolution of a left `A`-module.
    pub fn concave(sh: &Sharp<F>, y: &Bimodule<F>, strategy: Strategy, cap: usize) -> Result<Self> {
        let pair = RelPair::concave(sh);
        match strategy {
            Strategy::InductionStep => {
                let stop = Stop::Projective { ring: sh.ring_n.clone(), incl: sh.setup.n_in_a() };
                Self::induction_with_stop(pair, y, Direction::Up, stop, cap)
            }
            Strategy::Bar => Self::bar(pair, y, Direction::Up, cap),
        }
    }

    /// The non-strictly convex resolution of a left `A^#`-module.
    pub fn convex(sh: &Sharp<F>, x: &Bimodule<F>, strategy: Strategy, cap: usize) -> Result<Self> {
        let pair = RelPair::convex(sh);
        match strategy {
            Strategy::InductionStep => Self::induction_with_stop(pair, x, Direction::Down, Stop::Induced, cap),
            Strategy::Bar => Self::bar(pair, x, Direction::Down, cap),
        }
    }

    pub fn target(&self) -> &Bimodule<F> {
        &self.target
    }

    pub fn computed(&self) -> usize {
        self.terms.len()
    }

    pub fn is_finished(&self) -> bool {
        self.finished
    }

    /// Number of nonzero terms when finished.
    pub fn length(&self) -> Option<usize> {
        self.finished.then_some(self.terms.len())
    }

    pub fn model(&self) -> Option<BoundModel> {
        self.model
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `P_j`, computing it if needed; `None` when it is zero.
    pub fn term(&mut self, j: usize) -> Result<Option<&Bimodule<F>>> {
        self.extend_to(j)?;
        Ok(self.terms.get(j))
    }

    pub fn terms(&self) -> &[Bimodule<F>] {
        &self.terms
    }

    /// `d: P_{j+1} -> P_j` for computed terms.
    pub fn differential(&self, j: usize) -> Option<&Matrix<F>> {
        self.diffs.get(j)
    }

    pub fn augmentation(&self) -> &Matrix<F> {
        &self.augmentation
    }

    /// The kernel of the last computed differential, when tracked.
    pub fn current_kernel(&self) -> Option<&(Bimodule<F>, Matrix<F>)> {
        self.kernel.as_ref()
    }

    /// Ensures `P_0, ..., P_depth` are computed (or the resolution has ended).
    pub fn extend_to(&mut self, depth: usize) -> Result<()> {
        while !self.finished && self.terms.len() <= depth {
            if self.terms.len() > self.cap {
                return Err(Error::DepthCapExceeded(self.cap));
            }
            self.step()?;
        }
        Ok(())
    }

    fn push(&mut self, term: Bimodule<F>, map: Matrix<F>) {
        if self.terms.is_empty() {
            self.augmentation = map;
        } else {
            self.diffs.push(map);
        }
        self.terms.push(term);
    }

    fn step(&mut self) -> Result<()> {
        let j = self.terms.len();
        match &mut self.engine {
            Engine::Induction { pair, stop } => {
                let (k, incl) = self.kernel.take().expect("kernel tracked");
                let done = match stop {
                    Stop::Never => false,
                    Stop::Projective { ring, incl: sub } => {
                        let id = Matrix::identity(k.field(), 1);
                        let g: AlgebraRef<F> = Arc::new(Algebra::ground(k.field()));
                        let res = k.forget_right().restrict(ring.alg.clone(), sub, g, &id);
                        ring.is_projective(&res)?
                    }
                    Stop::Induced => {
                        let dir = self.direction.unwrap_or(Direction::Down);
                        induced_filtration(pair, &k, dir)?.found
                    }
                };
                if done {
                    self.finished = true;
                    self.kernel = Some(kernel_of(&k, &k, &Matrix::identity(k.field(), k.dim()))?);
                    self.push(k, incl);
                    return Ok(());
                }
                let (t, cover) = pair.counit(&k)?;
                let p = t.module;
                let map = incl.mul(&cover);
                let next = kernel_of(&p, &k, &cover)?;
                self.check_shape(&p, &next.0)?;
                self.finished = next.0.dim() == 0;
                self.kernel = Some(next);
                self.push(p, map);
            }
            Engine::Projective { ring } => {
                let (k, incl) = self.kernel.take().expect("kernel tracked");
                let (p, cover) = ring.projective_cover(&k)?;
                let map = incl.mul(&cover);
                let next = kernel_of(&p, &k, &cover)?;
                self.finished = next.0.dim() == 0;
                self.kernel = Some(next);
                self.push(p, map);
            }
            Engine::Bar(data) => {
                data.ensure(j)?;
                let p = data.p_t[j].module.clone();
                let map = data.differential(j, &self.target);
                let zero_next = {
                    data.ensure_r(j + 1)?;
                    data.r[j + 1].dim() == 0
                };
                self.finished = zero_next;
                if p.dim() == 0 {
                    self.finished = true;
                    return Ok(());
                }
                self.push(p, map);
            }
        }
        Ok(())
    }

    fn check_shape(&self, term: &Bimodule<F>, kernel: &Bimodule<F>) -> Result<()> {
        let (Some((lo, hi)), Some((klo, khi))) = (term.degree_range(), kernel.degree_range()) else {
            return Ok(());
        };
        let ok = match self.direction {
            Some(Direction::Up) => klo > lo,
            Some(Direction::Down) => khi < hi,
            None => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedShape(format!(
                "{} resolution step does not move degrees (term {lo}..{hi}, kernel {klo}..{khi})",
                self.label
            )))
        }
    }

    /// The extremal degree of a computed term in the resolution's direction.
    fn extremal(&self, j: usize) -> Option<i32> {
        let (lo, hi) = self.terms.get(j)?.degree_range()?;
        match self.direction {
            Some(Direction::Down) => Some(hi),
            _ => Some(lo),
        }
    }

    /// A bound on `P_j` valid without computing further terms.
    pub fn bound(&self, j: usize) -> TermBound {
        let n = self.terms.len();
        if j < n {
            return self.extremal(j).map_or(TermBound::Vanishes, TermBound::Degree);
        }
        if self.finished {
            return TermBound::Vanishes;
        }
        let (Some(model), Some(dir)) = (self.model, self.direction) else {
            return TermBound::Unknown;
        };
        let t = model.stride;
        if n < t {
            return TermBound::Unknown;
        }
        let q = (j - n) / t + 1;
        let r = j - q * t;
        let Some(base) = self.extremal(r) else {
            return TermBound::Vanishes;
        };
        match model.gain {
            None => TermBound::Vanishes,
            Some(g) => {
                let g = g * q as i32;
                TermBound::Degree(if dir == Direction::Up { base + g } else { base - g })
            }
        }
    }

    /// A bound valid simultaneously for every term `P_{j'}` with `j' >= j`.
    pub fn tail_bound(&self, j: usize) -> TermBound {
        let up = self.direction != Some(Direction::Down);
        let combine = |a: Option<i32>, b: i32| Some(a.map_or(b, |a| if up { a.min(b) } else { a.max(b) }));
        let n = self.terms.len();
        let mut acc = None;
        for r in j..n {
            if let Some(e) = self.extremal(r) {
                acc = combine(acc, e);
            }
        }
        if self.finished {
            return acc.map_or(TermBound::Vanishes, TermBound::Degree);
        }
        let (Some(model), Some(_)) = (self.model, self.direction) else {
            return TermBound::Unknown;
        };
        let t = model.stride;
        if n < t {
            return TermBound::Unknown;
        }
        let Some(g) = model.gain else {
            return acc.map_or(TermBound::Vanishes, TermBound::Degree);
        };
        let start = j.max(n);
        let q = ((start - n) / t + 1) as i32;
        let mut base = None;
        for r in n - t..n {
            if let Some(e) = self.extremal(r) {
                base = combine(base, e);
            }
        }
        let Some(base) = base else {
            return acc.map_or(TermBound::Vanishes, TermBound::Degree);
        };
        let tail = if up { base + q * g } else { base - q * g };
        TermBound::Degree(combine(acc, tail).expect("nonempty"))
    }

    /// Whether the model bound grows without limit.
    pub fn bound_is_effective(&self) -> bool {
        self.finished || self.model.is_some_and(|m| m.gain.is_none_or(|g| g > 0))
    }

    /// Terms `P_0..=P_depth` as a complex in cohomological degrees `-depth..=0`.
    pub fn complex(&mut self, depth: usize) -> Result<Complex<F>> {
        self.extend_to(depth)?;
        let n = self.terms.len().min(depth + 1);
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for j in 0..n {
            terms.insert(-(j as i32), self.terms[j].clone());
            if j + 1 < n {
                diffs.insert(-(j as i32) - 1, self.diffs[j].clone());
            }
        }
        Ok(Complex::new_unchecked(terms, diffs))
    }

    /// Checks exactness of `P_depth -> ... -> P_0 -> M -> 0` everywhere
    /// except at the top computed term (whose kernel is the next step).
    pub fn is_exact_below(&mut self, depth: usize) -> Result<bool> {
        self.extend_to(depth)?;
        let n = self.terms.len().min(depth + 1);
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        terms.insert(1, self.target.forget_right());
        for j in 0..n {
            terms.insert(-(j as i32), self.terms[j].forget_right());
        }
        if n > 0 {
            diffs.insert(0, self.augmentation.clone());
        }
        for j in 0..n.saturating_sub(1) {
            diffs.insert(-(j as i32) - 1, self.diffs[j].clone());
        }
        let top = 1 - n as i32;
        let closed = self.finished && n == self.terms.len();
        let h = Complex::new(terms, diffs)?.cohomology();
        Ok(h.entries.keys().all(|&(i, _)| i == top && !closed))
    }
}

impl<F: Field> BarData<F> {
    fn field(&self) -> &F {
        self.pair.field()
    }

    fn ensure_r(&mut self, j: usize) -> Result<()> {
        while self.r.len() <= j {
            let prev = self.r.last().expect("R_0");
            let t = tensor(&self.abar, prev)?;
            self.r.push(t.module.clone());
            self.r_t.push(Some(t));
        }
        Ok(())
    }

    fn ensure(&mut self, j: usize) -> Result<()> {
        self.ensure_r(j)?;
        while self.p_t.len() <= j {
            let k = self.p_t.len();
            let t = tensor(&self.big_over, &self.r[k])?;
            self.p_t.push(t);
        }
        Ok(())
    }

    /// Basis element of `R_j` as `(Ā indices, M index)`.
    fn decompose_r(&self, j: usize, mut idx: usize) -> (Vec<usize>, usize) {
        let mut bars = Vec::with_capacity(j);
        for k in (1..=j).rev() {
            let (a, rest) = self.r_t[k].as_ref().expect("tensor").pure_index(idx);
            bars.push(a);
            idx = rest;
        }
        (bars, idx)
    }

    fn class_r(&self, j: usize, bars: &[Vec<F::Elem>], m: &[F::Elem]) -> Vec<F::Elem> {
        if j == 0 {
            return m.to_vec();
        }
        let inner = self.class_r(j - 1, &bars[1..], m);
        self.r_t[j].as_ref().expect("tensor").class(&self.quot.project(&bars[0]), &inner)
    }

    fn class_p(&self, j: usize, a0: &[F::Elem], bars: &[Vec<F::Elem>], m: &[F::Elem]) -> Vec<F::Elem> {
        self.p_t[j].class(a0, &self.class_r(j, bars, m))
    }

    /// `d: P_j -> P_{j-1}`, or the augmentation for `j = 0`.
    fn differential(&self, j: usize, target: &Bimodule<F>) -> Matrix<F> {
        let f = self.field().clone();
        let big = &self.pair.big;
        let unit_vec = |n: usize, i: usize| {
            let mut v = vec![f.zero(); n];
            v[i] = f.one();
            v
        };
        let pt = &self.p_t[j];
        let rows = if j == 0 { target.dim() } else { self.p_t[j - 1].dim() };
        let cols: Vec<Vec<F::Elem>> = (0..pt.dim())
            .map(|c| {
                let (a0i, ri) = pt.pure_index(c);
                let (bar_idx, mi) = self.decompose_r(j, ri);
                let a0 = big.basis_vector(a0i);
                let m = unit_vec(target.dim(), mi);
                if j == 0 {
                    return target.left_action_of(&a0).mul_vec(&m);
                }
                let bars: Vec<Vec<F::Elem>> = bar_idx.iter().map(|&b| self.quot.lift(b)).collect();
                let mut out = self.class_p(j - 1, &big.mul(&a0, &bars[0]), &bars[1..], &m);
                let mut sign = f.one();
                for i in 1..j {
                    sign = f.neg(&sign);
                    let mut merged = bars.clone();
                    let prod = big.mul(&bars[i - 1], &bars[i]);
                    merged.splice(i - 1..=i, [prod]);
                    let v = self.class_p(j - 1, &a0, &merged, &m);
                    for (o, x) in out.iter_mut().zip(v) {
                        *o = f.add(o, &f.mul(&sign, &x));
                    }
                }
                sign = f.neg(&sign);
                let am = target.left_action_of(&bars[j - 1]).mul_vec(&m);
                let v = self.class_p(j - 1, &a0, &bars[..j - 1], &am);
                for (o, x) in out.iter_mut().zip(v) {
                    *o = f.add(o, &f.mul(&sign, &x));
                }
                out
            })
            .collect();
        Matrix::from_columns(&f, rows, &cols)
    }
}

/// Stride and gain for the bar resolution from tensor powers of `Ā`.
fn bar_model<F: Field>(abar: &Bimodule<F>, dir: Direction) -> Result<BoundModel> {
    let mut power = abar.clone();
    for t in 1..=4usize {
        let Some((lo, hi)) = power.degree_range() else {
            return Ok(BoundModel { stride: t, gain: None });
        };
        let g = if dir == Direction::Up { lo } else { -hi };
        if g >= 1 {
            return Ok(BoundModel { stride: t, gain: Some(g) });
        }
        power = tensor(abar, &power)?.module;
    }
    if power.dim() == 0 {
        return Ok(BoundModel { stride: 5, gain: None });
    }
    Ok(BoundModel { stride: 1, gain: Some(0) })
}

/// Result of the greedy filtration search.
#[derive(Clone, Debug)]
pub struct FiltrationReport<F: Field> {
    pub found: bool,
    /// Inducing modules over the subalgebra, bottom layer first.
    pub layers: Vec<Bimodule<F>>,
    /// Degree at which the search failed.
    pub failed_at: Option<i32>,
}

/// Searches for a filtration with subquotients induced from the subalgebra.
/// With direction up the lowest-degree component is split off first (for
/// `A ⊗_B -`), with direction down the highest (for `A^# ⊗_{N^#} -`).
pub fn induced_filtration<F: Field>(pair: &RelPair<F>, m: &Bimodule<F>, dir: Direction) -> Result<FiltrationReport<F>> {
    let f = pair.field().clone();
    let mut cur = m.forget_right();
    let mut layers = Vec::new();
    while cur.dim() > 0 {
        let (lo, hi) = cur.degree_range().expect("nonzero");
        let d = if dir == Direction::Up { lo } else { hi };
        let idx = cur.space().indices_in_degree(d);
        let res = pair.restrict(&cur);
        let vecs: Vec<Vec<F::Elem>> = idx
            .iter()
            .map(|&i| {
                let mut v = vec![f.zero(); cur.dim()];
                v[i] = f.one();
                v
            })
            .collect();
        let sub = GradedSubspace::span(&f, res.space(), vecs);
        let (layer, incl) = res.submodule(&sub)?;
        let t = pair.induce(&layer)?;
        let cols: Vec<Vec<F::Elem>> = (0..t.dim())
            .map(|j| {
                let (a, q) = t.pure_index(j);
                cur.lact(a).mul_vec(&incl.column(q))
            })
            .collect();
        let map = Matrix::from_columns(&f, cur.dim(), &cols);
        if crate::graded::graded_rank(&map, t.module.space(), cur.space(), 0) != t.dim() {
            return Ok(FiltrationReport { found: false, layers, failed_at: Some(d) });
        }
        let image = GradedSubspace::span(&f, cur.space(), map.columns());
        let (q, _, _) = cur.quotient(&image);
        layers.push(layer);
        cur = q;
    }
    Ok(FiltrationReport { found: true, layers, failed_at: None })
}

/// Searches for a filtration of an `A^#`-module with subquotients coinduced
/// from the copy of `B` inside `A^#`. Runs the induced search on the dual
/// module over the opposite algebras.
pub fn coinduced_filtration<F: Field>(sh: &Sharp<F>, m: &Bimodule<F>) -> Result<FiltrationReport<F>> {
    let ent = crate::sharp::entwining_sharp(sh)?;
    let big: AlgebraRef<F> = Arc::new(sh.a_sharp.opposite());
    let pair = RelPair { big: big.clone(), sub: Arc::new(sh.setup.b.opposite()), incl: ent.b_in_a_sharp };
    let d = m.forget_right().dual().right_as_left_opposite(big);
    let mut rep = induced_filtration(&pair, &d, Direction::Up)?;
    rep.failed_at = rep.failed_at.map(|x| -x);
    Ok(rep)
}

/// Outcome of a search for a finite resolution.
#[derive(Clone, Debug)]
pub enum ProjDim<F: Field> {
    Finite(usize, Box<Resolution<F>>),
    /// A kernel repeated an earlier one up to a degree shift at this depth,
    /// so no finite resolution exists.
    Periodic(usize),
    Infinite(usize),
}

/// Whether two modules have identical actions and degrees up to one shift.
pub fn same_up_to_shift<F: Field>(a: &Bimodule<F>, b: &Bimodule<F>) -> bool {
    if a.dim() != b.dim() || a.lacts() != b.lacts() {
        return false;
    }
    let (da, db) = (a.space().degrees(), b.space().degrees());
    match (da.first(), db.first()) {
        (Some(x), Some(y)) => da.iter().zip(db).all(|(p, q)| p - x == q - y),
        _ => true,
    }
}

/// Finite relative projective dimension: runs the induction-step concave
/// resolution and stops at the first kernel that is `N`-projective.
pub fn detect_finite_relative_projdim<F: Field>(sh: &Sharp<F>, y: &Bimodule<F>, cap: usize) -> Result<ProjDim<F>> {
    if sh.is_n_projective(y)? {
        let r = finite_resolution(sh, y, 0, cap)?;
        return Ok(ProjDim::Finite(0, Box::new(r)));
    }
    let mut r = Resolution::induction(RelPair::concave(sh), y, Direction::Up, cap)?;
    let mut seen = vec![y.forget_right()];
    for d in 1..=cap {
        r.extend_to(d - 1)?;
        if r.is_finished() {
            return Ok(ProjDim::Finite(r.computed() - 1, Box::new(r)));
        }
        let k = r.current_kernel().expect("kernel").0.clone();
        if sh.is_n_projective(&k)? {
            return Ok(ProjDim::Finite(d, Box::new(r.closed_with_kernel())));
        }
        if seen.iter().any(|s| same_up_to_shift(s, &k)) {
            return Ok(ProjDim::Periodic(d));
        }
        seen.push(k);
    }
    Ok(ProjDim::Infinite(cap))
}

/// Projective dimension over a ring, by minimal projective resolution.
pub fn projective_dimension<F: Field>(ring: &RingData<F>, m: &Bimodule<F>, cap: usize) -> Result<ProjDim<F>> {
    let mut r = Resolution::projective(ring.clone(), m, cap)?;
    let mut seen = vec![m.forget_right()];
    for d in 1..=cap {
        r.extend_to(d - 1)?;
        if r.is_finished() {
            return Ok(ProjDim::Finite(r.computed().saturating_sub(1), Box::new(r)));
        }
        let k = r.current_kernel().expect("kernel").0.clone();
        if seen.iter().any(|s| same_up_to_shift(s, &k)) {
            return Ok(ProjDim::Periodic(d));
        }
        seen.push(k);
    }
    Ok(ProjDim::Infinite(cap))
}

fn finite_resolution<F: Field>(_sh: &Sharp<F>, y: &Bimodule<F>, _d: usize, cap: usize) -> Result<Resolution<F>> {
    let f = y.field();
    let g: AlgebraRef<F> = Arc::new(Algebra::ground(f));
    let mut r = Resolution::start(
        "finite".into(),
        y,
        Engine::Projective { ring: RingData::new(g, vec![vec![f.one()]])? },
        Some(Direction::Up),
        cap,
    );
    r.kernel = None;
    r.finished = true;
    if y.dim() > 0 {
        r.push(y.clone(), Matrix::identity(f, y.dim()));
    }
    Ok(r)
}

impl<F: Field> Resolution<F> {
    /// The resolution ending with the current kernel as its last term.
    pub fn closed_with_kernel(&self) -> Self {
        let mut r = self.clone();
        if let Some((k, incl)) = r.kernel.take() {
            if k.dim() > 0 {
                r.push(k, incl);
            }
        }
        r.finished = true;
        r.label = format!("{}+kernel", self.label);
        r
    }

    /// Stops the convex resolution at the first kernel admitting a filtration
    /// by induced modules; `None` if there is none up to the cap.
    pub fn close_at_induced_kernel(mut self) -> Result<Option<Self>> {
        let Engine::Induction { pair, .. } = self.engine.clone() else {
            return Ok(None);
        };
        let dir = self.direction.unwrap_or(Direction::Down);
        for d in 0..self.cap {
            self.extend_to(d)?;
            if self.finished {
                return Ok(Some(self));
            }
            let k = self.kernel.as_ref().expect("kernel").0.clone();
            if induced_filtration(&pair, &k, dir)?.found {
                return Ok(Some(self.closed_with_kernel()));
            }
        }
        Ok(None)
    }
}
