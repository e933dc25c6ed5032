//! JSON documents describing algebras with triangular data and modules over them.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::GradedSpace;
use crate::matrix::{EchelonBasis, Matrix};
use crate::module::Bimodule;
use crate::setup::TriangularSetup;

pub const ALGEBRA_SCHEMA: &str = "semiinf/algebra/v1";
pub const MODULE_SCHEMA: &str = "semiinf/module/v1";

/// A scalar written either as an integer or as a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn value<F: Field>(&self, f: &F) -> Result<F::Elem> {
        match self {
            Scalar::Int(v) => Ok(f.from_i64(*v)),
            Scalar::Text(s) => f.parse(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub degree: i32,
}

/// An element written as a single basis name or as a list of `[name, scalar]` terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Name(String),
    Terms(Vec<(String, Scalar)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub schema: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default = "default_field")]
    pub field: String,
    pub basis: Vec<BasisEntry>,
    pub unit: ElementSpec,
    /// `[left, right, result, scalar]`: the product `left * right` has
    /// coefficient `scalar` on `result`. Products with a basis unit are implied.
    pub products: Vec<(String, String, String, Scalar)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<String>>,
    /// Orthogonal idempotents splitting `K`, as elements of `A`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_idempotents: Option<Vec<ElementSpec>>,
}

fn default_field() -> String {
    "q".into()
}

fn check_schema(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Parse(format!("schema {found:?} is not {expected:?}")));
    }
    Ok(())
}

fn lookup(space: &GradedSpace, name: &str, what: &str) -> Result<usize> {
    space
        .index_of(name)
        .ok_or_else(|| Error::Parse(format!("unknown {what} basis element {name:?}")))
}

/// Coordinates of an element in a named basis.
pub fn element<F: Field>(f: &F, space: &GradedSpace, spec: &ElementSpec) -> Result<Vec<F::Elem>> {
    let mut v = vec![f.zero(); space.dim()];
    match spec {
        ElementSpec::Name(n) => v[lookup(space, n, "algebra")?] = f.one(),
        ElementSpec::Terms(ts) => {
            for (n, c) in ts {
                let i = lookup(space, n, "algebra")?;
                v[i] = f.add(&v[i], &c.value(f)?);
            }
        }
    }
    Ok(v)
}

impl AlgebraDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AlgebraDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        check_schema(&doc.schema, ALGEBRA_SCHEMA)?;
        Ok(doc)
    }

    pub fn space(&self) -> GradedSpace {
        GradedSpace::new(
            self.basis.iter().map(|b| b.degree).collect(),
            self.basis.iter().map(|b| b.name.clone()).collect(),
        )
    }

    pub fn algebra<F: Field>(&self, f: &F) -> Result<AlgebraRef<F>> {
        let space = self.space();
        if space.names().iter().enumerate().any(|(i, n)| space.index_of(n) != Some(i)) {
            return Err(Error::Parse("duplicate basis names".into()));
        }
        let unit = element(f, &space, &self.unit)?;
        let mut constants = Vec::new();
        for (l, r, res, c) in &self.products {
            let (l, r, res) = (lookup(&space, l, "algebra")?, lookup(&space, r, "algebra")?, lookup(&space, res, "algebra")?);
            constants.push((l, r, res, c.value(f)?));
        }
        if let ElementSpec::Name(u) = &self.unit {
            let u = lookup(&space, u, "algebra")?;
            for i in 0..space.dim() {
                constants.push((u, i, i, f.one()));
                if i != u {
                    constants.push((i, u, i, f.one()));
                }
            }
        }
        Ok(Arc::new(Algebra::from_structure_constants(f, space, &constants, unit)?))
    }

    /// A document for `alg` with every nonzero product of basis elements
    /// listed. Rationals are written as strings, prime-field elements as
    /// integers.
    pub fn from_algebra<F: Field>(name: &str, alg: &Algebra<F>) -> Self {
        let f = alg.field();
        let space = alg.basis();
        let scalar = |c: &F::Elem| match f.spec() {
            crate::field::FieldSpec::Prime(_) => Scalar::Int(f.render(c).parse().expect("integer")),
            crate::field::FieldSpec::Rationals => Scalar::Text(f.render(c)),
        };
        let mut products = Vec::new();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                for (k, c) in alg.product_of_basis(i, j).iter().enumerate() {
                    if !f.is_zero(c) {
                        products.push((space.name(i).to_string(), space.name(j).to_string(), space.name(k).to_string(), scalar(c)));
                    }
                }
            }
        }
        let unit = ElementSpec::Terms(
            alg.unit()
                .iter()
                .enumerate()
                .filter(|(_, c)| !f.is_zero(c))
                .map(|(i, c)| (space.name(i).to_string(), scalar(c)))
                .collect(),
        );
        AlgebraDocument {
            schema: ALGEBRA_SCHEMA.into(),
            name: name.into(),
            description: None,
            field: f.spec().render(),
            basis: (0..alg.dim()).map(|i| BasisEntry { name: space.name(i).into(), degree: space.degree(i) }).collect(),
            unit,
            products,
            k: None,
            b: None,
            n: None,
            k_idempotents: None,
        }
    }

    /// The algebra together with its triangular data. Missing `k`, `b`, `n`
    /// are read off from the degrees, which is only right when `A^0 = K`.
    pub fn setup<F: Field>(&self, f: &F) -> Result<TriangularSetup<F>> {
        let a = self.algebra(f)?;
        let space = a.basis().clone();
        let idx = |names: &Option<Vec<String>>, keep: fn(i32) -> bool| -> Result<Vec<usize>> {
            match names {
                Some(ns) => {
                    let mut v = ns.iter().map(|n| lookup(&space, n, "algebra")).collect::<Result<Vec<_>>>()?;
                    v.sort_unstable();
                    v.dedup();
                    Ok(v)
                }
                None => Ok((0..space.dim()).filter(|&i| keep(space.degree(i))).collect()),
            }
        };
        let k = idx(&self.k, |d| d == 0)?;
        let b = idx(&self.b, |d| d <= 0)?;
        let n = idx(&self.n, |d| d >= 0)?;
        let certificate = match &self.k_idempotents {
            None => None,
            Some(es) => {
                let mut out = Vec::new();
                for e in es {
                    let v = element(f, &space, e)?;
                    if v.iter().enumerate().any(|(i, x)| !f.is_zero(x) && !k.contains(&i)) {
                        return Err(Error::Parse("idempotent of K leaves K".into()));
                    }
                    out.push(k.iter().map(|&i| v[i].clone()).collect());
                }
                Some(out)
            }
        };
        TriangularSetup::new(a, k, b, n, certificate)
    }
}

/// Which algebra a module document is over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Over {
    #[serde(rename = "A")]
    A,
    #[serde(rename = "A#")]
    ASharp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideSpec {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDocument {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub over: Over,
    #[serde(default = "default_side")]
    pub side: SideSpec,
    pub basis: Vec<BasisEntry>,
    /// `[algebra element, from, to, scalar]`: the action of the algebra basis
    /// element on `from` has coefficient `scalar` on `to`. Unlisted generators
    /// of the algebra act by zero; the unit acts as identity.
    pub action: Vec<(String, String, String, Scalar)>,
}

fn default_side() -> SideSpec {
    SideSpec::Left
}

impl ModuleDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModuleDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        check_schema(&doc.schema, MODULE_SCHEMA)?;
        Ok(doc)
    }

    /// Builds the module over `alg` (left modules have the ground field on
    /// the right and vice versa).
    pub fn module<F: Field>(&self, alg: &AlgebraRef<F>) -> Result<Bimodule<F>> {
        let f = alg.field();
        let space = GradedSpace::new(
            self.basis.iter().map(|b| b.degree).collect(),
            self.basis.iter().map(|b| b.name.clone()).collect(),
        );
        let d = space.dim();
        let mut given: Vec<Option<Matrix<F>>> = vec![None; alg.dim()];
        for (a, from, to, c) in &self.action {
            let ai = lookup(alg.basis(), a, "algebra")?;
            let (fi, ti) = (lookup(&space, from, "module")?, lookup(&space, to, "module")?);
            let m = given[ai].get_or_insert_with(|| Matrix::zeros(f, d, d));
            let cur = m.get(ti, fi).clone();
            m.set(ti, fi, f.add(&cur, &c.value(f)?));
        }
        // generators of the algebra that are not listed act by zero
        for &g in alg.generators() {
            given[g].get_or_insert_with(|| Matrix::zeros(f, d, d));
        }
        let gens: Vec<(Vec<F::Elem>, Matrix<F>)> = given
            .into_iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|m| (alg.basis_vector(i), m)))
            .collect();
        let acts = extend_action(alg, d, &gens, self.side)?;
        match self.side {
            SideSpec::Left => Bimodule::left_module(alg.clone(), space, acts),
            SideSpec::Right => Bimodule::right_module(alg.clone(), space, acts),
        }
    }
}

/// Extends an action given on some algebra elements to the whole basis by
/// closing under products. Errors when the elements do not generate.
pub fn extend_action<F: Field>(
    alg: &Algebra<F>,
    d: usize,
    gens: &[(Vec<F::Elem>, Matrix<F>)],
    side: SideSpec,
) -> Result<Vec<Matrix<F>>> {
    let f = alg.field();
    let n = alg.dim();
    let mut span = EchelonBasis::new(f, n);
    let mut found: Vec<(Vec<F::Elem>, Matrix<F>)> = Vec::new();
    let mut frontier = vec![(alg.unit().to_vec(), Matrix::identity(f, d))];
    while let Some((x, m)) = frontier.pop() {
        if span.contains(&x) {
            continue;
        }
        span.insert(x.clone());
        for (g, gm) in gens {
            // left modules: (g x) acts as gm . m; right modules: (x g) acts as gm . m
            let (y, ym) = match side {
                SideSpec::Left => (alg.mul(g, &x), gm.mul(&m)),
                SideSpec::Right => (alg.mul(&x, g), gm.mul(&m)),
            };
            frontier.push((y, ym));
        }
        found.push((x, m));
    }
    if span.rank() != n {
        return Err(Error::InvalidModule("listed actions do not generate the algebra".into()));
    }
    let xs = Matrix::from_columns(f, n, &found.iter().map(|(x, _)| x.clone()).collect::<Vec<_>>());
    let inv = xs.inverse().expect("independent words");
    Ok((0..n)
        .map(|i| {
            let mut out = Matrix::zeros(f, d, d);
            for (j, (_, m)) in found.iter().enumerate() {
                let c = inv.get(j, i);
                if !f.is_zero(c) {
                    out.add_scaled(c, m);
                }
            }
            out
        })
        .collect())
}

/// The built-in fixtures, by name.
pub const FIXTURES: &[(&str, &str)] = &[
    ("F0", include_str!("../../../fixtures/f0_point.json")),
    ("F1", include_str!("../../../fixtures/f1_dual_numbers.json")),
    ("F2", include_str!("../../../fixtures/f2_quantum_plane.json")),
    ("F3", include_str!("../../../fixtures/f3_truncated_cubic.json")),
    ("F4", include_str!("../../../fixtures/f4_path_a2.json")),
];

/// Deliberately broken inputs, each violating one condition.
pub const CORRUPTED: &[(&str, &str)] = &[
    ("degree0-nilpotent", include_str!("../../../fixtures/corrupted/degree0_nilpotent.json")),
    ("positive-in-b", include_str!("../../../fixtures/corrupted/positive_in_b.json")),
    ("multiplication-not-bijective", include_str!("../../../fixtures/corrupted/multiplication_not_bijective.json")),
    ("not-injective", include_str!("../../../fixtures/corrupted/not_injective.json")),
];

pub fn fixture(name: &str) -> Result<AlgebraDocument> {
    FIXTURES
        .iter()
        .chain(CORRUPTED)
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::Parse(format!("no fixture named {name:?}")))
        .and_then(|(_, t)| AlgebraDocument::from_json(t))
}
