//! The classified algebras with nilradical `T(4)` and the two-dimensional
//! family `L(c)`, as parametric templates.
//!
//! The data lives in `data/catalog.json`; entries are compiled once into
//! polynomial templates and instantiated at rational parameter values.

mod expr;
mod invariants;
mod verify;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::StructureConstants;
use crate::error::{Error, Result};
use crate::extension::ExtensionSpec;
use crate::linalg::{rational, MultiPoly, RatMatrix, Rational};
use crate::triangular::TriBasis;

pub use expr::parse_expr;
pub use invariants::{distinctness_report, invariant_signature, DistinctnessReport, InvariantSignature, Separation};
pub use verify::{
    check_boundary, default_samples, parse_samples, symbolic_shape_check, verify_catalog, verify_entry,
    BoundaryReport, CatalogReport, EntryReport, SampleReport,
};

pub const CATALOG_JSON: &str = include_str!("../../data/catalog.json");

pub type Params = BTreeMap<String, Rational>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    version: u32,
    extensions: Vec<ExtensionFile>,
    raw: Vec<RawFile>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConditionFile {
    kind: ConditionKind,
    exprs: Vec<String>,
    text: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundaryFile {
    params: BTreeMap<String, String>,
    expect: Expectation,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtensionFile {
    id: String,
    n: usize,
    f: usize,
    parameters: Vec<String>,
    conditions: Vec<ConditionFile>,
    #[serde(rename = "A")]
    a: Vec<BTreeMap<String, String>>,
    #[serde(rename = "B")]
    b: Vec<BTreeMap<String, String>>,
    sigma: BTreeMap<String, BTreeMap<String, String>>,
    boundaries: Vec<BoundaryFile>,
    samples: Vec<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    id: String,
    dim: usize,
    basis: Vec<String>,
    parameters: Vec<String>,
    conditions: Vec<ConditionFile>,
    brackets: Vec<[String; 4]>,
    boundaries: Vec<BoundaryFile>,
    samples: Vec<BTreeMap<String, String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionKind {
    /// The single expression is nonzero.
    Nonzero,
    /// At least one expression is nonzero.
    NotAllZero,
}

/// A parameter constraint such as `a != -1`.
#[derive(Clone, Debug)]
pub struct Condition {
    pub kind: ConditionKind,
    pub exprs: Vec<MultiPoly>,
    pub text: String,
}

impl Condition {
    pub fn holds(&self, params: &Params) -> Result<bool> {
        let values = self
            .exprs
            .iter()
            .map(|e| eval_expr(e, params))
            .collect::<Result<Vec<_>>>()?;
        Ok(values.iter().any(|v| !v.is_zero()))
    }
}

/// What a boundary instance is expected to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// The instance is a Lie algebra.
    Lie,
    /// Nothing is claimed; the outcome is only reported.
    Report,
}

#[derive(Clone, Debug)]
pub struct Boundary {
    pub params: Params,
    pub expect: Expectation,
}

/// `(row, col, expr)` over 0-based positions.
type Template = Vec<(usize, usize, MultiPoly)>;

#[derive(Clone, Debug)]
pub enum EntryKind {
    Extension {
        n: usize,
        f: usize,
        a: Vec<Template>,
        b: Vec<Template>,
        /// `(alpha, beta, p, expr)`.
        sigma: Vec<(usize, usize, usize, MultiPoly)>,
    },
    Raw {
        basis: Vec<String>,
        /// `(i, j, k, c)` meaning `[e_i, e_j]` has `c` on `e_k`.
        brackets: Vec<(usize, usize, usize, MultiPoly)>,
    },
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub parameters: Vec<String>,
    pub conditions: Vec<Condition>,
    pub boundaries: Vec<Boundary>,
    /// Extra samples shipped with the entry, tried before the defaults.
    pub samples: Vec<Params>,
    pub kind: EntryKind,
}

/// An instantiated entry.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Extension(ExtensionSpec),
    Raw(StructureConstants),
}

impl Instance {
    pub fn algebra(&self) -> StructureConstants {
        match self {
            Instance::Extension(s) => s.build(),
            Instance::Raw(l) => l.clone(),
        }
    }

    pub fn spec(&self) -> Option<&ExtensionSpec> {
        match self {
            Instance::Extension(s) => Some(s),
            Instance::Raw(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub version: u32,
    pub entries: Vec<CatalogEntry>,
}

fn eval_expr(p: &MultiPoly, params: &Params) -> Result<Rational> {
    p.eval(|s| params.get(s).cloned())
        .ok_or_else(|| Error::Parse(format!("expression {p} uses a parameter with no value")))
}

fn parse_params(raw: &BTreeMap<String, String>) -> Result<Params> {
    raw.iter()
        .map(|(k, v)| Ok((k.clone(), rational::parse(v)?)))
        .collect()
}

fn compile_conditions(raw: &[ConditionFile], params: &[String]) -> Result<Vec<Condition>> {
    raw.iter()
        .map(|c| {
            let exprs = c
                .exprs
                .iter()
                .map(|e| checked_expr(e, params))
                .collect::<Result<Vec<_>>>()?;
            if c.kind == ConditionKind::Nonzero && exprs.len() != 1 {
                return Err(Error::Parse(format!("condition {:?} needs exactly one expression", c.text)));
            }
            Ok(Condition {
                kind: c.kind,
                exprs,
                text: c.text.clone(),
            })
        })
        .collect()
}

fn checked_expr(src: &str, params: &[String]) -> Result<MultiPoly> {
    let p = parse_expr(src)?;
    if let Some(v) = p.variables().into_iter().find(|v| !params.iter().any(|q| **q == **v)) {
        return Err(Error::Parse(format!("expression {src:?} uses undeclared parameter {v}")));
    }
    Ok(p)
}

fn compile_template(basis: &TriBasis, raw: &BTreeMap<String, String>, params: &[String]) -> Result<Template> {
    raw.iter()
        .map(|(key, e)| {
            let (row, col) = key
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("template key {key:?} is not \"row,col\"")))?;
            let row = basis.pos_of(basis.parse_label(row.trim())?);
            let col = basis.pos_of(basis.parse_label(col.trim())?);
            Ok((row, col, checked_expr(e, params)?))
        })
        .collect()
}

fn parse_pair(key: &str, f: usize) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("sigma key {key:?} is not \"alpha,beta\" within 1..={f}"));
    let (x, y) = key.split_once(',').ok_or_else(bad)?;
    let x: usize = x.trim().parse().map_err(|_| bad())?;
    let y: usize = y.trim().parse().map_err(|_| bad())?;
    if !(1..=f).contains(&x) || !(1..=f).contains(&y) {
        return Err(bad());
    }
    Ok((x - 1, y - 1))
}

fn compile_extension(e: &ExtensionFile) -> Result<CatalogEntry> {
    let basis = TriBasis::new(e.n)?;
    if e.a.len() != e.f || e.b.len() != e.f {
        return Err(Error::Shape(format!("{}: f = {} but the A/B lists differ", e.id, e.f)));
    }
    let a = e.a.iter().map(|m| compile_template(&basis, m, &e.parameters)).collect::<Result<_>>()?;
    let b = e.b.iter().map(|m| compile_template(&basis, m, &e.parameters)).collect::<Result<_>>()?;
    let mut sigma = Vec::new();
    for (key, entries) in &e.sigma {
        let (alpha, beta) = parse_pair(key, e.f)?;
        for (label, ex) in entries {
            let p = basis.pos_of(basis.parse_label(label)?);
            sigma.push((alpha, beta, p, checked_expr(ex, &e.parameters)?));
        }
    }
    Ok(CatalogEntry {
        id: e.id.clone(),
        parameters: e.parameters.clone(),
        conditions: compile_conditions(&e.conditions, &e.parameters)?,
        boundaries: compile_boundaries(&e.boundaries)?,
        samples: e.samples.iter().map(parse_params).collect::<Result<_>>()?,
        kind: EntryKind::Extension {
            n: e.n,
            f: e.f,
            a,
            b,
            sigma,
        },
    })
}

fn compile_boundaries(raw: &[BoundaryFile]) -> Result<Vec<Boundary>> {
    raw.iter()
        .map(|b| {
            Ok(Boundary {
                params: parse_params(&b.params)?,
                expect: b.expect,
            })
        })
        .collect()
}

fn compile_raw(e: &RawFile) -> Result<CatalogEntry> {
    if e.basis.len() != e.dim {
        return Err(Error::Shape(format!("{}: dim {} but {} basis names", e.id, e.dim, e.basis.len())));
    }
    let pos = |name: &str| {
        e.basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::Parse(format!("{}: unknown basis element {name:?}", e.id)))
    };
    let brackets = e
        .brackets
        .iter()
        .map(|[x, y, z, c]| Ok((pos(x)?, pos(y)?, pos(z)?, checked_expr(c, &e.parameters)?)))
        .collect::<Result<_>>()?;
    Ok(CatalogEntry {
        id: e.id.clone(),
        parameters: e.parameters.clone(),
        conditions: compile_conditions(&e.conditions, &e.parameters)?,
        boundaries: compile_boundaries(&e.boundaries)?,
        samples: e.samples.iter().map(parse_params).collect::<Result<_>>()?,
        kind: EntryKind::Raw {
            basis: e.basis.clone(),
            brackets,
        },
    })
}

impl Catalog {
    /// The catalog shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_json(CATALOG_JSON).expect("shipped catalog parses")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CatalogFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut entries = file.extensions.iter().map(compile_extension).collect::<Result<Vec<_>>>()?;
        entries.extend(file.raw.iter().map(compile_raw).collect::<Result<Vec<_>>>()?);
        Ok(Self {
            version: file.version,
            entries,
        })
    }

    pub fn get(&self, id: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEntry(id.to_string()))
    }

    pub fn ids(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.id.as_str()).collect()
    }
}

impl CatalogEntry {
    pub fn is_extension(&self) -> bool {
        matches!(self.kind, EntryKind::Extension { .. })
    }

    /// `(n, f)` for extension entries.
    pub fn shape(&self) -> Option<(usize, usize)> {
        match self.kind {
            EntryKind::Extension { n, f, .. } => Some((n, f)),
            EntryKind::Raw { .. } => None,
        }
    }

    fn check_names(&self, params: &Params) -> Result<()> {
        if let Some(p) = self.parameters.iter().find(|p| !params.contains_key(*p)) {
            return Err(Error::Parse(format!("{}: missing value for parameter {p}", self.id)));
        }
        if let Some(p) = params.keys().find(|k| !self.parameters.contains(k)) {
            return Err(Error::Parse(format!("{}: unknown parameter {p}", self.id)));
        }
        Ok(())
    }

    /// The first violated condition, if any.
    pub fn violated(&self, params: &Params) -> Result<Option<&Condition>> {
        self.check_names(params)?;
        for c in &self.conditions {
            if !c.holds(params)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    pub fn admissible(&self, params: &Params) -> Result<bool> {
        Ok(self.violated(params)?.is_none())
    }

    /// Instantiates the entry, rejecting parameters that violate a condition.
    pub fn instantiate(&self, params: &Params) -> Result<Instance> {
        if let Some(c) = self.violated(params)? {
            return Err(Error::ConditionViolated {
                entry: self.id.clone(),
                condition: c.text.clone(),
            });
        }
        self.instantiate_unchecked(params)
    }

    /// Instantiates without looking at the conditions, for boundary studies.
    pub fn instantiate_unchecked(&self, params: &Params) -> Result<Instance> {
        self.check_names(params)?;
        match &self.kind {
            EntryKind::Extension { n, f, a, b, sigma } => {
                let r = n * (n - 1) / 2;
                let fill = |tpl: &Template| -> Result<RatMatrix> {
                    let mut m = RatMatrix::zeros(r, r);
                    for (row, col, e) in tpl {
                        m[(*row, *col)] = eval_expr(e, params)?;
                    }
                    Ok(m)
                };
                let a = a.iter().map(fill).collect::<Result<Vec<_>>>()?;
                let b = b.iter().map(fill).collect::<Result<Vec<_>>>()?;
                let mut s = vec![vec![vec![Rational::zero(); r]; *f]; *f];
                for (alpha, beta, p, e) in sigma {
                    s[*alpha][*beta][*p] = eval_expr(e, params)?;
                }
                Ok(Instance::Extension(ExtensionSpec::new(*n, a, b, s)?))
            }
            EntryKind::Raw { basis, brackets } => {
                let mut l = StructureConstants::abelian(basis.clone());
                for (i, j, k, e) in brackets {
                    l.set(*i, *j, *k, eval_expr(e, params)?);
                }
                Ok(Instance::Raw(l))
            }
        }
    }
}
