//! File formats for specs and transformation parameters.
//!
//! Rationals are strings (`"p/q"` or `"p"`); plain JSON integers are also
//! accepted on input. Matrices are written flat in row-major order and read
//! either flat or as a list of rows.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{ExtensionSpec, ShiftParams};
use crate::error::{Error, Result};
use crate::linalg::{rational, RatMatrix, Rational};
use crate::triangular::TriBasis;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatJson {
    Str(String),
    Int(i64),
}

impl RatJson {
    pub fn value(&self) -> Result<Rational> {
        match self {
            RatJson::Str(s) => rational::parse(s),
            RatJson::Int(i) => Ok(rational::int(*i)),
        }
    }

    pub fn of(r: &Rational) -> Self {
        RatJson::Str(rational::to_string(r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Rows(Vec<Vec<RatJson>>),
    Flat(Vec<RatJson>),
}

impl MatrixJson {
    pub fn of(m: &RatMatrix) -> Self {
        MatrixJson::Flat(m.as_slice().iter().map(RatJson::of).collect())
    }

    pub fn rows_of(m: &RatMatrix) -> Self {
        MatrixJson::Rows(
            (0..m.rows())
                .map(|i| m.row(i).iter().map(RatJson::of).collect())
                .collect(),
        )
    }

    /// Reads a `rows x cols` matrix; a flat list must have `rows * cols`
    /// entries.
    pub fn to_matrix(&self, rows: usize, cols: usize) -> Result<RatMatrix> {
        let m = self.to_matrix_any()?;
        if m.rows() == rows && m.cols() == cols {
            return Ok(m);
        }
        if m.rows() == 1 && m.cols() == rows * cols {
            return RatMatrix::from_flat(rows, cols, m.as_slice().to_vec());
        }
        Err(Error::Shape(format!(
            "expected a {rows}x{cols} matrix, got {}x{}",
            m.rows(),
            m.cols()
        )))
    }

    /// Rows as given; a flat list is read as a square matrix.
    pub fn to_matrix_any(&self) -> Result<RatMatrix> {
        match self {
            MatrixJson::Rows(rows) => {
                let parsed = rows
                    .iter()
                    .map(|row| row.iter().map(RatJson::value).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                RatMatrix::from_rows(parsed)
            }
            MatrixJson::Flat(xs) => {
                let vals = xs.iter().map(RatJson::value).collect::<Result<Vec<_>>>()?;
                RatMatrix::from_flat(1, vals.len(), vals)
            }
        }
    }

    /// A flat list of `d*d` entries is reshaped to `d x d`.
    pub fn to_square(&self) -> Result<RatMatrix> {
        let m = self.to_matrix_any()?;
        if m.rows() == 1 {
            let len = m.cols();
            let d = (len as f64).sqrt().round() as usize;
            if d * d != len {
                return Err(Error::NotSquare { rows: 1, cols: len });
            }
            return RatMatrix::from_flat(d, d, m.as_slice().to_vec());
        }
        Ok(m)
    }
}

/// `{ "n": 4, "f": 1, "A": [...], "B": [...], "sigma": { "1,1": { "14": "1" } } }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpecJson {
    pub n: usize,
    pub f: usize,
    #[serde(rename = "A")]
    pub a: Vec<MatrixJson>,
    #[serde(rename = "B")]
    pub b: Vec<MatrixJson>,
    #[serde(default)]
    pub sigma: BTreeMap<String, BTreeMap<String, RatJson>>,
}

impl ExtensionSpecJson {
    pub fn from_spec(spec: &ExtensionSpec) -> Self {
        let basis = spec.basis();
        let mut sigma = BTreeMap::new();
        for alpha in 0..spec.f() {
            for beta in 0..spec.f() {
                let entries: BTreeMap<String, RatJson> = spec
                    .sigma(alpha, beta)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(p, v)| (basis.short_label(basis.order()[p]), RatJson::of(v)))
                    .collect();
                if !entries.is_empty() {
                    sigma.insert(format!("{},{}", alpha + 1, beta + 1), entries);
                }
            }
        }
        Self {
            n: spec.n(),
            f: spec.f(),
            a: spec.a_all().iter().map(MatrixJson::of).collect(),
            b: spec.b_all().iter().map(MatrixJson::of).collect(),
            sigma,
        }
    }

    pub fn to_spec(&self) -> Result<ExtensionSpec> {
        let basis = TriBasis::new(self.n)?;
        let r = basis.len();
        if self.a.len() != self.f || self.b.len() != self.f {
            return Err(Error::Shape(format!(
                "f = {} but {} A and {} B matrices given",
                self.f,
                self.a.len(),
                self.b.len()
            )));
        }
        let a = self.a.iter().map(|m| m.to_matrix(r, r)).collect::<Result<Vec<_>>>()?;
        let b = self.b.iter().map(|m| m.to_matrix(r, r)).collect::<Result<Vec<_>>>()?;
        let mut sigma = vec![vec![vec![Rational::zero(); r]; self.f]; self.f];
        for (key, entries) in &self.sigma {
            let (alpha, beta) = parse_pair(key, self.f)?;
            for (label, v) in entries {
                let p = basis.pos_of(basis.parse_label(label)?);
                sigma[alpha][beta][p] = v.value()?;
            }
        }
        ExtensionSpec::new(self.n, a, b, sigma)
    }
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

/// `{ "mu": [ { "12": "1", "14": "-1/2" }, ... ] }`, one map per `X^a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftParamsJson {
    pub mu: Vec<BTreeMap<String, RatJson>>,
}

impl ShiftParamsJson {
    pub fn to_params(&self, basis: &TriBasis, f: usize) -> Result<ShiftParams> {
        if self.mu.len() != f {
            return Err(Error::Shape(format!(
                "shift has {} entries, spec has f = {f}",
                self.mu.len()
            )));
        }
        let mut out = ShiftParams::zero(f, basis.len());
        for (alpha, entries) in self.mu.iter().enumerate() {
            for (label, v) in entries {
                out.set(basis, alpha, basis.parse_label(label)?, v.value()?);
            }
        }
        Ok(out)
    }

    pub fn from_params(basis: &TriBasis, p: &ShiftParams) -> Self {
        Self {
            mu: p
                .mu
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(q, v)| (basis.short_label(basis.order()[q]), RatJson::of(v)))
                        .collect()
                })
                .collect(),
        }
    }
}

/// `{ "G": [[...]] }` for basis changes or `{ "M": [[...]] }` for
/// recombinations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFileJson {
    #[serde(rename = "G", alias = "M")]
    pub matrix: MatrixJson,
}
