use serde::Serialize;

use super::{CatalogEntry, Params};
use crate::algebra::{Element, StructureConstants, Subspace};
use crate::error::Result;
use crate::linalg::RatMatrix;

/// Numerical data separating algebras. Every field except
/// `basis_square_dim` is an isomorphism invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantSignature {
    pub dim: usize,
    /// Dimensions of `[L,L]`, `[[L,L],[L,L]]`, ...
    pub derived_dims: Vec<usize>,
    /// Dimensions of `[L,L]`, `[L,[L,L]]`, ...
    pub lcs_dims: Vec<usize>,
    pub left_annihilator_dim: usize,
    pub derived_algebra_dim: usize,
    pub is_lie: bool,
    /// `dim span{[e_i, e_i]}` over the given basis.
    pub basis_square_dim: usize,
    /// `dim span{[x, x] : x in L}`.
    pub square_span_dim: usize,
    pub right_annihilator_dim: usize,
    pub center_dim: usize,
    /// `dim {x : [x,y] + [y,x] = 0 for all y}`.
    pub symmetric_radical_dim: usize,
}

fn span_dim(l: &StructureConstants, vectors: Vec<Element>) -> usize {
    Subspace::span(l.dim(), vectors.into_iter().map(|e| e.coords))
        .expect("vectors live in the algebra")
        .dim()
}

pub fn invariant_signature(l: &StructureConstants) -> InvariantSignature {
    let d = l.dim();
    let e = |i| Element::basis(d, i);
    let sq = |i: usize, j: usize| l.bracket(&e(i), &e(j)).expect("same dimension");
    let diag: Vec<Element> = (0..d).map(|i| sq(i, i)).collect();
    // [x,x] spans the squares plus all symmetrized products.
    let mut all = diag.clone();
    for i in 0..d {
        for j in i + 1..d {
            let (x, y) = (sq(i, j), sq(j, i));
            all.push(Element {
                coords: x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect(),
            });
        }
    }
    let mut rows = Vec::with_capacity(d * d);
    for j in 0..d {
        let cols: Vec<Element> = (0..d)
            .map(|i| Element {
                coords: sq(i, j).coords.iter().zip(&sq(j, i).coords).map(|(a, b)| a + b).collect(),
            })
            .collect();
        for k in 0..d {
            rows.push(cols.iter().map(|c| c.coords[k].clone()).collect());
        }
    }
    let symmetric_radical_dim = RatMatrix::from_rows(rows).expect("rectangular").null_space().len();
    let derived = l.derived_algebra();
    InvariantSignature {
        dim: d,
        derived_dims: l.derived_series().iter().map(Subspace::dim).collect(),
        lcs_dims: l.lower_central_series().iter().map(Subspace::dim).collect(),
        left_annihilator_dim: l.left_annihilator().dim(),
        derived_algebra_dim: derived.dim(),
        is_lie: l.is_lie(),
        basis_square_dim: span_dim(l, diag),
        square_span_dim: span_dim(l, all),
        right_annihilator_dim: l.right_annihilator().dim(),
        center_dim: l.center().dim(),
        symmetric_radical_dim,
    }
}

/// How often two entries' signatures differ across their samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Separation {
    /// Different at every compared pair of samples.
    Always,
    /// Different at some pairs only.
    Sometimes,
    /// Never different; nothing is claimed about isomorphism.
    Never,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistinctnessReport {
    pub ids: Vec<String>,
    /// `matrix[i][j]` compares entry `i` with entry `j`.
    pub matrix: Vec<Vec<Separation>>,
}

impl DistinctnessReport {
    pub fn get(&self, a: &str, b: &str) -> Option<Separation> {
        let i = self.ids.iter().position(|x| x == a)?;
        let j = self.ids.iter().position(|x| x == b)?;
        Some(self.matrix[i][j])
    }

    /// Pairs of distinct entries not separated at every sample pair.
    pub fn undetermined(&self) -> Vec<(String, String, Separation)> {
        let mut out = Vec::new();
        for i in 0..self.ids.len() {
            for j in i + 1..self.ids.len() {
                if self.matrix[i][j] != Separation::Always {
                    out.push((self.ids[i].clone(), self.ids[j].clone(), self.matrix[i][j]));
                }
            }
        }
        out
    }
}

/// Compares every sample of one entry with every sample of another; an
/// entry is compared with itself sample by sample.
pub fn distinctness_report(entries: &[(&CatalogEntry, Vec<Params>)]) -> Result<DistinctnessReport> {
    let sigs = entries
        .iter()
        .map(|(e, samples)| {
            samples
                .iter()
                .map(|p| Ok(invariant_signature(&e.instantiate(p)?.algebra())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let classify = |differs: Vec<bool>| {
        if differs.iter().all(|&d| d) && !differs.is_empty() {
            Separation::Always
        } else if differs.iter().any(|&d| d) {
            Separation::Sometimes
        } else {
            Separation::Never
        }
    };
    let matrix = (0..sigs.len())
        .map(|i| {
            (0..sigs.len())
                .map(|j| {
                    if i == j {
                        return Separation::Never;
                    }
                    let differs = sigs[i]
                        .iter()
                        .flat_map(|x| sigs[j].iter().map(move |y| x != y))
                        .collect();
                    classify(differs)
                })
                .collect()
        })
        .collect();
    Ok(DistinctnessReport {
        ids: entries.iter().map(|(e, _)| e.id.clone()).collect(),
        matrix,
    })
}
