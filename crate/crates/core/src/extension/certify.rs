use num_traits::Zero;
use serde::Serialize;

use super::ExtensionSpec;
use crate::error::{Error, Result};
use crate::linalg::{rational, RatMatrix, Rational};
use crate::triangular::{TriBasis, TriIndex};

/// Off-diagonal positions of `A^a` that survive the canonical reduction:
/// `(12, 2n)`, `(j(j+1), 1n)` for `2 <= j <= n-2`, `((n-1)n, 1(n-1))`.
///
/// For `n < 4` the list is filtered to strictly upper positions.
pub fn a_support(basis: &TriBasis) -> Vec<(TriIndex, TriIndex)> {
    let n = basis.n();
    let mut out = Vec::new();
    if n >= 3 {
        out.push((TriIndex::new(1, 2), TriIndex::new(2, n)));
    }
    for j in 2..=n.saturating_sub(2) {
        out.push((TriIndex::new(j, j + 1), TriIndex::new(1, n)));
    }
    if n >= 3 {
        out.push((TriIndex::new(n - 1, n), TriIndex::new(1, n - 1)));
    }
    filter_upper(basis, out)
}

/// Like [`a_support`], with `(j(j+1), 1n)` for the full range `1 <= j <= n-1`.
pub fn b_support(basis: &TriBasis) -> Vec<(TriIndex, TriIndex)> {
    let n = basis.n();
    let mut out = Vec::new();
    if n >= 3 {
        out.push((TriIndex::new(1, 2), TriIndex::new(2, n)));
    }
    for j in 1..n {
        out.push((TriIndex::new(j, j + 1), TriIndex::new(1, n)));
    }
    if n >= 3 {
        out.push((TriIndex::new(n - 1, n), TriIndex::new(1, n - 1)));
    }
    filter_upper(basis, out)
}

fn filter_upper(
    basis: &TriBasis,
    list: Vec<(TriIndex, TriIndex)>,
) -> Vec<(TriIndex, TriIndex)> {
    let mut out: Vec<_> = list
        .into_iter()
        .filter(|(r, c)| basis.pos_of(*r) < basis.pos_of(*c))
        .collect();
    out.sort_by_key(|(r, c)| (basis.pos_of(*r), basis.pos_of(*c)));
    out.dedup();
    out
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct ShapeReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Checks the canonical matrix shape: both matrices upper-triangular,
/// off-diagonal support inside [`a_support`] / [`b_support`], diagonal
/// entries equal to sums of the generators `M_{j(j+1), j(j+1)}`, and
/// `A_{1n,1n} = -B_{1n,1n}`.
pub fn shape_check(spec: &ExtensionSpec) -> ShapeReport {
    let basis = spec.basis();
    let r = spec.r();
    let allowed_a = a_support(basis);
    let allowed_b = b_support(basis);
    let mut violations = Vec::new();
    let label = |p: usize| basis.short_label(basis.order()[p]);
    for alpha in 0..spec.f() {
        for (name, m, allowed) in [("A", spec.a(alpha), &allowed_a), ("B", spec.b(alpha), &allowed_b)] {
            for row in 0..r {
                for col in 0..r {
                    let v = &m[(row, col)];
                    if row == col || v.is_zero() {
                        continue;
                    }
                    let pair = (basis.order()[row], basis.order()[col]);
                    if row > col {
                        violations.push(format!(
                            "{name}{}_{{{},{}}} = {} below the diagonal",
                            alpha + 1,
                            label(row),
                            label(col),
                            rational::to_string(v)
                        ));
                    } else if !allowed.contains(&pair) {
                        violations.push(format!(
                            "{name}{}_{{{},{}}} = {} outside the allowed support",
                            alpha + 1,
                            label(row),
                            label(col),
                            rational::to_string(v)
                        ));
                    }
                }
            }
            for (p, t) in basis.order().iter().enumerate() {
                if t.level() == 1 {
                    continue;
                }
                let sum: Rational = (t.i..t.k)
                    .map(|j| m[(basis.pos(j, j + 1).unwrap(), basis.pos(j, j + 1).unwrap())].clone())
                    .sum();
                if m[(p, p)] != sum {
                    violations.push(format!(
                        "{name}{}_{{{},{}}} = {} but the generator sum is {}",
                        alpha + 1,
                        label(p),
                        label(p),
                        rational::to_string(&m[(p, p)]),
                        rational::to_string(&sum)
                    ));
                }
            }
        }
        let top = basis.top();
        let (a, b) = (&spec.a(alpha)[(top, top)], &spec.b(alpha)[(top, top)]);
        if a + b != Rational::zero() {
            violations.push(format!(
                "A{0}_{{1n,1n}} = {1} but B{0}_{{1n,1n}} = {2}",
                alpha + 1,
                rational::to_string(a),
                rational::to_string(b)
            ));
        }
    }
    ShapeReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// Whether no nonzero linear combination of the matrices is nilpotent.
///
/// Only upper-triangular input is supported; there a combination is
/// nilpotent iff its diagonal vanishes, so the test reduces to linear
/// independence of the diagonals.
pub fn nilindependent(mats: &[RatMatrix]) -> Result<bool> {
    for (alpha, m) in mats.iter().enumerate() {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if !m.is_upper_triangular() {
            return Err(Error::NotCanonical(format!(
                "matrix {} is not upper-triangular",
                alpha + 1
            )));
        }
    }
    if mats.is_empty() {
        return Ok(true);
    }
    let diags = RatMatrix::from_rows(mats.iter().map(RatMatrix::diagonal_entries).collect())?;
    Ok(diags.rank() == mats.len())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NilradicalCertificate {
    /// The span of the `N_ik` is a two-sided ideal.
    pub ideal: bool,
    /// That span is nilpotent as a subalgebra.
    pub nilpotent: bool,
    /// The `A^a` are nilindependent.
    pub nilindependent: bool,
    pub certified: bool,
    pub notes: Vec<String>,
}

/// Certifies that the nilradical of `L(n,f)` is exactly `T(n)`.
///
/// With triangular `A^a`, the left action of any `X`-combination on the
/// nilradical is block-triangular, so a nilpotent ideal strictly larger than
/// the `N`-span would need a nilpotent combination of the `A^a`.
pub fn certify_nilradical(spec: &ExtensionSpec) -> Result<NilradicalCertificate> {
    let l = spec.build();
    if let Some(v) = l.check_leibniz().first() {
        return Err(Error::NotLeibniz(format!(
            "Leibniz identity fails at ({}, {}, {})",
            l.basis_names()[v.triple.0],
            l.basis_names()[v.triple.1],
            l.basis_names()[v.triple.2]
        )));
    }
    let nil = nilindependent(spec.a_all())?;
    let span = spec.nilradical_span();
    let ideal = l.is_ideal(&span)?;
    let nilpotent = l.is_nilpotent_subalgebra(&span);
    let mut notes = Vec::new();
    if !nil {
        notes.push("some combination of the A matrices has zero diagonal".to_string());
    }
    Ok(NilradicalCertificate {
        ideal,
        nilpotent,
        nilindependent: nil,
        certified: ideal && nilpotent && nil,
        notes,
    })
}
