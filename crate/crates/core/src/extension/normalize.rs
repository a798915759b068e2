//! Canonical form for extensions of `T(4)`.
//!
//! The pipeline runs in a fixed order:
//!
//! 1. shift each `X^a` to clear `A_{23,13}, A_{12,13}, A_{23,24}, A_{34,14}, A_{12,14}`;
//! 2. if some `A^a_{14,14} != 0`, shift by `N_14` to clear the remaining `sigma`;
//! 3. apply `G1` to clear `A_{12,24}, A_{23,14}, A_{34,13}, B_{12,14}, B_{34,14}`
//!    wherever the diagonal allows it;
//! 4. apply a diagonal `G2` scaling the first nonzero off-diagonal entries,
//!    in basis order, to 1 while the scaling group still has room.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use super::transform::{apply_shift, conjugate, g1_general, g1_slots, g2_matrix, BasisTransform, ShiftParams};
use super::{residuals_4, residuals_sigma, ExtensionSpec};
use crate::error::{Error, Result};
use crate::linalg::{rational, Rational};
use crate::triangular::TriIndex;

/// Nonzero positions of `A`, `B` and `sigma` as `(alpha, row, col)` /
/// `(alpha, beta, p)`, all 0-based.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct ZeroPattern {
    pub a: BTreeSet<(usize, usize, usize)>,
    pub b: BTreeSet<(usize, usize, usize)>,
    pub sigma: BTreeSet<(usize, usize, usize)>,
}

impl ZeroPattern {
    /// The pattern restricted to `A` and `B`.
    pub fn matrices_only(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: self.b.clone(),
            sigma: BTreeSet::new(),
        }
    }
}

pub fn zero_pattern(spec: &ExtensionSpec) -> ZeroPattern {
    let mut out = ZeroPattern::default();
    let r = spec.r();
    for alpha in 0..spec.f() {
        for i in 0..r {
            for j in 0..r {
                if !spec.a(alpha)[(i, j)].is_zero() {
                    out.a.insert((alpha, i, j));
                }
                if !spec.b(alpha)[(i, j)].is_zero() {
                    out.b.insert((alpha, i, j));
                }
            }
        }
        for beta in 0..spec.f() {
            for (p, v) in spec.sigma(alpha, beta).iter().enumerate() {
                if !v.is_zero() {
                    out.sigma.insert((alpha, beta, p));
                }
            }
        }
    }
    out
}

fn t(i: usize, k: usize) -> TriIndex {
    TriIndex::new(i, k)
}

pub fn normalize_4(spec: &ExtensionSpec) -> Result<ExtensionSpec> {
    if spec.n() != 4 {
        return Err(Error::Shape(format!(
            "normalization is implemented for n = 4, got n = {}",
            spec.n()
        )));
    }
    let rep = residuals_4(spec).merge(residuals_sigma(spec));
    if let Some(first) = rep.residuals.first() {
        return Err(Error::NotLeibniz(first.to_string()));
    }
    if spec.a_all().iter().chain(spec.b_all()).any(|m| !m.is_upper_triangular()) {
        return Err(Error::NotCanonical("A and B must be upper-triangular".into()));
    }
    let spec = eliminate_by_shift(spec)?;
    let spec = clear_sigma(&spec)?;
    let spec = eliminate_by_g1(&spec)?;
    scale_by_g2(&spec)
}

fn eliminate_by_shift(spec: &ExtensionSpec) -> Result<ExtensionSpec> {
    let basis = spec.basis().clone();
    let mut shift = ShiftParams::zero(spec.f(), spec.r());
    for alpha in 0..spec.f() {
        let a = |x: TriIndex, y: TriIndex| spec.a_entry(alpha, x, y).clone();
        shift.set(&basis, alpha, t(1, 2), -a(t(2, 3), t(1, 3)));
        shift.set(&basis, alpha, t(2, 3), a(t(1, 2), t(1, 3)));
        shift.set(&basis, alpha, t(3, 4), a(t(2, 3), t(2, 4)));
        shift.set(&basis, alpha, t(1, 3), -a(t(3, 4), t(1, 4)));
        // A_{12,14} moves by -mu_24 under the shift, so mu_24 = +A_{12,14}.
        shift.set(&basis, alpha, t(2, 4), a(t(1, 2), t(1, 4)));
    }
    apply_shift(spec, &shift)
}

fn clear_sigma(spec: &ExtensionSpec) -> Result<ExtensionSpec> {
    let top = spec.basis().top();
    let Some(lead) = (0..spec.f()).find(|&a| !spec.a(a)[(top, top)].is_zero()) else {
        return Ok(spec.clone());
    };
    let pivot = spec.a(lead)[(top, top)].clone();
    let mut shift = ShiftParams::zero(spec.f(), spec.r());
    for beta in 0..spec.f() {
        if beta != lead {
            shift.mu[beta][top] = -spec.sigma_top(lead, beta) / &pivot;
        }
    }
    apply_shift(spec, &shift)
}

/// Target entry for each `G1` slot: `(is_b, row, col)`.
fn g1_targets() -> Vec<(bool, TriIndex, TriIndex)> {
    // Slot order for n = 4: (12,24), (12,14), (23,14), (34,13), (34,14).
    vec![
        (false, t(1, 2), t(2, 4)),
        (true, t(1, 2), t(1, 4)),
        (false, t(2, 3), t(1, 4)),
        (false, t(3, 4), t(1, 3)),
        (true, t(3, 4), t(1, 4)),
    ]
}

fn eliminate_by_g1(spec: &ExtensionSpec) -> Result<ExtensionSpec> {
    let n = spec.n();
    let slots = g1_slots(n);
    let targets = g1_targets();
    debug_assert_eq!(slots.len(), targets.len());
    let entry = |s: &ExtensionSpec, alpha: usize, (is_b, row, col): (bool, TriIndex, TriIndex)| {
        if is_b {
            s.b_entry(alpha, row, col).clone()
        } else {
            s.a_entry(alpha, row, col).clone()
        }
    };
    let mut values = vec![Rational::zero(); slots.len()];
    for (s, target) in targets.iter().enumerate() {
        // The conjugated entry is affine in each slot value; read off the slope.
        let mut unit = vec![Rational::zero(); slots.len()];
        unit[s] = Rational::one();
        let moved = conjugate(spec, &BasisTransform::new(g1_general(n, &unit)?, n)?);
        for alpha in 0..spec.f() {
            let now = entry(spec, alpha, *target);
            let slope = entry(&moved, alpha, *target) - &now;
            if !slope.is_zero() {
                values[s] = -now / slope;
                break;
            }
        }
    }
    let g = BasisTransform::new(g1_general(n, &values)?, n)?;
    Ok(conjugate(spec, &g))
}

/// Exponent vector of the `G2` scale factor `g_ik / g_ab` in the generators.
fn scale_exponents(row: TriIndex, col: TriIndex, gens: usize) -> Vec<i64> {
    (1..=gens)
        .map(|j| {
            let inside = |x: TriIndex| i64::from(x.i <= j && j < x.k);
            inside(row) - inside(col)
        })
        .collect()
}

/// Small integer directions in generator space, in a fixed order.
fn directions(gens: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..gens {
        out = out
            .into_iter()
            .flat_map(|v| {
                [0i64, 1, -1].into_iter().map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x != 0));
    out
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn scale_by_g2(spec: &ExtensionSpec) -> Result<ExtensionSpec> {
    let basis = spec.basis().clone();
    let gens = spec.n() - 1;
    let dirs = directions(gens);
    let mut fixed: Vec<Vec<i64>> = Vec::new();
    let mut current = spec.clone();
    let r = spec.r();
    for row in 0..r {
        for col in row + 1..r {
            let v = scale_exponents(basis.order()[row], basis.order()[col], gens);
            for alpha in 0..spec.f() {
                for is_b in [false, true] {
                    let m = if is_b { current.b(alpha) } else { current.a(alpha) };
                    let x = m[(row, col)].clone();
                    if x.is_zero() {
                        continue;
                    }
                    let Some(u) = dirs.iter().find(|u| {
                        dot(u, &v).abs() == 1 && fixed.iter().all(|w| dot(u, w) == 0)
                    }) else {
                        continue;
                    };
                    if !x.is_one() {
                        // Entry scales by s^(u.v) when g_j = s^(u_j).
                        let s = if dot(u, &v) == 1 { x.recip() } else { x };
                        let g: Vec<Rational> = u
                            .iter()
                            .map(|&e| rational::powi(&s, e).expect("nonzero scale"))
                            .collect();
                        let t = BasisTransform::new(g2_matrix(&g)?, spec.n())?;
                        current = conjugate(&current, &t);
                    }
                    fixed.push(v.clone());
                }
            }
        }
    }
    Ok(current)
}
