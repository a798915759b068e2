//! Transformations that keep the nilradical products fixed:
//! shifting `X^a` by nilradical elements, changing the nilradical basis
//! `N -> G N`, and recombining the `X^a` among themselves.

use num_traits::{One, Zero};

use super::ExtensionSpec;
use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational};
use crate::triangular::{TriBasis, TriIndex};

/// `X^a -> X^a + mu^a_pq N_pq`. `mu[a][p]` follows the basis order and
/// includes the `N_1n` slot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShiftParams {
    pub mu: Vec<Vec<Rational>>,
}

impl ShiftParams {
    pub fn zero(f: usize, r: usize) -> Self {
        Self {
            mu: vec![vec![Rational::zero(); r]; f],
        }
    }

    pub fn set(&mut self, basis: &TriBasis, alpha: usize, t: TriIndex, v: Rational) {
        self.mu[alpha][basis.pos_of(t)] = v;
    }

    pub fn neg(&self) -> Self {
        Self {
            mu: self.mu.iter().map(|row| row.iter().map(|x| -x).collect()).collect(),
        }
    }
}

/// Rewrites the spec for `X'^a = X^a + mu^a_pq N_pq`.
///
/// Besides the linear update of `A` and `B`, every `sigma^{ab}` picks up
/// `mu^b_pq A^a_{pq,.} + mu^a_pq B^b_{pq,.} + mu^a_pq mu^b_st [N_pq, N_st]`
/// for all `pq`, not just `1n`.
pub fn apply_shift(spec: &ExtensionSpec, shift: &ShiftParams) -> Result<ExtensionSpec> {
    let (f, r) = (spec.f(), spec.r());
    if shift.mu.len() != f || shift.mu.iter().any(|row| row.len() != r) {
        return Err(Error::Shape(format!("shift parameters must be {f}x{r}")));
    }
    let basis = spec.basis();
    let mut out = spec.clone();
    let (a_out, b_out, s_out) = out.parts_mut();
    for alpha in 0..f {
        let mu = &shift.mu[alpha];
        for (p, m) in mu.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for row in 0..r {
                for (q, c) in basis.bracket(p, row) {
                    a_out[alpha][(row, q)] += m * Rational::from_integer(c.into());
                }
                for (q, c) in basis.bracket(row, p) {
                    b_out[alpha][(row, q)] += m * Rational::from_integer(c.into());
                }
            }
        }
    }
    for alpha in 0..f {
        for beta in 0..f {
            let target = &mut s_out[alpha][beta];
            for p in 0..r {
                let mb = &shift.mu[beta][p];
                let ma = &shift.mu[alpha][p];
                for q in 0..r {
                    if !mb.is_zero() {
                        target[q] += mb * &spec.a(alpha)[(p, q)];
                    }
                    if !ma.is_zero() {
                        target[q] += ma * &spec.b(beta)[(p, q)];
                    }
                }
                if ma.is_zero() {
                    continue;
                }
                for (s, mbs) in shift.mu[beta].iter().enumerate() {
                    if mbs.is_zero() {
                        continue;
                    }
                    for (q, c) in basis.bracket(p, s) {
                        target[q] += ma * mbs * Rational::from_integer(c.into());
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A nilradical basis change `N -> G N` that preserves the products of
/// `T(n)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisTransform {
    g: RatMatrix,
    g_inv: RatMatrix,
}

impl BasisTransform {
    pub fn new(g: RatMatrix, n: usize) -> Result<Self> {
        if !check_g_preserves_tri(&g, n)? {
            return Err(Error::TransformRejected(
                "G does not preserve the products of T(n)".into(),
            ));
        }
        let g_inv = g.inverse()?;
        Ok(Self { g, g_inv })
    }

    pub fn g(&self) -> &RatMatrix {
        &self.g
    }

    pub fn g_inv(&self) -> &RatMatrix {
        &self.g_inv
    }

    pub fn inverse(&self) -> Self {
        Self {
            g: self.g_inv.clone(),
            g_inv: self.g.clone(),
        }
    }
}

/// True iff `N' = G N` satisfies the same products as `N`, i.e.
/// `sum G_ia G_jb c_ab^k (G^-1)_kl = c_ij^l` for all `i, j, l`.
pub fn check_g_preserves_tri(g: &RatMatrix, n: usize) -> Result<bool> {
    let basis = TriBasis::new(n)?;
    let r = basis.len();
    if g.rows() != r || g.cols() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: g.rows().max(g.cols()),
        });
    }
    let g_inv = g.inverse()?;
    let nz = |i: usize| -> Vec<usize> { (0..r).filter(|&a| !g[(i, a)].is_zero()).collect() };
    let supports: Vec<Vec<usize>> = (0..r).map(nz).collect();
    for i in 0..r {
        for j in 0..r {
            // [N'_i, N'_j] in the old basis.
            let mut old = vec![Rational::zero(); r];
            for &a in &supports[i] {
                for &b in &supports[j] {
                    let gab = &g[(i, a)] * &g[(j, b)];
                    for (k, c) in basis.bracket(a, b) {
                        old[k] += &gab * Rational::from_integer(c.into());
                    }
                }
            }
            let new = g_inv.vec_mul(&old)?;
            let mut expected = vec![Rational::zero(); r];
            for (k, c) in basis.bracket(i, j) {
                expected[k] = Rational::from_integer(c.into());
            }
            if new != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `A -> G A G^-1`, `B -> G B G^-1`, `sigma -> sigma G^-1`.
pub fn apply_basis_transform(spec: &ExtensionSpec, g: &RatMatrix) -> Result<ExtensionSpec> {
    let t = BasisTransform::new(g.clone(), spec.n())?;
    Ok(conjugate(spec, &t))
}

pub(crate) fn conjugate(spec: &ExtensionSpec, t: &BasisTransform) -> ExtensionSpec {
    let mut out = spec.clone();
    let f = spec.f();
    let conj = |m: &RatMatrix| {
        t.g.mul(m)
            .and_then(|x| x.mul(&t.g_inv))
            .expect("square r x r matrices")
    };
    let (a, b, s) = out.parts_mut();
    for alpha in 0..f {
        a[alpha] = conj(&a[alpha]);
        b[alpha] = conj(&b[alpha]);
        for beta in 0..f {
            s[alpha][beta] = t.g_inv.vec_mul(&s[alpha][beta]).expect("length r");
        }
    }
    out
}

/// `X'^a = M_ab X^b`: `A'^a = M_ab A^b`, the same for `B`, and
/// `sigma'^{ab} = M_ac M_bd sigma^{cd}`.
pub fn recombine_x(spec: &ExtensionSpec, m: &RatMatrix) -> Result<ExtensionSpec> {
    let f = spec.f();
    if m.rows() != f || m.cols() != f {
        return Err(Error::DimensionMismatch {
            expected: f,
            found: m.rows().max(m.cols()),
        });
    }
    if !m.is_invertible() {
        return Err(Error::Singular("recombination matrix is singular".into()));
    }
    let r = spec.r();
    let combine = |mats: &[RatMatrix], alpha: usize| {
        let mut acc = RatMatrix::zeros(r, r);
        for (beta, mat) in mats.iter().enumerate() {
            if !m[(alpha, beta)].is_zero() {
                acc = acc.add(&mat.scale(&m[(alpha, beta)])).expect("same shape");
            }
        }
        acc
    };
    let a: Vec<RatMatrix> = (0..f).map(|x| combine(spec.a_all(), x)).collect();
    let b: Vec<RatMatrix> = (0..f).map(|x| combine(spec.b_all(), x)).collect();
    let mut sigma = vec![vec![vec![Rational::zero(); r]; f]; f];
    for (alpha, row) in sigma.iter_mut().enumerate() {
        for (beta, target) in row.iter_mut().enumerate() {
            for gamma in 0..f {
                for delta in 0..f {
                    let coef = &m[(alpha, gamma)] * &m[(beta, delta)];
                    if coef.is_zero() {
                        continue;
                    }
                    for (q, v) in spec.sigma(gamma, delta).iter().enumerate() {
                        target[q] += &coef * v;
                    }
                }
            }
        }
    }
    ExtensionSpec::new(spec.n(), a, b, sigma)
}

/// Positions of the free entries of the unipotent basis change used for
/// off-diagonal elimination: `(12,1n)`, `((n-1)n,1n)`, `(12,2n)`,
/// `((n-1)n,1(n-1))` and `(j(j+1),1n)` for `2 <= j <= n-2`.
pub fn g1_slots(n: usize) -> Vec<(TriIndex, TriIndex)> {
    let mut out = vec![(TriIndex::new(1, 2), TriIndex::new(2, n))];
    out.push((TriIndex::new(1, 2), TriIndex::new(1, n)));
    for j in 2..=n.saturating_sub(2) {
        out.push((TriIndex::new(j, j + 1), TriIndex::new(1, n)));
    }
    out.push((TriIndex::new(n - 1, n), TriIndex::new(1, n - 1)));
    out.push((TriIndex::new(n - 1, n), TriIndex::new(1, n)));
    out.dedup();
    out
}

/// Unit upper-triangular `G1` with the given values in [`g1_slots`] order.
pub fn g1_general(n: usize, values: &[Rational]) -> Result<RatMatrix> {
    if n < 4 {
        return Err(Error::TriangularSize(n));
    }
    let basis = TriBasis::new(n)?;
    let slots = g1_slots(n);
    if values.len() != slots.len() {
        return Err(Error::DimensionMismatch {
            expected: slots.len(),
            found: values.len(),
        });
    }
    let mut g = RatMatrix::identity(basis.len());
    for ((row, col), v) in slots.iter().zip(values) {
        g[(basis.pos_of(*row), basis.pos_of(*col))] = v.clone();
    }
    Ok(g)
}

/// The `n = 4` matrix
///
/// ```text
/// 1 0 0 0  g1 g0
///   1 0 0  0  g2
///     1 g3 0  g4
///       1  0  0
///          1  0
///             1
/// ```
pub fn g1_matrix(g0: Rational, g1: Rational, g2: Rational, g3: Rational, g4: Rational) -> RatMatrix {
    // Slot order for n = 4: (12,24), (12,14), (23,14), (34,13), (34,14).
    g1_general(4, &[g1, g0, g2, g3, g4]).expect("n = 4 has five slots")
}

/// Diagonal `G2` with `g_ik = prod_{j=i}^{k-1} g_{j(j+1)}` built from the
/// `n - 1` generators `g_12, g_23, ...`.
pub fn g2_matrix(gens: &[Rational]) -> Result<RatMatrix> {
    let basis = TriBasis::new(gens.len() + 1)?;
    if gens.iter().any(Zero::is_zero) {
        return Err(Error::Singular("G2 generators must be nonzero".into()));
    }
    let diag: Vec<Rational> = basis
        .order()
        .iter()
        .map(|t| (t.i..t.k).fold(Rational::one(), |acc, j| acc * &gens[j - 1]))
        .collect();
    Ok(RatMatrix::diagonal(&diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{frac, int};

    fn entry4() -> ExtensionSpec {
        let d = [1, 0, -1, 1, -1, 0].map(int);
        let mut spec = ExtensionSpec::antisymmetric(4, vec![RatMatrix::diagonal(&d)]).unwrap();
        spec.set_b(0, TriIndex::new(2, 3), TriIndex::new(1, 4), int(1));
        spec.set_sigma(0, 0, TriIndex::new(1, 4), int(2));
        spec
    }

    #[test]
    fn shift_matches_index_formula() {
        // A_{ik,ab} += delta_kb mu_ai - delta_ia mu_kb, B gets the negation.
        let spec = entry4();
        let basis = spec.basis().clone();
        let mut shift = ShiftParams::zero(1, 6);
        for (p, v) in [3, -2, 5, 7, 11, 13].into_iter().enumerate() {
            shift.mu[0][p] = int(v);
        }
        let out = apply_shift(&spec, &shift).unwrap();
        let mu = |a: usize, b: usize| {
            basis
                .pos(a, b)
                .map_or_else(Rational::zero, |p| shift.mu[0][p].clone())
        };
        for &ik in basis.order() {
            for &ab in basis.order() {
                let delta = |x: usize, y: usize| x == y;
                let mut d = Rational::zero();
                if delta(ik.k, ab.k) {
                    d += mu(ab.i, ik.i);
                }
                if delta(ik.i, ab.i) {
                    d -= mu(ik.k, ab.k);
                }
                assert_eq!(out.a_entry(0, ik, ab), &(spec.a_entry(0, ik, ab) + &d));
                assert_eq!(out.b_entry(0, ik, ab), &(spec.b_entry(0, ik, ab) - &d));
            }
        }
    }

    #[test]
    fn shift_zero_and_inverse() {
        let spec = entry4();
        assert_eq!(apply_shift(&spec, &ShiftParams::zero(1, 6)).unwrap(), spec);
        let mut shift = ShiftParams::zero(1, 6);
        shift.mu[0][1] = frac(3, 2);
        shift.mu[0][4] = int(-4);
        let there = apply_shift(&spec, &shift).unwrap();
        assert_ne!(there, spec);
        assert!(there.build().is_leibniz());
        assert_eq!(apply_shift(&there, &shift.neg()).unwrap(), spec);
    }

    #[test]
    fn shift_agrees_with_rebuilt_algebra() {
        // The shifted spec must be the original algebra written in the basis
        // with X' = X + mu N.
        let spec = entry4();
        let mut shift = ShiftParams::zero(1, 6);
        shift.mu[0][1] = int(2);
        shift.mu[0][3] = int(-1);
        let out = apply_shift(&spec, &shift).unwrap();
        let l = spec.build();
        let mut x = crate::algebra::Element::basis(7, 6);
        for p in 0..6 {
            x.coords[p] = shift.mu[0][p].clone();
        }
        let xx = l.bracket(&x, &x).unwrap();
        assert_eq!(&xx.coords[..6], out.sigma(0, 0));
        assert!(xx.coords[6].is_zero());
    }

    #[test]
    fn g_checks() {
        let g1 = g1_matrix(int(1), int(2), int(3), int(4), int(5));
        assert!(check_g_preserves_tri(&g1, 4).unwrap());
        let g2 = g2_matrix(&[int(2), frac(1, 3), int(-5)]).unwrap();
        assert!(check_g_preserves_tri(&g2, 4).unwrap());
        let mut perm = RatMatrix::identity(6);
        perm[(0, 0)] = int(0);
        perm[(1, 1)] = int(0);
        perm[(0, 1)] = int(1);
        perm[(1, 0)] = int(1);
        assert!(!check_g_preserves_tri(&perm, 4).unwrap());
        assert!(matches!(
            check_g_preserves_tri(&RatMatrix::zeros(6, 6), 4),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn g2_scaling_law() {
        let spec = entry4();
        let gens = [int(2), int(3), frac(1, 5)];
        let g2 = g2_matrix(&gens).unwrap();
        let out = apply_basis_transform(&spec, &g2).unwrap();
        let basis = spec.basis();
        for &ik in basis.order() {
            for &ab in basis.order() {
                let g = |t: TriIndex| g2[(basis.pos_of(t), basis.pos_of(t))].clone();
                assert_eq!(out.b_entry(0, ik, ab), &(g(ik) / g(ab) * spec.b_entry(0, ik, ab)));
            }
        }
        let back = apply_basis_transform(&out, &g2.inverse().unwrap()).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn recombine_swap_and_scale() {
        let d1 = [1, 0, -1, 1, -1, 0].map(int);
        let d2 = [0, 1, -1, 1, 0, 0].map(int);
        let mut spec = ExtensionSpec::antisymmetric(
            4,
            vec![RatMatrix::diagonal(&d1), RatMatrix::diagonal(&d2)],
        )
        .unwrap();
        spec.set_sigma(0, 1, TriIndex::new(1, 4), int(1));
        let swap = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let out = recombine_x(&spec, &swap).unwrap();
        assert_eq!(out.a(0), spec.a(1));
        assert_eq!(out.sigma(1, 0), spec.sigma(0, 1));
        let scale = RatMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        let out = recombine_x(&spec, &scale).unwrap();
        assert_eq!(out.a(0), &spec.a(0).scale(&int(2)));
        assert!(out.build().is_leibniz());
        assert!(recombine_x(&spec, &RatMatrix::zeros(2, 2)).is_err());
    }
}
