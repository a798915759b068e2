//! Finite-dimensional (left) Leibniz algebras given by structure constants.
//!
//! The bracket is `[e_i, e_j] = sum_k c_ij^k e_k`. A Leibniz algebra
//! satisfies `[x,[y,z]] = [[x,y],z] + [y,[x,z]]`, i.e. every left
//! multiplication is a derivation; it is Lie when the bracket is also
//! antisymmetric.
//!
//! Indices are 0-based in the Rust API and 1-based in the JSON form.

mod subspace;

use serde::{Deserialize, Serialize};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rational, RatMatrix, Rational};

pub use subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureConstants {
    basis: Vec<String>,
    /// Nonzero products: `products[i * d + j]` lists `(k, c_ij^k)`.
    products: Vec<Vec<(usize, Rational)>>,
}

/// A vector in coordinates relative to an algebra's basis.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Element {
    pub coords: Vec<Rational>,
}

impl Element {
    pub fn zero(dim: usize) -> Self {
        Self {
            coords: vec![Rational::zero(); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[i] = Rational::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// A basis triple where the Leibniz identity fails, with
/// `[e_i,[e_j,e_k]] - [[e_i,e_j],e_k] - [e_j,[e_i,e_k]]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LeibnizViolation {
    pub triple: (usize, usize, usize),
    pub residual: Element,
}

impl StructureConstants {
    /// The abelian algebra on the given basis labels.
    pub fn abelian(basis: Vec<String>) -> Self {
        let d = basis.len();
        Self {
            basis,
            products: vec![Vec::new(); d * d],
        }
    }

    /// Abelian algebra with labels `e1..ed`.
    pub fn abelian_dim(d: usize) -> Self {
        Self::abelian((1..=d).map(|i| format!("e{i}")).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    /// Sets `c_ij^k` (0-based). Intended for construction.
    pub fn set(&mut self, i: usize, j: usize, k: usize, c: Rational) {
        let d = self.dim();
        assert!(i < d && j < d && k < d, "structure constant index out of range");
        let cell = &mut self.products[i * d + j];
        cell.retain(|(kk, _)| *kk != k);
        if !c.is_zero() {
            cell.push((k, c));
            cell.sort_by_key(|(kk, _)| *kk);
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        self.product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    /// Nonzero coefficients of `[e_i, e_j]`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.products[i * self.dim() + j]
    }

    /// All nonzero structure constants as `(i, j, k, c)`, 0-based.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, Rational)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.product(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            })
        }
    }

    fn bracket_coords(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let cell = &self.products[i * d + j];
                if cell.is_empty() {
                    continue;
                }
                let w = xi * yj;
                for (k, c) in cell {
                    out[*k] += &w * c;
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_len(&x.coords)?;
        self.check_len(&y.coords)?;
        Ok(Element {
            coords: self.bracket_coords(&x.coords, &y.coords),
        })
    }

    /// Matrix of `L_x : y -> [x, y]` acting on column coordinate vectors.
    pub fn left_multiplication(&self, x: &Element) -> Result<RatMatrix> {
        self.check_len(&x.coords)?;
        let d = self.dim();
        let mut m = RatMatrix::zeros(d, d);
        for j in 0..d {
            let col = self.bracket_coords(&x.coords, Element::basis(d, j).coords.as_slice());
            for (k, v) in col.into_iter().enumerate() {
                m[(k, j)] = v;
            }
        }
        Ok(m)
    }

    /// Matrix of `R_x : y -> [y, x]`.
    pub fn right_multiplication(&self, x: &Element) -> Result<RatMatrix> {
        self.check_len(&x.coords)?;
        let d = self.dim();
        let mut m = RatMatrix::zeros(d, d);
        for j in 0..d {
            let col = self.bracket_coords(Element::basis(d, j).coords.as_slice(), &x.coords);
            for (k, v) in col.into_iter().enumerate() {
                m[(k, j)] = v;
            }
        }
        Ok(m)
    }

    /// `[e_i, v]` for a coordinate vector `v`, using the sparse table.
    fn left_basis(&self, i: usize, v: &[(usize, Rational)]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (m, vm) in v {
            for (k, c) in self.product(i, *m) {
                out[*k] += vm * c;
            }
        }
        out
    }

    fn right_basis(&self, v: &[(usize, Rational)], k: usize) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (m, vm) in v {
            for (l, c) in self.product(*m, k) {
                out[*l] += vm * c;
            }
        }
        out
    }

    /// Leibniz residual on one basis triple.
    pub fn leibniz_residual(&self, i: usize, j: usize, k: usize) -> Element {
        let jk = self.product(j, k);
        let ij = self.product(i, j);
        let ik = self.product(i, k);
        let mut r = self.left_basis(i, jk);
        for (a, b) in r.iter_mut().zip(self.right_basis(ij, k)) {
            *a -= b;
        }
        for (a, b) in r.iter_mut().zip(self.left_basis(j, ik)) {
            *a -= b;
        }
        Element { coords: r }
    }

    /// Every basis triple violating the Leibniz identity. Empty iff the
    /// algebra is Leibniz.
    pub fn check_leibniz(&self) -> Vec<LeibnizViolation> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let r = self.leibniz_residual(i, j, k);
                    if !r.is_zero() {
                        out.push(LeibnizViolation {
                            triple: (i, j, k),
                            residual: r,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_leibniz(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| self.leibniz_residual(i, j, k).is_zero())))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (i..d).all(|j| {
                let mut sum = vec![Rational::zero(); d];
                for (k, c) in self.product(i, j) {
                    sum[*k] += c;
                }
                for (k, c) in self.product(j, i) {
                    sum[*k] += c;
                }
                sum.iter().all(Zero::is_zero)
            })
        })
    }

    pub fn is_lie(&self) -> bool {
        self.is_antisymmetric() && self.is_leibniz()
    }

    /// `span{[s, t] : s in S, t in T}`.
    pub fn product_space(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let sv = s.basis_vectors();
        let tv = t.basis_vectors();
        let vecs = sv
            .iter()
            .flat_map(|x| tv.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.bracket_coords(x, y));
        Subspace::span(self.dim(), vecs.collect::<Vec<_>>()).expect("bracket keeps dimension")
    }

    pub fn whole(&self) -> Subspace {
        Subspace::whole(self.dim())
    }

    /// `[L,L]`.
    pub fn derived_algebra(&self) -> Subspace {
        self.product_space(&self.whole(), &self.whole())
    }

    /// `L^(1) = [L,L]`, `L^(k+1) = [L^(k), L^(k)]`, stopping at zero or at
    /// the first term equal to its predecessor.
    pub fn derived_series(&self) -> Vec<Subspace> {
        iterate_series(self.derived_algebra(), |s| self.product_space(s, s))
    }

    /// `L^2 = [L,L]`, `L^(k+1) = [L, L^k]`, same stopping rule.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let whole = self.whole();
        iterate_series(self.derived_algebra(), |s| self.product_space(&whole, s))
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Subspace::is_zero)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subspace::is_zero)
    }

    /// Lower central series of the subalgebra `S`: `[S,S]`, `[S,[S,S]]`, ...
    pub fn subalgebra_lower_central_series(&self, s: &Subspace) -> Vec<Subspace> {
        iterate_series(self.product_space(s, s), |t| self.product_space(s, t))
    }

    pub fn is_nilpotent_subalgebra(&self, s: &Subspace) -> bool {
        self.is_subalgebra(s)
            && self
                .subalgebra_lower_central_series(s)
                .last()
                .is_some_and(Subspace::is_zero)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.product_space(s, s))
    }

    /// `{x : [x, y] = 0 for all y}`.
    pub fn left_annihilator(&self) -> Subspace {
        let d = self.dim();
        // Row (j, k) of the system: sum_i x_i c_ij^k = 0.
        let mut m = RatMatrix::zeros(d * d, d);
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.product(i, j) {
                    m[(j * d + k, i)] = c.clone();
                }
            }
        }
        Subspace::span(d, m.null_space()).expect("null space vectors have length d")
    }

    /// `{x : [y, x] = 0 for all y}`.
    pub fn right_annihilator(&self) -> Subspace {
        let d = self.dim();
        let mut m = RatMatrix::zeros(d * d, d);
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.product(i, j) {
                    m[(i * d + k, j)] = c.clone();
                }
            }
        }
        Subspace::span(d, m.null_space()).expect("null space vectors have length d")
    }

    /// Two-sided annihilator.
    pub fn center(&self) -> Subspace {
        let l = self.left_annihilator();
        let r = self.right_annihilator();
        intersect(&l, &r)
    }

    /// True iff both `L_x` and `R_x` are nilpotent.
    pub fn is_nilpotent_element(&self, x: &Element) -> Result<bool> {
        Ok(self.left_multiplication(x)?.is_nilpotent()?
            && self.right_multiplication(x)?.is_nilpotent()?)
    }

    /// True iff `[L,S]` and `[S,L]` both lie in `S`.
    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        if s.ambient() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: s.ambient(),
            });
        }
        let whole = self.whole();
        Ok(s.contains_subspace(&self.product_space(&whole, s))
            && s.contains_subspace(&self.product_space(s, &whole)))
    }

    /// True iff the matrix whose column `i` is the image of `e_i` is an
    /// invertible map onto `target` respecting brackets.
    pub fn is_isomorphism(&self, target: &StructureConstants, m: &RatMatrix) -> Result<bool> {
        let d = self.dim();
        if target.dim() != d || m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: m.rows().max(target.dim()),
            });
        }
        if !m.is_invertible() {
            return Ok(false);
        }
        let image = |i: usize| -> Vec<Rational> { (0..d).map(|k| m[(k, i)].clone()).collect() };
        for i in 0..d {
            for j in 0..d {
                let lhs = m.mul_vec(&self.bracket_coords(&Element::basis(d, i).coords, &Element::basis(d, j).coords))?;
                if lhs != target.bracket_coords(&image(i), &image(j)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            dim: self.dim(),
            basis: self.basis.clone(),
            brackets: self
                .nonzero()
                .into_iter()
                .map(|(i, j, k, c)| (i + 1, j + 1, k + 1, rational::to_string(&c)))
                .collect(),
        }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self> {
        if json.basis.len() != json.dim {
            return Err(Error::DimensionMismatch {
                expected: json.dim,
                found: json.basis.len(),
            });
        }
        let mut sc = Self::abelian(json.basis.clone());
        let d = json.dim;
        for (i, j, k, c) in &json.brackets {
            let ok = |x: usize| (1..=d).contains(&x);
            if !(ok(*i) && ok(*j) && ok(*k)) {
                return Err(Error::Parse(format!(
                    "bracket index ({i},{j},{k}) outside 1..={d}"
                )));
            }
            let prev = sc.get(i - 1, j - 1, k - 1);
            sc.set(i - 1, j - 1, k - 1, prev + rational::parse(c)?);
        }
        Ok(sc)
    }
}

/// Algebra file form: 1-based indices, nonzero constants only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<(usize, usize, usize, String)>,
}

fn iterate_series(first: Subspace, next: impl Fn(&Subspace) -> Subspace) -> Vec<Subspace> {
    let mut out = vec![first];
    loop {
        let last = out.last().expect("series is nonempty");
        if last.is_zero() {
            break;
        }
        let n = next(last);
        if &n == last {
            break;
        }
        out.push(n);
    }
    out
}

/// Intersection via the null space of `[U; -W]^T`.
pub fn intersect(u: &Subspace, w: &Subspace) -> Subspace {
    let d = u.ambient();
    if u.is_zero() || w.is_zero() {
        return Subspace::zero(d);
    }
    let ub = u.basis_vectors();
    let wb = w.basis_vectors();
    let cols = ub.len() + wb.len();
    let mut m = RatMatrix::zeros(d, cols);
    for (c, v) in ub.iter().enumerate() {
        for r in 0..d {
            m[(r, c)] = v[r].clone();
        }
    }
    for (c, v) in wb.iter().enumerate() {
        for r in 0..d {
            m[(r, ub.len() + c)] = -v[r].clone();
        }
    }
    let vecs = m.null_space().into_iter().map(|coef| {
        let mut x = vec![Rational::zero(); d];
        for (c, v) in ub.iter().enumerate() {
            for r in 0..d {
                x[r] += &coef[c] * &v[r];
            }
        }
        x
    });
    Subspace::span(d, vecs.collect::<Vec<_>>()).expect("intersection vectors have length d")
}
