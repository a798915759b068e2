//! Solvable extensions `L(n,f)` of `T(n)`.
//!
//! An extension appends `f` elements `X^1..X^f` to the basis of `T(n)` with
//!
//! ```text
//! [X^a, N_ik] = A^a_{ik,pq} N_pq
//! [N_ik, X^a] = B^a_{ik,pq} N_pq
//! [X^a, X^b]  = sigma^{ab}_pq N_pq
//! ```
//!
//! Matrix rows and columns follow the [`TriBasis`] ordering. In the Rust API
//! the extension index `a` is 0-based; labels and JSON use `X1..Xf`.

mod certify;
mod json;
mod normalize;
mod residuals;
mod transform;

use num_traits::Zero;

use crate::algebra::StructureConstants;
use crate::error::{Error, Result};
use crate::linalg::{rational, RatMatrix, Rational};
use crate::triangular::{TriBasis, TriIndex};

pub use certify::{
    a_support, b_support, certify_nilradical, nilindependent, shape_check, NilradicalCertificate,
    ShapeReport,
};
pub use json::{ExtensionSpecJson, MatrixFileJson, MatrixJson, RatJson, ShiftParamsJson};
pub use normalize::{normalize_4, zero_pattern, ZeroPattern};
pub use residuals::{residuals_4, residuals_sigma, Family, Residual, ResidualReport};
pub use transform::{
    apply_basis_transform, apply_shift, check_g_preserves_tri, g1_general, g1_matrix, g1_slots,
    g2_matrix, recombine_x, BasisTransform, ShiftParams,
};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtensionSpec {
    basis: TriBasis,
    f: usize,
    a: Vec<RatMatrix>,
    b: Vec<RatMatrix>,
    /// `sigma[a][b][p]` is the coefficient of the `p`-th basis element in
    /// `[X^a, X^b]`.
    sigma: Vec<Vec<Vec<Rational>>>,
}

impl ExtensionSpec {
    pub fn new(
        n: usize,
        a: Vec<RatMatrix>,
        b: Vec<RatMatrix>,
        sigma: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self> {
        let basis = TriBasis::new(n)?;
        let r = basis.len();
        let f = a.len();
        if f == 0 || f > n - 1 {
            return Err(Error::Shape(format!(
                "extension degree f = {f} outside 1..={}",
                n - 1
            )));
        }
        if b.len() != f {
            return Err(Error::Shape(format!("{f} A matrices but {} B matrices", b.len())));
        }
        for m in a.iter().chain(&b) {
            if m.rows() != r || m.cols() != r {
                return Err(Error::Shape(format!(
                    "matrix is {}x{}, expected {r}x{r}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if sigma.len() != f || sigma.iter().any(|row| row.len() != f || row.iter().any(|v| v.len() != r)) {
            return Err(Error::Shape(format!("sigma must be {f}x{f}x{r}")));
        }
        Ok(Self {
            basis,
            f,
            a,
            b,
            sigma,
        })
    }

    /// All-zero `A`, `B` and `sigma`.
    pub fn zero(n: usize, f: usize) -> Result<Self> {
        let r = TriBasis::new(n)?.len();
        Self::new(
            n,
            vec![RatMatrix::zeros(r, r); f],
            vec![RatMatrix::zeros(r, r); f],
            vec![vec![vec![Rational::zero(); r]; f]; f],
        )
    }

    /// Spec with `B^a = -A^a` and zero `sigma`.
    pub fn antisymmetric(n: usize, a: Vec<RatMatrix>) -> Result<Self> {
        let r = TriBasis::new(n)?.len();
        let f = a.len();
        let b = a.iter().map(RatMatrix::neg).collect();
        Self::new(n, a, b, vec![vec![vec![Rational::zero(); r]; f]; f])
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn r(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &TriBasis {
        &self.basis
    }

    pub fn a(&self, alpha: usize) -> &RatMatrix {
        &self.a[alpha]
    }

    pub fn b(&self, alpha: usize) -> &RatMatrix {
        &self.b[alpha]
    }

    pub fn a_all(&self) -> &[RatMatrix] {
        &self.a
    }

    pub fn b_all(&self) -> &[RatMatrix] {
        &self.b
    }

    pub fn sigma(&self, alpha: usize, beta: usize) -> &[Rational] {
        &self.sigma[alpha][beta]
    }

    pub fn sigma_all(&self) -> &[Vec<Vec<Rational>>] {
        &self.sigma
    }

    fn pos(&self, t: TriIndex) -> usize {
        self.basis.pos_of(t)
    }

    pub fn a_entry(&self, alpha: usize, row: TriIndex, col: TriIndex) -> &Rational {
        &self.a[alpha][(self.pos(row), self.pos(col))]
    }

    pub fn b_entry(&self, alpha: usize, row: TriIndex, col: TriIndex) -> &Rational {
        &self.b[alpha][(self.pos(row), self.pos(col))]
    }

    pub fn set_a(&mut self, alpha: usize, row: TriIndex, col: TriIndex, v: Rational) {
        let (i, j) = (self.pos(row), self.pos(col));
        self.a[alpha][(i, j)] = v;
    }

    pub fn set_b(&mut self, alpha: usize, row: TriIndex, col: TriIndex, v: Rational) {
        let (i, j) = (self.pos(row), self.pos(col));
        self.b[alpha][(i, j)] = v;
    }

    pub fn set_sigma(&mut self, alpha: usize, beta: usize, t: TriIndex, v: Rational) {
        let p = self.pos(t);
        self.sigma[alpha][beta][p] = v;
    }

    /// `sigma^{ab}` on the top element `N_1n`.
    pub fn sigma_top(&self, alpha: usize, beta: usize) -> &Rational {
        &self.sigma[alpha][beta][self.basis.top()]
    }

    pub(crate) fn parts_mut(
        &mut self,
    ) -> (&mut Vec<RatMatrix>, &mut Vec<RatMatrix>, &mut Vec<Vec<Vec<Rational>>>) {
        (&mut self.a, &mut self.b, &mut self.sigma)
    }

    /// Basis labels of the built algebra: the `N_ik` then `X1..Xf`.
    pub fn labels(&self) -> Vec<String> {
        let mut names = self.basis.labels();
        names.extend((1..=self.f).map(|a| format!("X{a}")));
        names
    }

    /// Position of `X^alpha` in the built algebra.
    pub fn x_pos(&self, alpha: usize) -> usize {
        self.r() + alpha
    }

    /// Structure constants of `L(n,f)`.
    pub fn build(&self) -> StructureConstants {
        let r = self.r();
        let mut sc = StructureConstants::abelian(self.labels());
        for x in 0..r {
            for y in 0..r {
                for (p, c) in self.basis.bracket(x, y) {
                    sc.set(x, y, p, rational::int(c));
                }
            }
        }
        for alpha in 0..self.f {
            let xa = self.x_pos(alpha);
            for i in 0..r {
                for j in 0..r {
                    let av = &self.a[alpha][(i, j)];
                    if !av.is_zero() {
                        sc.set(xa, i, j, av.clone());
                    }
                    let bv = &self.b[alpha][(i, j)];
                    if !bv.is_zero() {
                        sc.set(i, xa, j, bv.clone());
                    }
                }
            }
            for beta in 0..self.f {
                let xb = self.x_pos(beta);
                for (p, v) in self.sigma[alpha][beta].iter().enumerate() {
                    if !v.is_zero() {
                        sc.set(xa, xb, p, v.clone());
                    }
                }
            }
        }
        sc
    }

    /// Coordinate subspace spanned by the `N_ik` inside the built algebra.
    pub fn nilradical_span(&self) -> crate::algebra::Subspace {
        let positions: Vec<usize> = (0..self.r()).collect();
        crate::algebra::Subspace::coordinate(self.r() + self.f, &positions)
    }
}

/// Free-function form of [`ExtensionSpec::build`].
pub fn build_l(spec: &ExtensionSpec) -> StructureConstants {
    spec.build()
}
