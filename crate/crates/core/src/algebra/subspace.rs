use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational};

/// A subspace of `F^d`, held as the nonzero rows of its reduced row-echelon
/// basis. Two subspaces are equal iff their bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: RatMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: RatMatrix::zeros(0, ambient),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Self {
            ambient,
            basis: RatMatrix::identity(ambient),
        }
    }

    pub fn span<I>(ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let mut rows = Vec::new();
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_zero()) {
                rows.push(v);
            }
        }
        if rows.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let r = RatMatrix::from_rows(rows)?.rref();
        let kept = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
        Ok(Self {
            ambient,
            basis: RatMatrix::from_rows(kept)?,
        })
    }

    /// Span of the coordinate vectors `e_i` for the listed positions.
    pub fn coordinate(ambient: usize, positions: &[usize]) -> Self {
        let vecs = positions.iter().map(|&p| {
            let mut v = vec![Rational::zero(); ambient];
            v[p] = num_traits::One::one();
            v
        });
        Self::span(ambient, vecs).expect("coordinate positions in range")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.basis_vectors();
        rows.push(v.to_vec());
        RatMatrix::from_rows(rows).map(|m| m.rank() == self.dim()).unwrap_or(false)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let vecs = self.basis_vectors().into_iter().chain(other.basis_vectors());
        Subspace::span(self.ambient, vecs).expect("same ambient space")
    }
}
