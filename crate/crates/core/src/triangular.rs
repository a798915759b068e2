//! The triangular Lie algebra `T(n)` of strictly upper-triangular `n x n`
//! matrices, with basis `N_ik` (`1 <= i < k <= n`) and products
//! `[N_ik, N_ab] = delta_ka N_ib - delta_bi N_ak`.
//!
//! Basis elements are ordered along consecutive off-diagonals:
//! `N12, N23, ..., N(n-1)n, N13, ..., N1n`. Positions are 1-based.

use std::fmt;

use crate::algebra::StructureConstants;
use crate::error::{Error, Result};
use crate::linalg::rational;

/// A basis index `(i, k)` with `1 <= i < k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TriIndex {
    pub i: usize,
    pub k: usize,
}

impl TriIndex {
    pub fn new(i: usize, k: usize) -> Self {
        debug_assert!(i < k);
        Self { i, k }
    }

    /// Distance from the diagonal, `k - i`.
    pub fn level(&self) -> usize {
        self.k - self.i
    }

    /// `"12"`, or `"1_10"` when either index has two digits.
    pub fn short_label(&self) -> String {
        if self.i >= 10 || self.k >= 10 {
            format!("{}_{}", self.i, self.k)
        } else {
            format!("{}{}", self.i, self.k)
        }
    }
}

impl fmt::Display for TriIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.short_label())
    }
}

/// Position of `N_ik` in the off-diagonal ordering, 1-based.
pub fn flat_index(i: usize, k: usize, n: usize) -> Result<usize> {
    if !(1 <= i && i < k && k <= n) {
        return Err(Error::IndexOutOfRange { i, k, n });
    }
    let d = k - i;
    Ok((1..d).map(|e| n - e).sum::<usize>() + i)
}

/// The ordered basis of `T(n)` with a precomputed inverse map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriBasis {
    n: usize,
    order: Vec<TriIndex>,
    /// `lookup[(i-1)*n + (k-1)]` is the 0-based position of `N_ik`.
    lookup: Vec<Option<usize>>,
}

impl TriBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TriangularSize(n));
        }
        let order: Vec<TriIndex> = (1..n)
            .flat_map(|d| (1..=n - d).map(move |i| TriIndex::new(i, i + d)))
            .collect();
        let mut lookup = vec![None; n * n];
        for (p, t) in order.iter().enumerate() {
            lookup[(t.i - 1) * n + (t.k - 1)] = Some(p);
        }
        Ok(Self { n, order, lookup })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `r = n(n-1)/2`.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[TriIndex] {
        &self.order
    }

    /// 0-based position of `N_ik`, if `1 <= i < k <= n`.
    pub fn pos(&self, i: usize, k: usize) -> Option<usize> {
        if i == 0 || k == 0 || i > self.n || k > self.n {
            return None;
        }
        self.lookup[(i - 1) * self.n + (k - 1)]
    }

    pub fn pos_of(&self, t: TriIndex) -> usize {
        self.pos(t.i, t.k).expect("TriIndex belongs to this basis")
    }

    /// Inverse of [`flat_index`]: the index at 1-based position `p`.
    pub fn index_at(&self, p: usize) -> Result<TriIndex> {
        p.checked_sub(1)
            .and_then(|q| self.order.get(q).copied())
            .ok_or(Error::IndexOutOfRange {
                i: p,
                k: p,
                n: self.n,
            })
    }

    /// Position of `N_1n`, always last.
    pub fn top(&self) -> usize {
        self.len() - 1
    }

    /// `"N12"`, ..., or `"N_1_10"` once `n >= 10`.
    pub fn label(&self, t: TriIndex) -> String {
        if self.n >= 10 {
            format!("N_{}_{}", t.i, t.k)
        } else {
            format!("N{}{}", t.i, t.k)
        }
    }

    /// Index label without the leading `N`: `"12"` or `"1_10"`.
    pub fn short_label(&self, t: TriIndex) -> String {
        if self.n >= 10 {
            format!("{}_{}", t.i, t.k)
        } else {
            format!("{}{}", t.i, t.k)
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.order.iter().map(|t| self.label(*t)).collect()
    }

    /// Parses `"14"`, `"N14"`, `"1_10"`, `"N_1_10"`, `"1,4"`.
    pub fn parse_label(&self, s: &str) -> Result<TriIndex> {
        let t = s.trim();
        let t = t.strip_prefix('N').unwrap_or(t);
        let t = t.strip_prefix('_').unwrap_or(t);
        let parts: Vec<&str> = if t.contains('_') || t.contains(',') {
            t.split(['_', ',']).collect()
        } else if t.len() == 2 {
            vec![&t[..1], &t[1..]]
        } else {
            return Err(Error::Parse(format!("bad basis label {s:?}")));
        };
        let [a, b] = parts.as_slice() else {
            return Err(Error::Parse(format!("bad basis label {s:?}")));
        };
        let i: usize = a.parse().map_err(|_| Error::Parse(format!("bad basis label {s:?}")))?;
        let k: usize = b.parse().map_err(|_| Error::Parse(format!("bad basis label {s:?}")))?;
        self.pos(i, k)
            .map(|p| self.order[p])
            .ok_or(Error::IndexOutOfRange { i, k, n: self.n })
    }

    /// Coefficients of `[N_x, N_y]` as `(position, coefficient)` pairs,
    /// 0-based positions.
    pub fn bracket(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        let (TriIndex { i, k }, TriIndex { i: a, k: b }) = (self.order[x], self.order[y]);
        let mut out = Vec::new();
        if k == a {
            out.push((self.pos(i, b).expect("i < k = a < b"), 1));
        }
        if b == i {
            out.push((self.pos(a, k).expect("a < b = i < k"), -1));
        }
        out
    }
}

/// Structure constants of `T(n)` on the ordered basis.
pub fn build_t(n: usize) -> Result<StructureConstants> {
    let basis = TriBasis::new(n)?;
    Ok(build_t_on(&basis))
}

pub fn build_t_on(basis: &TriBasis) -> StructureConstants {
    let mut sc = StructureConstants::abelian(basis.labels());
    for x in 0..basis.len() {
        for y in 0..basis.len() {
            for (p, c) in basis.bracket(x, y) {
                sc.set(x, y, p, rational::int(c));
            }
        }
    }
    sc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Element;

    #[test]
    fn t4_order() {
        let b = TriBasis::new(4).unwrap();
        assert_eq!(b.labels(), ["N12", "N23", "N34", "N13", "N24", "N14"]);
        assert_eq!(b.len(), 6);
    }

    #[test]
    fn flat_index_values() {
        assert_eq!(flat_index(1, 2, 4).unwrap(), 1);
        assert_eq!(flat_index(2, 4, 4).unwrap(), 5);
        for n in 2..=7 {
            assert_eq!(flat_index(1, n, n).unwrap(), n * (n - 1) / 2);
        }
        assert!(flat_index(2, 2, 4).is_err());
        assert!(flat_index(0, 2, 4).is_err());
        assert!(flat_index(1, 5, 4).is_err());
    }

    #[test]
    fn flat_index_inverse() {
        for n in 2..=7 {
            let b = TriBasis::new(n).unwrap();
            for p in 1..=b.len() {
                let t = b.index_at(p).unwrap();
                assert_eq!(flat_index(t.i, t.k, n).unwrap(), p);
                assert_eq!(b.pos_of(t) + 1, p);
            }
            assert!(b.index_at(0).is_err());
            assert!(b.index_at(b.len() + 1).is_err());
        }
    }

    #[test]
    fn rejects_small_n() {
        assert_eq!(build_t(1).unwrap_err(), Error::TriangularSize(1));
        assert!(TriBasis::new(0).is_err());
    }

    #[test]
    fn t2_is_one_dimensional_abelian() {
        let t = build_t(2).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(t.nonzero().is_empty());
    }

    #[test]
    fn products_in_t4() {
        let b = TriBasis::new(4).unwrap();
        let t = build_t_on(&b);
        let e = |i, k| Element::basis(6, b.pos(i, k).unwrap());
        assert_eq!(t.bracket(&e(1, 2), &e(2, 3)).unwrap(), e(1, 3));
        assert!(t.bracket(&e(1, 2), &e(3, 4)).unwrap().is_zero());
        let mut neg = e(1, 3);
        neg.coords[b.pos(1, 3).unwrap()] = rational::int(-1);
        assert_eq!(t.bracket(&e(2, 3), &e(1, 2)).unwrap(), neg);
    }

    #[test]
    fn labels_for_large_n() {
        let b = TriBasis::new(10).unwrap();
        assert_eq!(b.label(b.index_at(b.len()).unwrap()), "N_1_10");
        assert_eq!(b.parse_label("N_1_10").unwrap(), TriIndex::new(1, 10));
        let b4 = TriBasis::new(4).unwrap();
        assert_eq!(b4.parse_label("N14").unwrap(), TriIndex::new(1, 4));
        assert_eq!(b4.parse_label("24").unwrap(), TriIndex::new(2, 4));
        assert!(b4.parse_label("15").is_err());
        assert!(b4.parse_label("abc").is_err());
    }
}
