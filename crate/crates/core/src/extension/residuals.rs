//! Index-level evaluation of the constraint families an extension must
//! satisfy. Each family is the Leibniz identity restricted to one pattern
//! of basis triples, written out in terms of `A`, `B` and `sigma`:
//!
//! | family | triple            |
//! |--------|-------------------|
//! | 4a     | `X, N_ik, N_ab`   |
//! | 4b     | `N_ik, N_ab, X`   |
//! | 4c     | `N_ab, X, N_ik`   |
//! | 6a     | `X^a, X^b, N_ik`  |
//! | 6b     | `X^a, N_ik, X^b`  |
//! | 6c     | `N_ik, X^a, X^b`  |
//! | 7      | `X^a, X^b, X^c`   |
//!
//! `Rel5` is the consequence `A_{ab,ik} = -B_{ab,ik}` for every column
//! `ik != 1n`, reported separately.
//!
//! These are evaluated from the matrices directly, not through
//! [`ExtensionSpec::build`], so they give an independent route to the
//! Leibniz check.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::ExtensionSpec;
use crate::linalg::{rational, RatMatrix, Rational};
use crate::triangular::{TriBasis, TriIndex};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "4a")]
    F4a,
    #[serde(rename = "4b")]
    F4b,
    #[serde(rename = "4c")]
    F4c,
    #[serde(rename = "5")]
    Rel5,
    #[serde(rename = "6a")]
    F6a,
    #[serde(rename = "6b")]
    F6b,
    #[serde(rename = "6c")]
    F6c,
    #[serde(rename = "7")]
    F7,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::F4a,
        Family::F4b,
        Family::F4c,
        Family::Rel5,
        Family::F6a,
        Family::F6b,
        Family::F6c,
        Family::F7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::F4a => "4a",
            Family::F4b => "4b",
            Family::F4c => "4c",
            Family::Rel5 => "5",
            Family::F6a => "6a",
            Family::F6b => "6b",
            Family::F6c => "6c",
            Family::F7 => "7",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One nonzero coefficient of one constraint.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Residual {
    pub family: Family,
    /// Extension indices involved, 1-based.
    pub alphas: Vec<usize>,
    /// Nilradical indices involved (`ik`, and `ab` where relevant).
    pub indices: Vec<String>,
    /// Basis element whose coefficient is nonzero.
    pub component: String,
    #[serde(serialize_with = "ser_rat")]
    pub value: Rational,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    rational::serde_str::serialize(r, s)
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphas: Vec<String> = self.alphas.iter().map(ToString::to_string).collect();
        write!(
            f,
            "({}) alpha=[{}] at [{}]: coefficient of {} is {}",
            self.family,
            alphas.join(","),
            self.indices.join(","),
            self.component,
            rational::to_string(&self.value)
        )
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct ResidualReport {
    pub residuals: Vec<Residual>,
}

impl ResidualReport {
    pub fn is_clean(&self) -> bool {
        self.residuals.is_empty()
    }

    pub fn count(&self, family: Family) -> usize {
        self.residuals.iter().filter(|r| r.family == family).count()
    }

    pub fn failing_families(&self) -> Vec<Family> {
        let mut fams: Vec<Family> = self.residuals.iter().map(|r| r.family).collect();
        fams.sort();
        fams.dedup();
        fams
    }

    pub fn first(&self, family: Family) -> Option<&Residual> {
        self.residuals.iter().find(|r| r.family == family)
    }

    pub fn merge(mut self, other: ResidualReport) -> Self {
        self.residuals.extend(other.residuals);
        self
    }
}

/// Accumulates a vector over the nilradical basis, addressed by `(i, k)`.
struct NVec<'a> {
    basis: &'a TriBasis,
    v: Vec<Rational>,
}

impl<'a> NVec<'a> {
    fn new(basis: &'a TriBasis) -> Self {
        Self {
            basis,
            v: vec![Rational::zero(); basis.len()],
        }
    }

    /// Adds `c * N_ik`; ignores pairs that are not basis indices.
    fn add(&mut self, i: usize, k: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(p) = self.basis.pos(i, k) {
            self.v[p] += c;
        }
    }

    fn add_row(&mut self, row: &[Rational], sign: i64) {
        for (p, c) in row.iter().enumerate() {
            if !c.is_zero() {
                if sign > 0 {
                    self.v[p] += c;
                } else {
                    self.v[p] -= c;
                }
            }
        }
    }
}

struct Ctx<'a> {
    basis: &'a TriBasis,
    n: usize,
}

impl<'a> Ctx<'a> {
    fn entry(&self, m: &RatMatrix, row: (usize, usize), col: (usize, usize)) -> Rational {
        match (self.basis.pos(row.0, row.1), self.basis.pos(col.0, col.1)) {
            (Some(r), Some(c)) => m[(r, c)].clone(),
            _ => Rational::zero(),
        }
    }

    fn row<'m>(&self, m: &'m RatMatrix, t: (usize, usize)) -> Option<&'m [Rational]> {
        self.basis.pos(t.0, t.1).map(|p| m.row(p))
    }

    /// `delta_ka M_{ib,.} - delta_bi M_{ak,.}
    ///  + M_{ik,bq} N_aq - M_{ik,pa} N_pb`
    /// plus `sign_tail * (M2_{ab,kq} N_iq - M2_{ab,pi} N_pk)`.
    fn family4(
        &self,
        head: &RatMatrix,
        mid: &RatMatrix,
        tail: &RatMatrix,
        tail_sign: i64,
        ik: TriIndex,
        ab: TriIndex,
    ) -> Vec<Rational> {
        let n = self.n;
        let (i, k, a, b) = (ik.i, ik.k, ab.i, ab.k);
        let mut out = NVec::new(self.basis);
        if k == a {
            if let Some(row) = self.row(head, (i, b)) {
                out.add_row(row, 1);
            }
        }
        if b == i {
            if let Some(row) = self.row(head, (a, k)) {
                out.add_row(row, -1);
            }
        }
        for q in 1..=n {
            out.add(a, q, &self.entry(mid, (i, k), (b, q)));
        }
        for p in 1..=n {
            out.add(p, b, &-self.entry(mid, (i, k), (p, a)));
        }
        let sign = rational::int(tail_sign);
        for q in 1..=n {
            out.add(i, q, &(-&sign * self.entry(tail, (a, b), (k, q))));
        }
        for p in 1..=n {
            out.add(p, k, &(&sign * self.entry(tail, (a, b), (p, i))));
        }
        out.v
    }

    /// `sigma_{kq} N_iq - sigma_{pi} N_pk` for the sigma vector of `(a, b)`.
    fn sigma_term(&self, sigma: &[Rational], ik: TriIndex) -> Vec<Rational> {
        let n = self.n;
        let (i, k) = (ik.i, ik.k);
        let mut out = NVec::new(self.basis);
        let s = |x: usize, y: usize| {
            self.basis
                .pos(x, y)
                .map_or_else(Rational::zero, |p| sigma[p].clone())
        };
        for q in 1..=n {
            out.add(i, q, &s(k, q));
        }
        for p in 1..=n {
            out.add(p, k, &-s(p, i));
        }
        out.v
    }

    fn push(
        &self,
        report: &mut ResidualReport,
        family: Family,
        alphas: &[usize],
        indices: &[TriIndex],
        v: &[Rational],
    ) {
        for (p, c) in v.iter().enumerate() {
            if !c.is_zero() {
                report.residuals.push(Residual {
                    family,
                    alphas: alphas.iter().map(|a| a + 1).collect(),
                    indices: indices.iter().map(|t| self.basis.short_label(*t)).collect(),
                    component: self.basis.label(self.basis.order()[p]),
                    value: c.clone(),
                });
            }
        }
    }
}

/// Families 4a, 4b, 4c and the derived relation 5.
pub fn residuals_4(spec: &ExtensionSpec) -> ResidualReport {
    let basis = spec.basis();
    let ctx = Ctx {
        basis,
        n: spec.n(),
    };
    let mut report = ResidualReport::default();
    let order = basis.order();
    for alpha in 0..spec.f() {
        let (a, b) = (spec.a(alpha), spec.b(alpha));
        for &ik in order {
            for &ab in order {
                let idx = [ik, ab];
                let r4a = ctx.family4(a, a, a, 1, ik, ab);
                ctx.push(&mut report, Family::F4a, &[alpha], &idx, &r4a);
                let r4b = ctx.family4(b, b, b, 1, ik, ab);
                ctx.push(&mut report, Family::F4b, &[alpha], &idx, &r4b);
                let r4c = ctx.family4(a, a, b, -1, ik, ab);
                ctx.push(&mut report, Family::F4c, &[alpha], &idx, &r4c);
            }
        }
        let top = basis.top();
        for row in 0..spec.r() {
            for col in 0..spec.r() {
                if col == top {
                    continue;
                }
                let s = &a[(row, col)] + &b[(row, col)];
                if !s.is_zero() {
                    report.residuals.push(Residual {
                        family: Family::Rel5,
                        alphas: vec![alpha + 1],
                        indices: vec![
                            basis.short_label(order[row]),
                            basis.short_label(order[col]),
                        ],
                        component: format!("A+B at ({},{})", basis.short_label(order[row]), basis.short_label(order[col])),
                        value: s,
                    });
                }
            }
        }
    }
    report
}

/// Families 6a, 6b, 6c over all ordered pairs and 7 over all ordered triples
/// of extension indices, repeats included.
pub fn residuals_sigma(spec: &ExtensionSpec) -> ResidualReport {
    let basis = spec.basis();
    let ctx = Ctx {
        basis,
        n: spec.n(),
    };
    let mut report = ResidualReport::default();
    let f = spec.f();
    let order = basis.order();
    for alpha in 0..f {
        for beta in 0..f {
            let (aa, ab_) = (spec.a(alpha), spec.a(beta));
            let (ba, bb) = (spec.b(alpha), spec.b(beta));
            let comm_aa = aa.commutator(ab_).expect("square matrices");
            let comm_ab = aa.commutator(bb).expect("square matrices");
            let twist = bb
                .mul(aa)
                .and_then(|m| m.add(&ba.mul(bb)?))
                .expect("square matrices");
            let sigma = spec.sigma(alpha, beta);
            for (p, &ik) in order.iter().enumerate() {
                let s = ctx.sigma_term(sigma, ik);
                let mut r6a = NVec::new(basis);
                r6a.add_row(comm_aa.row(p), 1);
                r6a.add_row(&s, -1);
                ctx.push(&mut report, Family::F6a, &[alpha, beta], &[ik], &r6a.v);

                let mut r6b = NVec::new(basis);
                r6b.add_row(comm_ab.row(p), 1);
                r6b.add_row(&s, 1);
                ctx.push(&mut report, Family::F6b, &[alpha, beta], &[ik], &r6b.v);

                let mut r6c = NVec::new(basis);
                r6c.add_row(twist.row(p), 1);
                r6c.add_row(&s, -1);
                ctx.push(&mut report, Family::F6c, &[alpha, beta], &[ik], &r6c.v);
            }
        }
    }
    for alpha in 0..f {
        for beta in 0..f {
            for gamma in 0..f {
                let mut out = NVec::new(basis);
                let terms = [
                    (spec.sigma(beta, gamma), spec.a(alpha), 1),
                    (spec.sigma(alpha, beta), spec.b(gamma), -1),
                    (spec.sigma(alpha, gamma), spec.a(beta), -1),
                ];
                for (sigma, m, sign) in terms {
                    for (p, s) in sigma.iter().enumerate() {
                        if s.is_zero() {
                            continue;
                        }
                        let scaled: Vec<Rational> = m.row(p).iter().map(|x| x * s).collect();
                        out.add_row(&scaled, sign);
                    }
                }
                ctx.push(&mut report, Family::F7, &[alpha, beta, gamma], &[], &out.v);
            }
        }
    }
    report
}
