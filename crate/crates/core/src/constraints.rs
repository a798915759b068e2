//! Symbolic derivation of the conditions on `A`, `B` and `sigma`.
//!
//! Every entry of every `A^a`, `B^a` and `sigma^{ab}` becomes an
//! indeterminate; the Leibniz identity is expanded on all basis triples of
//! `L(n,f)` and each coefficient of each residual becomes one polynomial.
//! Linear polynomials are reduced exactly; bilinear ones are only evaluated.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{ExtensionSpec, Family};
use crate::linalg::{rational, MultiPoly, RatMatrix, Rational, SparseEliminator, SparseRow, Symbol};
use crate::triangular::TriBasis;

/// Which structure constant an indeterminate stands for (all 0-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Slot {
    A { alpha: usize, row: usize, col: usize },
    B { alpha: usize, row: usize, col: usize },
    Sigma { alpha: usize, beta: usize, p: usize },
}

/// `L(n,f)` with indeterminate `A`, `B`, `sigma`. Symbols are named
/// `A1_12_13`, `B2_23_14`, `s12_14`.
#[derive(Clone, Debug)]
pub struct GenericExtension {
    basis: TriBasis,
    f: usize,
    symbols: Vec<Symbol>,
    slots: Vec<Slot>,
    lookup: HashMap<Symbol, usize>,
}

impl GenericExtension {
    pub fn new(n: usize, f: usize) -> Result<Self> {
        let basis = TriBasis::new(n)?;
        if f == 0 || f > n - 1 {
            return Err(Error::Shape(format!("f = {f} outside 1..={}", n - 1)));
        }
        let r = basis.len();
        let mut slots = Vec::with_capacity(2 * f * r * r + f * f * r);
        for alpha in 0..f {
            for row in 0..r {
                for col in 0..r {
                    slots.push(Slot::A { alpha, row, col });
                }
            }
        }
        for alpha in 0..f {
            for row in 0..r {
                for col in 0..r {
                    slots.push(Slot::B { alpha, row, col });
                }
            }
        }
        for alpha in 0..f {
            for beta in 0..f {
                for p in 0..r {
                    slots.push(Slot::Sigma { alpha, beta, p });
                }
            }
        }
        let symbols: Vec<Symbol> = slots.iter().map(|s| Arc::from(name_of(&basis, f, *s))).collect();
        let lookup = symbols.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(Self {
            basis,
            f,
            symbols,
            slots,
            lookup,
        })
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn basis(&self) -> &TriBasis {
        &self.basis
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn slot(&self, name: &str) -> Option<Slot> {
        self.lookup.get(name).map(|&i| self.slots[i])
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, slot: Slot) -> Symbol {
        let r = self.basis.len();
        let block = self.f * r * r;
        let idx = match slot {
            Slot::A { alpha, row, col } => (alpha * r + row) * r + col,
            Slot::B { alpha, row, col } => block + (alpha * r + row) * r + col,
            Slot::Sigma { alpha, beta, p } => 2 * block + (alpha * self.f + beta) * r + p,
        };
        self.symbols[idx].clone()
    }

    pub fn a_name(&self, alpha: usize, row: usize, col: usize) -> Symbol {
        self.name(Slot::A { alpha, row, col })
    }

    pub fn b_name(&self, alpha: usize, row: usize, col: usize) -> Symbol {
        self.name(Slot::B { alpha, row, col })
    }

    /// Value of every symbol at a concrete spec.
    pub fn value(&self, spec: &ExtensionSpec, slot: Slot) -> Rational {
        match slot {
            Slot::A { alpha, row, col } => spec.a(alpha)[(row, col)].clone(),
            Slot::B { alpha, row, col } => spec.b(alpha)[(row, col)].clone(),
            Slot::Sigma { alpha, beta, p } => spec.sigma(alpha, beta)[p].clone(),
        }
    }

    fn check_spec(&self, spec: &ExtensionSpec) -> Result<()> {
        if spec.n() != self.n() || spec.f() != self.f {
            return Err(Error::Shape(format!(
                "constraints are for n = {}, f = {} but the spec has n = {}, f = {}",
                self.n(),
                self.f,
                spec.n(),
                spec.f()
            )));
        }
        Ok(())
    }

    /// Structure constants with polynomial entries, `products[i*d + j]`
    /// listing `(k, c_ij^k)`.
    fn products(&self) -> Vec<Vec<(usize, MultiPoly)>> {
        let r = self.basis.len();
        let d = r + self.f;
        let mut out = vec![Vec::new(); d * d];
        for x in 0..r {
            for y in 0..r {
                out[x * d + y] = self
                    .basis
                    .bracket(x, y)
                    .into_iter()
                    .map(|(k, c)| (k, MultiPoly::constant(rational::int(c))))
                    .collect();
            }
        }
        for alpha in 0..self.f {
            let xa = r + alpha;
            for row in 0..r {
                out[xa * d + row] = (0..r)
                    .map(|col| (col, MultiPoly::var(&self.a_name(alpha, row, col))))
                    .collect();
                out[row * d + xa] = (0..r)
                    .map(|col| (col, MultiPoly::var(&self.b_name(alpha, row, col))))
                    .collect();
            }
            for beta in 0..self.f {
                out[xa * d + r + beta] = (0..r)
                    .map(|p| (p, MultiPoly::var(&self.name(Slot::Sigma { alpha, beta, p }))))
                    .collect();
            }
        }
        out
    }

    fn label(&self, i: usize) -> String {
        let r = self.basis.len();
        if i < r {
            self.basis.label(self.basis.order()[i])
        } else {
            format!("X{}", i - r + 1)
        }
    }
}

fn name_of(basis: &TriBasis, f: usize, slot: Slot) -> String {
    let lab = |p: usize| basis.short_label(basis.order()[p]);
    let pair = |a: usize, b: usize| {
        if f >= 10 {
            format!("{}_{}", a + 1, b + 1)
        } else {
            format!("{}{}", a + 1, b + 1)
        }
    };
    match slot {
        Slot::A { alpha, row, col } => format!("A{}_{}_{}", alpha + 1, lab(row), lab(col)),
        Slot::B { alpha, row, col } => format!("B{}_{}_{}", alpha + 1, lab(row), lab(col)),
        Slot::Sigma { alpha, beta, p } => format!("s{}_{}", pair(alpha, beta), lab(p)),
    }
}

/// The coefficient of one basis element in the Leibniz residual
/// `[x,[y,z]] - [[x,y],z] - [y,[x,z]]` of one basis triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintPoly {
    pub family: Family,
    pub triple: [String; 3],
    pub component: String,
    pub poly: MultiPoly,
}

#[derive(Clone, Debug)]
pub struct ConstraintSet {
    pub generic: GenericExtension,
    pub linear: Vec<ConstraintPoly>,
    pub bilinear: Vec<ConstraintPoly>,
}

fn family_of(types: [bool; 3]) -> Option<Family> {
    // true marks an X.
    Some(match types {
        [true, false, false] => Family::F4a,
        [false, false, true] => Family::F4b,
        [false, true, false] => Family::F4c,
        [true, true, false] => Family::F6a,
        [true, false, true] => Family::F6b,
        [false, true, true] => Family::F6c,
        [true, true, true] => Family::F7,
        [false, false, false] => return None,
    })
}

/// Expands the Leibniz identity on every basis triple of `L(n,f)`.
pub fn generate_constraints(n: usize, f: usize) -> Result<ConstraintSet> {
    if n < 3 {
        return Err(Error::TriangularSize(n));
    }
    let generic = GenericExtension::new(n, f)?;
    let r = generic.basis.len();
    let d = r + f;
    let prod = generic.products();
    let bracket_vec = |x: usize, v: &[MultiPoly], left: bool| -> Vec<MultiPoly> {
        // [e_x, v] when left, else [v, e_x].
        let mut out = vec![MultiPoly::zero(); d];
        for (l, coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let cell = if left { &prod[x * d + l] } else { &prod[l * d + x] };
            for (m, c) in cell {
                out[*m].add_assign_ref(&coef.mul_ref(c));
            }
        }
        out
    };
    let basis_product = |i: usize, j: usize| -> Vec<MultiPoly> {
        let mut v = vec![MultiPoly::zero(); d];
        for (k, c) in &prod[i * d + j] {
            v[*k] = c.clone();
        }
        v
    };
    let mut linear = Vec::new();
    let mut bilinear = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let Some(family) = family_of([i >= r, j >= r, k >= r]) else {
                    continue;
                };
                let first = bracket_vec(i, &basis_product(j, k), true);
                let second = bracket_vec(k, &basis_product(i, j), false);
                let third = bracket_vec(j, &basis_product(i, k), true);
                for m in 0..d {
                    let mut p = first[m].clone();
                    p.sub_assign_ref(&second[m]);
                    p.sub_assign_ref(&third[m]);
                    let Some(deg) = p.total_degree() else { continue };
                    let c = ConstraintPoly {
                        family,
                        triple: [generic.label(i), generic.label(j), generic.label(k)],
                        component: generic.label(m),
                        poly: p,
                    };
                    match deg {
                        1 => linear.push(c),
                        2 => bilinear.push(c),
                        _ => unreachable!("structure constants are at most bilinear"),
                    }
                }
            }
        }
    }
    Ok(ConstraintSet {
        generic,
        linear,
        bilinear,
    })
}

impl ConstraintSet {
    /// A set with no constraints at all.
    pub fn empty(n: usize, f: usize) -> Result<Self> {
        Ok(Self {
            generic: GenericExtension::new(n, f)?,
            linear: Vec::new(),
            bilinear: Vec::new(),
        })
    }

    pub fn all(&self) -> impl Iterator<Item = &ConstraintPoly> {
        self.linear.iter().chain(&self.bilinear)
    }

    /// `(linear, bilinear)` counts per family.
    pub fn counts_by_family(&self) -> BTreeMap<String, (usize, usize)> {
        let mut out: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for c in &self.linear {
            out.entry(c.family.to_string()).or_default().0 += 1;
        }
        for c in &self.bilinear {
            out.entry(c.family.to_string()).or_default().1 += 1;
        }
        out
    }

    /// Polynomials that do not vanish at the spec.
    pub fn failing_on(&self, spec: &ExtensionSpec) -> Result<Vec<&ConstraintPoly>> {
        self.generic.check_spec(spec)?;
        let values = self.values(spec);
        Ok(self
            .all()
            .filter(|c| !eval(&c.poly, &values).is_zero())
            .collect())
    }

    fn values(&self, spec: &ExtensionSpec) -> HashMap<Symbol, Rational> {
        self.generic
            .symbols
            .iter()
            .zip(&self.generic.slots)
            .map(|(s, slot)| (s.clone(), self.generic.value(spec, *slot)))
            .collect()
    }
}

fn eval(p: &MultiPoly, values: &HashMap<Symbol, Rational>) -> Rational {
    p.eval(|s| values.get(s).cloned()).expect("every symbol has a value")
}

/// True iff every polynomial from a triple with two or three `X`'s vanishes
/// at the spec. This includes the ones that happen to be linear (only
/// `sigma` appears), so the answer matches `residuals_sigma`.
pub fn check_bilinear_on(cs: &ConstraintSet, spec: &ExtensionSpec) -> Result<bool> {
    cs.generic.check_spec(spec)?;
    let values = cs.values(spec);
    Ok(cs
        .all()
        .filter(|c| !matches!(c.family, Family::F4a | Family::F4b | Family::F4c | Family::Rel5))
        .all(|c| eval(&c.poly, &values).is_zero()))
}

/// True iff every generated polynomial vanishes at the spec.
pub fn check_all_on(cs: &ConstraintSet, spec: &ExtensionSpec) -> Result<bool> {
    Ok(cs.failing_on(spec)?.is_empty())
}

/// `symbol = sum coef * free_symbol`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub symbol: String,
    pub terms: Vec<(String, String)>,
}

impl Relation {
    pub fn expression(&self) -> String {
        let mut out = String::new();
        for (idx, (sym, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = match c.strip_prefix('-') {
                Some(m) => (true, m),
                None => (false, c.as_str()),
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                out.push_str(mag);
                out.push('*');
            }
            out.push_str(sym);
        }
        out
    }
}

/// Result of reducing the linear constraints.
#[derive(Clone, Debug, Serialize)]
pub struct LinearReduction {
    pub n: usize,
    pub f: usize,
    pub symbol_count: usize,
    pub linear_count: usize,
    pub bilinear_count: usize,
    pub rank: usize,
    pub counts_by_family: BTreeMap<String, (usize, usize)>,
    /// Symbols that vanish on every solution.
    pub forced_zero: Vec<String>,
    /// Remaining pivot symbols in terms of free ones.
    pub relations: Vec<Relation>,
    /// Pivot relations of the form `B = -A` at the same position.
    pub pairings: Vec<(String, String)>,
    /// Non-pivot symbols.
    pub free: Vec<String>,
    /// Symbols set to zero by the shift normalization `X -> X + mu N`.
    pub shift_eliminated: Vec<String>,
    /// Symbols not identically zero once shifts are used up.
    pub survivors: Vec<String>,
    /// Off-diagonal `A`/`B` survivors outside the expected canonical support,
    /// and expected support positions that did not survive.
    pub support_mismatches: Vec<String>,
    #[serde(skip)]
    solution: BTreeMap<usize, SparseRow>,
    #[serde(skip)]
    order: Vec<usize>,
}

impl LinearReduction {
    /// True iff `sum coef * symbol = 0` on every solution of the linear system.
    pub fn implies(&self, cs: &ConstraintSet, combo: &[(&str, Rational)]) -> bool {
        let pos_of: HashMap<usize, usize> = self.order.iter().enumerate().map(|(c, s)| (*s, c)).collect();
        let mut acc: SparseRow = BTreeMap::new();
        for (name, coef) in combo {
            let Some(idx) = cs.generic.index(name) else {
                return false;
            };
            let col = pos_of[&idx];
            match self.solution.get(&col) {
                // pivot = -sum(row entries other than the pivot)
                Some(row) => {
                    for (c, v) in row {
                        if *c != col {
                            *acc.entry(*c).or_insert_with(Rational::zero) -= coef * v;
                        }
                    }
                }
                None => *acc.entry(col).or_insert_with(Rational::zero) += coef,
            }
        }
        acc.values().all(Zero::is_zero)
    }

    pub fn is_forced_zero(&self, name: &str) -> bool {
        self.forced_zero.iter().any(|s| s == name)
    }

    pub fn survives(&self, name: &str) -> bool {
        self.survivors.iter().any(|s| s == name)
    }
}

/// Column order for elimination: `B` before `A` so `B` symbols become
/// pivots, later basis rows first so composite diagonals are expressed in the
/// generators, and `sigma` last.
fn elimination_order(g: &GenericExtension) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..g.symbols.len()).collect();
    let r = g.basis.len();
    idx.sort_by_key(|&i| match g.slots[i] {
        Slot::B { alpha, row, col } => (0, alpha, r - row, r - col),
        Slot::A { alpha, row, col } => (1, alpha, r - row, r - col),
        Slot::Sigma { alpha, beta, p } => (2, alpha * g.f + beta, p, 0),
    });
    idx
}

fn solve(rows: &[SparseRow]) -> BTreeMap<usize, SparseRow> {
    let mut elim = SparseEliminator::new();
    for row in rows {
        elim.push(row.clone());
    }
    elim.into_rref()
}

/// Change of `(A, B)` coordinates under `X^a -> X^a + N_p`, as symbol
/// indices with coefficients.
fn shift_generators(g: &GenericExtension) -> Vec<Vec<(usize, Rational)>> {
    let r = g.basis.len();
    let mut out = Vec::new();
    for alpha in 0..g.f {
        for p in 0..r {
            let mut v = Vec::new();
            for row in 0..r {
                for (q, c) in g.basis.bracket(p, row) {
                    v.push((g.index(&g.a_name(alpha, row, q)).unwrap(), rational::int(c)));
                }
                for (q, c) in g.basis.bracket(row, p) {
                    v.push((g.index(&g.b_name(alpha, row, q)).unwrap(), rational::int(c)));
                }
            }
            if !v.is_empty() {
                out.push(v);
            }
        }
    }
    out
}

/// RREF of the linear constraints plus the canonical slice left after
/// spending the shift freedom on off-diagonal entries in basis order.
pub fn reduce_linear(cs: &ConstraintSet) -> LinearReduction {
    let g = &cs.generic;
    let order = elimination_order(g);
    let col_of: HashMap<usize, usize> = order.iter().enumerate().map(|(c, s)| (*s, c)).collect();
    let to_row = |p: &MultiPoly| -> SparseRow {
        let (_, lin) = p.as_affine().expect("linear polynomial");
        lin.into_iter()
            .map(|(s, c)| (col_of[&g.index(&s).expect("known symbol")], c))
            .collect()
    };
    let rows: Vec<SparseRow> = cs.linear.iter().map(|c| to_row(&c.poly)).collect();
    let solution = solve(&rows);
    let name = |col: usize| g.symbols[order[col]].to_string();

    let mut forced_zero = Vec::new();
    let mut relations = Vec::new();
    let mut pairings = Vec::new();
    for (col, row) in &solution {
        let rest: Vec<(usize, &Rational)> = row.iter().filter(|(c, _)| *c != col).map(|(c, v)| (*c, v)).collect();
        if rest.is_empty() {
            forced_zero.push(name(*col));
            continue;
        }
        let terms: Vec<(String, String)> = rest
            .iter()
            .map(|(c, v)| (name(*c), rational::to_string(&-(*v).clone())))
            .collect();
        if let ([(other, coef)], Slot::B { alpha, row: br, col: bc }) = (terms.as_slice(), g.slots[order[*col]]) {
            if coef == "-1" && g.slot(other) == Some(Slot::A { alpha, row: br, col: bc }) {
                pairings.push((name(*col), other.clone()));
            }
        }
        relations.push(Relation {
            symbol: name(*col),
            terms,
        });
    }
    let free: Vec<String> = (0..order.len()).filter(|c| !solution.contains_key(c)).map(name).collect();

    // Greedy choice of shift-eliminated coordinates: off-diagonal A entries
    // then B entries in basis order, kept when they add rank to the image of
    // the shift map.
    let gens = shift_generators(g);
    let r = g.basis.len();
    let mut candidates: Vec<usize> = Vec::new();
    for want_b in [false, true] {
        for alpha in 0..g.f {
            for row in 0..r {
                for col in 0..r {
                    if row == col {
                        continue;
                    }
                    let nm = if want_b { g.b_name(alpha, row, col) } else { g.a_name(alpha, row, col) };
                    candidates.push(g.index(&nm).unwrap());
                }
            }
        }
    }
    let target_rank = {
        let mut e = SparseEliminator::new();
        for v in &gens {
            e.push(v.iter().cloned().collect());
        }
        e.rank()
    };
    let mut chosen: Vec<usize> = Vec::new();
    let mut rank = 0;
    for cand in candidates {
        if rank == target_rank {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(cand);
        let m = RatMatrix::from_rows(
            gens.iter()
                .map(|v| {
                    trial
                        .iter()
                        .map(|s| v.iter().find(|(i, _)| i == s).map_or_else(Rational::zero, |(_, c)| c.clone()))
                        .collect()
                })
                .collect(),
        )
        .expect("rectangular");
        let new_rank = m.rank();
        if new_rank > rank {
            chosen = trial;
            rank = new_rank;
        }
    }
    let mut sliced = rows.clone();
    for s in &chosen {
        sliced.push(BTreeMap::from([(col_of[s], Rational::one())]));
    }
    let slice = solve(&sliced);
    let zero_on_slice: BTreeSet<usize> = slice
        .iter()
        .filter(|(col, row)| row.keys().all(|c| c == *col))
        .map(|(col, _)| *col)
        .collect();
    let survivors: Vec<String> = (0..order.len())
        .filter(|c| !zero_on_slice.contains(c))
        .map(name)
        .collect();
    let support_mismatches = support_mismatches(g, &survivors);

    LinearReduction {
        n: g.n(),
        f: g.f,
        symbol_count: g.symbols.len(),
        linear_count: cs.linear.len(),
        bilinear_count: cs.bilinear.len(),
        rank: solution.len(),
        counts_by_family: cs.counts_by_family(),
        forced_zero,
        relations,
        pairings,
        free,
        shift_eliminated: chosen.iter().map(|s| g.symbols[*s].to_string()).collect(),
        survivors,
        support_mismatches,
        solution,
        order,
    }
}

fn support_mismatches(g: &GenericExtension, survivors: &[String]) -> Vec<String> {
    let basis = &g.basis;
    let pos = |pairs: Vec<(crate::triangular::TriIndex, crate::triangular::TriIndex)>| -> BTreeSet<(usize, usize)> {
        pairs
            .into_iter()
            .map(|(a, b)| (basis.pos_of(a), basis.pos_of(b)))
            .collect()
    };
    let a_ok = pos(crate::extension::a_support(basis));
    let b_ok = pos(crate::extension::b_support(basis));
    let mut out = Vec::new();
    let surv: BTreeSet<&str> = survivors.iter().map(String::as_str).collect();
    for alpha in 0..g.f {
        for row in 0..basis.len() {
            for col in 0..basis.len() {
                if row == col {
                    continue;
                }
                for (is_b, ok) in [(false, &a_ok), (true, &b_ok)] {
                    let nm = if is_b { g.b_name(alpha, row, col) } else { g.a_name(alpha, row, col) };
                    let alive = surv.contains(&*nm);
                    let expected = ok.contains(&(row, col));
                    if alive && !expected {
                        out.push(format!("{nm} survives outside the expected support"));
                    } else if expected && !alive {
                        out.push(format!("{nm} is in the expected support but vanishes"));
                    }
                }
            }
        }
    }
    out
}
