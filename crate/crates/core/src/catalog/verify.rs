use std::collections::BTreeMap;

use serde::Serialize;

use super::{CatalogEntry, EntryKind, Expectation, Instance, Params};
use crate::algebra::{Element, StructureConstants};
use crate::error::{Error, Result};
use crate::extension::{a_support, b_support, certify_nilradical, shape_check};
use crate::linalg::{rational, MultiPoly, Rational};
use crate::triangular::TriBasis;

const POOL: [(i64, i64); 5] = [(-2, 1), (-1, 1), (0, 1), (1, 2), (3, 1)];
/// Values tried after the pool when fewer than five samples are admissible.
const EXTRA: [(i64, i64); 4] = [(2, 1), (-1, 3), (5, 1), (-7, 2)];

pub const MIN_SAMPLES: usize = 5;

fn show(params: &Params) -> BTreeMap<String, String> {
    params.iter().map(|(k, v)| (k.clone(), rational::to_string(v))).collect()
}

/// Shipped samples, then the rotating assignments of `{-2, -1, 0, 1/2, 3}`
/// (`k`-th sample sets the `j`-th parameter to `pool[(k + j) mod 5]`),
/// filtered by the conditions; topped up from the product of the pool and a
/// few extra values until at least five are admissible.
pub fn default_samples(entry: &CatalogEntry) -> Result<Vec<Params>> {
    let pool: Vec<Rational> = POOL.iter().map(|&(p, q)| rational::frac(p, q)).collect();
    let mut out: Vec<Params> = Vec::new();
    let push = |p: Params, out: &mut Vec<Params>| -> Result<()> {
        if !out.contains(&p) && entry.admissible(&p)? {
            out.push(p);
        }
        Ok(())
    };
    for s in &entry.samples {
        push(s.clone(), &mut out)?;
    }
    let k_params = entry.parameters.len();
    if k_params == 0 {
        push(Params::new(), &mut out)?;
        return Ok(out);
    }
    for k in 0..pool.len() {
        let p = entry
            .parameters
            .iter()
            .enumerate()
            .map(|(j, name)| (name.clone(), pool[(k + j) % pool.len()].clone()))
            .collect();
        push(p, &mut out)?;
    }
    let wide: Vec<Rational> = pool
        .iter()
        .cloned()
        .chain(EXTRA.iter().map(|&(p, q)| rational::frac(p, q)))
        .collect();
    let mut counter = vec![0usize; k_params];
    while out.len() < MIN_SAMPLES {
        let p = entry
            .parameters
            .iter()
            .zip(&counter)
            .map(|(name, &i)| (name.clone(), wide[i].clone()))
            .collect();
        push(p, &mut out)?;
        // Odometer over the product, last parameter fastest.
        let mut j = k_params;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            counter[j] += 1;
            if counter[j] < wide.len() {
                break;
            }
            counter[j] = 0;
        }
    }
    Ok(out)
}

/// Parses `a=2,s11=1;a=0,s11=1/2` into parameter sets.
pub fn parse_samples(text: &str) -> Result<Vec<Params>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|sample| {
            sample
                .split(',')
                .filter(|kv| !kv.trim().is_empty())
                .map(|kv| {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("sample item {kv:?} is not name=value")))?;
                    Ok((k.trim().to_string(), rational::parse(v.trim())?))
                })
                .collect()
        })
        .collect()
}

/// Checks run on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub params: BTreeMap<String, String>,
    pub dim: usize,
    pub leibniz: bool,
    pub lie: bool,
    pub solvable: bool,
    pub nilpotent: bool,
    /// `None` for entries that are not extensions of `T(4)`.
    pub nilradical_certified: Option<bool>,
    pub shape_ok: Option<bool>,
    /// `N_1n` lies in the left annihilator.
    pub top_in_left_annihilator: Option<bool>,
    /// `[L,L]` lies in the span of the `N_ik`.
    pub derived_in_nilradical: Option<bool>,
    /// Dimension of the nilradical when it can be pinned down.
    pub nilradical_dim: Option<usize>,
    pub dimension_bound: bool,
    pub failures: Vec<String>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Nilradical dimension of a solvable, non-nilpotent algebra when `[L,L]`
/// has codimension one (then the nilradical is `[L,L]`).
fn raw_nilradical_dim(l: &StructureConstants) -> Option<usize> {
    let d = l.derived_algebra();
    (l.is_solvable() && !l.is_nilpotent() && d.dim() + 1 == l.dim() && l.is_nilpotent_subalgebra(&d))
        .then_some(d.dim())
}

fn check_instance(params: &Params, inst: &Instance) -> Result<SampleReport> {
    let l = inst.algebra();
    let leibniz = l.is_leibniz();
    let lie = l.is_lie();
    let mut rep = SampleReport {
        params: show(params),
        dim: l.dim(),
        leibniz,
        lie,
        solvable: l.is_solvable(),
        nilpotent: l.is_nilpotent(),
        nilradical_certified: None,
        shape_ok: None,
        top_in_left_annihilator: None,
        derived_in_nilradical: None,
        nilradical_dim: None,
        dimension_bound: false,
        failures: Vec::new(),
    };
    if !leibniz {
        rep.failures.push("Leibniz identity fails".into());
    }
    if lie {
        rep.failures.push("instance is a Lie algebra".into());
    }
    if !rep.solvable {
        rep.failures.push("not solvable".into());
    }
    if rep.nilpotent {
        rep.failures.push("nilpotent".into());
    }
    match inst {
        Instance::Extension(spec) => {
            let cert = if leibniz { Some(certify_nilradical(spec)?) } else { None };
            let certified = cert.as_ref().is_some_and(|c| c.certified);
            rep.nilradical_certified = Some(certified);
            if !certified {
                rep.failures.push("nilradical certificate fails".into());
            }
            let shape = shape_check(spec);
            rep.shape_ok = Some(shape.ok);
            rep.failures.extend(shape.violations.iter().map(|v| format!("shape: {v}")));
            let top = Element::basis(l.dim(), spec.basis().top());
            let in_ann = l.left_annihilator().contains(&top.coords);
            rep.top_in_left_annihilator = Some(in_ann);
            if !in_ann {
                rep.failures.push("N_1n is not in the left annihilator".into());
            }
            let inside = spec.nilradical_span().contains_subspace(&l.derived_algebra());
            rep.derived_in_nilradical = Some(inside);
            if !inside {
                rep.failures.push("[L,L] leaves the span of the N_ik".into());
            }
            if certified {
                rep.nilradical_dim = Some(spec.r());
            }
        }
        Instance::Raw(l) => rep.nilradical_dim = raw_nilradical_dim(l),
    }
    rep.dimension_bound = rep.nilradical_dim.is_some_and(|d| 2 * d >= rep.dim);
    if !rep.dimension_bound {
        rep.failures.push(match rep.nilradical_dim {
            Some(d) => format!("nilradical dimension {d} is below half of {}", rep.dim),
            None => "nilradical dimension not determined".into(),
        });
    }
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryReport {
    pub params: BTreeMap<String, String>,
    pub expect: Expectation,
    pub admissible: bool,
    pub leibniz: bool,
    pub lie: bool,
    pub nilpotent: bool,
    pub nilradical_certified: Option<bool>,
    /// False only when an expectation was stated and not met.
    pub as_expected: bool,
}

pub fn check_boundary(entry: &CatalogEntry, params: &Params, expect: Expectation) -> Result<BoundaryReport> {
    let inst = entry.instantiate_unchecked(params)?;
    let l = inst.algebra();
    let leibniz = l.is_leibniz();
    let lie = l.is_lie();
    let nilradical_certified = match (&inst, leibniz) {
        (Instance::Extension(spec), true) => Some(certify_nilradical(spec)?.certified),
        _ => None,
    };
    Ok(BoundaryReport {
        params: show(params),
        expect,
        admissible: entry.admissible(params)?,
        leibniz,
        lie,
        nilpotent: l.is_nilpotent(),
        nilradical_certified,
        as_expected: match expect {
            Expectation::Lie => leibniz && lie,
            Expectation::Report => true,
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub template_shape: Vec<String>,
    pub samples: Vec<SampleReport>,
    pub boundaries: Vec<BoundaryReport>,
    pub passed: bool,
    /// First failing check, as `sample: check`.
    pub failure: Option<String>,
}

impl EntryReport {
    /// Samples that turned out to be Lie algebras.
    pub fn lie_samples(&self) -> usize {
        self.samples.iter().filter(|s| s.lie).count()
    }
}

/// Runs every check on every sample, stopping at the first failing sample.
/// Inadmissible samples are rejected before anything runs.
pub fn verify_entry(entry: &CatalogEntry, samples: &[Params]) -> Result<EntryReport> {
    for s in samples {
        if let Some(c) = entry.violated(s)? {
            return Err(Error::ConditionViolated {
                entry: entry.id.clone(),
                condition: c.text.clone(),
            });
        }
    }
    let template_shape = symbolic_shape_check(entry);
    let mut failure = template_shape.first().map(|v| format!("template: {v}"));
    let mut reports = Vec::new();
    if failure.is_none() {
        for s in samples {
            let rep = check_instance(s, &entry.instantiate(s)?)?;
            let first = rep.failures.first().cloned();
            let shown = format!("{:?}", rep.params);
            reports.push(rep);
            if let Some(f) = first {
                failure = Some(format!("{shown}: {f}"));
                break;
            }
        }
    }
    if failure.is_none() && samples.is_empty() {
        failure = Some("no samples".into());
    }
    let boundaries = entry
        .boundaries
        .iter()
        .map(|b| check_boundary(entry, &b.params, b.expect))
        .collect::<Result<Vec<_>>>()?;
    if failure.is_none() {
        if let Some(b) = boundaries.iter().find(|b| !b.as_expected) {
            failure = Some(format!("boundary {:?} is not a Lie algebra", b.params));
        }
    }
    Ok(EntryReport {
        id: entry.id.clone(),
        template_shape,
        samples: reports,
        boundaries,
        passed: failure.is_none(),
        failure,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub entries: Vec<EntryReport>,
    pub passed: usize,
    pub total: usize,
    pub lie_leakage: usize,
}

impl CatalogReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total && self.lie_leakage == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "{}/{} entries pass, {} Lie leakage",
            self.passed, self.total, self.lie_leakage
        )
    }
}

/// Verifies entries in the given order, each with its default samples
/// unless `samples` is given.
pub fn verify_catalog(entries: &[&CatalogEntry], samples: Option<&[Params]>) -> Result<CatalogReport> {
    let mut reports = Vec::new();
    for e in entries {
        let s = match samples {
            Some(s) => s.to_vec(),
            None => default_samples(e)?,
        };
        reports.push(verify_entry(e, &s)?);
    }
    Ok(CatalogReport {
        passed: reports.iter().filter(|r| r.passed).count(),
        total: reports.len(),
        lie_leakage: reports.iter().map(EntryReport::lie_samples).sum(),
        entries: reports,
    })
}

/// The shape conditions checked identically in the parameters: support,
/// triangularity, diagonal sums, `B = -A` off the `1n` column and on the
/// `1n` diagonal entry.
pub fn symbolic_shape_check(entry: &CatalogEntry) -> Vec<String> {
    let EntryKind::Extension { n, a, b, .. } = &entry.kind else {
        return Vec::new();
    };
    let basis = TriBasis::new(*n).expect("validated when compiled");
    let r = basis.len();
    let label = |p: usize| basis.short_label(basis.order()[p]);
    let dense = |tpl: &Vec<(usize, usize, MultiPoly)>| {
        let mut m = vec![vec![MultiPoly::zero(); r]; r];
        for (row, col, e) in tpl {
            m[*row][*col] = e.clone();
        }
        m
    };
    let a_ok: Vec<_> = a_support(&basis)
        .into_iter()
        .map(|(x, y)| (basis.pos_of(x), basis.pos_of(y)))
        .collect();
    let b_ok: Vec<_> = b_support(&basis)
        .into_iter()
        .map(|(x, y)| (basis.pos_of(x), basis.pos_of(y)))
        .collect();
    let top = basis.top();
    let mut out = Vec::new();
    for (alpha, (ta, tb)) in a.iter().zip(b).enumerate() {
        let (ma, mb) = (dense(ta), dense(tb));
        for (name, m, ok) in [("A", &ma, &a_ok), ("B", &mb, &b_ok)] {
            for row in 0..r {
                for col in 0..r {
                    if row != col && !m[row][col].is_zero() && (row > col || !ok.contains(&(row, col))) {
                        out.push(format!("{name}{}_{{{},{}}} outside the support", alpha + 1, label(row), label(col)));
                    }
                }
            }
            for (p, t) in basis.order().iter().enumerate() {
                if t.level() == 1 {
                    continue;
                }
                let mut sum = MultiPoly::zero();
                for j in t.i..t.k {
                    let g = basis.pos(j, j + 1).expect("generator");
                    sum = sum + m[g][g].clone();
                }
                if m[p][p] != sum {
                    let x = label(p);
                    out.push(format!("{name}{}_{{{x},{x}}} is not the generator sum", alpha + 1));
                }
            }
        }
        for row in 0..r {
            for col in 0..r {
                if (col != top || row == top) && !(ma[row][col].clone() + mb[row][col].clone()).is_zero() {
                    out.push(format!("B{0}_{{{1},{2}}} != -A{0}_{{{1},{2}}}", alpha + 1, label(row), label(col)));
                }
            }
        }
    }
    out
}
