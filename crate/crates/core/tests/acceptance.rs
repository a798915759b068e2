//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use leibniz_core::algebra::StructureConstants;
use leibniz_core::catalog::{
    default_samples, invariant_signature, verify_entry, Catalog, CatalogEntry, Instance, Params,
};
use leibniz_core::constraints::{check_all_on, check_bilinear_on, generate_constraints, reduce_linear};
use leibniz_core::extension::{
    apply_basis_transform, apply_shift, build_l, certify_nilradical, g1_matrix, g2_matrix, normalize_4,
    recombine_x, residuals_4, residuals_sigma, shape_check, zero_pattern, ExtensionSpec, Family, ShiftParams,
};
use leibniz_core::linalg::rational::{frac, int};
use leibniz_core::linalg::{RatMatrix, Rational};
use leibniz_core::triangular::{build_t, TriBasis, TriIndex};

type Check = Result<String, String>;

const SEED: u64 = 20_240_611;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn t(i: usize, k: usize) -> TriIndex {
    TriIndex::new(i, k)
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    let p = rng.gen_range(-3..=3);
    if rng.gen_bool(0.25) {
        frac(p, 2)
    } else {
        int(p)
    }
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let v = small(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

// ---------------------------------------------------------------------------
// 1. T(n) construction

fn criterion_1() -> Check {
    let start = Instant::now();
    for n in 2..=6 {
        let l = build_t(n).map_err(|e| e.to_string())?;
        ensure(l.dim() == n * (n - 1) / 2, || format!("dim T({n}) = {}", l.dim()))?;
        ensure(l.check_leibniz().is_empty(), || format!("T({n}) fails the Leibniz identity"))?;
        ensure(l.is_lie(), || format!("T({n}) is not Lie"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 1.0, || format!("took {secs:.3} s"))?;
    Ok(format!("dims 1,3,6,10,15 in {secs:.3} s"))
}

// ---------------------------------------------------------------------------
// 2. T(4) series by brute force

/// Independent span computation: rank of the stacked vectors, and an echelon
/// basis read from the reduced rows.
fn echelon(vectors: &[Vec<Rational>], d: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RatMatrix::from_rows(vectors.to_vec()).unwrap();
    let r = m.rref();
    (0..r.rank).map(|i| (0..d).map(|c| r.matrix[(i, c)].clone()).collect()).collect()
}

fn bracket_by_hand(l: &StructureConstants, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let d = l.dim();
    let mut out = vec![Rational::zero(); d];
    for i in 0..d {
        for j in 0..d {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            for (k, slot) in out.iter_mut().enumerate() {
                *slot += &x[i] * &y[j] * l.get(i, j, k);
            }
        }
    }
    out
}

fn unit(d: usize, i: usize) -> Vec<Rational> {
    (0..d).map(|k| if k == i { int(1) } else { int(0) }).collect()
}

fn criterion_2() -> Check {
    let l = build_t(4).map_err(|e| e.to_string())?;
    let d = l.dim();
    let whole: Vec<Vec<Rational>> = (0..d).map(|i| unit(d, i)).collect();
    let mut lcs = vec![d];
    let mut cur = whole.clone();
    while !cur.is_empty() {
        let products: Vec<_> = whole.iter().flat_map(|x| cur.iter().map(|y| bracket_by_hand(&l, x, y))).collect();
        cur = echelon(&products, d);
        lcs.push(cur.len());
    }
    let mut derived = Vec::new();
    let mut cur = whole;
    loop {
        let products: Vec<_> = cur.iter().flat_map(|x| cur.iter().map(|y| bracket_by_hand(&l, x, y))).collect();
        cur = echelon(&products, d);
        derived.push(cur.len());
        if cur.is_empty() {
            break;
        }
    }
    ensure(lcs == [6, 3, 1, 0], || format!("lower central dims {lcs:?}"))?;
    ensure(derived == [3, 0], || format!("derived dims {derived:?}"))?;
    let lib_lcs: Vec<usize> = std::iter::once(d).chain(l.lower_central_series().iter().map(|s| s.dim())).collect();
    let lib_derived: Vec<usize> = l.derived_series().iter().map(|s| s.dim()).collect();
    ensure(lib_lcs == lcs && lib_derived == derived, || {
        format!("library series {lib_lcs:?} / {lib_derived:?} disagree with brute force")
    })?;
    Ok(format!("lower central {lcs:?}, derived {derived:?}"))
}

// ---------------------------------------------------------------------------
// 3. Catalog reproduction

fn criterion_3() -> Check {
    let start = Instant::now();
    let cat = Catalog::builtin();
    let f1 = cat.entries.iter().filter(|e| e.shape() == Some((4, 1))).count();
    let f2 = cat.entries.iter().filter(|e| e.shape() == Some((4, 2))).count();
    ensure(f1 == 10 && f2 == 1, || format!("{f1} entries of L(4,1), {f2} of L(4,2)"))?;
    ensure(cat.get("L(c)").is_ok(), || "L(c) missing".into())?;
    let mut checked = 0;
    for e in &cat.entries {
        let samples = default_samples(e).map_err(|x| x.to_string())?;
        ensure(samples.len() >= 5, || format!("{}: only {} samples", e.id, samples.len()))?;
        let rep = verify_entry(e, &samples).map_err(|x| x.to_string())?;
        ensure(rep.passed, || format!("{}: {:?}", e.id, rep.failure))?;
        for s in &rep.samples {
            ensure(s.leibniz && !s.lie && s.dimension_bound, || format!("{}: {:?}", e.id, s.params))?;
            if e.is_extension() {
                ensure(s.nilradical_certified == Some(true), || format!("{}: not certified", e.id))?;
            }
            checked += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.2} s"))?;
    Ok(format!("10 + 1 extension entries and L(c), {checked} samples in {secs:.2} s"))
}

// ---------------------------------------------------------------------------
// 4. A_{14,14} != 0 with sigma != 0 breaks family 7

fn sigma_sample(e: &CatalogEntry) -> Params {
    let mut p: Params = e.parameters.iter().map(|k| (k.clone(), int(1))).collect();
    if let Some(a) = p.get_mut("a") {
        *a = int(2);
    }
    p
}

fn criterion_4() -> Check {
    let cat = Catalog::builtin();
    let top = t(1, 4);
    let mut count = 0;
    for e in cat.entries.iter().filter(|e| e.is_extension()) {
        let params = sigma_sample(e);
        let Instance::Extension(mut spec) = e.instantiate(&params).map_err(|x| x.to_string())? else {
            unreachable!()
        };
        let sigma = spec.sigma_top(0, 0).clone();
        ensure(!sigma.is_zero(), || format!("{}: sample has sigma = 0", e.id))?;
        ensure(residuals_sigma(&spec).is_clean(), || format!("{}: unmutated spec fails", e.id))?;
        spec.set_a(0, top, top, int(1));
        spec.set_b(0, top, top, int(-1));
        let rep = residuals_sigma(&spec);
        let hit = rep.residuals.iter().find(|r| {
            r.family == Family::F7 && r.alphas == [1, 1, 1] && r.component == "N14"
        });
        ensure(hit.is_some_and(|r| r.value == sigma), || {
            format!("{}: family 7 residual {:?}, expected {sigma}", e.id, hit.map(|r| &r.value))
        })?;
        count += 1;
    }
    Ok(format!("{count} entries, residual equals sigma^11 exactly"))
}

// ---------------------------------------------------------------------------
// 5. Linear constraints for L(4,1) against an independent elimination

/// `(is_b, row, col)` over 0-based basis positions.
type Sym = (bool, usize, usize);

fn oracle_matrix(basis: &TriBasis) -> (Vec<Sym>, RatMatrix) {
    let r = basis.len();
    let syms: Vec<Sym> = [false, true]
        .iter()
        .flat_map(|&b| (0..r).flat_map(move |i| (0..r).map(move |j| (b, i, j))))
        .collect();
    let d = r + 1;
    let mut columns = Vec::new();
    for &(is_b, row, col) in &syms {
        let mut spec = ExtensionSpec::zero(4, 1).unwrap();
        let (x, y) = (basis.order()[row], basis.order()[col]);
        if is_b {
            spec.set_b(0, x, y, int(1));
        } else {
            spec.set_a(0, x, y, int(1));
        }
        let l = build_l(&spec);
        // Residuals of triples with exactly one X, which are linear in A, B.
        let mut col_vec = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if [i, j, k].iter().filter(|&&v| v == r).count() != 1 {
                        continue;
                    }
                    col_vec.extend(l.leibniz_residual(i, j, k).coords);
                }
            }
        }
        columns.push(col_vec);
    }
    let rows = columns[0].len();
    let m = RatMatrix::from_rows((0..rows).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect()).unwrap();
    (syms, m)
}

fn criterion_5() -> Check {
    let cs = generate_constraints(4, 1).map_err(|e| e.to_string())?;
    let red = reduce_linear(&cs);
    let basis = TriBasis::new(4).unwrap();
    let (syms, m) = oracle_matrix(&basis);
    let rank = m.rank();
    let name = |(is_b, row, col): Sym| {
        format!(
            "{}1_{}_{}",
            if is_b { "B" } else { "A" },
            basis.short_label(basis.order()[row]),
            basis.short_label(basis.order()[col])
        )
    };
    let implied_by_oracle = |combo: &[(Sym, Rational)]| {
        let mut row = vec![Rational::zero(); syms.len()];
        for (s, c) in combo {
            row[syms.iter().position(|x| x == s).unwrap()] += c;
        }
        let mut rows = m.row_vecs();
        rows.push(row);
        RatMatrix::from_rows(rows).unwrap().rank() == rank
    };
    let implied_both = |combo: &[(Sym, Rational)]| -> Result<bool, String> {
        let named: Vec<(String, Rational)> = combo.iter().map(|(s, c)| (name(*s), c.clone())).collect();
        let refs: Vec<(&str, Rational)> = named.iter().map(|(s, c)| (s.as_str(), c.clone())).collect();
        let ours = red.implies(&cs, &refs);
        let theirs = implied_by_oracle(combo);
        ensure(ours == theirs, || format!("disagreement on {named:?}: reduction {ours}, oracle {theirs}"))?;
        Ok(ours)
    };
    let r = basis.len();
    let top = basis.top();
    // Forced zeros among A/B agree.
    let oracle_zero: BTreeSet<String> = syms
        .iter()
        .filter(|s| implied_by_oracle(&[(**s, int(1))]))
        .map(|s| name(*s))
        .collect();
    let ours_zero: BTreeSet<String> =
        red.forced_zero.iter().filter(|s| !s.starts_with('s')).cloned().collect();
    ensure(oracle_zero == ours_zero, || {
        format!("forced zeros differ: {:?}", oracle_zero.symmetric_difference(&ours_zero).collect::<Vec<_>>())
    })?;
    // (a) B = -A off the 1n column, and not forced on the upper part of it.
    for row in 0..r {
        for col in 0..r {
            let pair = [((true, row, col), int(1)), ((false, row, col), int(1))];
            let implied = implied_both(&pair)?;
            if col != top {
                ensure(implied, || format!("B = -A not derived at {}", name((true, row, col))))?;
            }
        }
    }
    for row in [t(1, 2), t(2, 3), t(3, 4)] {
        let p = basis.pos_of(row);
        let pair = [((true, p, top), int(1)), ((false, p, top), int(1))];
        ensure(!implied_both(&pair)?, || format!("B = -A wrongly forced at row {row}"))?;
    }
    // (b) diagonal sums.
    for (p, ti) in basis.order().iter().enumerate() {
        if ti.level() == 1 {
            continue;
        }
        for is_b in [false, true] {
            let mut combo = vec![((is_b, p, p), int(1))];
            for j in ti.i..ti.k {
                let g = basis.pos(j, j + 1).unwrap();
                combo.push(((is_b, g, g), int(-1)));
            }
            ensure(implied_both(&combo)?, || format!("diagonal sum not derived at {ti}"))?;
        }
    }
    // (c) off-diagonal pattern of A before shifts, with its three relations.
    let allowed: BTreeSet<(TriIndex, TriIndex)> = [
        (t(1, 2), t(1, 3)),
        (t(1, 2), t(2, 4)),
        (t(1, 2), t(1, 4)),
        (t(2, 3), t(1, 3)),
        (t(2, 3), t(2, 4)),
        (t(2, 3), t(1, 4)),
        (t(3, 4), t(1, 3)),
        (t(3, 4), t(2, 4)),
        (t(3, 4), t(1, 4)),
        (t(1, 3), t(1, 4)),
        (t(2, 4), t(1, 4)),
    ]
    .into_iter()
    .collect();
    for row in 0..r {
        for col in 0..r {
            if row == col {
                continue;
            }
            let pos = (basis.order()[row], basis.order()[col]);
            let zero = red.is_forced_zero(&name((false, row, col)));
            ensure(zero != allowed.contains(&pos), || format!("A pattern differs at {},{}", pos.0, pos.1))?;
        }
    }
    let p = |x: TriIndex| basis.pos_of(x);
    for (lhs, rhs, c) in [
        ((t(3, 4), t(2, 4)), (t(1, 2), t(1, 3)), int(1)),
        ((t(1, 3), t(1, 4)), (t(2, 3), t(2, 4)), int(-1)),
        ((t(2, 4), t(1, 4)), (t(2, 3), t(1, 3)), int(-1)),
    ] {
        let combo = [((false, p(lhs.0), p(lhs.1)), int(1)), ((false, p(rhs.0), p(rhs.1)), c)];
        ensure(implied_both(&combo)?, || format!("relation at {},{} not derived", lhs.0, lhs.1))?;
    }
    // Against shape_check: a single off-diagonal entry passes the canonical
    // shape check iff it survives the shift normalization.
    let mut agree = 0;
    for row in 0..r {
        for col in row + 1..r {
            for is_b in [false, true] {
                let mut spec = ExtensionSpec::zero(4, 1).unwrap();
                let (x, y) = (basis.order()[row], basis.order()[col]);
                if is_b {
                    spec.set_b(0, x, y, int(1));
                } else {
                    spec.set_a(0, x, y, int(1));
                }
                let survives = red.survives(&name((is_b, row, col)));
                ensure(shape_check(&spec).ok == survives, || {
                    format!("shape_check and reduction disagree at {}", name((is_b, row, col)))
                })?;
                agree += 1;
            }
        }
    }
    ensure(red.support_mismatches.is_empty(), || format!("{:?}", red.support_mismatches))?;
    Ok(format!(
        "rank {rank} on A/B, {} forced zeros, {agree} shape positions agree",
        ours_zero.len()
    ))
}

// ---------------------------------------------------------------------------
// Random valid specs

fn random_diagonal_spec(rng: &mut ChaCha8Rng, f: usize) -> ExtensionSpec {
    loop {
        let mats: Vec<RatMatrix> = (0..f)
            .map(|_| {
                let g: Vec<Rational> = (0..3).map(|_| small(rng)).collect();
                let d = [
                    g[0].clone(),
                    g[1].clone(),
                    g[2].clone(),
                    &g[0] + &g[1],
                    &g[1] + &g[2],
                    &g[0] + &g[1] + &g[2],
                ];
                RatMatrix::diagonal(&d)
            })
            .collect();
        let spec = ExtensionSpec::antisymmetric(4, mats).unwrap();
        if certify_nilradical(&spec).is_ok_and(|c| c.certified) {
            return spec;
        }
    }
}

fn random_catalog_spec(rng: &mut ChaCha8Rng, cat: &Catalog, f: usize) -> ExtensionSpec {
    let pool: Vec<&CatalogEntry> = cat.entries.iter().filter(|e| e.shape() == Some((4, f))).collect();
    let e = pool[rng.gen_range(0..pool.len())];
    loop {
        let p: Params = e.parameters.iter().map(|k| (k.clone(), small(rng))).collect();
        if let Ok(Instance::Extension(s)) = e.instantiate(&p) {
            return s;
        }
    }
}

#[derive(Clone)]
struct Chain {
    shift: ShiftParams,
    g: RatMatrix,
    m: RatMatrix,
}

fn random_chain(rng: &mut ChaCha8Rng, f: usize) -> Chain {
    let mut shift = ShiftParams::zero(f, 6);
    for row in shift.mu.iter_mut() {
        for v in row.iter_mut() {
            *v = small(rng);
        }
    }
    let g1 = g1_matrix(small(rng), small(rng), small(rng), small(rng), small(rng));
    let g2 = g2_matrix(&[nonzero(rng), nonzero(rng), nonzero(rng)]).unwrap();
    let g = g2.mul(&g1).unwrap();
    let m = loop {
        let m = RatMatrix::from_rows((0..f).map(|_| (0..f).map(|_| small(rng)).collect()).collect()).unwrap();
        if m.is_invertible() {
            break m;
        }
    };
    Chain { shift, g, m }
}

fn apply_chain(spec: &ExtensionSpec, c: &Chain) -> Result<ExtensionSpec, String> {
    let s = apply_shift(spec, &c.shift).map_err(|e| e.to_string())?;
    let s = apply_basis_transform(&s, &c.g).map_err(|e| e.to_string())?;
    recombine_x(&s, &c.m).map_err(|e| e.to_string())
}

fn undo_chain(spec: &ExtensionSpec, c: &Chain) -> Result<ExtensionSpec, String> {
    let s = recombine_x(spec, &c.m.inverse().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let s = apply_basis_transform(&s, &c.g.inverse().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    apply_shift(&s, &c.shift.neg()).map_err(|e| e.to_string())
}

fn random_valid(rng: &mut ChaCha8Rng, cat: &Catalog, f: usize) -> Result<ExtensionSpec, String> {
    let base = if rng.gen_bool(0.5) {
        random_catalog_spec(rng, cat, f)
    } else {
        random_diagonal_spec(rng, f)
    };
    apply_chain(&base, &random_chain(rng, f))
}

// ---------------------------------------------------------------------------
// 6. Leibniz identity iff all generated polynomials vanish

fn perturb(rng: &mut ChaCha8Rng, spec: &ExtensionSpec) -> ExtensionSpec {
    let mut s = spec.clone();
    let basis = s.basis().clone();
    let alpha = rng.gen_range(0..s.f());
    let x = basis.order()[rng.gen_range(0..6)];
    let y = basis.order()[rng.gen_range(0..6)];
    let delta = nonzero(rng);
    match rng.gen_range(0..3) {
        0 => {
            let v = s.a_entry(alpha, x, y) + &delta;
            s.set_a(alpha, x, y, v);
        }
        1 => {
            let v = s.b_entry(alpha, x, y) + &delta;
            s.set_b(alpha, x, y, v);
        }
        _ => {
            let beta = rng.gen_range(0..s.f());
            let p = basis.pos_of(x);
            let v = &s.sigma(alpha, beta)[p] + &delta;
            s.set_sigma(alpha, beta, x, v);
        }
    }
    s
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cat = Catalog::builtin();
    let sets = [generate_constraints(4, 1).unwrap(), generate_constraints(4, 2).unwrap()];
    let (mut valid, mut invalid) = (0, 0);
    for i in 0..100 {
        let f = 1 + i % 2;
        let base = random_valid(&mut rng, &cat, f)?;
        let spec = if i % 4 < 2 { base } else { perturb(&mut rng, &base) };
        let leibniz = build_l(&spec).check_leibniz().is_empty();
        let cs = &sets[f - 1];
        let vanish = check_all_on(cs, &spec).map_err(|e| e.to_string())?;
        ensure(leibniz == vanish, || format!("spec {i}: Leibniz {leibniz}, polynomials vanish {vanish}"))?;
        let two_x = check_bilinear_on(cs, &spec).map_err(|e| e.to_string())?;
        ensure(two_x == residuals_sigma(&spec).is_clean(), || format!("spec {i}: bilinear check disagrees"))?;
        ensure(
            leibniz == (residuals_4(&spec).is_clean() && residuals_sigma(&spec).is_clean()),
            || format!("spec {i}: residual families disagree"),
        )?;
        if leibniz {
            valid += 1;
        } else {
            invalid += 1;
        }
    }
    ensure(valid > 0 && invalid > 0, || format!("degenerate sample: {valid} valid, {invalid} invalid"))?;
    Ok(format!("100 specs (seed {SEED}), {valid} Leibniz, {invalid} not, 0 disagreements"))
}

// ---------------------------------------------------------------------------
// 7. Transformations preserve validity and invert exactly

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let cat = Catalog::builtin();
    for i in 0..50 {
        let f = 1 + i % 2;
        let spec = random_valid(&mut rng, &cat, f)?;
        let chain = random_chain(&mut rng, f);
        let moved = apply_chain(&spec, &chain)?;
        let before = build_l(&spec).is_leibniz();
        let after = build_l(&moved).is_leibniz();
        ensure(before && after, || format!("spec {i}: Leibniz {before} -> {after}"))?;
        let cert = |s: &ExtensionSpec| certify_nilradical(s).map(|c| c.certified).map_err(|e| e.to_string());
        ensure(cert(&spec)? == cert(&moved)?, || format!("spec {i}: certificate changed"))?;
        let back = undo_chain(&moved, &chain)?;
        ensure(back == spec, || format!("spec {i}: inverse chain does not restore the spec"))?;
    }
    Ok(format!("50 specs and chains (seed {}), all restored", SEED + 7))
}

// ---------------------------------------------------------------------------
// 8. Normalization recovers pattern and signature

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let cat = Catalog::builtin();
    let mut runs = 0;
    for e in cat.entries.iter().filter(|e| e.shape() == Some((4, 1))) {
        for params in default_samples(e).map_err(|x| x.to_string())?.iter().take(2) {
            let Instance::Extension(spec) = e.instantiate(params).map_err(|x| x.to_string())? else {
                unreachable!()
            };
            let chain = random_chain(&mut rng, 1);
            let scrambled = apply_chain(&spec, &chain)?;
            let out = normalize_4(&scrambled).map_err(|x| x.to_string())?;
            let (want, got) = (zero_pattern(&spec), zero_pattern(&out));
            ensure(want == got, || format!("{} at {params:?}: pattern {got:?}, expected {want:?}", e.id))?;
            let (s1, s2) = (invariant_signature(&spec.build()), invariant_signature(&out.build()));
            ensure(s1 == s2, || format!("{} at {params:?}: signature changed", e.id))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} scrambled instances of the 10 entries (seed {})", SEED + 8))
}

// ---------------------------------------------------------------------------
// 9. n = 5, f = 4

fn criterion_9() -> Check {
    let basis = TriBasis::new(5).unwrap();
    let mats: Vec<RatMatrix> = (1..=4)
        .map(|g| {
            let d: Vec<Rational> = basis.order().iter().map(|x| int(i64::from(x.i <= g && g < x.k))).collect();
            RatMatrix::diagonal(&d)
        })
        .collect();
    let spec = ExtensionSpec::antisymmetric(5, mats).unwrap();
    let l = build_l(&spec);
    ensure(l.dim() == 14 && l.check_leibniz().is_empty() && l.is_lie(), || "base spec is not a Lie algebra".into())?;
    let cert = certify_nilradical(&spec).map_err(|e| e.to_string())?;
    ensure(cert.certified, || format!("nilradical not certified: {:?}", cert.notes))?;
    let mut attempts = 0;
    for beta in 0..4 {
        for x in basis.order() {
            let mut s = spec.clone();
            s.set_sigma(beta, beta, *x, int(1));
            ensure(!residuals_sigma(&s).is_clean(), || format!("sigma^{0}{0} at {x} passes", beta + 1))?;
            ensure(!build_l(&s).is_leibniz(), || format!("sigma^{0}{0} at {x} builds a Leibniz algebra", beta + 1))?;
            attempts += 1;
        }
    }
    Ok(format!("Lie with nilradical T(5); all {attempts} sigma^(bb) additions fail"))
}

// ---------------------------------------------------------------------------
// 10. n = 5, f = 1 support

fn criterion_10() -> Check {
    let n = 5;
    let cs = generate_constraints(n, 1).map_err(|e| e.to_string())?;
    let red = reduce_linear(&cs);
    let basis = TriBasis::new(n).unwrap();
    let label = |x: TriIndex| basis.short_label(x);
    let mut expected: BTreeSet<String> = BTreeSet::new();
    let mut a_pos = vec![(t(1, 2), t(2, n)), (t(n - 1, n), t(1, n - 1))];
    a_pos.extend((2..=n - 2).map(|j| (t(j, j + 1), t(1, n))));
    for (x, y) in &a_pos {
        expected.insert(format!("A1_{}_{}", label(*x), label(*y)));
        expected.insert(format!("B1_{}_{}", label(*x), label(*y)));
    }
    for j in 1..n {
        expected.insert(format!("B1_{}_{}", label(t(j, j + 1)), label(t(1, n))));
    }
    let off_diagonal: BTreeSet<String> = red
        .survivors
        .iter()
        .filter(|s| {
            let parts: Vec<&str> = s.split('_').collect();
            !s.starts_with('s') && parts[1] != parts[2]
        })
        .cloned()
        .collect();
    ensure(off_diagonal == expected, || {
        format!(
            "survivors differ: {:?}",
            off_diagonal.symmetric_difference(&expected).collect::<Vec<_>>()
        )
    })?;
    ensure(red.support_mismatches.is_empty(), || format!("{:?}", red.support_mismatches))?;
    Ok(format!("{} off-diagonal survivors match", off_diagonal.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("triangular construction", criterion_1),
        ("T(4) series", criterion_2),
        ("table reproduction", criterion_3),
        ("A_14,14 with sigma falsification", criterion_4),
        ("constraint derivation oracle", criterion_5),
        ("equivalence oracle", criterion_6),
        ("transformation invariance", criterion_7),
        ("normalization round trip", criterion_8),
        ("n = 5, f = 4 instance", criterion_9),
        ("n = 5 support", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
