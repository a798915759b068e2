use leibniz_core::catalog::{default_samples, distinctness_report, verify_catalog, Catalog, Separation};

#[test]
fn whole_catalog_verifies() {
    let cat = Catalog::builtin();
    let entries: Vec<_> = cat.entries.iter().collect();
    let rep = verify_catalog(&entries, None).unwrap();
    for e in &rep.entries {
        assert!(e.passed, "{}: {:?}", e.id, e.failure);
        for b in &e.boundaries {
            println!("{} boundary {:?}: leibniz={} lie={} cert={:?}", e.id, b.params, b.leibniz, b.lie, b.nilradical_certified);
        }
    }
    assert!(rep.all_passed());
    assert_eq!(rep.summary(), "12/12 entries pass, 0 Lie leakage");
}

#[test]
fn distinctness_over_all_entries() {
    let cat = Catalog::builtin();
    let input: Vec<_> = cat.entries.iter().map(|e| (e, default_samples(e).unwrap())).collect();
    let rep = distinctness_report(&input).unwrap();
    for (a, b, s) in rep.undetermined() {
        println!("{a} vs {b}: {s:?}");
    }
    for id in cat.ids() {
        assert_eq!(rep.get(id, id), Some(Separation::Never));
    }
    assert_eq!(rep.get("T1-1", "T1-2"), Some(Separation::Always));
}

mod flip {
    use leibniz_core::algebra::StructureConstants;
    use leibniz_core::catalog::{parse_samples, Catalog};
    use leibniz_core::linalg::{rational::int, RatMatrix};
    use leibniz_core::triangular::TriBasis;

    fn algebra(id: &str, sample: &str) -> StructureConstants {
        let cat = Catalog::builtin();
        let p = parse_samples(sample).unwrap().remove(0);
        cat.get(id).unwrap().instantiate_unchecked(&p).unwrap().algebra()
    }

    /// `N_ik -> -g N_(5-k)(5-i)` with diagonal signs `g_ik = g_i ... g_(k-1)`
    /// after the flip, and `X -> x_sign X`.
    fn flip_map(signs: [i64; 3], x_sign: i64) -> RatMatrix {
        let b = TriBasis::new(4).unwrap();
        let mut m = RatMatrix::zeros(7, 7);
        for (p, t) in b.order().iter().enumerate() {
            let (i, k) = (5 - t.k, 5 - t.i);
            let g: i64 = (i..k).map(|j| signs[j - 1]).product();
            m[(b.pos(i, k).unwrap(), p)] = int(-g);
        }
        m[(6, 6)] = int(x_sign);
        m
    }

    fn related(src: &StructureConstants, dst: &StructureConstants) -> bool {
        for g in 0..8 {
            let signs = [g & 1, (g >> 1) & 1, (g >> 2) & 1].map(|s| if s == 1 { -1 } else { 1 });
            for x in [1, -1] {
                if src.is_isomorphism(dst, &flip_map(signs, x)).unwrap() {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn flip_identifies_catalog_pairs() {
        for s in ["s11=2", "s11=-1/2", "s11=0"] {
            let other = if s == "s11=0" { s.to_string() } else { format!("s11={}", negate(&s[4..])) };
            let found = [("T1-4", "T1-3"), ("T1-7", "T1-10")]
                .iter()
                .all(|(a, b)| related(&algebra(a, s), &algebra(b, s)) || related(&algebra(a, s), &algebra(b, &other)));
            assert!(found, "{s}");
        }
        for s in ["s11=2", "s11=-1/2"] {
            let other = format!("s11={}", negate(&s[4..]));
            let a = algebra("T1-6", s);
            assert!(related(&a, &algebra("T1-9", s)) || related(&a, &algebra("T1-9", &other)), "{s}");
            let five = algebra("T1-5", s);
            let one = |sig: &str| algebra("T1-1", &format!("a=-1,{sig}"));
            assert!(related(&five, &one(s)) || related(&five, &one(&other)), "{s}");
        }
    }

    #[test]
    fn flip_search_is_not_vacuous() {
        assert!(!related(&algebra("T1-4", "s11=1"), &algebra("T1-5", "s11=1")));
        assert!(!related(&algebra("T1-3", "s11=1"), &algebra("T1-2", "s11=1")));
    }

    fn negate(v: &str) -> String {
        v.strip_prefix('-').map_or_else(|| format!("-{v}"), str::to_string)
    }
}
