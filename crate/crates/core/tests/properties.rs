use itertools::Itertools;
use proptest::prelude::*;
use ramsey_core::kb::{Justification, RuleId};
use ramsey_core::oracle::{arrows, is_good_coloring, ArrowStatus, ColoringCertificate};
use ramsey_core::{AdjacencyGraph, GraphSpec, Interval, KbError, KnowledgeBase, SearchOptions};

const SMALL: [&str; 10] = ["K2", "K3", "K3-e", "K3-P3", "K4", "K4-e", "K4-P3", "K4-K1,3", "C4", "W4"];
const UP_TO_SIX: [&str; 14] = [
    "K2", "K3", "K4", "K5", "K3-e", "K4-e", "K4-P3", "K5-e", "K5-K1,3", "C4", "C5", "C6", "W5", "K6-K1,4",
];

fn g(s: &str) -> GraphSpec {
    s.parse().unwrap()
}

fn small_pattern() -> impl Strategy<Value = GraphSpec> {
    prop::sample::select(SMALL.to_vec()).prop_map(g)
}

fn explicit_pattern() -> impl Strategy<Value = GraphSpec> {
    (2usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let pairs = (0..n).tuple_combinations::<(usize, usize)>();
            let edges = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
            GraphSpec::Explicit(AdjacencyGraph::from_edges(n, edges))
        })
}

fn pattern_up_to_six() -> impl Strategy<Value = GraphSpec> {
    prop_oneof![prop::sample::select(UP_TO_SIX.to_vec()).prop_map(g), explicit_pattern()]
}

fn certificate() -> impl Strategy<Value = ColoringCertificate> {
    (1usize..=7)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let pairs = (0..n).tuple_combinations::<(usize, usize)>();
            ColoringCertificate::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
}

/// Tries every injective placement of the pattern.
fn naive_contains(host: &AdjacencyGraph, pattern: &AdjacencyGraph) -> bool {
    let k = pattern.vertex_count();
    if k > host.vertex_count() {
        return false;
    }
    (0..host.vertex_count())
        .permutations(k)
        .any(|m| pattern.edges().all(|(u, v)| host.has_edge(m[u], m[v])))
}

fn decides(n: usize, a: &GraphSpec, b: &GraphSpec, opts: SearchOptions) -> bool {
    match arrows(n, a, b, opts).unwrap().status {
        ArrowStatus::Arrows => true,
        ArrowStatus::NotArrows(_) => false,
        ArrowStatus::Unknown => panic!("budget ran out for N={n} ({a},{b})"),
    }
}

fn catalog_spec() -> impl Strategy<Value = GraphSpec> {
    prop_oneof![
        (1usize..=9).prop_map(GraphSpec::Complete),
        (3usize..=9).prop_flat_map(|n| (Just(n), 1..n)).prop_map(|(n, s)| GraphSpec::minus_star(n, s).unwrap()),
        (4usize..=8).prop_map(GraphSpec::Cycle),
        (5usize..=8).prop_map(GraphSpec::Wheel),
    ]
}

#[derive(Clone, Debug)]
enum Op {
    Tighten(usize, Option<u64>, Option<u64>),
    Equal(usize, usize),
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        (0usize..6, prop::option::of(1u64..40), prop::option::of(1u64..40)).prop_map(|(p, lo, hi)| Op::Tighten(p, lo, hi)),
        (0usize..6, 0usize..6).prop_map(|(a, b)| Op::Equal(a, b)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn good_coloring_matches_naive_enumeration(cert in certificate(), a in pattern_up_to_six(), b in pattern_up_to_six()) {
        let red = cert.red_graph();
        let naive_good = !naive_contains(&red, &a.realize().unwrap())
            && !naive_contains(&red.complement(), &b.realize().unwrap());
        prop_assert_eq!(is_good_coloring(&cert, &a, &b).unwrap(), naive_good);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arrowing_is_monotone_in_n(a in small_pattern(), b in small_pattern(), n in 1usize..=6) {
        let opts = SearchOptions::default();
        if decides(n, &a, &b, opts) {
            prop_assert!(decides(n + 1, &a, &b, opts));
        }
    }

    #[test]
    fn symmetry_reduction_keeps_the_decision(a in small_pattern(), b in small_pattern(), n in 1usize..=6) {
        let on = SearchOptions::default();
        prop_assert_eq!(decides(n, &a, &b, on), decides(n, &a, &b, on.with_symmetry(false)));
    }

    #[test]
    fn threads_keep_the_decision(a in small_pattern(), b in small_pattern(), n in 2usize..=7) {
        let one = SearchOptions::default();
        prop_assert_eq!(decides(n, &a, &b, one), decides(n, &a, &b, one.with_threads(3)));
    }

    #[test]
    fn not_arrows_certificates_are_good(a in small_pattern(), b in small_pattern(), n in 1usize..=7) {
        if let ArrowStatus::NotArrows(cert) = arrows(n, &a, &b, SearchOptions::default()).unwrap().status {
            prop_assert_eq!(cert.n(), n);
            prop_assert!(is_good_coloring(&cert, &a, &b).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kb_operations_keep_classes_consistent(
        specs in prop::collection::vec((catalog_spec(), catalog_spec()), 6),
        ops in prop::collection::vec(op(), 1..30),
    ) {
        let mut kb = KnowledgeBase::new();
        let keys: Vec<_> = specs.iter().map(|(a, b)| kb.pair(a, b)).collect();
        for op in ops {
            let result = match op {
                Op::Tighten(p, lo, hi) => kb.tighten(keys[p], lo, hi, Justification::new(RuleId::Seed)),
                Op::Equal(p, q) => kb.assert_equal(keys[p], keys[q], Justification::new(RuleId::Theorem1)),
            };
            match result {
                Ok(_) | Err(KbError::Contradiction { .. }) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
            for &k in &keys {
                let iv = kb.interval(k);
                prop_assert!(!iv.is_empty(), "{} is empty", kb.pair_text(k));
                for m in kb.class_members(k) {
                    prop_assert_eq!(kb.interval(m), iv);
                }
            }
        }
        for d in kb.derivations() {
            for p in &d.premises {
                for why in [p.lo_why, p.hi_why].into_iter().flatten() {
                    prop_assert!(why.0 < d.id.0);
                }
            }
        }
    }

    #[test]
    fn lookup_is_symmetric(a in catalog_spec(), b in catalog_spec(), lo in 1u64..30, width in 0u64..30) {
        let mut kb = KnowledgeBase::new();
        let key = kb.pair(&a, &b);
        let base = kb.interval(key);
        let _ = kb.tighten(key, Some(lo), Some(lo + width), Justification::seed("test"));
        let (x, y) = (kb.lookup(&a, &b), kb.lookup(&b, &a));
        prop_assert_eq!(&x, &y);
        prop_assert!(x.interval.within(&base) || x.interval == base);
        prop_assert_eq!(kb.interval_for(&a, &b), x.interval);
    }

    #[test]
    fn seed_lines_round_trip(a in catalog_spec(), b in catalog_spec(), lo in 1u64..500, width in prop::option::of(0u64..500)) {
        let hi = width.map(|w| lo + w);
        let value = match hi {
            Some(h) if h == lo => format!("= {lo}"),
            Some(h) => format!("in [{lo},{h}]"),
            None => format!(">= {lo}"),
        };
        let text = format!("{a} {b} {value} src=T\n");
        let Ok(kb) = KnowledgeBase::load_seed(&text) else {
            // a value below the default lower bound is a contradiction
            let base = KnowledgeBase::new().interval_for(&a, &b);
            prop_assert!(hi.is_some_and(|h| h < base.lo));
            return Ok(());
        };
        let again = KnowledgeBase::load_seed(&kb.dump()).unwrap();
        prop_assert_eq!(again.dump(), kb.dump());
        prop_assert_eq!(again.interval_for(&a, &b), kb.interval_for(&a, &b));
        prop_assert!(kb.interval_for(&a, &b).within(&Interval::new(lo, hi)));
    }
}
