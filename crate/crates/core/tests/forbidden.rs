use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use spectral_turan::enumerate::{enumerate_ffree, EnumOptions};
use spectral_turan::forbidden::{apply_edit, contains_subgraph, ffree_after_edit, find_embedding};
use spectral_turan::graph::Graph;
use spectral_turan::random::random_graph;
use spectral_turan::{build_family, classify_neighborhood, is_free, ComponentClass, FamilySpec, ForbiddenSpec};

fn patterns() -> Vec<ForbiddenSpec> {
    vec![
        ForbiddenSpec::gem(),
        ForbiddenSpec::new(build_family(&FamilySpec::Cycle { n: 4 }).unwrap()).unwrap(),
        ForbiddenSpec::new(build_family(&FamilySpec::Path { n: 5 }).unwrap()).unwrap(),
        ForbiddenSpec::new(build_family(&FamilySpec::Complete { n: 4 }).unwrap()).unwrap(),
    ]
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=10, 0.1f64..0.7, any::<u64>())
        .prop_map(|(n, p, s)| random_graph(&mut Xoshiro256PlusPlus::seed_from_u64(s), n, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn freeness_survives_deletion(g in arb_graph(), seed in any::<u64>()) {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        for f in patterns() {
            if !is_free(&g, &f) {
                continue;
            }
            let mut h = g.clone();
            let edges: Vec<_> = h.edges().collect();
            for (a, b) in edges {
                if rng.random_bool(0.3) {
                    h.remove_edge(a, b);
                }
            }
            prop_assert!(is_free(&h, &f));
        }
    }

    #[test]
    fn incremental_check_agrees_with_recheck(g in arb_graph(), seed in any::<u64>()) {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        let n = g.order();
        prop_assume!(n >= 2);
        for f in patterns() {
            // shrink to an F-free base first
            let mut base = g.clone();
            while let Some(w) = find_embedding(&base, &f) {
                let (p, q) = f.pattern().edges().next().unwrap();
                base.remove_edge(w[p], w[q]);
            }
            let mut added = Vec::new();
            let mut removed = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.random_bool(0.1) {
                        if base.has_edge(a, b) { removed.push((a, b)) } else { added.push((a, b)) }
                    }
                }
            }
            let edited = apply_edit(&base, &added, &removed).unwrap();
            prop_assert_eq!(ffree_after_edit(&base, &f, &added, &removed).unwrap(), !contains_subgraph(&edited, &f));
        }
    }

    #[test]
    fn witnesses_are_embeddings(g in arb_graph()) {
        for f in patterns() {
            match find_embedding(&g, &f) {
                Some(w) => {
                    let mut seen = w.clone();
                    seen.sort_unstable();
                    seen.dedup();
                    prop_assert_eq!(seen.len(), w.len());
                    prop_assert!(f.pattern().edges().all(|(a, b)| g.has_edge(w[a], w[b])));
                }
                None => prop_assert!(is_free(&g, &f)),
            }
        }
    }

    #[test]
    fn decomposition_partitions_the_vertices(g in arb_graph(), u in 0usize..10) {
        prop_assume!(u < g.order());
        let d = classify_neighborhood(&g, u);
        prop_assert_eq!(d.n_zero & d.n_plus, 0);
        prop_assert_eq!(d.n_zero | d.n_plus, g.neighbors(u));
        prop_assert_eq!(d.w, g.vertices() & !g.closed_neighbors(u));
        let comps = d.components.iter().fold(0, |acc, c| acc | c.vertices);
        prop_assert_eq!(comps, g.neighbors(u));
        for c in &d.components {
            let single = c.class == ComponentClass::Singleton;
            prop_assert_eq!(single, c.vertices & d.n_zero != 0);
        }
    }
}

#[test]
fn gem_free_graphs_on_ten_vertices_have_no_other_component_anywhere() {
    let gem = ForbiddenSpec::gem();
    let mut graphs = 0;
    for m in 1..=12 {
        for g in enumerate_ffree(m, &gem, &EnumOptions::default()).unwrap() {
            if g.order() > 10 {
                continue;
            }
            graphs += 1;
            for u in 0..g.order() {
                assert!(!classify_neighborhood(&g, u).has_other(), "{g:?} at {u}");
            }
        }
    }
    assert!(graphs > 1000);
}

#[test]
fn gem_detection_examples() {
    let gem = ForbiddenSpec::gem();
    assert!(contains_subgraph(gem.pattern(), &gem));
    assert!(!contains_subgraph(&build_family(&FamilySpec::Cycle { n: 5 }).unwrap(), &gem));
    assert!(!contains_subgraph(&build_family(&FamilySpec::SnkT { n: 14, k: 2, t: 2 }).unwrap(), &gem));
    assert!(contains_subgraph(&build_family(&FamilySpec::Complete { n: 5 }).unwrap(), &gem));
    assert!(classify_neighborhood(gem.pattern(), 0).has_other());
}
