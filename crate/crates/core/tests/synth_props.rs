use std::collections::BTreeMap;

use citemetric::corpus::{parse_corpus, validate_corpus};
use citemetric::distribution::cluster_size_histogram;
use citemetric::grouping::{build_clusters, resolve_groups, Strategy as Grouping};
use citemetric::synth::{generate_corpus, ClusterSizeSpec, SynthConfig, TARGET_ID};
use citemetric::Category;
use proptest::prelude::*;

fn config(seed: u64, sizes: BTreeMap<i64, i64>, coverage: f64) -> SynthConfig {
    let groups = sizes.values().sum::<i64>().max(1);
    SynthConfig {
        seed,
        target_paper_count: 1,
        group_count: groups,
        cluster_size_spec: ClusterSizeSpec::Explicit(sizes),
        category_mix: Category::ALL.iter().map(|&c| (c, 1.0 / 7.0)).collect(),
        annotation_coverage: coverage,
    }
}

#[test]
fn castello_gray_fixture_reproduced() {
    let sizes: BTreeMap<i64, i64> = [(1, 37), (2, 14), (3, 4), (11, 1), (12, 1)]
        .into_iter()
        .collect();
    let corpus = generate_corpus(&config(1985, sizes.clone(), 1.0)).unwrap();
    for strategy in [Grouping::ExplicitLabels, Grouping::SharedAuthorComponents] {
        let g = resolve_groups(&corpus, strategy).unwrap();
        let h = cluster_size_histogram(&build_clusters(&corpus, &g, TARGET_ID).unwrap());
        let want: BTreeMap<usize, usize> = sizes
            .iter()
            .map(|(&s, &n)| (s as usize, n as usize))
            .collect();
        assert_eq!(h.bins, want);
        // 37·1 + 14·2 + 4·3 + 11 + 12
        assert_eq!(h.total_citations, 100);
    }
    assert!(corpus.edges().all(|e| e.category.is_some()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generation_is_deterministic_valid_and_faithful(
        seed in any::<u64>(),
        sizes in prop::collection::btree_map(1i64..15, 0i64..6, 0..6),
        coverage in 0.0f64..=1.0,
    ) {
        let cfg = config(seed, sizes.clone(), coverage);
        let a = generate_corpus(&cfg).unwrap();
        let b = generate_corpus(&cfg).unwrap();
        prop_assert_eq!(a.to_json(), b.to_json());

        let reparsed = parse_corpus(a.to_json().as_bytes()).unwrap();
        prop_assert!(validate_corpus(&reparsed).is_ok());

        let g = resolve_groups(&a, Grouping::ExplicitLabels).unwrap();
        let h = cluster_size_histogram(&build_clusters(&a, &g, TARGET_ID).unwrap());
        let want: BTreeMap<usize, usize> = sizes
            .iter()
            .filter(|(_, &n)| n > 0)
            .map(|(&s, &n)| (s as usize, n as usize))
            .collect();
        prop_assert_eq!(h.bins, want);
    }
}
