#![allow(dead_code)]

use citemetric::corpus::{AuthorRef, CitationEdge, Corpus, PaperRecord};
use citemetric::Category;
use proptest::prelude::*;

pub fn paper(id: &str, authors: &[String], label: Option<&str>) -> PaperRecord {
    PaperRecord {
        id: id.to_string(),
        title: format!("Paper {id}"),
        year: 2000,
        venue: None,
        authors: authors.iter().map(|a| AuthorRef::new(a.as_str())).collect(),
        group_label: label.map(String::from),
    }
}

/// One citation inside a generated cluster.
pub type Citation = (Option<Category>, f64);

/// A corpus where cluster `i` is a labelled group `G{i}` whose papers each
/// cite the target `T` once with the given category and weight.
pub fn corpus_from_clusters(clusters: &[Vec<Citation>]) -> Corpus {
    let mut papers = vec![paper("T", &["target".to_string()], Some("home"))];
    let mut edges = Vec::new();
    for (g, cluster) in clusters.iter().enumerate() {
        let lab = format!("G{g:03}");
        for (k, (cat, w)) in cluster.iter().enumerate() {
            let id = format!("{lab}-{k:03}");
            papers.push(paper(&id, &[format!("author {lab}")], Some(&lab)));
            let mut e = CitationEdge::new(id, "T").with_weight(*w);
            e.category = *cat;
            edges.push(e);
        }
    }
    Corpus::new(papers, edges).unwrap()
}

pub fn any_category() -> impl Strategy<Value = Option<Category>> {
    prop_oneof![
        Just(None),
        prop::sample::select(Category::ALL.to_vec()).prop_map(Some),
    ]
}

pub fn weight() -> impl Strategy<Value = f64> {
    (1u32..=1000).prop_map(|w| w as f64 / 100.0)
}

pub fn cluster_specs(
    max_clusters: usize,
    max_size: usize,
) -> impl Strategy<Value = Vec<Vec<Citation>>> {
    prop::collection::vec(
        prop::collection::vec((any_category(), weight()), 1..=max_size),
        0..=max_clusters,
    )
}
