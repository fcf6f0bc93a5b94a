//! Publication-level Novelty and Usefulness computed from citation clusters.
//!
//! Novelty looks only at citations contrasting the cited work with
//! alternatives (categories b and f); Usefulness only at citations building
//! on it (c, d, e, g). Category a feeds neither.
//!
//! Within each formula a cluster's Cit is the count of its citations in the
//! relevant categories, not its raw size, and its weight is the mean weight
//! of those citations (see [`ClusterSet::scoped`]).
//!
//! Novelty has two readings, selected by [`NoveltyForm`]:
//!
//! * reciprocal: `1 / (MAX * Σ f_i / Cit_i)`
//! * normalized-sum: `(1 / MAX) * Σ f_i / Cit_i`
//!
//! where MAX is the largest Cit over the b∪f clusters. Usefulness is
//! `Σ_X (Σ_i w_i * Cit_i) / MAX_X` over X in {c, d, e, g}, with empty
//! categories contributing zero.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::category::Category;
use crate::corpus::Corpus;
use crate::grouping::{self, ClusterSet, GroupAssignment, GroupingError, ScopedCluster};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoveltyForm {
    /// More alternative clusters lower the score.
    #[default]
    Reciprocal,
    NormalizedSum,
}

impl NoveltyForm {
    pub fn name(self) -> &'static str {
        match self {
            NoveltyForm::Reciprocal => "reciprocal",
            NoveltyForm::NormalizedSum => "normalized-sum",
        }
    }
}

impl fmt::Display for NoveltyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NoveltyForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reciprocal" => Ok(NoveltyForm::Reciprocal),
            "normalized-sum" => Ok(NoveltyForm::NormalizedSum),
            other => Err(format!("unknown novelty form {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoveltyScore {
    /// `None` when no cluster has a b or f citation.
    pub value: Option<f64>,
    pub defined: bool,
    pub contributing_clusters: usize,
    pub max_cluster: usize,
    pub interpretation: NoveltyForm,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UsefulnessScore {
    pub value: f64,
    /// One term per usefulness category, zero when the category is empty.
    pub per_category_terms: BTreeMap<Category, f64>,
    /// MAX_X for the non-empty usefulness categories.
    pub per_category_max: BTreeMap<Category, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CreativityProfile {
    pub paper_id: String,
    pub novelty: NoveltyScore,
    pub usefulness: UsefulnessScore,
    pub cluster_count: usize,
    pub auto_citation_cluster_count: usize,
}

/// Novelty over already scoped b∪f clusters.
pub fn novelty_from_scoped(clusters: &[ScopedCluster], form: NoveltyForm) -> NoveltyScore {
    let contributing: Vec<_> = clusters.iter().filter(|c| c.citations > 0).collect();
    let max_cluster = contributing.iter().map(|c| c.citations).max().unwrap_or(0);
    if contributing.is_empty() {
        return NoveltyScore {
            value: None,
            defined: false,
            contributing_clusters: 0,
            max_cluster,
            interpretation: form,
        };
    }
    let sum: f64 = contributing
        .iter()
        .map(|c| c.weight / c.citations as f64)
        .sum();
    let max = max_cluster as f64;
    let value = match form {
        NoveltyForm::Reciprocal => 1.0 / (max * sum),
        NoveltyForm::NormalizedSum => sum / max,
    };
    NoveltyScore {
        value: Some(value),
        defined: true,
        contributing_clusters: contributing.len(),
        max_cluster,
        interpretation: form,
    }
}

pub fn novelty(cluster_set: &ClusterSet, form: NoveltyForm) -> NoveltyScore {
    novelty_from_scoped(&cluster_set.scoped(&Category::NOVELTY), form)
}

/// Usefulness over per-category scoped clusters. Categories outside c, d, e,
/// g are ignored.
pub fn usefulness_from_scoped(
    per_category: &BTreeMap<Category, Vec<ScopedCluster>>,
) -> UsefulnessScore {
    let mut per_category_terms = BTreeMap::new();
    let mut per_category_max = BTreeMap::new();
    for cat in Category::USEFULNESS {
        let clusters = per_category.get(&cat).map(Vec::as_slice).unwrap_or(&[]);
        let max = clusters.iter().map(|c| c.citations).max().unwrap_or(0);
        let term = if max == 0 {
            0.0
        } else {
            per_category_max.insert(cat, max);
            clusters
                .iter()
                .map(|c| c.weight * c.citations as f64)
                .sum::<f64>()
                / max as f64
        };
        per_category_terms.insert(cat, term);
    }
    UsefulnessScore {
        value: per_category_terms.values().sum(),
        per_category_terms,
        per_category_max,
    }
}

pub fn usefulness(cluster_set: &ClusterSet) -> UsefulnessScore {
    let per_category = Category::USEFULNESS
        .iter()
        .map(|&cat| (cat, cluster_set.scoped(&[cat])))
        .collect();
    usefulness_from_scoped(&per_category)
}

/// Clusters, flags and scores one cited paper.
pub fn creativity_profile(
    corpus: &Corpus,
    assignment: &GroupAssignment,
    cited_id: &str,
    form: NoveltyForm,
) -> Result<CreativityProfile, GroupingError> {
    let clusters = grouping::build_clusters(corpus, assignment, cited_id)?;
    let clusters = grouping::flag_auto_citations(&clusters, assignment);
    Ok(profile_from_clusters(&clusters, form))
}

pub fn profile_from_clusters(clusters: &ClusterSet, form: NoveltyForm) -> CreativityProfile {
    CreativityProfile {
        paper_id: clusters.cited_id.clone(),
        novelty: novelty(clusters, form),
        usefulness: usefulness(clusters),
        cluster_count: clusters.clusters.len(),
        auto_citation_cluster_count: clusters.auto_citation_count(),
    }
}
