//! Research-group resolution and per-group citation clusters.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::category::Category;
use crate::corpus::Corpus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Papers sharing a `group_label` share a group; unlabelled papers are
    /// singletons.
    ExplicitLabels,
    /// Connected components of the shared-author graph.
    SharedAuthorComponents,
    /// Papers with the same final author share a group.
    LastAuthor,
}

impl Strategy {
    /// Explicit labels when the corpus carries any, otherwise shared-author
    /// components.
    pub fn default_for(corpus: &Corpus) -> Self {
        if corpus.papers().any(|p| p.group_label.is_some()) {
            Strategy::ExplicitLabels
        } else {
            Strategy::SharedAuthorComponents
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::ExplicitLabels => "explicit-labels",
            Strategy::SharedAuthorComponents => "shared-author-components",
            Strategy::LastAuthor => "last-author",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "explicit-labels" => Ok(Strategy::ExplicitLabels),
            "shared-author-components" => Ok(Strategy::SharedAuthorComponents),
            "last-author" => Ok(Strategy::LastAuthor),
            other => Err(format!("unknown grouping strategy {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupingError {
    #[error("strategy {0} unavailable: no paper carries a group_label")]
    StrategyUnavailable(Strategy),
    #[error("unknown paper {0:?}")]
    UnknownPaper(String),
}

/// A partition of the corpus papers into research groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAssignment {
    group_of: BTreeMap<String, String>,
    groups: BTreeMap<String, Vec<String>>,
    strategy: Strategy,
}

impl GroupAssignment {
    fn from_mapping(group_of: BTreeMap<String, String>, strategy: Strategy) -> Self {
        let mut groups: BTreeMap<String, Vec<String>> = BTreeMap::new();
        // BTreeMap iteration keeps member lists sorted
        for (paper, group) in &group_of {
            groups.entry(group.clone()).or_default().push(paper.clone());
        }
        Self {
            group_of,
            groups,
            strategy,
        }
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn group_of(&self, paper_id: &str) -> Option<&str> {
        self.group_of.get(paper_id).map(String::as_str)
    }

    /// Group id to sorted member paper ids.
    pub fn groups(&self) -> &BTreeMap<String, Vec<String>> {
        &self.groups
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    pub fn paper_count(&self) -> usize {
        self.group_of.len()
    }
}

/// Disjoint-set forest over dense indices, union by rank with path
/// compression.
struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] = self.rank[a].saturating_add(1);
            }
        }
    }
}

pub fn resolve_groups(
    corpus: &Corpus,
    strategy: Strategy,
) -> Result<GroupAssignment, GroupingError> {
    let group_of = match strategy {
        Strategy::ExplicitLabels => {
            if !corpus.papers().any(|p| p.group_label.is_some()) {
                return Err(GroupingError::StrategyUnavailable(strategy));
            }
            corpus
                .papers()
                .map(|p| {
                    let group = match &p.group_label {
                        Some(label) => format!("label:{label}"),
                        None => format!("paper:{}", p.id),
                    };
                    (p.id.clone(), group)
                })
                .collect()
        }
        Strategy::LastAuthor => corpus
            .papers()
            .map(|p| {
                let key = p.last_author().map_or("", |a| a.normalized_key.as_str());
                (p.id.clone(), format!("author:{key}"))
            })
            .collect(),
        Strategy::SharedAuthorComponents => shared_author_components(corpus),
    };
    Ok(GroupAssignment::from_mapping(group_of, strategy))
}

fn shared_author_components(corpus: &Corpus) -> BTreeMap<String, String> {
    let ids: Vec<&str> = corpus.papers().map(|p| p.id.as_str()).collect();
    let mut sets = DisjointSet::new(ids.len());
    let mut first_with_author: HashMap<&str, usize> = HashMap::new();
    for (i, paper) in corpus.papers().enumerate() {
        for author in &paper.authors {
            match first_with_author.get(author.normalized_key.as_str()) {
                Some(&j) => sets.union(i, j),
                None => {
                    first_with_author.insert(&author.normalized_key, i);
                }
            }
        }
    }

    // a component is named after its lexicographically smallest paper id
    let mut name_of_root: HashMap<usize, &str> = HashMap::new();
    for (i, id) in ids.iter().enumerate() {
        let root = sets.find(i);
        name_of_root
            .entry(root)
            .and_modify(|name| {
                if *id < *name {
                    *name = id;
                }
            })
            .or_insert(id);
    }
    ids.iter()
        .enumerate()
        .map(|(i, id)| {
            let root = sets.find(i);
            (id.to_string(), name_of_root[&root].to_string())
        })
        .collect()
}

/// The citing papers of one cited paper that come from one group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CitationCluster {
    pub cited_id: String,
    pub group_id: String,
    pub citing_ids: BTreeSet<String>,
    pub category_counts: BTreeMap<Category, usize>,
    pub weight_sum: BTreeMap<Category, f64>,
    pub auto_citation: bool,
}

impl CitationCluster {
    /// Cit_i: the number of citing papers in the cluster.
    pub fn size(&self) -> usize {
        self.citing_ids.len()
    }

    pub fn count(&self, category: Category) -> usize {
        self.category_counts.get(&category).copied().unwrap_or(0)
    }

    pub fn weight(&self, category: Category) -> f64 {
        self.weight_sum.get(&category).copied().unwrap_or(0.0)
    }
}

/// All citation clusters of one cited paper.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSet {
    pub cited_id: String,
    /// Sorted by group id.
    pub clusters: Vec<CitationCluster>,
    pub max_size_overall: usize,
    /// Per category, the largest number of that category's citations within
    /// one cluster. Absent when no cluster has any.
    pub max_size_by_category: BTreeMap<Category, usize>,
}

/// A cluster seen through a subset of categories: how many of its citations
/// fall in the subset and the cluster's weight for them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScopedCluster {
    pub citations: usize,
    pub weight: f64,
}

impl ClusterSet {
    pub fn from_clusters(cited_id: impl Into<String>, mut clusters: Vec<CitationCluster>) -> Self {
        clusters.sort_by(|a, b| a.group_id.cmp(&b.group_id));
        let max_size_overall = clusters
            .iter()
            .map(CitationCluster::size)
            .max()
            .unwrap_or(0);
        let mut max_size_by_category = BTreeMap::new();
        for cluster in &clusters {
            for (&cat, &n) in &cluster.category_counts {
                if n > 0 {
                    let slot = max_size_by_category.entry(cat).or_insert(0);
                    *slot = n.max(*slot);
                }
            }
        }
        Self {
            cited_id: cited_id.into(),
            clusters,
            max_size_overall,
            max_size_by_category,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Clusters restricted to `categories`, skipping those with no citation
    /// in the subset. A cluster's weight is the mean weight of its in-subset
    /// citations, so uniform edge weights give a cluster weight equal to
    /// that uniform value.
    pub fn scoped(&self, categories: &[Category]) -> Vec<ScopedCluster> {
        self.clusters
            .iter()
            .filter_map(|c| {
                let citations: usize = categories.iter().map(|&x| c.count(x)).sum();
                (citations > 0).then(|| ScopedCluster {
                    citations,
                    weight: categories.iter().map(|&x| c.weight(x)).sum::<f64>() / citations as f64,
                })
            })
            .collect()
    }

    pub fn auto_citation_count(&self) -> usize {
        self.clusters.iter().filter(|c| c.auto_citation).count()
    }
}

/// Groups every citation of `cited_id` by the citing paper's group.
pub fn build_clusters(
    corpus: &Corpus,
    assignment: &GroupAssignment,
    cited_id: &str,
) -> Result<ClusterSet, GroupingError> {
    if !corpus.contains(cited_id) {
        return Err(GroupingError::UnknownPaper(cited_id.to_string()));
    }
    let own_group = assignment.group_of(cited_id);
    let mut by_group: BTreeMap<&str, CitationCluster> = BTreeMap::new();
    for edge in corpus.citations_of(cited_id) {
        let group = assignment
            .group_of(&edge.citing_id)
            .ok_or_else(|| GroupingError::UnknownPaper(edge.citing_id.clone()))?;
        let cluster = by_group.entry(group).or_insert_with(|| CitationCluster {
            cited_id: cited_id.to_string(),
            group_id: group.to_string(),
            citing_ids: BTreeSet::new(),
            category_counts: BTreeMap::new(),
            weight_sum: BTreeMap::new(),
            auto_citation: Some(group) == own_group,
        });
        cluster.citing_ids.insert(edge.citing_id.clone());
        if let Some(cat) = edge.category {
            *cluster.category_counts.entry(cat).or_insert(0) += 1;
            *cluster.weight_sum.entry(cat).or_insert(0.0) += edge.weight;
        }
    }
    Ok(ClusterSet::from_clusters(
        cited_id,
        by_group.into_values().collect(),
    ))
}

/// Marks clusters coming from the cited paper's own group.
pub fn flag_auto_citations(cluster_set: &ClusterSet, assignment: &GroupAssignment) -> ClusterSet {
    let own_group = assignment.group_of(&cluster_set.cited_id);
    let mut out = cluster_set.clone();
    for cluster in &mut out.clusters {
        cluster.auto_citation = Some(cluster.group_id.as_str()) == own_group;
    }
    out
}
