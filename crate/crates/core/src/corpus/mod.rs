//! Corpus data model: papers, their authors, and the citation edges between
//! them, parsed from the JSON corpus document and optionally enriched with a
//! CSV annotation stream.
//!
//! A [`Corpus`] can only be obtained through validated construction and is
//! immutable afterwards; annotation produces a new value.

mod annotations;
mod document;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

use crate::category::Category;

pub use annotations::{load_annotations, AnnotationError};
pub use document::{parse_corpus, parse_document, CitationDoc, CorpusDocument, PaperDoc};
pub use validate::{validate_corpus, validate_document, Finding, ValidationReport};

/// Weight assumed for a citation edge when none is given.
pub const DEFAULT_WEIGHT: f64 = 1.0;

/// Folds an author name into its matching key: Unicode compatibility
/// decomposition with combining marks dropped, lowercased, whitespace
/// collapsed to single spaces.
pub fn normalize_name(raw: &str) -> String {
    let folded: String = raw
        .nfkd()
        .filter(|c| !is_combining_mark(*c))
        .flat_map(char::to_lowercase)
        .collect();
    folded.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AuthorRef {
    pub raw_name: String,
    pub normalized_key: String,
}

impl AuthorRef {
    pub fn new(raw_name: impl Into<String>) -> Self {
        let raw_name = raw_name.into();
        let normalized_key = normalize_name(&raw_name);
        Self {
            raw_name,
            normalized_key,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperRecord {
    pub id: String,
    pub title: String,
    pub year: i32,
    pub venue: Option<String>,
    pub authors: Vec<AuthorRef>,
    /// Explicit research-group tag, when the data carries one.
    pub group_label: Option<String>,
}

impl PaperRecord {
    pub fn last_author(&self) -> Option<&AuthorRef> {
        self.authors.last()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CitationEdge {
    pub citing_id: String,
    pub cited_id: String,
    pub category: Option<Category>,
    /// The per-citation weight behind a cluster's f_i / w_i.
    pub weight: f64,
}

impl CitationEdge {
    pub fn new(citing_id: impl Into<String>, cited_id: impl Into<String>) -> Self {
        Self {
            citing_id: citing_id.into(),
            cited_id: cited_id.into(),
            category: None,
            weight: DEFAULT_WEIGHT,
        }
    }

    pub fn with_category(mut self, category: Category) -> Self {
        self.category = Some(category);
        self
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = weight;
        self
    }

    fn key(&self) -> (String, String) {
        (self.citing_id.clone(), self.cited_id.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub source: Option<PathBuf>,
    pub loaded_at: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CorpusError {
    #[error("malformed corpus document at line {line}, column {column}: {message}")]
    MalformedDocument {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate paper id {0:?}")]
    DuplicatePaperId(String),
    #[error("dangling citation {citing} -> {cited}: paper {missing:?} not found")]
    DanglingCitation {
        citing: String,
        cited: String,
        missing: String,
    },
    #[error("duplicate citation edge {citing} -> {cited}")]
    DuplicateEdge { citing: String, cited: String },
    #[error("citation {citing} -> {cited}: invalid category {value:?} (expected a-g)")]
    InvalidCategory {
        citing: String,
        cited: String,
        value: String,
    },
    #[error("citation {citing} -> {cited}: weight {weight} is not a finite non-negative number")]
    NegativeWeight {
        citing: String,
        cited: String,
        weight: f64,
    },
    #[error("paper {0:?} has no authors")]
    EmptyAuthors(String),
    #[error("paper {paper:?}: author name {raw:?} normalizes to an empty key")]
    EmptyAuthorName { paper: String, raw: String },
    #[error("paper {paper:?}: year {year} is not a positive calendar year")]
    InvalidYear { paper: String, year: i64 },
    #[error("i/o error reading corpus: {0}")]
    Io(String),
}

impl CorpusError {
    /// True for failures to read or parse the document at all, as opposed to
    /// a well-formed document breaking a corpus invariant.
    pub fn is_syntax(&self) -> bool {
        matches!(
            self,
            CorpusError::MalformedDocument { .. } | CorpusError::Io(_)
        )
    }
}

/// An invariant violation found while assembling a corpus, with the
/// document location it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Issue {
    pub location: String,
    pub error: CorpusError,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.error)
    }
}

/// Validated, immutable set of papers and citation edges.
#[derive(Debug, Clone)]
pub struct Corpus {
    papers: IndexMap<String, PaperRecord>,
    edges: IndexMap<(String, String), CitationEdge>,
    incoming: HashMap<String, Vec<usize>>,
    provenance: Option<Provenance>,
}

impl PartialEq for Corpus {
    /// Provenance is metadata about a load, not corpus content.
    fn eq(&self, other: &Self) -> bool {
        self.papers.iter().eq(other.papers.iter()) && self.edges.iter().eq(other.edges.iter())
    }
}

impl Corpus {
    /// Builds a corpus, returning the first invariant violation on failure.
    pub fn new(papers: Vec<PaperRecord>, edges: Vec<CitationEdge>) -> Result<Self, CorpusError> {
        Self::assemble(papers, edges, Vec::new()).map_err(|mut issues| issues.remove(0).error)
    }

    pub fn empty() -> Self {
        Self {
            papers: IndexMap::new(),
            edges: IndexMap::new(),
            incoming: HashMap::new(),
            provenance: None,
        }
    }

    /// Checks every invariant and collects all violations. `pending` carries
    /// issues found earlier (e.g. unparseable categories) so that a single
    /// pass reports everything.
    pub(crate) fn assemble(
        papers: Vec<PaperRecord>,
        edges: Vec<CitationEdge>,
        mut pending: Vec<Issue>,
    ) -> Result<Self, Vec<Issue>> {
        let mut paper_map = IndexMap::with_capacity(papers.len());
        for (i, paper) in papers.into_iter().enumerate() {
            let location = format!("papers[{i}]");
            if paper.authors.is_empty() {
                pending.push(Issue {
                    location: location.clone(),
                    error: CorpusError::EmptyAuthors(paper.id.clone()),
                });
            }
            for author in &paper.authors {
                if author.normalized_key.is_empty() {
                    pending.push(Issue {
                        location: location.clone(),
                        error: CorpusError::EmptyAuthorName {
                            paper: paper.id.clone(),
                            raw: author.raw_name.clone(),
                        },
                    });
                }
            }
            if paper.year <= 0 {
                pending.push(Issue {
                    location: location.clone(),
                    error: CorpusError::InvalidYear {
                        paper: paper.id.clone(),
                        year: paper.year.into(),
                    },
                });
            }
            if paper_map.contains_key(&paper.id) {
                pending.push(Issue {
                    location,
                    error: CorpusError::DuplicatePaperId(paper.id.clone()),
                });
                continue;
            }
            paper_map.insert(paper.id.clone(), paper);
        }

        let mut edge_map: IndexMap<(String, String), CitationEdge> =
            IndexMap::with_capacity(edges.len());
        for (i, edge) in edges.into_iter().enumerate() {
            let location = format!("citations[{i}]");
            let mut dangling = false;
            for endpoint in [&edge.citing_id, &edge.cited_id] {
                if !paper_map.contains_key(endpoint) {
                    dangling = true;
                    pending.push(Issue {
                        location: location.clone(),
                        error: CorpusError::DanglingCitation {
                            citing: edge.citing_id.clone(),
                            cited: edge.cited_id.clone(),
                            missing: endpoint.clone(),
                        },
                    });
                    if edge.citing_id == edge.cited_id {
                        break;
                    }
                }
            }
            if !(edge.weight.is_finite() && edge.weight >= 0.0) {
                pending.push(Issue {
                    location: location.clone(),
                    error: CorpusError::NegativeWeight {
                        citing: edge.citing_id.clone(),
                        cited: edge.cited_id.clone(),
                        weight: edge.weight,
                    },
                });
            }
            if edge_map.contains_key(&edge.key()) {
                pending.push(Issue {
                    location,
                    error: CorpusError::DuplicateEdge {
                        citing: edge.citing_id.clone(),
                        cited: edge.cited_id.clone(),
                    },
                });
                continue;
            }
            if !dangling {
                edge_map.insert(edge.key(), edge);
            }
        }

        if !pending.is_empty() {
            return Err(pending);
        }
        Ok(Self::from_parts(paper_map, edge_map, None))
    }

    fn from_parts(
        papers: IndexMap<String, PaperRecord>,
        edges: IndexMap<(String, String), CitationEdge>,
        provenance: Option<Provenance>,
    ) -> Self {
        let mut incoming: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, edge) in edges.values().enumerate() {
            incoming.entry(edge.cited_id.clone()).or_default().push(i);
        }
        Self {
            papers,
            edges,
            incoming,
            provenance,
        }
    }

    /// Reads and parses a corpus file, recording its path and load time.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, CorpusError> {
        let path = path.as_ref();
        let bytes =
            std::fs::read(path).map_err(|e| CorpusError::Io(format!("{}: {e}", path.display())))?;
        let mut corpus = parse_corpus(&bytes)?;
        corpus.provenance = Some(Provenance {
            source: Some(path.to_path_buf()),
            loaded_at: Utc::now(),
        });
        Ok(corpus)
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub(crate) fn stamped(mut self) -> Self {
        self.provenance = Some(Provenance {
            source: None,
            loaded_at: Utc::now(),
        });
        self
    }

    pub fn paper_count(&self) -> usize {
        self.papers.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Papers in document order.
    pub fn papers(&self) -> impl Iterator<Item = &PaperRecord> + '_ {
        self.papers.values()
    }

    pub fn paper(&self, id: &str) -> Option<&PaperRecord> {
        self.papers.get(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.papers.contains_key(id)
    }

    /// Edges in document order.
    pub fn edges(&self) -> impl Iterator<Item = &CitationEdge> + '_ {
        self.edges.values()
    }

    pub fn edge(&self, citing_id: &str, cited_id: &str) -> Option<&CitationEdge> {
        self.edges
            .get(&(citing_id.to_string(), cited_id.to_string()))
    }

    /// Edges pointing at `cited_id`, in document order.
    pub fn citations_of<'a>(
        &'a self,
        cited_id: &str,
    ) -> impl Iterator<Item = &'a CitationEdge> + 'a {
        let idx: &[usize] = self
            .incoming
            .get(cited_id)
            .map(Vec::as_slice)
            .unwrap_or(&[]);
        idx.iter().map(move |&i| &self.edges[i])
    }

    /// Returns a copy with some edges replaced by annotated versions. Keys
    /// must already exist.
    pub(crate) fn with_edge_updates(
        &self,
        updates: impl IntoIterator<Item = CitationEdge>,
    ) -> Self {
        let mut edges = self.edges.clone();
        for edge in updates {
            if let Some(slot) = edges.get_mut(&edge.key()) {
                *slot = edge;
            }
        }
        Self {
            papers: self.papers.clone(),
            edges,
            incoming: self.incoming.clone(),
            provenance: self.provenance.clone(),
        }
    }

    /// Serializes to the corpus document format. Output is deterministic and
    /// parses back to an equal corpus.
    pub fn to_json(&self) -> String {
        let doc = CorpusDocument::from(self);
        let mut out = serde_json::to_string_pretty(&doc).expect("corpus document serializes");
        out.push('\n');
        out
    }
}
