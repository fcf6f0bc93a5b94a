//! The on-disk corpus document (JSON).

use serde::{Deserialize, Serialize};

use super::{AuthorRef, CitationEdge, Corpus, CorpusError, Issue, PaperRecord, DEFAULT_WEIGHT};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusDocument {
    #[serde(default)]
    pub papers: Vec<PaperDoc>,
    #[serde(default)]
    pub citations: Vec<CitationDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperDoc {
    pub id: String,
    pub title: String,
    pub year: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub venue: Option<String>,
    pub authors: Vec<AuthorDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuthorDoc {
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CitationDoc {
    pub citing: String,
    pub cited: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

/// Parses the JSON syntax only; no corpus invariants are checked.
pub fn parse_document(bytes: &[u8]) -> Result<CorpusDocument, CorpusError> {
    serde_json::from_slice(bytes).map_err(|e| CorpusError::MalformedDocument {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Parses and validates a corpus document.
pub fn parse_corpus(bytes: &[u8]) -> Result<Corpus, CorpusError> {
    let doc = parse_document(bytes)?;
    doc.into_corpus()
        .map(Corpus::stamped)
        .map_err(|mut issues| issues.remove(0).error)
}

impl CorpusDocument {
    /// Converts to a corpus, collecting every invariant violation.
    pub fn into_corpus(self) -> Result<Corpus, Vec<Issue>> {
        let mut issues = Vec::new();
        let papers = self
            .papers
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                let year = match i32::try_from(p.year) {
                    Ok(y) => y,
                    Err(_) => {
                        issues.push(Issue {
                            location: format!("papers[{i}]"),
                            error: CorpusError::InvalidYear {
                                paper: p.id.clone(),
                                year: p.year,
                            },
                        });
                        // keeps the record for the remaining checks
                        1
                    }
                };
                PaperRecord {
                    id: p.id,
                    title: p.title,
                    year,
                    venue: p.venue,
                    authors: p
                        .authors
                        .into_iter()
                        .map(|a| AuthorRef::new(a.name))
                        .collect(),
                    group_label: p.group_label,
                }
            })
            .collect();
        let edges = self
            .citations
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let category = c.category.as_deref().and_then(|v| match v.parse() {
                    Ok(cat) => Some(cat),
                    Err(_) => {
                        issues.push(Issue {
                            location: format!("citations[{i}]"),
                            error: CorpusError::InvalidCategory {
                                citing: c.citing.clone(),
                                cited: c.cited.clone(),
                                value: v.to_string(),
                            },
                        });
                        None
                    }
                });
                CitationEdge {
                    citing_id: c.citing,
                    cited_id: c.cited,
                    category,
                    weight: c.weight.unwrap_or(DEFAULT_WEIGHT),
                }
            })
            .collect();
        Corpus::assemble(papers, edges, issues)
    }
}

impl From<&Corpus> for CorpusDocument {
    fn from(corpus: &Corpus) -> Self {
        Self {
            papers: corpus
                .papers()
                .map(|p| PaperDoc {
                    id: p.id.clone(),
                    title: p.title.clone(),
                    year: p.year.into(),
                    venue: p.venue.clone(),
                    authors: p
                        .authors
                        .iter()
                        .map(|a| AuthorDoc {
                            name: a.raw_name.clone(),
                        })
                        .collect(),
                    group_label: p.group_label.clone(),
                })
                .collect(),
            citations: corpus
                .edges()
                .map(|e| CitationDoc {
                    citing: e.citing_id.clone(),
                    cited: e.cited_id.clone(),
                    category: e.category.map(|c| c.to_string()),
                    weight: Some(e.weight),
                })
                .collect(),
        }
    }
}
