use chrono::Datelike;
use serde::Serialize;

use super::{parse_document, Corpus, CorpusError};

/// Years outside this window are flagged, never rejected.
const EARLIEST_PLAUSIBLE_YEAR: i32 = 1600;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub location: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub errors: Vec<Finding>,
    pub warnings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Data-quality findings for an already constructed corpus. Construction
/// enforces every invariant, so only warnings can appear here.
pub fn validate_corpus(corpus: &Corpus) -> ValidationReport {
    let mut warnings = Vec::new();

    let unannotated = corpus.edges().filter(|e| e.category.is_none()).count();
    if unannotated > 0 {
        let noun = if unannotated == 1 { "edge" } else { "edges" };
        warnings.push(Finding {
            location: "citations".into(),
            message: format!("{unannotated} unannotated {noun}"),
        });
    }

    let labelled = corpus.papers().filter(|p| p.group_label.is_some()).count();
    if labelled > 0 && labelled < corpus.paper_count() {
        let missing = corpus.paper_count() - labelled;
        warnings.push(Finding {
            location: "papers".into(),
            message: format!(
                "{missing} papers have no group_label and will form singleton groups under explicit-labels"
            ),
        });
    }

    let latest = chrono::Utc::now().year() + 1;
    for (i, paper) in corpus.papers().enumerate() {
        if paper.year < EARLIEST_PLAUSIBLE_YEAR || paper.year > latest {
            warnings.push(Finding {
                location: format!("papers[{i}]"),
                message: format!("paper {:?} has implausible year {}", paper.id, paper.year),
            });
        }
    }

    ValidationReport {
        errors: Vec::new(),
        warnings,
    }
}

/// Validates a raw corpus document, collecting every invariant violation
/// rather than stopping at the first. Only a syntax error is returned as
/// `Err`.
pub fn validate_document(bytes: &[u8]) -> Result<ValidationReport, CorpusError> {
    let doc = parse_document(bytes)?;
    Ok(match doc.into_corpus() {
        Ok(corpus) => validate_corpus(&corpus),
        Err(issues) => ValidationReport {
            errors: issues
                .into_iter()
                .map(|i| Finding {
                    location: i.location,
                    message: i.error.to_string(),
                })
                .collect(),
            warnings: Vec::new(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_corpus;

    fn doc(years: [i32; 2], cats: [Option<&str>; 3]) -> String {
        let cite = |citing: &str, cited: &str, cat: Option<&str>| match cat {
            Some(c) => {
                format!(r#"{{"citing": "{citing}", "cited": "{cited}", "category": "{c}"}}"#)
            }
            None => format!(r#"{{"citing": "{citing}", "cited": "{cited}"}}"#),
        };
        format!(
            r#"{{"papers": [
                {{"id": "P1", "title": "", "year": {}, "authors": [{{"name": "a"}}]}},
                {{"id": "P2", "title": "", "year": {}, "authors": [{{"name": "b"}}]}}
            ], "citations": [{}, {}, {}]}}"#,
            years[0],
            years[1],
            cite("P2", "P1", cats[0]),
            cite("P1", "P2", cats[1]),
            cite("P1", "P1", cats[2]),
        )
    }

    #[test]
    fn clean_corpus_has_no_findings() {
        let c =
            parse_corpus(doc([1985, 1990], [Some("b"), Some("c"), Some("a")]).as_bytes()).unwrap();
        let report = validate_corpus(&c);
        assert!(report.errors.is_empty());
        assert!(report.warnings.is_empty(), "{:?}", report.warnings);
    }

    #[test]
    fn counts_unannotated_edges() {
        let c = parse_corpus(doc([1985, 1990], [Some("b"), None, None]).as_bytes()).unwrap();
        let report = validate_corpus(&c);
        assert!(report.is_ok());
        assert_eq!(report.warnings.len(), 1);
        assert_eq!(report.warnings[0].message, "2 unannotated edges");
    }

    #[test]
    fn future_year_is_a_warning() {
        let c =
            parse_corpus(doc([3000, 1990], [Some("b"), Some("b"), Some("b")]).as_bytes()).unwrap();
        let report = validate_corpus(&c);
        assert!(report.is_ok());
        assert_eq!(report.warnings.len(), 1);
        assert!(report.warnings[0].message.contains("3000"));
    }

    #[test]
    fn partial_labels_warn() {
        let c = parse_corpus(
            br#"{"papers": [
                {"id": "P1", "title": "", "year": 2000, "authors": [{"name": "a"}], "group_label": "lab"},
                {"id": "P2", "title": "", "year": 2000, "authors": [{"name": "b"}]}
            ], "citations": []}"#,
        )
        .unwrap();
        assert_eq!(validate_corpus(&c).warnings.len(), 1);
    }

    #[test]
    fn document_validation_collects_all_errors() {
        let raw = doc([1985, 1990], [Some("b"), Some("q"), None])
            .replace(r#""cited": "P2""#, r#""cited": "P9""#);
        let report = validate_document(raw.as_bytes()).unwrap();
        assert_eq!(report.errors.len(), 2, "{:?}", report.errors);
        assert!(report.errors.iter().any(|f| f.message.contains("P9")));
        assert!(report.errors.iter().any(|f| f.message.contains("\"q\"")));
        assert!(validate_document(b"not json").is_err());
    }
}
