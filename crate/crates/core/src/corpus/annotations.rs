//! CSV annotation rows `citing_id,cited_id,category,weight`.

use std::collections::HashMap;
use std::io::Read;

use super::{CitationEdge, Corpus, DEFAULT_WEIGHT};
use crate::Category;

const HEADER: [&str; 4] = ["citing_id", "cited_id", "category", "weight"];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnnotationError {
    #[error("malformed annotation stream at line {line}: {message}")]
    Malformed { line: u64, message: String },
    #[error("line {line}: no citation edge {citing} -> {cited}")]
    UnknownEdge {
        line: u64,
        citing: String,
        cited: String,
    },
    #[error("line {line}: citation {citing} -> {cited} already annotated with a different value")]
    ConflictingAnnotation {
        line: u64,
        citing: String,
        cited: String,
    },
    #[error("line {line}: invalid category {value:?} (expected a-g)")]
    InvalidCategory { line: u64, value: String },
    #[error("line {line}: weight {value:?} is not a finite non-negative number")]
    NegativeWeight { line: u64, value: String },
}

impl AnnotationError {
    pub fn is_syntax(&self) -> bool {
        matches!(self, AnnotationError::Malformed { .. })
    }
}

/// Applies annotation rows to a copy of `corpus`. Every row must name an
/// existing edge; an empty weight column means weight 1.0.
pub fn load_annotations(corpus: &Corpus, records: impl Read) -> Result<Corpus, AnnotationError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(records);

    let malformed = |line: u64, e: &dyn std::fmt::Display| AnnotationError::Malformed {
        line,
        message: e.to_string(),
    };

    let header = reader.headers().map_err(|e| malformed(1, &e))?.clone();
    if header.is_empty() {
        // an entirely empty stream has nothing to apply
        return Ok(corpus.clone());
    }
    if header.iter().ne(HEADER) {
        return Err(malformed(
            1,
            &format!("expected header {:?}, found {:?}", HEADER.join(","), header),
        ));
    }

    let mut seen: HashMap<(String, String), (Category, f64)> = HashMap::new();
    let mut updates = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            malformed(line, &e)
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| record.get(i).unwrap_or("");
        let (citing, cited) = (field(0).to_string(), field(1).to_string());

        let category: Category =
            field(2)
                .parse()
                .map_err(|_| AnnotationError::InvalidCategory {
                    line,
                    value: field(2).to_string(),
                })?;
        let weight = match field(3) {
            "" => DEFAULT_WEIGHT,
            raw => raw
                .parse::<f64>()
                .ok()
                .filter(|w| w.is_finite() && *w >= 0.0)
                .ok_or_else(|| AnnotationError::NegativeWeight {
                    line,
                    value: raw.to_string(),
                })?,
        };

        let Some(edge) = corpus.edge(&citing, &cited) else {
            return Err(AnnotationError::UnknownEdge {
                line,
                citing,
                cited,
            });
        };

        let key = (citing, cited);
        match seen.get(&key) {
            Some(&prev) if prev == (category, weight) => continue,
            Some(_) => {
                return Err(AnnotationError::ConflictingAnnotation {
                    line,
                    citing: key.0,
                    cited: key.1,
                })
            }
            None => {}
        }
        seen.insert(key, (category, weight));
        updates.push(CitationEdge {
            category: Some(category),
            weight,
            ..edge.clone()
        });
    }
    Ok(corpus.with_edge_updates(updates))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_corpus;

    fn corpus() -> Corpus {
        parse_corpus(
            br#"{"papers": [
                {"id": "P1", "title": "", "year": 2000, "authors": [{"name": "a"}]},
                {"id": "P2", "title": "", "year": 2001, "authors": [{"name": "b"}]},
                {"id": "P3", "title": "", "year": 2002, "authors": [{"name": "c"}]}
            ], "citations": [
                {"citing": "P2", "cited": "P1"},
                {"citing": "P3", "cited": "P1"}
            ]}"#,
        )
        .unwrap()
    }

    const HEAD: &str = "citing_id,cited_id,category,weight\n";

    #[test]
    fn empty_stream_is_identity() {
        let c = corpus();
        assert_eq!(load_annotations(&c, &b""[..]).unwrap(), c);
        assert_eq!(load_annotations(&c, HEAD.as_bytes()).unwrap(), c);
    }

    #[test]
    fn annotates_single_edge() {
        let c = corpus();
        let rows = format!("{HEAD}P2,P1,b,1.0\n");
        let out = load_annotations(&c, rows.as_bytes()).unwrap();
        let e = out.edge("P2", "P1").unwrap();
        assert_eq!((e.category, e.weight), (Some(Category::B), 1.0));
        assert_eq!(out.edge("P3", "P1").unwrap().category, None);
        // original untouched
        assert_eq!(c.edge("P2", "P1").unwrap().category, None);
        assert_eq!(out.edge_count(), c.edge_count());
    }

    #[test]
    fn empty_weight_defaults() {
        let rows = format!("{HEAD}P3,P1,g,\n");
        let out = load_annotations(&corpus(), rows.as_bytes()).unwrap();
        assert_eq!(out.edge("P3", "P1").unwrap().weight, 1.0);
    }

    #[test]
    fn conflicting_rows_rejected() {
        let rows = format!("{HEAD}P2,P1,b,1.0\nP2,P1,c,1.0\n");
        let err = load_annotations(&corpus(), rows.as_bytes()).unwrap_err();
        assert!(matches!(
            err,
            AnnotationError::ConflictingAnnotation { line: 3, .. }
        ));

        let rows = format!("{HEAD}P2,P1,b,1.0\nP2,P1,b,2.0\n");
        assert!(load_annotations(&corpus(), rows.as_bytes()).is_err());

        // exact repeat is not a conflict
        let rows = format!("{HEAD}P2,P1,b,1.0\nP2,P1,b,1\n");
        assert!(load_annotations(&corpus(), rows.as_bytes()).is_ok());
    }

    #[test]
    fn row_errors() {
        let c = corpus();
        let cases = [
            ("P1,P2,b,1\n", "unknown"),
            ("P2,P1,x,1\n", "category"),
            ("P2,P1,,1\n", "category"),
            ("P2,P1,b,-1\n", "weight"),
            ("P2,P1,b,NaN\n", "weight"),
            ("P2,P1,b\n", "malformed"),
        ];
        for (row, kind) in cases {
            let err = load_annotations(&c, format!("{HEAD}{row}").as_bytes()).unwrap_err();
            let ok = match kind {
                "unknown" => matches!(err, AnnotationError::UnknownEdge { .. }),
                "category" => matches!(err, AnnotationError::InvalidCategory { .. }),
                "weight" => matches!(err, AnnotationError::NegativeWeight { .. }),
                _ => err.is_syntax(),
            };
            assert!(ok, "{row:?} -> {err:?}");
        }
        let err = load_annotations(&c, &b"citing,cited,category,weight\n"[..]).unwrap_err();
        assert!(err.is_syntax());
    }

    #[test]
    fn idempotent() {
        let c = corpus();
        let rows = format!("{HEAD}P2,P1,b,0.5\nP3,P1,d,\n");
        let once = load_annotations(&c, rows.as_bytes()).unwrap();
        let twice = load_annotations(&once, rows.as_bytes()).unwrap();
        assert_eq!(once, twice);
    }
}
