//! Citation-based creativity metrics for scientific publications.
//!
//! A paper's incoming citations are grouped into clusters by the research
//! group they come from, each citation carries one of seven roles
//! ([`Category`]), and the resulting [`ClusterSet`] feeds the publication
//! level Novelty and Usefulness scores. The crate also carries the Shah et al.
//! design-ideation measures ([`design`]), cluster-size distribution tooling
//! ([`distribution`]) and a seeded synthetic corpus generator ([`synth`]).
//!
//! ```
//! use citemetric::{corpus, grouping, creativity};
//!
//! let doc = r#"{
//!   "papers": [
//!     {"id": "P1", "title": "Filter", "year": 1985, "authors": [{"name": "R. Castello"}]},
//!     {"id": "P2", "title": "Follow-up", "year": 1990, "authors": [{"name": "A. Other"}]}
//!   ],
//!   "citations": [{"citing": "P2", "cited": "P1", "category": "c"}]
//! }"#;
//! let corpus = corpus::parse_corpus(doc.as_bytes()).unwrap();
//! let groups = grouping::resolve_groups(&corpus, grouping::Strategy::SharedAuthorComponents).unwrap();
//! let profile = creativity::creativity_profile(
//!     &corpus, &groups, "P1", creativity::NoveltyForm::Reciprocal,
//! ).unwrap();
//! assert!(!profile.novelty.defined);
//! assert_eq!(profile.usefulness.value, 1.0);
//! ```

pub mod category;
pub mod corpus;
pub mod creativity;
pub mod design;
pub mod distribution;
pub mod grouping;
pub mod synth;

pub use category::Category;
pub use corpus::{AuthorRef, CitationEdge, Corpus, CorpusError, PaperRecord, ValidationReport};
pub use creativity::{CreativityProfile, NoveltyForm, NoveltyScore, UsefulnessScore};
pub use grouping::{CitationCluster, ClusterSet, GroupAssignment, Strategy};
