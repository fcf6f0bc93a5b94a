//! The machine-readable metrics report written by `citemetric metrics`.

use std::collections::BTreeMap;

use citemetric::CreativityProfile;
use serde::Serialize;

/// Fixed 6-decimal rendering used for every reported number.
pub fn fmt_num(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.6}")
    }
}

pub const NOT_AVAILABLE: &str = "N/A";

#[derive(Debug, Serialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub header: Option<Header>,
    pub tool: Tool,
    pub inputs: Vec<InputDigest>,
    pub settings: Settings,
    pub papers: Vec<PaperEntry>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Header {
    pub generated_at: String,
}

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for Tool {
    fn default() -> Self {
        Self {
            name: "citemetric",
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub role: &'static str,
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct Settings {
    pub strategy: String,
    pub novelty_form: String,
}

#[derive(Debug, Serialize)]
pub struct PaperEntry {
    pub paper_id: String,
    pub novelty: NoveltyEntry,
    pub usefulness: UsefulnessEntry,
    pub cluster_count: usize,
    pub auto_citation_cluster_count: usize,
}

#[derive(Debug, Serialize)]
pub struct NoveltyEntry {
    pub value: String,
    pub defined: bool,
    pub form: String,
    pub contributing_clusters: usize,
    pub max_cluster: usize,
}

#[derive(Debug, Serialize)]
pub struct UsefulnessEntry {
    pub value: String,
    pub terms: BTreeMap<String, String>,
    pub max: BTreeMap<String, usize>,
}

impl From<&CreativityProfile> for PaperEntry {
    fn from(p: &CreativityProfile) -> Self {
        Self {
            paper_id: p.paper_id.clone(),
            novelty: NoveltyEntry {
                value: p
                    .novelty
                    .value
                    .map_or_else(|| NOT_AVAILABLE.to_string(), fmt_num),
                defined: p.novelty.defined,
                form: p.novelty.interpretation.to_string(),
                contributing_clusters: p.novelty.contributing_clusters,
                max_cluster: p.novelty.max_cluster,
            },
            usefulness: UsefulnessEntry {
                value: fmt_num(p.usefulness.value),
                terms: p
                    .usefulness
                    .per_category_terms
                    .iter()
                    .map(|(c, v)| (c.to_string(), fmt_num(*v)))
                    .collect(),
                max: p
                    .usefulness
                    .per_category_max
                    .iter()
                    .map(|(c, v)| (c.to_string(), *v))
                    .collect(),
            },
            cluster_count: p.cluster_count,
            auto_citation_cluster_count: p.auto_citation_cluster_count,
        }
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_num(4.0 / 3.0), "1.333333");
        assert_eq!(fmt_num(7.0), "7.000000");
        assert_eq!(fmt_num(f64::INFINITY), "inf");
        assert_eq!(fmt_num(0.0), "0.000000");
    }
}
