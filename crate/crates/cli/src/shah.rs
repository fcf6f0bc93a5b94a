//! CSV tables for the design-ideation measures.
//!
//! Feature tables have the header `feature,t,c[,weight]`; variety tables
//! `level,v,b` optionally preceded by `attribute,weight` columns so several
//! weighted attributes can share one file.

use std::collections::BTreeMap;

use citemetric::design::{FeatureStat, VarietyLevel};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
struct FeatureRow {
    feature: String,
    t: i64,
    c: i64,
    #[serde(default)]
    weight: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct LevelRow {
    #[serde(default)]
    attribute: Option<String>,
    #[serde(default)]
    weight: Option<f64>,
    level: i64,
    v: f64,
    b: i64,
}

fn reader(bytes: &[u8]) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(bytes)
}

fn parse_err(e: csv::Error) -> CliError {
    CliError::Parse(format!("table: {e}"))
}

/// Counts that cannot be represented fall out as invariant violations, not
/// parse failures.
fn count(feature: &str, v: i64, t: i64, c: i64) -> Result<u64, CliError> {
    u64::try_from(v).map_err(|_| {
        CliError::Domain(format!(
            "feature {feature:?}: invalid counts T={t}, C={c} (need 1 <= C <= T)"
        ))
    })
}

pub fn read_features(bytes: &[u8]) -> Result<Vec<FeatureStat>, CliError> {
    let mut out = Vec::new();
    for row in reader(bytes).deserialize::<FeatureRow>() {
        let row = row.map_err(parse_err)?;
        let total = count(&row.feature, row.t, row.t, row.c)?;
        let same = count(&row.feature, row.c, row.t, row.c)?;
        out.push(FeatureStat::new(
            row.feature,
            total,
            same,
            row.weight.unwrap_or(1.0),
        ));
    }
    Ok(out)
}

/// Returns (weight, levels) per attribute, attributes in first-seen order.
pub fn read_levels(bytes: &[u8]) -> Result<Vec<(f64, Vec<VarietyLevel>)>, CliError> {
    let mut order: Vec<String> = Vec::new();
    let mut by_attr: BTreeMap<String, (f64, Vec<VarietyLevel>)> = BTreeMap::new();
    for row in reader(bytes).deserialize::<LevelRow>() {
        let row = row.map_err(parse_err)?;
        let attr = row.attribute.unwrap_or_default();
        let weight = row.weight.unwrap_or(1.0);
        let level = u32::try_from(row.level).map_err(|_| {
            CliError::Domain(format!("level {} must be a positive index", row.level))
        })?;
        let branches = u64::try_from(row.b).map_err(|_| {
            CliError::Domain(format!(
                "level {level}: branch count {} must be at least 1",
                row.b
            ))
        })?;
        let entry = by_attr.entry(attr.clone()).or_insert_with(|| {
            order.push(attr.clone());
            (weight, Vec::new())
        });
        if entry.0 != weight {
            return Err(CliError::Domain(format!(
                "attribute {attr:?} has conflicting weights {} and {weight}",
                entry.0
            )));
        }
        entry.1.push(VarietyLevel::new(level, row.v, branches));
    }
    Ok(order
        .into_iter()
        .filter_map(|a| by_attr.remove(&a))
        .collect())
}
