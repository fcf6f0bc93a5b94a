//! Shah et al. ideation measures for design sets: the per-feature novelty
//! index, weighted design novelty, and design variety across abstraction
//! levels.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DesignError {
    #[error("feature {feature:?}: invalid counts T={total}, C={same} (need 1 <= C <= T)")]
    InvalidCounts {
        feature: String,
        total: u64,
        same: u64,
    },
    #[error("feature {feature:?}: weight {weight} is not a finite non-negative number")]
    InvalidWeight { feature: String, weight: f64 },
    #[error("feature list is empty")]
    EmptyFeatureList,
    #[error("no abstraction levels given")]
    EmptyLevels,
    #[error("design count must be positive")]
    NonPositiveDesignCount,
    #[error("level {level}: {reason}")]
    InvalidLevel { level: u32, reason: String },
}

/// Counts for one feature j across a set of designs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureStat {
    pub feature: String,
    /// T_j: designs having the feature.
    pub total: u64,
    /// C_j: designs using this design's implementation of the feature.
    pub same: u64,
    /// f_j.
    pub weight: f64,
}

impl FeatureStat {
    pub fn new(feature: impl Into<String>, total: u64, same: u64, weight: f64) -> Self {
        Self {
            feature: feature.into(),
            total,
            same,
            weight,
        }
    }

    fn check(&self) -> Result<(), DesignError> {
        if self.same < 1 || self.total < self.same {
            return Err(DesignError::InvalidCounts {
                feature: self.feature.clone(),
                total: self.total,
                same: self.same,
            });
        }
        if !(self.weight.is_finite() && self.weight >= 0.0) {
            return Err(DesignError::InvalidWeight {
                feature: self.feature.clone(),
                weight: self.weight,
            });
        }
        Ok(())
    }
}

/// One abstraction level, 1 being the most conceptual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarietyLevel {
    pub level: u32,
    /// V_k.
    pub variety_index: f64,
    /// b_k: alternatives branching out from this level.
    pub branches: u64,
}

impl VarietyLevel {
    pub fn new(level: u32, variety_index: f64, branches: u64) -> Self {
        Self {
            level,
            variety_index,
            branches,
        }
    }
}

/// S_j = (T_j - C_j) / T_j * 10, in [0, 10).
pub fn feature_novelty_index(stat: &FeatureStat) -> Result<f64, DesignError> {
    stat.check()?;
    let total = stat.total as f64;
    Ok((total - stat.same as f64) / total * 10.0)
}

/// MN = Σ_j f_j * S_j.
pub fn design_novelty(features: &[FeatureStat]) -> Result<f64, DesignError> {
    if features.is_empty() {
        return Err(DesignError::EmptyFeatureList);
    }
    features
        .iter()
        .map(|f| feature_novelty_index(f).map(|s| f.weight * s))
        .sum()
}

fn check_levels(levels: &[VarietyLevel]) -> Result<(), DesignError> {
    let first = levels.first().ok_or(DesignError::EmptyLevels)?;
    if first.level != 1 {
        return Err(DesignError::InvalidLevel {
            level: first.level,
            reason: "levels must start at 1".into(),
        });
    }
    for pair in levels.windows(2) {
        if pair[1].level <= pair[0].level {
            return Err(DesignError::InvalidLevel {
                level: pair[1].level,
                reason: "levels must be strictly increasing top-down".into(),
            });
        }
    }
    for l in levels {
        if !(l.variety_index.is_finite() && l.variety_index > 0.0) {
            return Err(DesignError::InvalidLevel {
                level: l.level,
                reason: format!("variety index {} must be positive", l.variety_index),
            });
        }
        if l.branches < 1 {
            return Err(DesignError::InvalidLevel {
                level: l.level,
                reason: "branch count must be at least 1".into(),
            });
        }
    }
    Ok(())
}

/// Variety for a single attribute: `10 * weight * Σ_k V_k b_k / MAX_V`, where
/// MAX_V is `design_count` times the first level's variety index.
pub fn design_variety(
    levels: &[VarietyLevel],
    weight: f64,
    design_count: u64,
) -> Result<f64, DesignError> {
    if design_count == 0 {
        return Err(DesignError::NonPositiveDesignCount);
    }
    check_levels(levels)?;
    if !(weight.is_finite() && weight >= 0.0) {
        return Err(DesignError::InvalidWeight {
            feature: String::new(),
            weight,
        });
    }
    let achieved: f64 = levels
        .iter()
        .map(|l| l.variety_index * l.branches as f64)
        .sum();
    let max_variety = design_count as f64 * levels[0].variety_index;
    Ok(10.0 * weight * achieved / max_variety)
}

/// Variety summed over several weighted attributes, each with its own level
/// structure.
pub fn design_variety_multi(
    attributes: &[(f64, Vec<VarietyLevel>)],
    design_count: u64,
) -> Result<f64, DesignError> {
    if attributes.is_empty() {
        return Err(DesignError::EmptyLevels);
    }
    attributes
        .iter()
        .map(|(w, levels)| design_variety(levels, *w, design_count))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn novelty_index_examples() {
        assert_eq!(
            feature_novelty_index(&FeatureStat::new("x", 5, 5, 1.0)).unwrap(),
            0.0
        );
        assert!(
            (feature_novelty_index(&FeatureStat::new("x", 10, 3, 1.0)).unwrap() - 7.0).abs()
                < 1e-12
        );
        assert!(
            (feature_novelty_index(&FeatureStat::new("x", 5, 1, 1.0)).unwrap() - 8.0).abs() < 1e-12
        );
    }

    #[test]
    fn invalid_counts() {
        for (t, c) in [(5, 0), (3, 4), (0, 0)] {
            assert!(matches!(
                feature_novelty_index(&FeatureStat::new("x", t, c, 1.0)),
                Err(DesignError::InvalidCounts { .. })
            ));
        }
        assert!(matches!(
            feature_novelty_index(&FeatureStat::new("x", 3, 1, -1.0)),
            Err(DesignError::InvalidWeight { .. })
        ));
    }

    #[test]
    fn design_novelty_examples() {
        assert_eq!(
            design_novelty(&[FeatureStat::new("x", 4, 4, 1.0)]).unwrap(),
            0.0
        );
        let two = [
            FeatureStat::new("a", 10, 3, 0.6),
            FeatureStat::new("b", 4, 4, 0.4),
        ];
        assert!((design_novelty(&two).unwrap() - 4.2).abs() < 1e-12);
        let uniform = [
            FeatureStat::new("a", 10, 3, 1.0),
            FeatureStat::new("b", 5, 1, 1.0),
        ];
        assert!((design_novelty(&uniform).unwrap() - 15.0).abs() < 1e-12);
        assert_eq!(
            design_novelty(&[]).unwrap_err(),
            DesignError::EmptyFeatureList
        );
    }

    #[test]
    fn variety_examples() {
        let single = [VarietyLevel::new(1, 10.0, 4)];
        assert!((design_variety(&single, 1.0, 4).unwrap() - 10.0).abs() < 1e-12);

        let two = [VarietyLevel::new(1, 10.0, 1), VarietyLevel::new(2, 5.0, 4)];
        assert!((design_variety(&two, 1.0, 4).unwrap() - 7.5).abs() < 1e-12);

        // a single design with one branch per level hits the ceiling
        let v = design_variety(&[VarietyLevel::new(1, 6.0, 1)], 1.0, 1).unwrap();
        assert!((v - 10.0).abs() < 1e-12);
    }

    #[test]
    fn variety_errors() {
        let lv = [VarietyLevel::new(1, 10.0, 4)];
        assert_eq!(
            design_variety(&lv, 1.0, 0).unwrap_err(),
            DesignError::NonPositiveDesignCount
        );
        assert_eq!(
            design_variety(&[], 1.0, 3).unwrap_err(),
            DesignError::EmptyLevels
        );
        for bad in [
            vec![VarietyLevel::new(2, 10.0, 1)],
            vec![VarietyLevel::new(1, 0.0, 1)],
            vec![VarietyLevel::new(1, 10.0, 0)],
            vec![VarietyLevel::new(1, 10.0, 1), VarietyLevel::new(1, 5.0, 1)],
        ] {
            assert!(matches!(
                design_variety(&bad, 1.0, 2),
                Err(DesignError::InvalidLevel { .. })
            ));
        }
    }

    #[test]
    fn multi_attribute_sums_weighted_kernels() {
        let a = vec![VarietyLevel::new(1, 10.0, 4)];
        let b = vec![VarietyLevel::new(1, 10.0, 1), VarietyLevel::new(2, 5.0, 4)];
        let v = design_variety_multi(&[(0.5, a), (0.5, b)], 4).unwrap();
        assert!((v - 8.75).abs() < 1e-12);
    }
}
