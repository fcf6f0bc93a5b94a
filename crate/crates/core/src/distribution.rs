//! Cluster-size distributions: how many groups cited a paper once, twice,
//! and so on, with descriptive tail statistics and plot output.
//!
//! The log-log slope is a plain least-squares fit of `ln(count)` against
//! `ln(size)` over occupied sizes. It describes the shape of the tail and is
//! not an estimator of a power-law exponent.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::grouping::ClusterSet;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DistributionError {
    #[error("histogram is empty")]
    EmptyHistogram,
    #[error("unsupported plot format {0:?} (expected table or svg)")]
    UnsupportedFormat(String),
    #[error("malformed plot table at line {line}: {message}")]
    MalformedTable { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterHistogram {
    pub cited_id: String,
    /// Cluster size to number of groups with that size.
    pub bins: BTreeMap<usize, usize>,
    pub total_groups: usize,
    pub total_citations: usize,
}

impl ClusterHistogram {
    pub fn from_bins(cited_id: impl Into<String>, bins: BTreeMap<usize, usize>) -> Self {
        let bins: BTreeMap<usize, usize> =
            bins.into_iter().filter(|&(s, n)| s > 0 && n > 0).collect();
        Self {
            cited_id: cited_id.into(),
            total_groups: bins.values().sum(),
            total_citations: bins.iter().map(|(s, n)| s * n).sum(),
            bins,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailStats {
    pub singleton_fraction: f64,
    pub max_size: usize,
    /// (size, fraction of groups whose cluster is at least that size), at
    /// size 1 and at every occupied size.
    pub ccdf: Vec<(usize, f64)>,
    pub loglog_slope: Option<f64>,
}

pub fn cluster_size_histogram(cluster_set: &ClusterSet) -> ClusterHistogram {
    let mut bins = BTreeMap::new();
    for cluster in &cluster_set.clusters {
        *bins.entry(cluster.size()).or_insert(0) += 1;
    }
    ClusterHistogram::from_bins(cluster_set.cited_id.clone(), bins)
}

pub fn tail_statistics(histogram: &ClusterHistogram) -> Result<TailStats, DistributionError> {
    if histogram.total_groups == 0 {
        return Err(DistributionError::EmptyHistogram);
    }
    let total = histogram.total_groups as f64;
    let singletons = histogram.bins.get(&1).copied().unwrap_or(0);
    let max_size = histogram.bins.keys().next_back().copied().unwrap_or(0);

    let mut ccdf = Vec::with_capacity(histogram.bins.len() + 1);
    if !histogram.bins.contains_key(&1) {
        ccdf.push((1, 1.0));
    }
    let mut at_least = histogram.total_groups;
    for (&size, &count) in &histogram.bins {
        ccdf.push((size, at_least as f64 / total));
        at_least -= count;
    }

    Ok(TailStats {
        singleton_fraction: singletons as f64 / total,
        max_size,
        ccdf,
        loglog_slope: loglog_slope(&histogram.bins),
    })
}

fn loglog_slope(bins: &BTreeMap<usize, usize>) -> Option<f64> {
    if bins.len() < 3 {
        return None;
    }
    let points: Vec<(f64, f64)> = bins
        .iter()
        .map(|(&s, &n)| ((s as f64).ln(), (n as f64).ln()))
        .collect();
    let k = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points
        .iter()
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    Some(sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotFormat {
    Table,
    Svg,
}

impl FromStr for PlotFormat {
    type Err = DistributionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(PlotFormat::Table),
            "svg" => Ok(PlotFormat::Svg),
            other => Err(DistributionError::UnsupportedFormat(other.to_string())),
        }
    }
}

pub const TABLE_HEADER: &str = "size\tcount";

/// Renders the histogram. The table is `size<TAB>count` with LF endings,
/// ascending by size, under a fixed header line.
pub fn emit_plot_data(histogram: &ClusterHistogram, format: PlotFormat) -> Vec<u8> {
    match format {
        PlotFormat::Table => {
            let mut out = String::from(TABLE_HEADER);
            out.push('\n');
            for (size, count) in &histogram.bins {
                let _ = writeln!(out, "{size}\t{count}");
            }
            out.into_bytes()
        }
        PlotFormat::Svg => render_svg(histogram).into_bytes(),
    }
}

/// Reads back a table produced by [`emit_plot_data`].
pub fn parse_plot_table(text: &str) -> Result<BTreeMap<usize, usize>, DistributionError> {
    let mut lines = text.split('\n');
    if lines.next() != Some(TABLE_HEADER) {
        return Err(DistributionError::MalformedTable {
            line: 1,
            message: format!("expected header {TABLE_HEADER:?}"),
        });
    }
    let mut bins = BTreeMap::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let bad = |message: &str| DistributionError::MalformedTable {
            line: i + 2,
            message: message.to_string(),
        };
        let (size, count) = line
            .split_once('\t')
            .ok_or_else(|| bad("expected two tab-separated columns"))?;
        let size: usize = size.parse().map_err(|_| bad("size is not an integer"))?;
        let count: usize = count.parse().map_err(|_| bad("count is not an integer"))?;
        if bins.insert(size, count).is_some() {
            return Err(bad("duplicate size"));
        }
    }
    Ok(bins)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;

fn render_svg(histogram: &ClusterHistogram) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        out,
        r#"  <title>Citation cluster sizes for {}</title>"#,
        xml_escape(&histogram.cited_id)
    );
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let base = HEIGHT - MARGIN;
    let _ = writeln!(
        out,
        r#"  <line x1="{MARGIN}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#,
        WIDTH - MARGIN
    );
    let _ = writeln!(
        out,
        r#"  <line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{base}" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"  <text x="{}" y="{}" text-anchor="middle" font-size="12">citations per group</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        out,
        r#"  <text x="14" y="{}" text-anchor="middle" font-size="12" transform="rotate(-90 14 {})">groups</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );

    let max_size = histogram.bins.keys().next_back().copied().unwrap_or(1);
    let max_count = histogram.bins.values().copied().max().unwrap_or(1);
    // one slot per size from 1 to max so gaps in the tail stay visible
    let slot = plot_w / max_size as f64;
    let bar_w = (slot * 0.8).max(1.0);
    for (&size, &count) in &histogram.bins {
        let h = plot_h * count as f64 / max_count as f64;
        let x = MARGIN + slot * (size - 1) as f64 + (slot - bar_w) / 2.0;
        let _ = writeln!(
            out,
            r#"  <rect class="bar" data-size="{size}" data-count="{count}" x="{x:.2}" y="{:.2}" width="{bar_w:.2}" height="{h:.2}" fill="steelblue"/>"#,
            base - h
        );
        let _ = writeln!(
            out,
            r#"  <text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="10">{size}</text>"#,
            x + bar_w / 2.0,
            base + 14.0
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hist(bins: &[(usize, usize)]) -> ClusterHistogram {
        ClusterHistogram::from_bins("T", bins.iter().copied().collect())
    }

    #[test]
    fn totals() {
        let h = hist(&[(3, 1), (2, 2), (1, 1)]);
        assert_eq!(h.total_groups, 4);
        assert_eq!(h.total_citations, 8);
        let empty = hist(&[]);
        assert_eq!((empty.total_groups, empty.total_citations), (0, 0));
    }

    #[test]
    fn all_singletons() {
        let t = tail_statistics(&hist(&[(1, 10)])).unwrap();
        assert_eq!(t.singleton_fraction, 1.0);
        assert_eq!(t.loglog_slope, None);
        assert_eq!(t.ccdf, vec![(1, 1.0)]);
        assert_eq!(
            tail_statistics(&hist(&[])).unwrap_err(),
            DistributionError::EmptyHistogram
        );
    }

    #[test]
    fn castello_gray_bins() {
        let t = tail_statistics(&hist(&[(1, 37), (2, 14), (3, 4), (11, 1), (12, 1)])).unwrap();
        assert!((t.singleton_fraction - 37.0 / 57.0).abs() < 1e-12);
        assert_eq!(t.max_size, 12);
        assert!(t.loglog_slope.unwrap() < 0.0);
        assert_eq!(t.ccdf.first(), Some(&(1, 1.0)));
        assert!((t.ccdf.last().unwrap().1 - 1.0 / 57.0).abs() < 1e-12);
    }

    #[test]
    fn perfect_power_law_slope() {
        let t = tail_statistics(&hist(&[(1, 8), (2, 4), (4, 2), (8, 1)])).unwrap();
        assert!((t.loglog_slope.unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn ccdf_starts_at_one_without_singletons() {
        let t = tail_statistics(&hist(&[(2, 3), (5, 1)])).unwrap();
        assert_eq!(t.ccdf, vec![(1, 1.0), (2, 1.0), (5, 0.25)]);
        assert_eq!(t.singleton_fraction, 0.0);
    }

    #[test]
    fn table_output() {
        let out = emit_plot_data(&hist(&[(3, 1), (1, 2)]), PlotFormat::Table);
        assert_eq!(out, b"size\tcount\n1\t2\n3\t1\n");
        let empty = emit_plot_data(&hist(&[]), PlotFormat::Table);
        assert_eq!(empty, b"size\tcount\n");
    }

    #[test]
    fn svg_has_one_bar_per_size() {
        let h = hist(&[(1, 37), (2, 14), (3, 4), (11, 1), (12, 1)]);
        let svg = String::from_utf8(emit_plot_data(&h, PlotFormat::Svg)).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches(r#"class="bar""#).count(), 5);
    }

    #[test]
    fn format_parsing() {
        assert_eq!("svg".parse::<PlotFormat>().unwrap(), PlotFormat::Svg);
        assert_eq!(
            "png".parse::<PlotFormat>().unwrap_err(),
            DistributionError::UnsupportedFormat("png".into())
        );
    }

    #[test]
    fn table_parse_errors() {
        assert!(parse_plot_table("size,count\n").is_err());
        assert!(parse_plot_table("size\tcount\n1 2\n").is_err());
        assert!(parse_plot_table("size\tcount\n1\t2\n1\t3\n").is_err());
    }
}
