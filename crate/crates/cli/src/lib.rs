//! `citemetric` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O, parse or usage failure, 2 domain
//! validation failure. Machine-readable output goes to standard output,
//! human-readable summaries to standard error.

pub mod report;
pub mod shah;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use citemetric::corpus::{self, AnnotationError, Corpus, CorpusError};
use citemetric::creativity::{creativity_profile, NoveltyForm};
use citemetric::design;
use citemetric::distribution::{self, PlotFormat};
use citemetric::grouping::{self, Strategy};
use citemetric::synth::{self, SynthConfig, SynthError};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use report::{fmt_num, Header, InputDigest, PaperEntry, Report, Settings, Tool};

pub const SEED_ENV: &str = "CITEMETRIC_SEED";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        if e.is_syntax() {
            CliError::Parse(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<AnnotationError> for CliError {
    fn from(e: AnnotationError) -> Self {
        if e.is_syntax() {
            CliError::Parse(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<SynthError> for CliError {
    fn from(e: SynthError) -> Self {
        match e {
            SynthError::Malformed(_) => CliError::Parse(e.to_string()),
            SynthError::InvalidConfig(_) => CliError::Domain(e.to_string()),
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        }
    )*};
}
domain_from!(
    grouping::GroupingError,
    design::DesignError,
    distribution::DistributionError
);

type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Parser)]
#[command(
    name = "citemetric",
    version,
    about = "Citation-cluster creativity metrics for scientific publications"
)]
pub struct Cli {
    /// Research-group resolution strategy (default: explicit-labels when any
    /// paper has a group_label, otherwise shared-author-components).
    #[arg(long, global = true, value_parser = parse_strategy)]
    pub strategy: Option<Strategy>,

    #[arg(long, global = true, value_parser = parse_form, default_value = "reciprocal")]
    pub novelty_form: NoveltyForm,

    /// Omit the timestamped header from reports.
    #[arg(long, global = true)]
    pub no_header: bool,

    #[command(subcommand)]
    pub command: Command,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

fn parse_form(s: &str) -> Result<NoveltyForm, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a corpus file and list every problem found.
    Validate { corpus: PathBuf },
    /// Novelty and usefulness report for one or all papers.
    Metrics(MetricsArgs),
    /// Cluster-size distribution of one paper's citations.
    Clusters(ClustersArgs),
    /// Shah et al. design novelty and variety measures.
    Shah {
        #[command(subcommand)]
        measure: ShahCommand,
    },
    /// Generate a synthetic corpus from a JSON config.
    Synth {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("select").required(true).args(["paper", "all"])))]
pub struct MetricsArgs {
    pub corpus: PathBuf,
    /// CSV annotation file applied on top of the corpus.
    pub annotations: Option<PathBuf>,
    #[arg(long)]
    pub paper: Option<String>,
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Args)]
pub struct ClustersArgs {
    pub corpus: PathBuf,
    #[arg(long)]
    pub paper: String,
    /// table or svg
    #[arg(long, default_value = "table")]
    pub plot: String,
    /// Write the plot here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ShahCommand {
    /// Novelty index S_j for every row of a feature table.
    Feature { table: PathBuf },
    /// Weighted design novelty over a feature table.
    Novelty { table: PathBuf },
    /// Design variety over a level table.
    Variety {
        table: PathBuf,
        /// Number of designs in the set.
        #[arg(long, allow_negative_numbers = true)]
        designs: i64,
    },
}

/// Parses arguments and runs a command, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Validate { corpus } => cmd_validate(corpus, out, err),
        Command::Metrics(args) => cmd_metrics(cli, args, out, err).map(|_| 0),
        Command::Clusters(args) => cmd_clusters(cli, args, out, err).map(|_| 0),
        Command::Shah { measure } => cmd_shah(measure, out).map(|_| 0),
        Command::Synth { config, out: path } => cmd_synth(config, path, out, err).map(|_| 0),
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn load_corpus(path: &Path) -> Result<(Corpus, Vec<u8>)> {
    let bytes = read(path)?;
    let corpus = corpus::parse_corpus(&bytes)?;
    Ok((corpus, bytes))
}

fn resolve(cli: &Cli, corpus: &Corpus) -> Result<grouping::GroupAssignment> {
    let strategy = cli
        .strategy
        .unwrap_or_else(|| Strategy::default_for(corpus));
    Ok(grouping::resolve_groups(corpus, strategy)?)
}

pub fn cmd_validate(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let bytes = read(path)?;
    let report = corpus::validate_document(&bytes)?;
    for e in &report.errors {
        writeln!(out, "error\t{}\t{}", e.location, e.message).map_err(io)?;
    }
    for w in &report.warnings {
        writeln!(out, "warning\t{}\t{}", w.location, w.message).map_err(io)?;
    }
    writeln!(
        err,
        "{}: {} error(s), {} warning(s)",
        path.display(),
        report.errors.len(),
        report.warnings.len()
    )
    .map_err(io)?;
    Ok(if report.is_ok() { 0 } else { 2 })
}

pub fn cmd_metrics(
    cli: &Cli,
    args: &MetricsArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let (mut corpus, bytes) = load_corpus(&args.corpus)?;
    let mut inputs = vec![InputDigest {
        role: "corpus",
        path: args.corpus.display().to_string(),
        sha256: sha256_hex(&bytes),
    }];
    if let Some(path) = &args.annotations {
        let rows = read(path)?;
        corpus = corpus::load_annotations(&corpus, rows.as_slice())?;
        inputs.push(InputDigest {
            role: "annotations",
            path: path.display().to_string(),
            sha256: sha256_hex(&rows),
        });
    }
    let assignment = resolve(cli, &corpus)?;

    let mut ids: Vec<String> = match &args.paper {
        Some(id) => vec![id.clone()],
        None => corpus.papers().map(|p| p.id.clone()).collect(),
    };
    ids.sort();
    let form = cli.novelty_form;
    let profiles = ids
        .par_iter()
        .map(|id| creativity_profile(&corpus, &assignment, id, form))
        .collect::<Result<Vec<_>, _>>()?;

    let report = Report {
        header: (!cli.no_header).then(|| Header {
            generated_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }),
        tool: Tool::default(),
        inputs,
        settings: Settings {
            strategy: assignment.strategy().to_string(),
            novelty_form: form.to_string(),
        },
        papers: profiles.iter().map(PaperEntry::from).collect(),
        warnings: corpus::validate_corpus(&corpus)
            .warnings
            .into_iter()
            .map(|w| format!("{}: {}", w.location, w.message))
            .collect(),
    };
    out.write_all(report.to_json().as_bytes()).map_err(io)?;

    for p in &profiles {
        let novelty = p
            .novelty
            .value
            .map_or_else(|| report::NOT_AVAILABLE.to_string(), fmt_num);
        writeln!(
            err,
            "{}: novelty {novelty}, usefulness {}, {} clusters ({} auto-citation)",
            p.paper_id,
            fmt_num(p.usefulness.value),
            p.cluster_count,
            p.auto_citation_cluster_count
        )
        .map_err(io)?;
    }
    Ok(())
}

pub fn cmd_clusters(
    cli: &Cli,
    args: &ClustersArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let format: PlotFormat = args.plot.parse()?;
    let (corpus, _) = load_corpus(&args.corpus)?;
    let assignment = resolve(cli, &corpus)?;
    let clusters = grouping::build_clusters(&corpus, &assignment, &args.paper)?;
    let histogram = distribution::cluster_size_histogram(&clusters);
    let plot = distribution::emit_plot_data(&histogram, format);
    match &args.out {
        Some(path) => write_file(path, &plot)?,
        None => out.write_all(&plot).map_err(io)?,
    }

    writeln!(
        err,
        "{}: {} groups, {} citations",
        histogram.cited_id, histogram.total_groups, histogram.total_citations
    )
    .map_err(io)?;
    match distribution::tail_statistics(&histogram) {
        Ok(t) => {
            let slope = t
                .loglog_slope
                .map_or_else(|| report::NOT_AVAILABLE.to_string(), fmt_num);
            writeln!(
                err,
                "singleton fraction {}, max cluster {}, log-log slope {slope}",
                fmt_num(t.singleton_fraction),
                t.max_size
            )
            .map_err(io)?;
        }
        Err(_) => writeln!(err, "no citations").map_err(io)?,
    }
    Ok(())
}

pub fn cmd_shah(measure: &ShahCommand, out: &mut dyn Write) -> Result<()> {
    match measure {
        ShahCommand::Feature { table } => {
            let features = shah::read_features(&read(table)?)?;
            for f in &features {
                let s = design::feature_novelty_index(f)?;
                writeln!(out, "{}\t{}", f.feature, fmt_num(s)).map_err(io)?;
            }
        }
        ShahCommand::Novelty { table } => {
            let features = shah::read_features(&read(table)?)?;
            writeln!(out, "{}", fmt_num(design::design_novelty(&features)?)).map_err(io)?;
        }
        ShahCommand::Variety { table, designs } => {
            let attributes = shah::read_levels(&read(table)?)?;
            let designs = u64::try_from(*designs)
                .map_err(|_| CliError::from(design::DesignError::NonPositiveDesignCount))?;
            let mv = design::design_variety_multi(&attributes, designs)?;
            writeln!(out, "{}", fmt_num(mv)).map_err(io)?;
        }
    }
    Ok(())
}

pub fn cmd_synth(
    config: &Path,
    path: &Path,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let mut cfg = SynthConfig::from_json(&read(config)?)?;
    if let Ok(raw) = std::env::var(SEED_ENV) {
        cfg.seed = raw.trim().parse().map_err(|_| {
            CliError::Domain(format!("{SEED_ENV}={raw:?} is not a 64-bit unsigned seed"))
        })?;
        writeln!(err, "seed overridden by {SEED_ENV}: {}", cfg.seed).map_err(io)?;
    }
    let corpus = synth::generate_corpus(&cfg)?;
    let text = corpus.to_json();
    write_file(path, text.as_bytes())?;
    writeln!(out, "sha256:{}", sha256_hex(text.as_bytes())).map_err(io)?;
    writeln!(
        err,
        "wrote {} papers, {} citations to {}",
        corpus.paper_count(),
        corpus.edge_count(),
        path.display()
    )
    .map_err(io)?;
    Ok(())
}
