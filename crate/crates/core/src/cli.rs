//! Command-line surface: ingest → rig → thesaurus → pca → groups/extremes,
//! plus per-category rankings and reports.
//!
//! Every command reads its settings from an optional JSON config, applies
//! flag overrides, writes the effective config next to its outputs as
//! `run_config_<command>.json` and prints one summary line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::corpus::{ingest_paths, CorpusIndex, IngestOptions, InputFormat, NormalizeOptions};
use crate::error::{Error, Result};
use crate::infogain::{
    build_rig_matrix, select_thesaurus, word_informativeness_sum, RankBy, RigMatrix,
};
use crate::pca::{
    explained_variance, extreme_ends, fit_pca, loading_groups, select_components,
    ExtremeEndsOptions, LoadingConvention, SelectionRule,
};
use crate::report::{self, RankSource};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "RIGSPACE_OUT";

/// Effective settings of one run. Every flag has a field here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub command: String,
    pub inputs: Vec<PathBuf>,
    pub format: InputFormat,
    pub normalize: NormalizeOptions,
    pub min_doc_frequency: u64,
    pub output_dir: PathBuf,
    pub index: Option<PathBuf>,
    pub matrix: Option<PathBuf>,
    pub thesaurus_size: usize,
    pub selection: SelectionRule,
    pub condition_limit: f64,
    pub loading_convention: LoadingConvention,
    pub category: Option<String>,
    pub rank_by: RankBy,
    pub top_n: usize,
    /// 1-based component number.
    pub pc: usize,
    pub n_categories: usize,
    pub n_words: usize,
    pub min_lists: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let ingest = IngestOptions::default();
        let ends = ExtremeEndsOptions::default();
        RunConfig {
            command: String::new(),
            inputs: Vec::new(),
            format: ingest.format,
            normalize: ingest.normalize,
            min_doc_frequency: ingest.min_doc_frequency,
            output_dir: PathBuf::from("rigspace-out"),
            index: None,
            matrix: None,
            thesaurus_size: 5000,
            selection: SelectionRule::Kaiser,
            condition_limit: 10.0,
            loading_convention: LoadingConvention::UnitEigenvector,
            category: None,
            rank_by: RankBy::Rig,
            top_n: 100,
            pc: 1,
            n_categories: ends.n_categories,
            n_words: ends.n_words,
            min_lists: ends.min_lists,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.thesaurus_size == 0 {
            return Err("thesaurus size must be at least 1".into());
        }
        if self.condition_limit.is_nan() || self.condition_limit <= 1.0 {
            return Err("condition limit must exceed 1".into());
        }
        if self.output_dir.as_os_str().is_empty() {
            return Err("output directory must not be empty".into());
        }
        if self.inputs.iter().any(|p| p.as_os_str().is_empty()) {
            return Err("input paths must not be empty".into());
        }
        if self.top_n == 0 || self.n_words == 0 || self.n_categories == 0 {
            return Err("counts must be at least 1".into());
        }
        if self.pc == 0 {
            return Err("--pc counts from 1".into());
        }
        Ok(())
    }

    pub fn index_path(&self) -> PathBuf {
        self.index
            .clone()
            .unwrap_or_else(|| self.output_dir.join("index.json"))
    }

    pub fn matrix_path(&self) -> PathBuf {
        self.matrix
            .clone()
            .unwrap_or_else(|| self.output_dir.join("rig_matrix.csv"))
    }

    fn ingest_options(&self) -> IngestOptions {
        IngestOptions {
            format: self.format,
            normalize: self.normalize,
            min_doc_frequency: self.min_doc_frequency,
        }
    }

    fn require_category(&self) -> std::result::Result<&str, String> {
        self.category
            .as_deref()
            .ok_or_else(|| "--category is required".to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "rigspace",
    version,
    about = "Relative information gain word vectors and their principal components"
)]
struct Cli {
    /// JSON config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (default: $RIGSPACE_OUT or ./rigspace-out).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// JSON-lines corpus → index.json snapshot.
    Ingest(IngestArgs),
    /// Index → rig_matrix.csv.
    Rig(IndexArgs),
    /// Top words of one category → wordcloud_<category>_<mode>.csv.
    Rank(RankArgs),
    /// Summed-RIG word scores and the top-N thesaurus.
    Thesaurus(ThesaurusArgs),
    /// PCA of a RIG matrix and component selection → scree.csv.
    Pca(PcaArgs),
    /// Positive/zero/negative category groups of one component.
    Groups(GroupsArgs),
    /// Extreme-end categories and their common words for one component.
    Extremes(ExtremesArgs),
    /// Word clouds, top-10 histogram and RIG/frequency comparison for a category.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Raw,
    Tokenized,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ByArg {
    Rig,
    #[value(alias = "frequency")]
    Freq,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RuleArg {
    Kaiser,
    BrokenStick,
    PcaCn,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConventionArg {
    Unit,
    Scaled,
}

#[derive(Debug, Args)]
struct IngestArgs {
    #[arg(long = "input", required = false)]
    inputs: Vec<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// English stemming of raw text.
    #[arg(long)]
    stem: Option<bool>,
    /// Stop-word removal of raw text.
    #[arg(long)]
    stop_words: Option<bool>,
    #[arg(long)]
    min_df: Option<u64>,
}

#[derive(Debug, Args)]
struct IndexArgs {
    #[arg(long)]
    index: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RankArgs {
    #[arg(long)]
    index: Option<PathBuf>,
    #[arg(long)]
    category: Option<String>,
    #[arg(long, value_enum)]
    by: Option<ByArg>,
    #[arg(long)]
    top: Option<usize>,
}

#[derive(Debug, Args)]
struct ThesaurusArgs {
    #[arg(long)]
    index: Option<PathBuf>,
    #[arg(long)]
    size: Option<usize>,
}

#[derive(Debug, Args)]
struct PcaArgs {
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long, value_enum)]
    select: Option<RuleArg>,
    #[arg(long)]
    cn: Option<f64>,
}

#[derive(Debug, Args)]
struct GroupsArgs {
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Component number, from 1.
    #[arg(long)]
    pc: Option<usize>,
    #[arg(long, value_enum)]
    convention: Option<ConventionArg>,
}

#[derive(Debug, Args)]
struct ExtremesArgs {
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    pc: Option<usize>,
    #[arg(long)]
    n_categories: Option<usize>,
    #[arg(long)]
    n_words: Option<usize>,
    /// Relaxed common-word threshold (lists a word must appear in).
    #[arg(long)]
    min_lists: Option<usize>,
    #[arg(long, value_enum)]
    convention: Option<ConventionArg>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long)]
    index: Option<PathBuf>,
    #[arg(long)]
    category: Option<String>,
    #[arg(long)]
    top: Option<usize>,
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn convention(c: ConventionArg) -> LoadingConvention {
    match c {
        ConventionArg::Unit => LoadingConvention::UnitEigenvector,
        ConventionArg::Scaled => LoadingConvention::ScaledBySqrtEigenvalue,
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Ingest(_) => "ingest",
            Command::Rig(_) => "rig",
            Command::Rank(_) => "rank",
            Command::Thesaurus(_) => "thesaurus",
            Command::Pca(_) => "pca",
            Command::Groups(_) => "groups",
            Command::Extremes(_) => "extremes",
            Command::Report(_) => "report",
        }
    }

    fn apply(&self, cfg: &mut RunConfig) {
        cfg.command = self.name().to_string();
        match self {
            Command::Ingest(a) => {
                if !a.inputs.is_empty() {
                    cfg.inputs = a.inputs.clone();
                }
                set(
                    &mut cfg.format,
                    a.format.map(|f| match f {
                        FormatArg::Raw => InputFormat::Raw,
                        FormatArg::Tokenized => InputFormat::Tokenized,
                    }),
                );
                set(&mut cfg.normalize.stem, a.stem);
                set(&mut cfg.normalize.remove_stop_words, a.stop_words);
                set(&mut cfg.min_doc_frequency, a.min_df);
            }
            Command::Rig(a) => set(&mut cfg.index, a.index.clone().map(Some)),
            Command::Rank(a) => {
                set(&mut cfg.index, a.index.clone().map(Some));
                set(&mut cfg.category, a.category.clone().map(Some));
                set(
                    &mut cfg.rank_by,
                    a.by.map(|b| match b {
                        ByArg::Rig => RankBy::Rig,
                        ByArg::Freq => RankBy::Frequency,
                    }),
                );
                set(&mut cfg.top_n, a.top);
            }
            Command::Thesaurus(a) => {
                set(&mut cfg.index, a.index.clone().map(Some));
                set(&mut cfg.thesaurus_size, a.size);
            }
            Command::Pca(a) => {
                set(&mut cfg.matrix, a.matrix.clone().map(Some));
                set(
                    &mut cfg.selection,
                    a.select.map(|r| match r {
                        RuleArg::Kaiser => SelectionRule::Kaiser,
                        RuleArg::BrokenStick => SelectionRule::BrokenStick,
                        RuleArg::PcaCn => SelectionRule::PcaCn,
                    }),
                );
                set(&mut cfg.condition_limit, a.cn);
            }
            Command::Groups(a) => {
                set(&mut cfg.matrix, a.matrix.clone().map(Some));
                set(&mut cfg.pc, a.pc);
                set(&mut cfg.loading_convention, a.convention.map(convention));
            }
            Command::Extremes(a) => {
                set(&mut cfg.matrix, a.matrix.clone().map(Some));
                set(&mut cfg.pc, a.pc);
                set(&mut cfg.n_categories, a.n_categories);
                set(&mut cfg.n_words, a.n_words);
                set(&mut cfg.min_lists, a.min_lists);
                set(&mut cfg.loading_convention, a.convention.map(convention));
            }
            Command::Report(a) => {
                set(&mut cfg.index, a.index.clone().map(Some));
                set(&mut cfg.category, a.category.clone().map(Some));
                set(&mut cfg.top_n, a.top);
            }
        }
    }
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(summary) => {
            println!("{summary}");
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            EXIT_USAGE
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            EXIT_DATA
        }
    }
}

fn load_config(cli: &Cli) -> std::result::Result<RunConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("config {}: {e}", path.display())))?
        }
        None => {
            let mut cfg = RunConfig::default();
            if let Some(dir) = std::env::var_os(OUT_DIR_ENV) {
                cfg.output_dir = PathBuf::from(dir);
            }
            cfg
        }
    };
    if let Some(out) = &cli.out {
        cfg.output_dir = out.clone();
    }
    cli.command.apply(&mut cfg);
    cfg.validate().map_err(Failure::Usage)?;
    Ok(cfg)
}

fn execute(cli: Cli) -> std::result::Result<String, Failure> {
    let cfg = load_config(&cli)?;
    let out = cfg.output_dir.clone();
    fs::create_dir_all(&out).map_err(|e| Error::io(&out, e))?;
    let summary = match &cli.command {
        Command::Ingest(_) => cmd_ingest(&cfg)?,
        Command::Rig(_) => cmd_rig(&cfg)?,
        Command::Rank(_) => cmd_rank(&cfg)?,
        Command::Thesaurus(_) => cmd_thesaurus(&cfg)?,
        Command::Pca(_) => cmd_pca(&cfg)?,
        Command::Groups(_) => cmd_groups(&cfg)?,
        Command::Extremes(_) => cmd_extremes(&cfg)?,
        Command::Report(_) => cmd_report(&cfg)?,
    };
    write_config(&cfg)?;
    Ok(summary)
}

fn write_config(cfg: &RunConfig) -> Result<()> {
    let path = cfg
        .output_dir
        .join(format!("run_config_{}.json", cfg.command));
    let mut f = report::create_file(&path)?;
    serde_json::to_writer_pretty(&mut f, cfg)?;
    f.write_all(b"\n")
        .and_then(|_| f.flush())
        .map_err(|e| Error::io(&path, e))
}

fn load_index(cfg: &RunConfig) -> Result<CorpusIndex> {
    CorpusIndex::load(&cfg.index_path())
}

fn load_matrix(cfg: &RunConfig) -> Result<RigMatrix> {
    RigMatrix::load_csv(&cfg.matrix_path())
}

fn rig_from_index(index: &CorpusIndex) -> Result<RigMatrix> {
    let matrix = build_rig_matrix(index)?;
    for &c in matrix.degenerate_categories() {
        eprintln!(
            "warning: category {:?} has zero entropy; its RIG column is 0",
            matrix.categories()[c]
        );
    }
    Ok(matrix)
}

fn cmd_ingest(cfg: &RunConfig) -> std::result::Result<String, Failure> {
    if cfg.inputs.is_empty() {
        return Err(Failure::Usage("ingest needs at least one --input".into()));
    }
    let index = ingest_paths(&cfg.inputs, &cfg.ingest_options())?;
    let path = cfg.index_path();
    index.save(&path)?;
    Ok(format!(
        "ingest: {} documents, {} words, {} categories -> {}",
        index.num_documents(),
        index.num_words(),
        index.num_categories(),
        path.display()
    ))
}

fn cmd_rig(cfg: &RunConfig) -> std::result::Result<String, Failure> {
    let index = load_index(cfg)?;
    let matrix = rig_from_index(&index)?;
    let path = report::export_rig_matrix(&cfg.output_dir, &matrix)?;
    Ok(format!(
        "rig: {}x{} matrix, {} degenerate categories -> {}",
        matrix.num_words(),
        matrix.num_categories(),
        matrix.degenerate_categories().len(),
        path.display()
    ))
}

fn cmd_rank(cfg: &RunConfig) -> std::result::Result<String, Failure> {
    let category = cfg.require_category().map_err(Failure::Usage)?;
    let index = load_index(cfg)?;
    index.category_position(category)?;
    let matrix = match cfg.rank_by {
        RankBy::Rig => Some(rig_from_index(&index)?),
        RankBy::Frequency => None,
    };
    let source = match &matrix {
        Some(m) => RankSource::Rig(m),
        None => RankSource::Frequency(&index),
    };
    let (data, path) = report::export_word_cloud(&cfg.output_dir, source, category, cfg.top_n)?;
    let head = data
        .entries
        .first()
        .map(|e| format!("{} ({})", e.word, e.score))
        .unwrap_or_default();
    Ok(format!(
        "rank: {} by {}: {} words, top {} -> {}",
        category,
        cfg.rank_by.as_str(),
        data.entries.len(),
        head,
        path.display()
    ))
}

fn cmd_thesaurus(cfg: &RunConfig) -> std::result::Result<String, Failure> {
    let index = load_index(cfg)?;
    let matrix = rig_from_index(&index)?;
    let scores = word_informativeness_sum(&matrix);
    let words = select_thesaurus(&scores, cfg.thesaurus_size)?;
    let scores_path = report::export_word_scores(&cfg.output_dir, &scores)?;
    let list_path = cfg.output_dir.join("thesaurus.txt");
    let mut f = report::create_file(&list_path)?;
    for w in &words {
        writeln!(f, "{w}").map_err(|e| Error::io(&list_path, e))?;
    }
    f.flush().map_err(|e| Error::io(&list_path, e))?;
    let sub = matrix.select_words(&words)?;
    let sub_path = cfg.output_dir.join("thesaurus_matrix.csv");
    sub.save_csv(&sub_path)?;
    Ok(format!(
        "thesaurus: {} of {} words -> {}, {}, {}",
        words.len(),
        matrix.num_words(),
        list_path.display(),
        scores_path.display(),
        sub_path.display()
    ))
}

fn cmd_pca(cfg: &RunConfig) -> std::result::Result<String, Failure> {
    let matrix = load_matrix(cfg)?;
    let model = fit_pca(&matrix)?;
    let ev = explained_variance(&model);
    let scree = report::export_scree(&cfg.output_dir, &ev)?;
    let result = select_components(model.eigenvalues(), cfg.selection, cfg.condition_limit)?;
    let sel_path = cfg
        .output_dir
        .join(format!("selection_{}.json", cfg.selection.as_str()));
    let mut f = report::create_file(&sel_path)?;
    serde_json::to_writer_pretty(&mut f, &result).map_err(Error::from)?;
    f.write_all(b"\n")
        .and_then(|_| f.flush())
        .map_err(|e| Error::io(&sel_path, e))?;
    Ok(format!(
        "pca: rule={} k={}{} of {} components, cumulative {:.2}%, PC1 {:.2}% -> {}",
        result.rule.as_str(),
        result.k,
        if result.flagged { " (flagged)" } else { "" },
        model.num_components(),
        100.0 * ev.cumulative[result.k - 1],
        100.0 * ev.fractions[0],
        scree.display()
    ))
}

fn pc_index(cfg: &RunConfig) -> usize {
    cfg.pc - 1
}

fn cmd_groups(cfg: &RunConfig) -> std::result::Result<String, Failure> {
    let matrix = load_matrix(cfg)?;
    let model = fit_pca(&matrix)?;
    let groups = loading_groups(&model, pc_index(cfg), cfg.loading_convention)?;
    let path = report::export_groups(&cfg.output_dir, &groups)?;
    Ok(format!(
        "groups: PC{} positive={} zero={} negative={} -> {}",
        cfg.pc,
        groups.positive.len(),
        groups.zero.len(),
        groups.negative.len(),
        path.display()
    ))
}

fn cmd_extremes(cfg: &RunConfig) -> std::result::Result<String, Failure> {
    let matrix = load_matrix(cfg)?;
    let model = fit_pca(&matrix)?;
    let options = ExtremeEndsOptions {
        n_categories: cfg.n_categories,
        n_words: cfg.n_words,
        min_lists: cfg.min_lists,
        convention: cfg.loading_convention,
    };
    let ends = extreme_ends(&model, &matrix, pc_index(cfg), &options)?;
    let path = report::export_extremes(&cfg.output_dir, &ends)?;
    let head = |w: &[String]| w.iter().take(3).cloned().collect::<Vec<_>>().join(" ");
    Ok(format!(
        "extremes: PC{} positive common [{}] negative common [{}] -> {}",
        cfg.pc,
        head(&ends.positive.common),
        head(&ends.negative.common),
        path.display()
    ))
}

fn cmd_report(cfg: &RunConfig) -> std::result::Result<String, Failure> {
    let category = cfg.require_category().map_err(Failure::Usage)?;
    let index = load_index(cfg)?;
    index.category_position(category)?;
    let matrix = rig_from_index(&index)?;
    let dir = &cfg.output_dir;
    report::export_word_cloud(dir, RankSource::Rig(&matrix), category, cfg.top_n)?;
    report::export_word_cloud(dir, RankSource::Frequency(&index), category, cfg.top_n)?;
    report::export_top10_histogram(dir, &matrix, category)?;
    let (cmp, _) = report::export_comparison(dir, &index, &matrix, category, cfg.top_n)?;
    Ok(format!(
        "report: {} top {} overlap {} -> {}",
        category,
        cfg.top_n,
        cmp.overlap,
        dir.display()
    ))
}
