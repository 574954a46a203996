//! Machine-readable figure and table data: word-cloud weights, top-10
//! histograms, RIG/frequency comparisons, scree data, loading groups and
//! extreme-end reports.
//!
//! Every `write_*` function is pure over its inputs and formats floats in
//! shortest round-trip form. The `export_*` functions write into a
//! directory under fixed file names.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::corpus::CorpusIndex;
use crate::error::{Error, Result};
use crate::infogain::{rank_by_frequency, rank_by_rig, RankBy, RankedWord, RigMatrix, WordScore};
use crate::pca::{ExplainedVariance, ExtremeEnds, LoadingGroups};

/// Where word-cloud weights come from; the mode follows the source.
#[derive(Debug, Clone, Copy)]
pub enum RankSource<'a> {
    Rig(&'a RigMatrix),
    Frequency(&'a CorpusIndex),
}

impl RankSource<'_> {
    pub fn mode(&self) -> RankBy {
        match self {
            RankSource::Rig(_) => RankBy::Rig,
            RankSource::Frequency(_) => RankBy::Frequency,
        }
    }

    fn rank(&self, category: &str, top_n: usize) -> Result<Vec<RankedWord>> {
        match self {
            RankSource::Rig(m) => rank_by_rig(m, category, top_n),
            RankSource::Frequency(i) => rank_by_frequency(i, category, top_n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordCloudData {
    pub category: String,
    pub mode: RankBy,
    /// Non-increasing weights.
    pub entries: Vec<RankedWord>,
}

impl WordCloudData {
    pub fn build(source: RankSource<'_>, category: &str, top_n: usize) -> Result<Self> {
        Ok(WordCloudData {
            category: category.to_string(),
            mode: source.mode(),
            entries: source.rank(category, top_n)?,
        })
    }

    /// `rank,word,weight`, ranks from 1.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        write_ranked(writer, "weight", &self.entries)
    }
}

fn write_ranked<W: Write>(writer: W, value_column: &str, entries: &[RankedWord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["rank", "word", value_column])?;
    for (i, e) in entries.iter().enumerate() {
        w.write_record([(i + 1).to_string(), e.word.clone(), e.score.to_string()])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// The ten highest-RIG words of a category.
pub fn top10_histogram(matrix: &RigMatrix, category: &str) -> Result<Vec<RankedWord>> {
    rank_by_rig(matrix, category, 10)
}

/// `rank,word,rig`.
pub fn write_histogram<W: Write>(writer: W, entries: &[RankedWord]) -> Result<()> {
    write_ranked(writer, "rig", entries)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub category: String,
    pub top_n: usize,
    pub rig: Vec<RankedWord>,
    pub frequency: Vec<RankedWord>,
    /// Size of the intersection of the two top lists.
    pub overlap: usize,
}

impl Comparison {
    pub fn build(
        index: &CorpusIndex,
        matrix: &RigMatrix,
        category: &str,
        top_n: usize,
    ) -> Result<Self> {
        let rig = rank_by_rig(matrix, category, top_n)?;
        let frequency = rank_by_frequency(index, category, top_n)?;
        let freq_words: HashSet<&str> = frequency.iter().map(|w| w.word.as_str()).collect();
        let overlap = rig
            .iter()
            .filter(|w| freq_words.contains(w.word.as_str()))
            .count();
        Ok(Comparison {
            category: category.to_string(),
            top_n,
            rig,
            frequency,
            overlap,
        })
    }

    /// `rank,rig_word,rig,frequency_word,frequency,shared`; `shared` marks RIG
    /// words that also appear in the frequency list, so it sums to `overlap`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let freq_words: HashSet<&str> = self.frequency.iter().map(|w| w.word.as_str()).collect();
        let mut w = csv::Writer::from_writer(writer);
        w.write_record([
            "rank",
            "rig_word",
            "rig",
            "frequency_word",
            "frequency",
            "shared",
        ])?;
        let rows = self.rig.len().max(self.frequency.len());
        for i in 0..rows {
            let (rw, rs, shared) = match self.rig.get(i) {
                Some(e) => (
                    e.word.clone(),
                    e.score.to_string(),
                    freq_words.contains(e.word.as_str()).to_string(),
                ),
                None => (String::new(), String::new(), String::new()),
            };
            let (fw, fs) = match self.frequency.get(i) {
                Some(e) => (e.word.clone(), e.score.to_string()),
                None => (String::new(), String::new()),
            };
            w.write_record([(i + 1).to_string(), rw, rs, fw, fs, shared])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

/// `pc,eigenvalue,eigenvalue_over_mean,fraction,cumulative`, pc from 1.
pub fn write_scree<W: Write>(writer: W, ev: &ExplainedVariance) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "pc",
        "eigenvalue",
        "eigenvalue_over_mean",
        "fraction",
        "cumulative",
    ])?;
    for i in 0..ev.eigenvalues.len() {
        w.write_record([
            (i + 1).to_string(),
            ev.eigenvalues[i].to_string(),
            ev.over_mean[i].to_string(),
            ev.fractions[i].to_string(),
            ev.cumulative[i].to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// `pc,category,loading,group`, pc from 1, categories in model order.
pub fn write_groups<W: Write>(writer: W, groups: &LoadingGroups) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["pc", "category", "loading", "group"])?;
    let pc = (groups.pc + 1).to_string();
    for ((c, l), g) in groups
        .categories
        .iter()
        .zip(&groups.loadings)
        .zip(&groups.groups)
    {
        w.write_record([pc.as_str(), c, &l.to_string(), g.as_str()])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_extremes<W: Write>(writer: W, ends: &ExtremeEnds) -> Result<()> {
    let mut writer = writer;
    serde_json::to_writer_pretty(&mut writer, ends)?;
    writer
        .write_all(b"\n")
        .map_err(|e| Error::io("<extremes>", e))
}

/// `word,s_sum,s_mean`, in the order given.
pub fn write_word_scores<W: Write>(writer: W, scores: &[WordScore]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["word", "s_sum", "s_mean"])?;
    for s in scores {
        w.write_record([s.word.clone(), s.sum.to_string(), s.mean.to_string()])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// File-name form of a category: ASCII alphanumerics kept, every other run
/// of characters collapsed to `_`.
pub fn file_stem(category: &str) -> String {
    let mut out = String::with_capacity(category.len());
    let mut gap = false;
    for ch in category.chars() {
        if ch.is_ascii_alphanumeric() {
            if gap && !out.is_empty() {
                out.push('_');
            }
            gap = false;
            out.push(ch);
        } else {
            gap = true;
        }
    }
    if out.is_empty() {
        out.push('_');
    }
    out
}

pub fn create_file(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn write_to(path: PathBuf, f: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<PathBuf> {
    let mut file = create_file(&path)?;
    f(&mut file)?;
    file.flush().map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Writes `wordcloud_<category>_<mode>.csv`.
pub fn export_word_cloud(
    dir: &Path,
    source: RankSource<'_>,
    category: &str,
    top_n: usize,
) -> Result<(WordCloudData, PathBuf)> {
    let data = WordCloudData::build(source, category, top_n)?;
    let name = format!(
        "wordcloud_{}_{}.csv",
        file_stem(category),
        data.mode.as_str()
    );
    let path = write_to(dir.join(name), |w| data.write_csv(w))?;
    Ok((data, path))
}

/// Writes `hist10_<category>.csv`.
pub fn export_top10_histogram(
    dir: &Path,
    matrix: &RigMatrix,
    category: &str,
) -> Result<(Vec<RankedWord>, PathBuf)> {
    let entries = top10_histogram(matrix, category)?;
    let name = format!("hist10_{}.csv", file_stem(category));
    let path = write_to(dir.join(name), |w| write_histogram(w, &entries))?;
    Ok((entries, path))
}

/// Writes `comparison_<category>.csv`.
pub fn export_comparison(
    dir: &Path,
    index: &CorpusIndex,
    matrix: &RigMatrix,
    category: &str,
    top_n: usize,
) -> Result<(Comparison, PathBuf)> {
    let cmp = Comparison::build(index, matrix, category, top_n)?;
    let name = format!("comparison_{}.csv", file_stem(category));
    let path = write_to(dir.join(name), |w| cmp.write_csv(w))?;
    Ok((cmp, path))
}

/// Writes `scree.csv`.
pub fn export_scree(dir: &Path, ev: &ExplainedVariance) -> Result<PathBuf> {
    write_to(dir.join("scree.csv"), |w| write_scree(w, ev))
}

/// Writes `groups_pc<k>.csv` with `k` counted from 1.
pub fn export_groups(dir: &Path, groups: &LoadingGroups) -> Result<PathBuf> {
    let name = format!("groups_pc{}.csv", groups.pc + 1);
    write_to(dir.join(name), |w| write_groups(w, groups))
}

/// Writes `extremes_pc<k>.json` with `k` counted from 1.
pub fn export_extremes(dir: &Path, ends: &ExtremeEnds) -> Result<PathBuf> {
    let name = format!("extremes_pc{}.json", ends.pc + 1);
    write_to(dir.join(name), |w| write_extremes(w, ends))
}

/// Writes `rig_matrix.csv`.
pub fn export_rig_matrix(dir: &Path, matrix: &RigMatrix) -> Result<PathBuf> {
    write_to(dir.join("rig_matrix.csv"), |w| matrix.write_csv(w))
}

/// Writes `word_scores.csv`, sorted by descending sum.
pub fn export_word_scores(dir: &Path, scores: &[WordScore]) -> Result<PathBuf> {
    let sorted = crate::infogain::sorted_scores(scores);
    write_to(dir.join("word_scores.csv"), |w| {
        write_word_scores(w, &sorted)
    })
}
