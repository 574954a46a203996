use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::RigMatrix;
use crate::corpus::CorpusIndex;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankBy {
    Rig,
    /// Number of category documents containing the word (`w_jk`).
    Frequency,
}

impl RankBy {
    pub fn as_str(self) -> &'static str {
        match self {
            RankBy::Rig => "rig",
            RankBy::Frequency => "frequency",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedWord {
    pub word: String,
    pub score: f64,
}

fn by_score_then_word(a: &RankedWord, b: &RankedWord) -> Ordering {
    b.score
        .total_cmp(&a.score)
        .then_with(|| a.word.cmp(&b.word))
}

fn top(mut ranked: Vec<RankedWord>, top_n: usize) -> Result<Vec<RankedWord>> {
    if top_n == 0 {
        return Err(Error::InvalidArgument("top_n must be at least 1".into()));
    }
    ranked.sort_by(by_score_then_word);
    ranked.truncate(top_n);
    Ok(ranked)
}

/// Words of `category` by descending RIG, ties by word.
pub fn rank_by_rig(matrix: &RigMatrix, category: &str, top_n: usize) -> Result<Vec<RankedWord>> {
    let k = matrix.category_position(category)?;
    let ranked = matrix
        .words()
        .iter()
        .zip(matrix.column(k))
        .map(|(w, score)| RankedWord {
            word: w.clone(),
            score,
        })
        .collect();
    top(ranked, top_n)
}

/// Words of `category` by descending in-category document frequency.
pub fn rank_by_frequency(
    index: &CorpusIndex,
    category: &str,
    top_n: usize,
) -> Result<Vec<RankedWord>> {
    let k = index.category_position(category)?;
    let ranked = index
        .dictionary()
        .words()
        .iter()
        .enumerate()
        .map(|(j, w)| RankedWord {
            word: w.clone(),
            score: index.joint_count(j, k) as f64,
        })
        .collect();
    top(ranked, top_n)
}

/// Dispatches on `by`; RIG mode needs the matrix, frequency mode the index.
pub fn rank_category_words(
    index: Option<&CorpusIndex>,
    matrix: Option<&RigMatrix>,
    category: &str,
    by: RankBy,
    top_n: usize,
) -> Result<Vec<RankedWord>> {
    match by {
        RankBy::Rig => match matrix {
            Some(m) => rank_by_rig(m, category, top_n),
            None => Err(Error::InvalidArgument(
                "RIG ranking needs a RIG matrix".into(),
            )),
        },
        RankBy::Frequency => match index {
            Some(i) => rank_by_frequency(i, category, top_n),
            None => Err(Error::InvalidArgument(
                "frequency ranking needs a corpus index".into(),
            )),
        },
    }
}

/// Summed RIG of one word across all categories.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordScore {
    pub index: usize,
    pub word: String,
    pub sum: f64,
    /// `sum / K`.
    pub mean: f64,
}

/// One score per matrix row, in row order.
pub fn word_informativeness_sum(matrix: &RigMatrix) -> Vec<WordScore> {
    let k = matrix.num_categories();
    matrix
        .words()
        .iter()
        .enumerate()
        .map(|(j, w)| {
            let sum: f64 = matrix.row(j).iter().sum();
            WordScore {
                index: j,
                word: w.clone(),
                sum,
                mean: if k == 0 { 0.0 } else { sum / k as f64 },
            }
        })
        .collect()
}

/// Scores ordered by descending sum, ties by word.
pub fn sorted_scores(scores: &[WordScore]) -> Vec<WordScore> {
    let mut sorted = scores.to_vec();
    sorted.sort_by(|a, b| b.sum.total_cmp(&a.sum).then_with(|| a.word.cmp(&b.word)));
    sorted
}

/// The `n` most informative words, most informative first.
pub fn select_thesaurus(scores: &[WordScore], n: usize) -> Result<Vec<String>> {
    if n > scores.len() {
        return Err(Error::Size {
            requested: n,
            available: scores.len(),
        });
    }
    Ok(sorted_scores(scores)
        .into_iter()
        .take(n)
        .map(|s| s.word)
        .collect())
}
