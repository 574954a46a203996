use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::PcaModel;
use crate::error::{Error, Result};
use crate::infogain::{rank_by_rig, RankedWord, RigMatrix};

/// Which per-category coordinate the thresholds are applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoadingConvention {
    /// Components of the unit eigenvector (cosines).
    #[default]
    UnitEigenvector,
    /// Unit eigenvector components multiplied by `sqrt(λ)`.
    ScaledBySqrtEigenvalue,
}

impl LoadingConvention {
    pub fn loadings(self, model: &PcaModel, pc: usize) -> Result<Vec<f64>> {
        model.check_pc(pc)?;
        let v = model.eigenvector(pc);
        Ok(match self {
            LoadingConvention::UnitEigenvector => v.to_vec(),
            LoadingConvention::ScaledBySqrtEigenvalue => {
                let s = model.eigenvalues()[pc].sqrt();
                v.iter().map(|x| x * s).collect()
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LoadingGroup {
    Positive,
    Zero,
    Negative,
}

impl LoadingGroup {
    pub fn as_str(self) -> &'static str {
        match self {
            LoadingGroup::Positive => "positive",
            LoadingGroup::Zero => "zero",
            LoadingGroup::Negative => "negative",
        }
    }
}

/// Partition of the categories by their loading on one component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoadingGroups {
    /// 0-based component index.
    pub pc: usize,
    pub convention: LoadingConvention,
    /// `1 / sqrt(K)`.
    pub importance_threshold: f64,
    /// `1 / (2 sqrt(K))`; loadings strictly inside `±zero_band` are negligible.
    pub zero_band: f64,
    pub categories: Vec<String>,
    pub loadings: Vec<f64>,
    pub groups: Vec<LoadingGroup>,
    pub positive: Vec<String>,
    pub zero: Vec<String>,
    pub negative: Vec<String>,
}

fn classify(loading: f64, band: f64) -> LoadingGroup {
    if loading >= band {
        LoadingGroup::Positive
    } else if loading <= -band {
        LoadingGroup::Negative
    } else {
        LoadingGroup::Zero
    }
}

pub fn loading_groups(
    model: &PcaModel,
    pc: usize,
    convention: LoadingConvention,
) -> Result<LoadingGroups> {
    let loadings = convention.loadings(model, pc)?;
    let k = loadings.len() as f64;
    let importance_threshold = 1.0 / k.sqrt();
    let zero_band = importance_threshold / 2.0;
    let groups: Vec<LoadingGroup> = loadings.iter().map(|&l| classify(l, zero_band)).collect();
    let members = |g: LoadingGroup| {
        model
            .categories()
            .iter()
            .zip(&groups)
            .filter(|(_, &x)| x == g)
            .map(|(c, _)| c.clone())
            .collect::<Vec<_>>()
    };
    Ok(LoadingGroups {
        pc,
        convention,
        importance_threshold,
        zero_band,
        categories: model.categories().to_vec(),
        positive: members(LoadingGroup::Positive),
        zero: members(LoadingGroup::Zero),
        negative: members(LoadingGroup::Negative),
        loadings,
        groups,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremeEndsOptions {
    pub n_categories: usize,
    pub n_words: usize,
    /// A word enters the relaxed common list when it is in at least this
    /// many of an end's per-category lists (capped at the end's size).
    pub min_lists: usize,
    pub convention: LoadingConvention,
}

impl Default for ExtremeEndsOptions {
    fn default() -> Self {
        ExtremeEndsOptions {
            n_categories: 10,
            n_words: 150,
            min_lists: 5,
            convention: LoadingConvention::UnitEigenvector,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndCategory {
    pub category: String,
    pub loading: f64,
    pub words: Vec<RankedWord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndReport {
    pub categories: Vec<EndCategory>,
    /// Words in every category list, by descending summed RIG over the end.
    pub common: Vec<String>,
    /// Words in at least `min_lists` category lists.
    pub relaxed_common: Vec<String>,
    pub min_lists: usize,
    /// Fewer than the requested number of categories passed the zero band.
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremeEnds {
    pub pc: usize,
    pub options: ExtremeEndsOptions,
    pub positive: EndReport,
    pub negative: EndReport,
}

/// Highest- and lowest-loading categories of a component and the words
/// their top RIG lists share.
pub fn extreme_ends(
    model: &PcaModel,
    matrix: &RigMatrix,
    pc: usize,
    options: &ExtremeEndsOptions,
) -> Result<ExtremeEnds> {
    if matrix.categories() != model.categories() {
        return Err(Error::InvalidArgument(
            "matrix categories differ from the fitted model".into(),
        ));
    }
    if options.n_categories == 0 || options.n_categories > model.categories().len() {
        return Err(Error::InvalidArgument(format!(
            "n_categories must be in 1..={}",
            model.categories().len()
        )));
    }
    if options.n_words == 0 {
        return Err(Error::InvalidArgument("n_words must be at least 1".into()));
    }
    let groups = loading_groups(model, pc, options.convention)?;

    let mut ends = [LoadingGroup::Positive, LoadingGroup::Negative].map(|side| {
        let mut picked: Vec<(usize, f64)> = groups
            .groups
            .iter()
            .enumerate()
            .filter(|(_, &g)| g == side)
            .map(|(c, _)| (c, groups.loadings[c]))
            .collect();
        picked.sort_by(|a, b| {
            let ord = match side {
                LoadingGroup::Negative => a.1.total_cmp(&b.1),
                _ => b.1.total_cmp(&a.1),
            };
            ord.then_with(|| groups.categories[a.0].cmp(&groups.categories[b.0]))
        });
        picked
    });

    let mut reports = Vec::with_capacity(2);
    for picked in ends.iter_mut() {
        let truncated = picked.len() < options.n_categories;
        picked.truncate(options.n_categories);
        reports.push(end_report(matrix, picked, options, truncated)?);
    }
    let negative = reports.pop().expect("two ends");
    let positive = reports.pop().expect("two ends");
    Ok(ExtremeEnds {
        pc,
        options: *options,
        positive,
        negative,
    })
}

fn end_report(
    matrix: &RigMatrix,
    picked: &[(usize, f64)],
    options: &ExtremeEndsOptions,
    truncated: bool,
) -> Result<EndReport> {
    let mut categories = Vec::with_capacity(picked.len());
    for &(c, loading) in picked {
        let name = &matrix.categories()[c];
        categories.push(EndCategory {
            category: name.clone(),
            loading,
            words: rank_by_rig(matrix, name, options.n_words)?,
        });
    }

    let mut seen_in: HashMap<&str, usize> = HashMap::new();
    for cat in &categories {
        let unique: HashSet<&str> = cat.words.iter().map(|w| w.word.as_str()).collect();
        for w in unique {
            *seen_in.entry(w).or_default() += 1;
        }
    }
    let cat_idx: Vec<usize> = picked.iter().map(|&(c, _)| c).collect();
    let end_weight = |word: &str| -> f64 {
        let j = matrix
            .word_position(word)
            .expect("ranked words come from the matrix");
        cat_idx.iter().map(|&c| matrix.get(j, c)).sum()
    };

    let n = categories.len();
    let min_lists = options.min_lists.clamp(1, n.max(1));
    let mut relaxed: Vec<(&str, usize, f64)> = seen_in
        .iter()
        .filter(|(_, &count)| count >= min_lists)
        .map(|(&w, &count)| (w, count, end_weight(w)))
        .collect();
    relaxed.sort_by(|a, b| {
        b.1.cmp(&a.1)
            .then_with(|| b.2.total_cmp(&a.2))
            .then_with(|| a.0.cmp(b.0))
    });
    let mut common: Vec<(&str, f64)> = relaxed
        .iter()
        .filter(|(_, count, _)| n > 0 && *count == n)
        .map(|&(w, _, s)| (w, s))
        .collect();
    common.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));

    Ok(EndReport {
        common: common.into_iter().map(|(w, _)| w.to_string()).collect(),
        relaxed_common: relaxed.into_iter().map(|(w, _, _)| w.to_string()).collect(),
        min_lists,
        truncated,
        categories,
    })
}
