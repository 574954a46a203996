use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionRule {
    Kaiser,
    BrokenStick,
    PcaCn,
}

impl SelectionRule {
    pub fn as_str(self) -> &'static str {
        match self {
            SelectionRule::Kaiser => "kaiser",
            SelectionRule::BrokenStick => "broken_stick",
            SelectionRule::PcaCn => "pca_cn",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum SelectionDetail {
    Kaiser {
        mean_eigenvalue: f64,
    },
    BrokenStick {
        fractions: Vec<f64>,
        thresholds: Vec<f64>,
    },
    PcaCn {
        condition_limit: f64,
        /// `λ1 / λi`; infinite for zero eigenvalues.
        ratios: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    pub rule: SelectionRule,
    /// Retained components, at least 1.
    pub k: usize,
    /// Set when the rule itself retained nothing and `k` was raised to 1.
    pub flagged: bool,
    pub detail: SelectionDetail,
}

fn descending(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    if eigenvalues.is_empty() {
        return Err(Error::InvalidArgument("empty spectrum".into()));
    }
    if eigenvalues.iter().any(|l| !l.is_finite()) {
        return Err(Error::InvalidArgument("non-finite eigenvalue".into()));
    }
    let mut sorted = eigenvalues.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    Ok(sorted)
}

fn at_least_one(rule: SelectionRule, k: usize, detail: SelectionDetail) -> SelectionResult {
    SelectionResult {
        rule,
        k: k.max(1),
        flagged: k == 0,
        detail,
    }
}

/// Components whose eigenvalue is strictly above the mean eigenvalue.
pub fn kaiser_select(eigenvalues: &[f64]) -> Result<SelectionResult> {
    let ev = descending(eigenvalues)?;
    let mean = ev.iter().sum::<f64>() / ev.len() as f64;
    let k = ev.iter().filter(|&&l| l > mean).count();
    Ok(at_least_one(
        SelectionRule::Kaiser,
        k,
        SelectionDetail::Kaiser {
            mean_eigenvalue: mean,
        },
    ))
}

/// Expected broken-stick segment lengths `b_i = (1/p) Σ_{t=i}^{p} 1/t`.
pub fn broken_stick_thresholds(p: usize) -> Vec<f64> {
    let mut b = vec![0.0; p];
    let mut tail = 0.0;
    for i in (0..p).rev() {
        tail += 1.0 / (i + 1) as f64;
        b[i] = tail / p as f64;
    }
    b
}

// Fractions within this of a threshold count as equal, so a spectrum built
// from the thresholds themselves is not lifted over them by rounding.
const TIE_TOLERANCE: f64 = 1e-12;

/// Longest prefix of components whose variance fraction beats the
/// broken-stick expectation.
pub fn broken_stick_select(eigenvalues: &[f64]) -> Result<SelectionResult> {
    let ev = descending(eigenvalues)?;
    let total: f64 = ev.iter().sum();
    let fractions: Vec<f64> = ev
        .iter()
        .map(|&l| if total > 0.0 { l / total } else { 0.0 })
        .collect();
    let thresholds = broken_stick_thresholds(ev.len());
    let k = fractions
        .iter()
        .zip(&thresholds)
        .take_while(|&(f, b)| f - b > TIE_TOLERANCE)
        .count();
    Ok(at_least_one(
        SelectionRule::BrokenStick,
        k,
        SelectionDetail::BrokenStick {
            fractions,
            thresholds,
        },
    ))
}

/// Largest `k` with `λ1 / λk < condition_limit`; zero eigenvalues are never kept.
pub fn pca_cn_select(eigenvalues: &[f64], condition_limit: f64) -> Result<SelectionResult> {
    if condition_limit.is_nan() || condition_limit <= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "condition limit must exceed 1, got {condition_limit}"
        )));
    }
    let ev = descending(eigenvalues)?;
    let first = ev[0];
    let ratios: Vec<f64> = ev
        .iter()
        .map(|&l| if l > 0.0 { first / l } else { f64::INFINITY })
        .collect();
    let k = if first > 0.0 {
        ratios.iter().take_while(|&&r| r < condition_limit).count()
    } else {
        0
    };
    Ok(at_least_one(
        SelectionRule::PcaCn,
        k,
        SelectionDetail::PcaCn {
            condition_limit,
            ratios,
        },
    ))
}

pub fn select_components(
    eigenvalues: &[f64],
    rule: SelectionRule,
    condition_limit: f64,
) -> Result<SelectionResult> {
    match rule {
        SelectionRule::Kaiser => kaiser_select(eigenvalues),
        SelectionRule::BrokenStick => broken_stick_select(eigenvalues),
        SelectionRule::PcaCn => pca_cn_select(eigenvalues, condition_limit),
    }
}
