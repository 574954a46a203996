//! Principal components of the meaning space.
//!
//! Words are observations and categories are variables. Columns are
//! centered (not standardized) and the sample covariance uses divisor
//! `N - 1`.

mod loadings;
mod select;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::infogain::RigMatrix;

pub use loadings::{
    extreme_ends, loading_groups, EndCategory, EndReport, ExtremeEnds, ExtremeEndsOptions,
    LoadingConvention, LoadingGroup, LoadingGroups,
};
pub use select::{
    broken_stick_select, broken_stick_thresholds, kaiser_select, pca_cn_select, select_components,
    SelectionDetail, SelectionResult, SelectionRule,
};

#[derive(Debug, Clone, PartialEq)]
pub struct PcaModel {
    categories: Vec<String>,
    words: Vec<String>,
    means: Vec<f64>,
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Vec<f64>>,
    scores: Vec<f64>,
}

impl PcaModel {
    pub fn num_components(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn num_words(&self) -> usize {
        self.words.len()
    }

    pub fn categories(&self) -> &[String] {
        &self.categories
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    /// Non-increasing, non-negative.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unit eigenvector of component `pc` (0-based); one cosine per category.
    pub fn eigenvector(&self, pc: usize) -> &[f64] {
        &self.eigenvectors[pc]
    }

    pub fn eigenvectors(&self) -> &[Vec<f64>] {
        &self.eigenvectors
    }

    /// Coordinates of word `j` on every component.
    pub fn scores(&self, j: usize) -> &[f64] {
        let k = self.eigenvalues.len();
        &self.scores[j * k..(j + 1) * k]
    }

    pub fn all_scores(&self) -> &[f64] {
        &self.scores
    }

    #[cfg(test)]
    pub(crate) fn from_eigen(
        categories: &[&str],
        eigenvalues: Vec<f64>,
        eigenvectors: Vec<Vec<f64>>,
    ) -> Self {
        PcaModel {
            categories: categories.iter().map(|c| c.to_string()).collect(),
            words: Vec::new(),
            means: vec![0.0; categories.len()],
            eigenvalues,
            eigenvectors,
            scores: Vec::new(),
        }
    }

    pub(crate) fn check_pc(&self, pc: usize) -> Result<()> {
        if pc >= self.num_components() {
            return Err(Error::OutOfRange {
                what: "principal components",
                index: pc,
                len: self.num_components(),
            });
        }
        Ok(())
    }
}

/// Fits all `K` components of the matrix.
///
/// Eigenpairs are sorted by descending eigenvalue (stable for ties) and each
/// eigenvector is flipped so its largest-magnitude entry is positive.
pub fn fit_pca(matrix: &RigMatrix) -> Result<PcaModel> {
    let n = matrix.num_words();
    let k = matrix.num_categories();
    if n < 2 {
        return Err(Error::InsufficientData(format!(
            "PCA needs at least 2 words, got {n}"
        )));
    }
    if k == 0 {
        return Err(Error::InsufficientData(
            "PCA needs at least 1 category".into(),
        ));
    }

    let data = DMatrix::from_row_slice(n, k, matrix.values());
    let means: Vec<f64> = (0..k).map(|c| data.column(c).mean()).collect();
    let mut centered = data;
    for (c, &mu) in means.iter().enumerate() {
        centered.column_mut(c).add_scalar_mut(-mu);
    }
    let mut cov = centered.tr_mul(&centered) / (n - 1) as f64;
    // Exact symmetry for the solver.
    for i in 0..k {
        for j in 0..i {
            let v = 0.5 * (cov[(i, j)] + cov[(j, i)]);
            cov[(i, j)] = v;
            cov[(j, i)] = v;
        }
    }

    let eig = SymmetricEigen::new(cov);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut eigenvalues = Vec::with_capacity(k);
    let mut eigenvectors = Vec::with_capacity(k);
    for &i in &order {
        eigenvalues.push(eig.eigenvalues[i].max(0.0));
        let mut v: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
        orient(&mut v);
        eigenvectors.push(v);
    }

    let basis = DMatrix::from_fn(k, k, |r, c| eigenvectors[c][r]);
    let projected = &centered * basis;
    let mut scores = Vec::with_capacity(n * k);
    for r in 0..n {
        scores.extend(projected.row(r).iter().copied());
    }

    Ok(PcaModel {
        categories: matrix.categories().to_vec(),
        words: matrix.words().to_vec(),
        means,
        eigenvalues,
        eigenvectors,
        scores,
    })
}

// Largest |v_i| made positive; the first index wins ties.
fn orient(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplainedVariance {
    pub eigenvalues: Vec<f64>,
    /// Eigenvalues divided by their mean, so the mean is 1.
    pub over_mean: Vec<f64>,
    pub fractions: Vec<f64>,
    pub cumulative: Vec<f64>,
}

pub fn explained_variance(model: &PcaModel) -> ExplainedVariance {
    variance_profile(model.eigenvalues())
}

/// Fractions of the total for an arbitrary spectrum. An all-zero spectrum
/// yields zero fractions.
pub fn variance_profile(eigenvalues: &[f64]) -> ExplainedVariance {
    let total: f64 = eigenvalues.iter().sum();
    let mean = if eigenvalues.is_empty() {
        0.0
    } else {
        total / eigenvalues.len() as f64
    };
    let ratio = |x: f64, d: f64| if d > 0.0 { x / d } else { 0.0 };
    let fractions: Vec<f64> = eigenvalues.iter().map(|&l| ratio(l, total)).collect();
    let cumulative = fractions
        .iter()
        .scan(0.0, |acc, &f| {
            *acc += f;
            Some(*acc)
        })
        .collect();
    ExplainedVariance {
        eigenvalues: eigenvalues.to_vec(),
        over_mean: eigenvalues.iter().map(|&l| ratio(l, mean)).collect(),
        fractions,
        cumulative,
    }
}

/// Coordinates of every matrix row on the chosen components, after
/// centering with the model means. Rows are words, columns follow
/// `components`.
pub fn project_words(
    model: &PcaModel,
    matrix: &RigMatrix,
    components: &[usize],
) -> Result<Vec<Vec<f64>>> {
    if matrix.num_categories() != model.means.len() {
        return Err(Error::InvalidArgument(format!(
            "matrix has {} categories, model has {}",
            matrix.num_categories(),
            model.means.len()
        )));
    }
    for &pc in components {
        model.check_pc(pc)?;
    }
    Ok((0..matrix.num_words())
        .map(|j| {
            let row = matrix.row(j);
            components
                .iter()
                .map(|&pc| {
                    row.iter()
                        .zip(&model.means)
                        .zip(&model.eigenvectors[pc])
                        .map(|((x, mu), v)| (x - mu) * v)
                        .sum()
                })
                .collect()
        })
        .collect())
}
