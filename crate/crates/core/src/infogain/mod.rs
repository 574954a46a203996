//! Entropies, information gain and relative information gain (RIG) of
//! Boolean word-presence and category-membership variables.
//!
//! All probabilities are count ratios taken from a [`ContingencyTable`], and
//! every `p·log2(p)` term with `p = 0` is taken as 0.

mod matrix;
mod rank;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use matrix::{build_rig_matrix, RigMatrix};
pub use rank::{
    rank_by_frequency, rank_by_rig, rank_category_words, select_thesaurus, sorted_scores,
    word_informativeness_sum, RankBy, RankedWord, WordScore,
};

/// Counts for one (word, category) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContingencyTable {
    joint: u64,
    word_docs: u64,
    category_docs: u64,
    total: u64,
}

impl ContingencyTable {
    /// `joint` is `w_jk`, `word_docs` is `|D^j|`, `category_docs` is `|D_k|`,
    /// `total` is `M`. Rejects counts that would make any cell negative.
    pub fn new(joint: u64, word_docs: u64, category_docs: u64, total: u64) -> Result<Self> {
        let fail = |msg: &str| {
            Err(Error::InvalidTable(format!(
                "{msg} (w_jk={joint}, |D^j|={word_docs}, |D_k|={category_docs}, M={total})"
            )))
        };
        if total == 0 {
            return fail("empty corpus");
        }
        if word_docs > total || category_docs > total {
            return fail("marginal exceeds corpus size");
        }
        if joint > word_docs || joint > category_docs {
            return fail("joint count exceeds a marginal");
        }
        if total + joint < word_docs + category_docs {
            return fail("negative cell");
        }
        Ok(ContingencyTable {
            joint,
            word_docs,
            category_docs,
            total,
        })
    }

    /// `(w_jk, |D^j|, |D_k|, M)`.
    pub fn counts(&self) -> (u64, u64, u64, u64) {
        (self.joint, self.word_docs, self.category_docs, self.total)
    }

    /// The four cells: word∧cat, word∧¬cat, ¬word∧cat, ¬word∧¬cat.
    pub fn cells(&self) -> [u64; 4] {
        let w = self.joint;
        [
            w,
            self.word_docs - w,
            self.category_docs - w,
            self.total + w - self.word_docs - self.category_docs,
        ]
    }

    /// Category has no members or contains every document, so `H(c) = 0`.
    pub fn is_degenerate_category(&self) -> bool {
        self.category_docs == 0 || self.category_docs == self.total
    }

    /// `H(c_k)` in bits.
    pub fn category_entropy(&self) -> f64 {
        binary_entropy(self.category_docs, self.total)
    }

    /// `H(w_j)` in bits.
    pub fn word_entropy(&self) -> f64 {
        binary_entropy(self.word_docs, self.total)
    }

    /// `H(c_k | w_j)` in bits: the entropy of the category inside the texts
    /// with the word and inside those without it, weighted by their sizes.
    pub fn conditional_entropy(&self) -> f64 {
        let m = self.total as f64;
        let with = self.word_docs;
        let without = self.total - self.word_docs;
        let [_, _, cat_without, _] = self.cells();
        weighted(with, m, binary_entropy(self.joint, with))
            + weighted(without, m, binary_entropy(cat_without, without))
    }

    /// `H(w_j | c_k)` in bits, the mirror of [`Self::conditional_entropy`].
    pub fn word_conditional_entropy(&self) -> f64 {
        let m = self.total as f64;
        let inside = self.category_docs;
        let outside = self.total - self.category_docs;
        let [_, word_outside, _, _] = self.cells();
        weighted(inside, m, binary_entropy(self.joint, inside))
            + weighted(outside, m, binary_entropy(word_outside, outside))
    }

    /// `IG = H(c_k) - H(c_k | w_j)`, floored at 0 against rounding.
    pub fn information_gain(&self) -> f64 {
        (self.category_entropy() - self.conditional_entropy()).max(0.0)
    }

    /// `IG / H(c_k)` in `[0, 1]`; 0 for a degenerate category.
    pub fn relative_information_gain(&self) -> f64 {
        let h = self.category_entropy();
        if self.is_degenerate_category() || h <= 0.0 {
            return 0.0;
        }
        (self.information_gain() / h).min(1.0)
    }
}

fn weighted(count: u64, total: f64, entropy: f64) -> f64 {
    if count == 0 {
        0.0
    } else {
        count as f64 / total * entropy
    }
}

fn neg_plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// Entropy in bits of a Boolean variable that is true for `hits` of `total`
/// equally likely outcomes. Zero when `total` is 0.
pub fn binary_entropy(hits: u64, total: u64) -> f64 {
    if total == 0 || hits == 0 || hits == total {
        return 0.0;
    }
    let p = hits as f64 / total as f64;
    let q = (total - hits) as f64 / total as f64;
    neg_plogp(p) + neg_plogp(q)
}

pub fn category_entropy(table: &ContingencyTable) -> f64 {
    table.category_entropy()
}

pub fn conditional_entropy(table: &ContingencyTable) -> f64 {
    table.conditional_entropy()
}

pub fn information_gain(table: &ContingencyTable) -> f64 {
    table.information_gain()
}

pub fn relative_information_gain(table: &ContingencyTable) -> f64 {
    table.relative_information_gain()
}
