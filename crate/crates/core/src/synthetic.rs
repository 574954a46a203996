//! Seeded synthetic corpora with planted topic words.
//!
//! Each document belongs to exactly one category. Every category owns a few
//! topic words that are common inside it and rare elsewhere, and a set of
//! filler words appears in most documents of every category.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::Document;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantedTopics {
    pub categories: usize,
    pub docs_per_category: usize,
    pub topic_words_per_category: usize,
    /// Presence probability of a topic word in its own category.
    pub topic_rate_inside: f64,
    /// Presence probability of a topic word in other categories.
    pub topic_rate_outside: f64,
    pub filler_words: usize,
    pub filler_rate: f64,
}

impl Default for PlantedTopics {
    fn default() -> Self {
        PlantedTopics {
            categories: 5,
            docs_per_category: 200,
            topic_words_per_category: 5,
            topic_rate_inside: 0.8,
            topic_rate_outside: 0.05,
            filler_words: 20,
            filler_rate: 0.9,
        }
    }
}

impl PlantedTopics {
    pub fn category_name(c: usize) -> String {
        format!("cat{c:02}")
    }

    pub fn topic_word(c: usize, i: usize) -> String {
        format!("topic{c:02}x{i:02}")
    }

    pub fn filler_word(i: usize) -> String {
        format!("filler{i:02}")
    }

    pub fn topic_words(&self, c: usize) -> Vec<String> {
        (0..self.topic_words_per_category)
            .map(|i| Self::topic_word(c, i))
            .collect()
    }

    pub fn filler_words(&self) -> Vec<String> {
        (0..self.filler_words).map(Self::filler_word).collect()
    }

    pub fn generate(&self, seed: u64) -> Vec<Document> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut docs = Vec::with_capacity(self.categories * self.docs_per_category);
        for c in 0..self.categories {
            for d in 0..self.docs_per_category {
                let mut words = Vec::new();
                for other in 0..self.categories {
                    let rate = if other == c {
                        self.topic_rate_inside
                    } else {
                        self.topic_rate_outside
                    };
                    for i in 0..self.topic_words_per_category {
                        if rng.gen_bool(rate) {
                            words.push(Self::topic_word(other, i));
                        }
                    }
                }
                for i in 0..self.filler_words {
                    if rng.gen_bool(self.filler_rate) {
                        words.push(Self::filler_word(i));
                    }
                }
                docs.push(
                    Document::new(format!("c{c}d{d}"), words, [Self::category_name(c)])
                        .expect("category is non-empty"),
                );
            }
        }
        docs
    }
}
