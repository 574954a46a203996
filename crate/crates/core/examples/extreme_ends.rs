//! Characterize both ends of a component by the words shared among the top
//! RIG lists of its highest- and lowest-loading categories.
//!
//! Categories 0-2 share a social-science vocabulary and categories 3-5 a
//! clinical one. The first component with categories at both ends
//! separates the two groups.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigspace::corpus::{CorpusIndex, Document};
use rigspace::infogain::build_rig_matrix;
use rigspace::pca::{extreme_ends, fit_pca, ExtremeEndsOptions};
use rigspace::synthetic::PlantedTopics;

const SOCIAL: [&str; 4] = ["argu", "polit", "discours", "debat"];
const CLINICAL: [&str; 4] = ["clinic", "treatment", "therapi", "patient"];

fn main() -> rigspace::Result<()> {
    let fixture = PlantedTopics {
        categories: 6,
        docs_per_category: 150,
        topic_words_per_category: 2,
        ..Default::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let docs: Vec<Document> = fixture
        .generate(12)
        .into_iter()
        .map(|d| {
            let name = d.categories().iter().next().unwrap().clone();
            let social = name < PlantedTopics::category_name(3);
            let mut words: Vec<String> = d.words().iter().cloned().collect();
            for (own, vocab) in [(social, SOCIAL), (!social, CLINICAL)] {
                let rate = if own { 0.7 } else { 0.03 };
                words.extend(
                    vocab
                        .iter()
                        .filter(|_| rng.gen_bool(rate))
                        .map(|w| w.to_string()),
                );
            }
            Document::new(d.id(), words, [name])
        })
        .collect::<rigspace::Result<_>>()?;

    let index = CorpusIndex::from_documents(&docs, 1)?;
    let matrix = build_rig_matrix(&index)?;
    let model = fit_pca(&matrix)?;
    let options = ExtremeEndsOptions {
        n_categories: 3,
        n_words: 6,
        min_lists: 2,
        ..Default::default()
    };
    let mut pc = 0;
    let ends = loop {
        let ends = extreme_ends(&model, &matrix, pc, &options)?;
        if !ends.positive.categories.is_empty() && !ends.negative.categories.is_empty() {
            break ends;
        }
        pc += 1;
    };
    println!("PC{}", pc + 1);
    for (label, end) in [("positive", &ends.positive), ("negative", &ends.negative)] {
        let cats: Vec<String> = end
            .categories
            .iter()
            .map(|c| format!("{}({:+.2})", c.category, c.loading))
            .collect();
        println!("{label}: {}", cats.join(" "));
        println!("  common:  {}", end.common.join(" "));
        println!("  relaxed: {}", end.relaxed_common.join(" "));
    }
    Ok(())
}
