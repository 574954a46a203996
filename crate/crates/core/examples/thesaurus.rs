//! Score every word by its summed RIG over categories and keep the top ones.

use rigspace::corpus::CorpusIndex;
use rigspace::infogain::{
    build_rig_matrix, select_thesaurus, sorted_scores, word_informativeness_sum,
};
use rigspace::synthetic::PlantedTopics;

fn main() -> rigspace::Result<()> {
    let index = CorpusIndex::from_documents(&PlantedTopics::default().generate(2), 1)?;
    let matrix = build_rig_matrix(&index)?;
    let scores = word_informativeness_sum(&matrix);

    for s in sorted_scores(&scores).iter().take(5) {
        println!("{:<12} sum={:.4} mean={:.4}", s.word, s.sum, s.mean);
    }

    let kept = select_thesaurus(&scores, 25)?;
    let reduced = matrix.select_words(&kept)?;
    println!(
        "thesaurus: {} of {} words, reduced matrix {}×{}",
        kept.len(),
        matrix.num_words(),
        reduced.num_words(),
        reduced.num_categories()
    );
    Ok(())
}
