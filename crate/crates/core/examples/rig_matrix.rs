//! Build the word-by-category RIG matrix for a planted-topic corpus and
//! write it as CSV.

use rigspace::corpus::CorpusIndex;
use rigspace::infogain::build_rig_matrix;
use rigspace::synthetic::PlantedTopics;

fn main() -> rigspace::Result<()> {
    let docs = PlantedTopics::default().generate(7);
    let index = CorpusIndex::from_documents(&docs, 1)?;
    let matrix = build_rig_matrix(&index)?;
    println!(
        "{} words × {} categories",
        matrix.num_words(),
        matrix.num_categories()
    );

    let word = PlantedTopics::topic_word(0, 0);
    let j = matrix.word_position(&word)?;
    let row: Vec<String> = matrix.row(j).iter().map(|v| format!("{v:.3}")).collect();
    println!("{word}: [{}]", row.join(", "));

    let path = std::env::temp_dir().join("rigspace_example_matrix.csv");
    matrix.save_csv(&path)?;
    println!("wrote {}", path.display());
    Ok(())
}
