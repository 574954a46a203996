//! Top words of one category, ranked by RIG and by in-category document
//! frequency.

use rigspace::corpus::CorpusIndex;
use rigspace::infogain::{build_rig_matrix, rank_by_frequency, rank_by_rig};
use rigspace::synthetic::PlantedTopics;

fn main() -> rigspace::Result<()> {
    let index = CorpusIndex::from_documents(&PlantedTopics::default().generate(1), 1)?;
    let matrix = build_rig_matrix(&index)?;
    let category = PlantedTopics::category_name(3);

    let by_rig = rank_by_rig(&matrix, &category, 8)?;
    let by_freq = rank_by_frequency(&index, &category, 8)?;
    println!(
        "{category:<4} {:<14} {:>7}   {:<14} {:>5}",
        "rig", "", "frequency", ""
    );
    for (i, (r, f)) in by_rig.iter().zip(&by_freq).enumerate() {
        println!(
            "{:>4} {:<14} {:>7.4}   {:<14} {:>5}",
            i + 1,
            r.word,
            r.score,
            f.word,
            f.score
        );
    }
    Ok(())
}
