//! Export word-cloud weights, the top-10 histogram and the RIG/frequency
//! comparison for one category into a directory.

use rigspace::corpus::CorpusIndex;
use rigspace::infogain::build_rig_matrix;
use rigspace::report::{export_comparison, export_top10_histogram, export_word_cloud, RankSource};
use rigspace::synthetic::PlantedTopics;

fn main() -> rigspace::Result<()> {
    let index = CorpusIndex::from_documents(&PlantedTopics::default().generate(5), 1)?;
    let matrix = build_rig_matrix(&index)?;
    let category = PlantedTopics::category_name(0);
    let dir = std::env::temp_dir().join("rigspace_example_report");
    std::fs::create_dir_all(&dir).map_err(|e| rigspace::Error::Io {
        path: dir.clone(),
        source: e,
    })?;

    let (cloud, path) = export_word_cloud(&dir, RankSource::Rig(&matrix), &category, 30)?;
    println!("{} ({} entries)", path.display(), cloud.entries.len());
    let (_, path) = export_word_cloud(&dir, RankSource::Frequency(&index), &category, 30)?;
    println!("{}", path.display());
    let (hist, path) = export_top10_histogram(&dir, &matrix, &category)?;
    println!(
        "{} (top: {} {:.4})",
        path.display(),
        hist[0].word,
        hist[0].score
    );
    let (cmp, path) = export_comparison(&dir, &index, &matrix, &category, 20)?;
    println!("{} (overlap {}/{})", path.display(), cmp.overlap, cmp.top_n);
    Ok(())
}
