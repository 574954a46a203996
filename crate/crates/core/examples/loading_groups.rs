//! Split categories into positive, negligible and negative groups by their
//! loading on each leading component.

use rigspace::corpus::CorpusIndex;
use rigspace::infogain::build_rig_matrix;
use rigspace::pca::{fit_pca, loading_groups, LoadingConvention};
use rigspace::synthetic::PlantedTopics;

fn main() -> rigspace::Result<()> {
    let fixture = PlantedTopics {
        categories: 12,
        docs_per_category: 100,
        ..Default::default()
    };
    let index = CorpusIndex::from_documents(&fixture.generate(9), 1)?;
    let model = fit_pca(&build_rig_matrix(&index)?)?;

    for convention in [
        LoadingConvention::UnitEigenvector,
        LoadingConvention::ScaledBySqrtEigenvalue,
    ] {
        println!("{convention:?}");
        for pc in 0..3 {
            let g = loading_groups(&model, pc, convention)?;
            println!(
                "  PC{}  +{:<2} 0:{:<2} -{:<2}  positive: {}",
                pc + 1,
                g.positive.len(),
                g.zero.len(),
                g.negative.len(),
                g.positive.join(" ")
            );
        }
    }
    Ok(())
}
