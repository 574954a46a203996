//! Fit PCA to a RIG matrix and compare the three component-retention rules.

use rigspace::corpus::CorpusIndex;
use rigspace::infogain::build_rig_matrix;
use rigspace::pca::{explained_variance, fit_pca, select_components, SelectionRule};
use rigspace::synthetic::PlantedTopics;

fn main() -> rigspace::Result<()> {
    let fixture = PlantedTopics {
        categories: 8,
        ..Default::default()
    };
    let index = CorpusIndex::from_documents(&fixture.generate(4), 1)?;
    let model = fit_pca(&build_rig_matrix(&index)?)?;
    let profile = explained_variance(&model);

    println!("pc  eigenvalue  fraction  cumulative");
    for i in 0..model.num_components() {
        println!(
            "{:>2}  {:>10.5}  {:>8.4}  {:>10.4}",
            i + 1,
            profile.eigenvalues[i],
            profile.fractions[i],
            profile.cumulative[i]
        );
    }
    for rule in [
        SelectionRule::Kaiser,
        SelectionRule::BrokenStick,
        SelectionRule::PcaCn,
    ] {
        let r = select_components(model.eigenvalues(), rule, 10.0)?;
        println!(
            "{:<13} k={}{}",
            rule.as_str(),
            r.k,
            if r.flagged { " (flagged)" } else { "" }
        );
    }
    Ok(())
}
