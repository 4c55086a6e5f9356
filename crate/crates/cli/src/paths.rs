//! The fixed output tree. Every stage writes under its own subdirectory
//! of `--out`; the names here are the contract the README documents and
//! downstream stages read back.

use std::path::{Path, PathBuf};

use mobiprev_features::MIGRATION_THRESHOLDS;

#[derive(Clone, Debug)]
pub struct OutPaths {
    root: PathBuf,
}

impl OutPaths {
    pub fn new(root: PathBuf) -> Self {
        OutPaths { root }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    // flows
    pub fn communication(&self) -> PathBuf {
        self.root.join("flows").join("communication.tsv")
    }

    /// One mobility matrix per stay threshold: `mobility_all.tsv` for the
    /// unthresholded matrix, `mobility_minNN.tsv` for ≥ NN whole days.
    pub fn mobility(&self, threshold: Option<f64>) -> PathBuf {
        let name = match threshold {
            None => "mobility_all.tsv".to_string(),
            Some(days) => format!("mobility_min{:02}.tsv", days as u32),
        };
        self.root.join("flows").join(name)
    }

    pub fn mobility_all_thresholds(&self) -> Vec<(Option<f64>, PathBuf)> {
        MIGRATION_THRESHOLDS
            .iter()
            .map(|&t| (t, self.mobility(t)))
            .collect()
    }

    pub fn stays(&self) -> PathBuf {
        self.root.join("flows").join("stays.tsv")
    }

    pub fn homes(&self) -> PathBuf {
        self.root.join("flows").join("homes.tsv")
    }

    // ties
    pub fn ties_json(&self) -> PathBuf {
        self.root.join("ties").join("ties.json")
    }

    // prev
    pub fn estimates(&self) -> PathBuf {
        self.root.join("prev").join("estimates.json")
    }

    pub fn surface(&self) -> PathBuf {
        self.root.join("prev").join("surface.tsv")
    }

    pub fn choropleth(&self) -> PathBuf {
        self.root.join("prev").join("choropleth.geojson")
    }

    pub fn ties_dot(&self) -> PathBuf {
        self.root.join("prev").join("strong_ties.dot")
    }

    pub fn ties_geojson(&self) -> PathBuf {
        self.root.join("prev").join("strong_ties.geojson")
    }

    // features
    pub fn features_raw(&self) -> PathBuf {
        self.root.join("features").join("features_raw.tsv")
    }

    pub fn features_raw_meta(&self) -> PathBuf {
        self.root.join("features").join("features_raw_meta.json")
    }

    pub fn features(&self) -> PathBuf {
        self.root.join("features").join("features.tsv")
    }

    pub fn features_meta(&self) -> PathBuf {
        self.root.join("features").join("features_meta.json")
    }

    // fit
    pub fn model(&self) -> PathBuf {
        self.root.join("fit").join("model.json")
    }

    pub fn target(&self) -> PathBuf {
        self.root.join("fit").join("target.tsv")
    }

    // eval
    pub fn evaluation(&self) -> PathBuf {
        self.root.join("eval").join("evaluation.json")
    }

    pub fn predictions(&self) -> PathBuf {
        self.root.join("eval").join("predictions.tsv")
    }

    pub fn families(&self) -> PathBuf {
        self.root.join("eval").join("families.json")
    }

    pub fn ensemble(&self) -> PathBuf {
        self.root.join("eval").join("ensemble.json")
    }

    pub fn permutations(&self) -> PathBuf {
        self.root.join("eval").join("permutations.json")
    }

    // explain
    pub fn curves(&self) -> PathBuf {
        self.root.join("explain").join("curves.tsv")
    }

    pub fn summary(&self) -> PathBuf {
        self.root.join("explain").join("summary.json")
    }
}
