//! Dataset emission in the exact formats the ingestion layer reads.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use mobiprev_core::{
    AntennaRecord, PopulationTable, SpatialHierarchy, SurveyCluster, TrajectoryRecord,
};

use crate::error::SynthError;
use crate::truth::PlantedTruth;

#[derive(Clone, Debug)]
pub struct DatasetPaths {
    pub hierarchy: PathBuf,
    pub population: PathBuf,
    pub cdr: PathBuf,
    pub trajectories: PathBuf,
    pub clusters: PathBuf,
    pub truth: PathBuf,
}

impl DatasetPaths {
    pub fn under(dir: &Path) -> Self {
        DatasetPaths {
            hierarchy: dir.join("hierarchy.json"),
            population: dir.join("population.json"),
            cdr: dir.join("cdr.tsv"),
            trajectories: dir.join("trajectories.tsv"),
            clusters: dir.join("clusters.tsv"),
            truth: dir.join("truth.json"),
        }
    }
}

pub fn write_dataset(
    dir: &Path,
    hierarchy: &SpatialHierarchy,
    pops: &PopulationTable,
    cdr: &[AntennaRecord],
    trajectories: &[TrajectoryRecord],
    clusters: &[SurveyCluster],
    truth: &PlantedTruth,
) -> Result<DatasetPaths, SynthError> {
    fs::create_dir_all(dir)?;
    let paths = DatasetPaths::under(dir);

    hierarchy.to_writer(BufWriter::new(File::create(&paths.hierarchy)?))?;
    pops.to_writer(BufWriter::new(File::create(&paths.population)?))?;

    let mut w = BufWriter::new(File::create(&paths.cdr)?);
    for r in cdr {
        writeln!(w, "{}", r.to_line())?;
    }
    w.flush()?;

    let mut w = BufWriter::new(File::create(&paths.trajectories)?);
    for r in trajectories {
        writeln!(w, "{}", r.to_line())?;
    }
    w.flush()?;

    let mut w = BufWriter::new(File::create(&paths.clusters)?);
    for c in clusters {
        writeln!(w, "{}", c.to_line())?;
    }
    w.flush()?;

    let mut w = BufWriter::new(File::create(&paths.truth)?);
    serde_json::to_writer_pretty(&mut w, truth).map_err(mobiprev_core::CoreError::from)?;
    w.flush()?;

    Ok(paths)
}
