//! Input loading: the five dataset files, parsed strictly (a single
//! malformed line aborts the run).

use mobiprev_core::{
    parse_antenna_records, parse_survey_clusters, parse_trajectory_records, AntennaRecord,
    PopulationTable, SpatialHierarchy, SurveyCluster, TrajectoryRecord,
};

use crate::error::{CliError, Result};
use crate::manifest::{Input, RunManifest};
use crate::util::open_reader;

pub fn load_hierarchy(m: &RunManifest) -> Result<SpatialHierarchy> {
    let path = m.input_path(Input::Hierarchy)?;
    let r = open_reader(&path)?;
    SpatialHierarchy::from_reader(r)
        .map_err(|e| CliError::Runtime(format!("reading {}: {e}", path.display())))
}

pub fn load_population(m: &RunManifest) -> Result<PopulationTable> {
    let path = m.input_path(Input::Population)?;
    let r = open_reader(&path)?;
    PopulationTable::from_reader(r)
        .map_err(|e| CliError::Runtime(format!("reading {}: {e}", path.display())))
}

pub fn load_cdr(m: &RunManifest) -> Result<Vec<AntennaRecord>> {
    let path = m.input_path(Input::Cdr)?;
    let r = open_reader(&path)?;
    let (records, _) = parse_antenna_records(r)
        .map_err(|e| CliError::Runtime(format!("reading {}: {e}", path.display())))?;
    Ok(records)
}

pub fn load_trajectories(m: &RunManifest) -> Result<Vec<TrajectoryRecord>> {
    let path = m.input_path(Input::Trajectories)?;
    let r = open_reader(&path)?;
    let (records, _) = parse_trajectory_records(r)
        .map_err(|e| CliError::Runtime(format!("reading {}: {e}", path.display())))?;
    Ok(records)
}

pub fn load_clusters(m: &RunManifest) -> Result<Vec<SurveyCluster>> {
    let path = m.input_path(Input::Clusters)?;
    let r = open_reader(&path)?;
    parse_survey_clusters(r)
        .map_err(|e| CliError::Runtime(format!("reading {}: {e}", path.display())))
}
