//! Stage `features`: builds the four feature families against the
//! persisted flow artifacts, stacks them into the full per-department
//! matrix, and writes both the raw and mean-normalized versions.

use mobiprev_features::{
    activity_features, build_traces, connectivity_features, migration_features, normalize_by_mean,
    spatial_features, validate_cardinality, FeatureMatrix, MIGRATION_THRESHOLDS,
};
use mobiprev_flows::{infer_home, FlowKind, FlowMatrix};

use crate::args::Ctx;
use crate::dataset;
use crate::error::{CliError, Result};
use crate::manifest::Input;
use crate::util::{open_reader, write_file};

const STAGE: &str = "features";

pub fn run(ctx: &Ctx) -> Result<()> {
    ctx.manifest.require_inputs(&[
        Input::Hierarchy,
        Input::Population,
        Input::Cdr,
        Input::Trajectories,
    ])?;
    let hierarchy = dataset::load_hierarchy(&ctx.manifest)?;
    let pops = dataset::load_population(&ctx.manifest)?;
    let cdr = dataset::load_cdr(&ctx.manifest)?;
    let trajectories = dataset::load_trajectories(&ctx.manifest)?;

    let connectivity = connectivity_features(&cdr, &hierarchy, &pops)
        .map_err(|e| CliError::stage(STAGE, e))?;

    let homes = infer_home(&trajectories, &hierarchy);
    let built = build_traces(&trajectories, &homes, &hierarchy);
    let (spatial, _spatial_depts) =
        spatial_features(&built.traces, &hierarchy).map_err(|e| CliError::stage(STAGE, e))?;

    let mut mobility = Vec::with_capacity(MIGRATION_THRESHOLDS.len());
    for (threshold, path) in ctx.out.mobility_all_thresholds() {
        if !path.is_file() {
            return Err(CliError::missing_artifact(STAGE, &path, "flows"));
        }
        let mut matrix = FlowMatrix::read_tsv(open_reader(&path)?, FlowKind::Mobility)
            .map_err(|e| CliError::stage(STAGE, format!("{}: {e}", path.display())))?;
        // The TSV stores only counts; the threshold is implied by the file name.
        matrix.min_stay_days = threshold;
        mobility.push(matrix);
    }
    let migration =
        migration_features(&mobility, &homes).map_err(|e| CliError::stage(STAGE, e))?;

    let activity = activity_features(&trajectories, &homes, &hierarchy)
        .map_err(|e| CliError::stage(STAGE, e))?;

    let full = FeatureMatrix::hstack(vec![connectivity, spatial, migration, activity])
        .map_err(|e| CliError::stage(STAGE, e))?;
    validate_cardinality(&full).map_err(|e| CliError::stage(STAGE, e))?;

    write_file(&ctx.out.features_raw(), |w| {
        full.write_tsv(w).map_err(|e| CliError::stage(STAGE, e))
    })?;
    write_file(&ctx.out.features_raw_meta(), |w| {
        full.write_meta(w).map_err(|e| CliError::stage(STAGE, e))
    })?;

    let normalized = normalize_by_mean(&full).map_err(|e| CliError::stage(STAGE, e))?;
    write_file(&ctx.out.features_tsv(), |w| {
        normalized
            .write_tsv(w)
            .map_err(|e| CliError::stage(STAGE, e))
    })?;
    write_file(&ctx.out.features_meta(), |w| {
        normalized
            .write_meta(w)
            .map_err(|e| CliError::stage(STAGE, e))
    })?;

    println!(
        "stage features: {} departments x {} features ({} trace rows skipped)",
        normalized.n_rows(),
        normalized.n_cols(),
        built.skipped_records
    );
    Ok(())
}
