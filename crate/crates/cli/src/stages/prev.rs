//! Stage `prev`: adaptive-bandwidth kernel surface, department estimates
//! with quality grades, the choropleth, and the prevalence-labeled
//! strong-tie graphs.

use std::io::Write as _;

use mobiprev_flows::{export_dot, export_geojson, TieSet};
use mobiprev_prevalence::{
    adaptive_bandwidth, department_prevalence, estimate_surface, export_choropleth,
    quality_indicator, write_estimates,
};

use crate::args::Ctx;
use crate::dataset;
use crate::error::{CliError, Result};
use crate::manifest::Input;
use crate::util::{open_reader, write_file};

const STAGE: &str = "prev";

pub fn run(ctx: &Ctx) -> Result<()> {
    ctx.manifest
        .require_inputs(&[Input::Hierarchy, Input::Clusters])?;
    let hierarchy = dataset::load_hierarchy(&ctx.manifest)?;
    let clusters = dataset::load_clusters(&ctx.manifest)?;
    let kernel = ctx.manifest.kernel_config()?;
    let thresholds = ctx.manifest.quality_thresholds()?;

    let grades =
        quality_indicator(&clusters, &hierarchy, &thresholds).map_err(|e| CliError::stage(STAGE, e))?;
    let bandwidths =
        adaptive_bandwidth(&clusters, &kernel).map_err(|e| CliError::stage(STAGE, e))?;
    let field = estimate_surface(&clusters, &bandwidths, &kernel, hierarchy.bounding_box())
        .map_err(|e| CliError::stage(STAGE, e))?;
    let estimates = department_prevalence(&field, &hierarchy, &grades)
        .map_err(|e| CliError::stage(STAGE, e))?;

    write_file(&ctx.out.estimates(), |w| {
        write_estimates(&estimates, w).map_err(|e| CliError::stage(STAGE, e))
    })?;
    write_file(&ctx.out.surface(), |w| {
        field.write_tsv(w).map_err(|e| CliError::stage(STAGE, e))
    })?;
    let choropleth =
        export_choropleth(&hierarchy, &estimates).map_err(|e| CliError::stage(STAGE, e))?;
    write_file(&ctx.out.choropleth(), |w| {
        w.write_all(choropleth.as_bytes())?;
        Ok(())
    })?;

    let ties_path = ctx.out.ties_json();
    if !ties_path.is_file() {
        return Err(CliError::missing_artifact(STAGE, &ties_path, "ties"));
    }
    let ties = TieSet::from_reader(open_reader(&ties_path)?)
        .map_err(|e| CliError::stage(STAGE, format!("{}: {e}", ties_path.display())))?;
    let dot = export_dot(&ties, &hierarchy, &estimates);
    write_file(&ctx.out.ties_dot(), |w| {
        w.write_all(dot.as_bytes())?;
        Ok(())
    })?;
    let geojson =
        export_geojson(&ties, &hierarchy, &estimates).map_err(|e| CliError::stage(STAGE, e))?;
    write_file(&ctx.out.ties_geojson(), |w| {
        w.write_all(geojson.as_bytes())?;
        Ok(())
    })?;

    let defined = field
        .cells()
        .iter()
        .filter(|c| c.sample.prevalence.is_some())
        .count();
    println!(
        "stage prev: {}x{} grid ({defined} defined cells), {} department estimates",
        field.nx(),
        field.ny(),
        estimates.len()
    );
    Ok(())
}
