//! Stage `explain`: per feature family, keeps the strongest columns by
//! recursive elimination and traces a Monte-Carlo contribution curve for
//! each, yielding the top-features-by-family report.

use mobiprev_explain::{contribution_curve, write_curves_tsv, write_summary_json};
use mobiprev_features::FAMILY_CARDINALITIES;
use mobiprev_regress::rfe;

use crate::args::Ctx;
use crate::design::{family_submatrix, load_design};
use crate::error::{CliError, Result};
use crate::util::write_file;

const STAGE: &str = "explain";

pub fn run(ctx: &Ctx) -> Result<()> {
    let design = load_design(STAGE, &ctx.manifest, &ctx.out)?;
    let spec = ctx.manifest.model_spec()?;

    let mut curves = Vec::new();
    for (family_index, (family, _)) in FAMILY_CARDINALITIES.iter().enumerate() {
        let sub = family_submatrix(STAGE, &design.matrix, *family)?;
        let target = ctx.manifest.top_features.min(sub.n_cols());
        let outcome =
            rfe(&spec, sub.data(), &design.y, target).map_err(|e| CliError::stage(STAGE, e))?;
        let cfg = ctx.manifest.contribution_config(family_index as u64)?;
        for &column in &outcome.model.selected {
            let curve = contribution_curve(&outcome.model, &sub, column, &cfg)
                .map_err(|e| CliError::stage(STAGE, e))?;
            curves.push(curve);
        }
    }

    write_file(&ctx.out.curves_tsv(), |w| {
        write_curves_tsv(&curves, w).map_err(|e| CliError::stage(STAGE, e))
    })?;
    write_file(&ctx.out.summary_json(), |w| {
        write_summary_json(&curves, w).map_err(|e| CliError::stage(STAGE, e))
    })?;

    println!(
        "stage explain: {} contribution curves across {} families",
        curves.len(),
        FAMILY_CARDINALITIES.len()
    );
    Ok(())
}
