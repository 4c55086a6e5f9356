//! Stage `eval`: leave-one-out evaluation of the configured model, plus
//! per-family reports, a non-negative stacking ensemble of the family
//! predictions, and seeded permutation baselines.

use std::collections::BTreeMap;

use serde::Serialize;

use mobiprev_features::FAMILY_CARDINALITIES;
use mobiprev_regress::{
    loo_evaluate, permutation_baseline, report_from_predictions, stack_ensemble, write_json,
    EvaluationReport,
};

use crate::args::Ctx;
use crate::design::{family_submatrix, load_design};
use crate::error::{CliError, Result};
use crate::util::write_file;

const STAGE: &str = "eval";

#[derive(Serialize)]
struct EnsembleArtifact {
    weights: Vec<f64>,
    all_zero_bases: bool,
    report: EvaluationReport,
}

pub fn run(ctx: &Ctx) -> Result<()> {
    let design = load_design(STAGE, &ctx.manifest, &ctx.out)?;
    let spec = ctx.manifest.model_spec()?;

    let combined = loo_evaluate(&spec, design.matrix.data(), &design.y)
        .map_err(|e| CliError::stage(STAGE, e))?;
    write_file(&ctx.out.evaluation(), |w| {
        write_json(&combined, w).map_err(|e| CliError::stage(STAGE, e))
    })?;
    write_file(&ctx.out.predictions_tsv(), |w| {
        use std::io::Write as _;
        writeln!(w, "department\tactual_pp\tpredicted_pp")?;
        for ((dept, actual), predicted) in design
            .depts
            .iter()
            .zip(&design.y)
            .zip(&combined.predictions)
        {
            writeln!(w, "{dept}\t{actual}\t{predicted}")?;
        }
        Ok(())
    })?;

    let mut families = BTreeMap::new();
    let mut bases = Vec::with_capacity(FAMILY_CARDINALITIES.len());
    for (family, _) in FAMILY_CARDINALITIES {
        let sub = family_submatrix(STAGE, &design.matrix, family)?;
        let mut family_spec = spec.clone();
        family_spec.target_features = family_spec.target_features.map(|t| t.min(sub.n_cols()));
        let report = loo_evaluate(&family_spec, sub.data(), &design.y)
            .map_err(|e| CliError::stage(STAGE, e))?;
        bases.push(report.predictions.clone());
        families.insert(family.label().to_string(), report);
    }
    write_file(&ctx.out.families(), |w| {
        write_json(&families, w).map_err(|e| CliError::stage(STAGE, e))
    })?;

    let ensemble = stack_ensemble(&bases, &design.y).map_err(|e| CliError::stage(STAGE, e))?;
    let ensemble_report = report_from_predictions(ensemble.predictions.clone(), &design.y);
    write_file(&ctx.out.ensemble(), |w| {
        write_json(
            &EnsembleArtifact {
                weights: ensemble.weights.clone(),
                all_zero_bases: ensemble.all_zero_bases,
                report: ensemble_report,
            },
            w,
        )
        .map_err(|e| CliError::stage(STAGE, e))
    })?;

    let seeds = ctx.manifest.permutation_seed_list();
    let permuted = permutation_baseline(&spec, design.matrix.data(), &design.y, &seeds)
        .map_err(|e| CliError::stage(STAGE, e))?;
    write_file(&ctx.out.permutations(), |w| {
        write_json(&permuted, w).map_err(|e| CliError::stage(STAGE, e))
    })?;

    println!(
        "stage eval: rho {:.4}, rrmse {:.4} over {} departments ({} permutation baselines)",
        combined.rho,
        combined.rrmse,
        design.depts.len(),
        permuted.len()
    );
    Ok(())
}
