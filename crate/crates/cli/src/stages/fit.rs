//! Stage `fit`: trains the configured model on the normalized feature
//! matrix against department prevalence (in percentage points), with
//! optional recursive feature elimination.

use serde::Serialize;

use mobiprev_regress::{fit, loo_select, rfe, write_json, FittedModel};

use crate::args::Ctx;
use crate::design::load_design;
use crate::error::{CliError, Result};
use crate::util::write_file;

const STAGE: &str = "fit";

#[derive(Serialize)]
struct FitArtifact {
    model: FittedModel,
    eliminated: Vec<String>,
    selected_names: Vec<String>,
}

pub fn run(ctx: &Ctx) -> Result<()> {
    let design = load_design(STAGE, &ctx.manifest, &ctx.out)?;
    let spec = ctx.manifest.model_spec()?;

    let (model, eliminated) = match spec.target_features {
        Some(target) => {
            let outcome = rfe(&spec, design.matrix.data(), &design.y, target)
                .map_err(|e| CliError::stage(STAGE, e))?;
            (outcome.model, outcome.eliminated)
        }
        None => {
            let hyper = loo_select(&spec, design.matrix.data(), &design.y)
                .map_err(|e| CliError::stage(STAGE, e))?;
            let model = fit(&spec, design.matrix.data(), &design.y, hyper)
                .map_err(|e| CliError::stage(STAGE, e))?;
            (model, Vec::new())
        }
    };

    let name_of = |col: usize| design.matrix.meta()[col].name.clone();
    let artifact = FitArtifact {
        selected_names: model.selected.iter().map(|&c| name_of(c)).collect(),
        eliminated: eliminated.iter().map(|&c| name_of(c)).collect(),
        model,
    };
    write_file(&ctx.out.model_json(), |w| {
        write_json(&artifact, w).map_err(|e| CliError::stage(STAGE, e))
    })?;

    write_file(&ctx.out.target_tsv(), |w| {
        use std::io::Write as _;
        writeln!(w, "department\tprevalence_pp\tquality")?;
        for ((dept, y), quality) in design
            .depts
            .iter()
            .zip(&design.y)
            .zip(&design.quality)
        {
            writeln!(w, "{dept}\t{y}\t{}", quality.label())?;
        }
        Ok(())
    })?;

    println!(
        "stage fit: {} trained on {} departments, {} features kept",
        ctx.manifest.model.method,
        design.depts.len(),
        artifact.selected_names.len()
    );
    Ok(())
}
