//! Stage `flows`: home inference, the communication matrix, stay
//! detection, and one mobility matrix per stay threshold.

use std::io::Write as _;

use mobiprev_flows::{comm_flow, detect_stays, infer_home, mobility_from_stays, write_stays_tsv};

use crate::args::Ctx;
use crate::dataset;
use crate::error::{CliError, Result};
use crate::manifest::Input;
use crate::util::write_file;

const STAGE: &str = "flows";

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

    let homes = infer_home(&trajectories, &hierarchy);
    write_file(&ctx.out.homes(), |w| {
        writeln!(w, "user\thome")?;
        for (user, dept) in homes.homes() {
            writeln!(w, "{user}\t{dept}")?;
        }
        Ok(())
    })?;

    let comm = comm_flow(&cdr, &hierarchy, None);
    write_file(&ctx.out.communication(), |w| {
        comm.matrix.write_tsv(w).map_err(|e| CliError::stage(STAGE, e))
    })?;

    let detection = detect_stays(&trajectories, &homes, &hierarchy);
    write_file(&ctx.out.stays(), |w| {
        write_stays_tsv(&detection.stays, w).map_err(|e| CliError::stage(STAGE, e))
    })?;

    let depts = hierarchy.dept_ids();
    for (threshold, path) in ctx.out.mobility_all_thresholds() {
        let built = mobility_from_stays(&detection.stays, &homes, &depts, threshold);
        write_file(&path, |w| {
            built.matrix.write_tsv(w).map_err(|e| CliError::stage(STAGE, e))
        })?;
    }

    println!(
        "stage flows: {} homed users, {} stays, 1 communication + {} mobility matrices",
        homes.homes().len(),
        detection.stays.len(),
        ctx.out.mobility_all_thresholds().len()
    );
    Ok(())
}
