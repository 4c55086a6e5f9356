//! `validate`: structural checks of a dataset against the manifest —
//! every referenced antenna and subprefecture must exist in the
//! hierarchy and every record must fall inside the observation window.

use mobiprev_core::{validate_antenna_records, validate_trajectory_records, ValidationReport};

use crate::args::RunArgs;
use crate::dataset;
use crate::error::{CliError, Result};
use crate::manifest::Input;

pub fn run(args: &RunArgs) -> Result<()> {
    let manifest = args.effective_manifest()?;
    manifest.require_inputs(&Input::ALL)?;
    let hierarchy = dataset::load_hierarchy(&manifest)?;
    let _pops = dataset::load_population(&manifest)?;
    let cdr = dataset::load_cdr(&manifest)?;
    let trajectories = dataset::load_trajectories(&manifest)?;
    let clusters = dataset::load_clusters(&manifest)?;
    let window = manifest.window()?;

    let cdr_report = validate_antenna_records(&cdr, &hierarchy, &window);
    let traj_report = validate_trajectory_records(&trajectories, &hierarchy, &window);

    print_report("cdr", &cdr_report);
    print_report("trajectories", &traj_report);
    println!(
        "validate: {} survey clusters parsed, {} departments in hierarchy",
        clusters.len(),
        hierarchy.dept_ids().len()
    );

    if cdr_report.accepted() && traj_report.accepted() {
        println!("validate: OK");
        Ok(())
    } else {
        Err(CliError::Runtime(format!(
            "validation failed: {} cdr and {} trajectory records affected",
            cdr_report.affected, traj_report.affected
        )))
    }
}

fn print_report(label: &str, report: &ValidationReport) {
    println!(
        "validate {label}: {} records, {} unknown antennas, {} unknown subprefectures, {} outside window",
        report.total, report.unknown_antennas, report.unknown_subprefs, report.out_of_window
    );
    for example in &report.examples {
        println!("validate {label}:   e.g. {example}");
    }
}
