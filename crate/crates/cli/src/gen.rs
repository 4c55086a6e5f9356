//! Synthetic dataset generation. The output directory gets the five
//! dataset files, the planted ground truth, and a ready-to-run manifest
//! pointing at them, all byte-reproducible from the seed and sizes.

use std::io::Write as _;
use std::path::PathBuf;

use chrono::{Duration, NaiveDate};
use clap::Args;
use mobiprev_core::{format_timestamp, Window};
use mobiprev_synth::{
    generate_cdr, generate_clusters, generate_trajectories, generate_world, plant_prevalence,
    write_dataset, BehaviorPlan, WorldSpec,
};
use mobiprev_synth::truth::weekend_night_plant;

use crate::error::{CliError, Result};
use crate::manifest::{RunManifest, WindowSpec};
use crate::util::write_file;

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Root seed; every random draw derives from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory to write the dataset into.
    #[arg(long)]
    pub out: PathBuf,
    /// Number of departments.
    #[arg(long, default_value_t = 8)]
    pub departments: u32,
    /// Subscribers per department.
    #[arg(long, default_value_t = 50)]
    pub users: u32,
    /// Observation window length in days, starting 2011-12-01.
    #[arg(long, default_value_t = 28)]
    pub days: i64,
    /// Serosurvey clusters per department.
    #[arg(long, default_value_t = 4)]
    pub clusters_per_department: u32,
    /// Persons tested per cluster.
    #[arg(long, default_value_t = 250)]
    pub cluster_tested: u64,
    /// Lower end of the planted noiseless prevalence range (fraction).
    #[arg(long, default_value_t = 0.012)]
    pub lo: f64,
    /// Upper end of the planted noiseless prevalence range (fraction).
    #[arg(long, default_value_t = 0.055)]
    pub hi: f64,
    /// Planted noise standard deviation as a fraction of (hi − lo).
    #[arg(long, default_value_t = 0.02)]
    pub noise_fraction: f64,
}

pub fn run(args: &GenArgs) -> Result<()> {
    if args.departments == 0 {
        return Err(CliError::Config("--departments must be at least 1".into()));
    }
    if args.users == 0 {
        return Err(CliError::Config("--users must be at least 1".into()));
    }
    if args.days < 1 {
        return Err(CliError::Config("--days must be at least 1".into()));
    }
    if !(args.lo.is_finite() && args.hi.is_finite() && args.lo < args.hi) {
        return Err(CliError::Config("--lo must be below --hi".into()));
    }
    if !(args.noise_fraction.is_finite() && args.noise_fraction >= 0.0) {
        return Err(CliError::Config(
            "--noise-fraction must be non-negative".into(),
        ));
    }

    let d = args.departments;
    let spec = WorldSpec {
        n_departments: d,
        n_subprefs: 3 * d,
        n_antennas: 6 * d,
        populations: Some(vec![2000.0; d as usize]),
        user_scale: None,
        seed: args.seed,
    };
    let start = NaiveDate::from_ymd_opt(2011, 12, 1)
        .unwrap()
        .and_hms_opt(0, 0, 0)
        .unwrap();
    let window = Window::new(start, start + Duration::days(args.days))
        .map_err(|e| CliError::Config(e.to_string()))?;

    let mut plan = BehaviorPlan::small(d);
    plan.users_per_department = vec![args.users; d as usize];
    plan.clusters_per_department = args.clusters_per_department;
    plan.cluster_tested = args.cluster_tested;

    let run = || -> std::result::Result<_, mobiprev_synth::SynthError> {
        let (hierarchy, pops) = generate_world(&spec)?;
        let plant = weekend_night_plant(&plan, &window, args.lo, args.hi, args.noise_fraction);
        let truth = plant_prevalence(&hierarchy.dept_ids(), &plan, &pops, &window, &plant, args.seed)?;
        let cdr = generate_cdr(&hierarchy, &pops, &plan, &window, args.seed)?;
        let (trajectories, _) = generate_trajectories(&hierarchy, &plan, &window, args.seed)?;
        let clusters = generate_clusters(&hierarchy, &truth, &plan, args.seed)?;
        let paths = write_dataset(
            &args.out,
            &hierarchy,
            &pops,
            &cdr,
            &trajectories,
            &clusters,
            &truth,
        )?;
        Ok((cdr.len(), trajectories.len(), clusters.len(), paths))
    };
    let (n_cdr, n_traj, n_clusters, _) =
        run().map_err(|e| CliError::Runtime(format!("generation failed: {e}")))?;

    let mut manifest = RunManifest {
        seed: args.seed,
        window: WindowSpec {
            start: format_timestamp(window.start),
            end: format_timestamp(window.end),
        },
        ..RunManifest::default()
    };
    manifest.inputs.hierarchy = Some(PathBuf::from(crate::manifest::STD_HIERARCHY));
    manifest.inputs.population = Some(PathBuf::from(crate::manifest::STD_POPULATION));
    manifest.inputs.cdr = Some(PathBuf::from(crate::manifest::STD_CDR));
    manifest.inputs.trajectories = Some(PathBuf::from(crate::manifest::STD_TRAJECTORIES));
    manifest.inputs.clusters = Some(PathBuf::from(crate::manifest::STD_CLUSTERS));
    let text = manifest.canonical_json()?;
    write_file(&args.out.join("manifest.json"), |w| {
        w.write_all(text.as_bytes())?;
        Ok(())
    })?;

    println!(
        "generated {d} departments: {n_cdr} call rows, {n_traj} trajectory rows, {n_clusters} survey clusters -> {}",
        args.out.display()
    );
    Ok(())
}
