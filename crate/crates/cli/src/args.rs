//! Shared flags for the run commands and their merge onto the manifest.
//! Precedence: defaults < manifest file < flags.

use std::path::PathBuf;

use clap::Args;

use crate::error::{CliError, Result};
use crate::manifest::RunManifest;
use crate::paths::OutPaths;

#[derive(Args, Debug)]
pub struct RunArgs {
    /// JSON run manifest; flags below override its keys.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Dataset directory holding the standard file names (overrides
    /// inputs.data_dir).
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Output directory for the run tree.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Root seed for all derived randomness.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated quality grades admitted into the regression
    /// (good, moderate, uncertain).
    #[arg(long)]
    pub quality: Option<String>,
    /// "filtered" (apply --quality) or "all" (every department row).
    #[arg(long)]
    pub departments: Option<String>,
    /// Regression method: ridge or svr.
    #[arg(long)]
    pub method: Option<String>,
    /// Feature-elimination target size; 0 disables elimination.
    #[arg(long)]
    pub target_features: Option<usize>,
    /// Re-select hyperparameter and features inside every fold.
    #[arg(long)]
    pub nested: Option<bool>,
    /// Contribution curves per feature family in the explanation report.
    #[arg(long)]
    pub top_features: Option<usize>,
    /// Probe points per contribution curve.
    #[arg(long)]
    pub probes: Option<usize>,
    /// Monte-Carlo iterations per probe.
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Number of shuffled-feature baseline seeds.
    #[arg(long)]
    pub permutation_seeds: Option<usize>,
    /// Worker cap; execution is sequential, results never depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

impl RunArgs {
    /// Loads the manifest (or defaults) and applies flag overrides.
    pub fn effective_manifest(&self) -> Result<RunManifest> {
        let mut m = match &self.manifest {
            Some(path) => RunManifest::load(path)?,
            None => RunManifest::default(),
        };
        let cwd = std::env::current_dir()
            .map_err(|e| CliError::Runtime(format!("working directory: {e}")))?;
        if let Some(data) = &self.data {
            // A new dataset root invalidates the manifest's per-file paths.
            m.inputs = crate::manifest::InputSpec {
                data_dir: Some(crate::manifest::join_base(&cwd, data)),
                ..Default::default()
            };
        }
        if let Some(out) = &self.out {
            m.out = Some(crate::manifest::join_base(&cwd, out));
        }
        if let Some(seed) = self.seed {
            m.seed = seed;
        }
        if let Some(q) = &self.quality {
            m.quality = q
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
        }
        if let Some(d) = &self.departments {
            m.departments = d.clone();
        }
        if let Some(method) = &self.method {
            m.model.method = method.clone();
        }
        if let Some(t) = self.target_features {
            m.model.target_features = if t == 0 { None } else { Some(t) };
        }
        if let Some(n) = self.nested {
            m.model.nested = n;
        }
        if let Some(t) = self.top_features {
            m.top_features = t;
        }
        if let Some(p) = self.probes {
            m.contribution.probes = p;
        }
        if let Some(i) = self.iterations {
            m.contribution.iterations = i;
        }
        if let Some(p) = self.permutation_seeds {
            m.permutation_seeds = p;
        }
        if let Some(t) = self.threads {
            m.threads = t;
        }
        m.validate()?;
        Ok(m)
    }
}

/// A validated run context: the effective manifest plus the output tree,
/// with the manifest copy and hash already stamped.
pub struct Ctx {
    pub manifest: RunManifest,
    pub out: OutPaths,
}

impl Ctx {
    pub fn new(args: &RunArgs) -> Result<Ctx> {
        let manifest = args.effective_manifest()?;
        let out_dir = manifest.out.clone().ok_or_else(|| {
            CliError::Config("no output directory; pass --out or set \"out\" in the manifest".into())
        })?;
        std::fs::create_dir_all(&out_dir)
            .map_err(|e| CliError::Runtime(format!("creating {}: {e}", out_dir.display())))?;
        let out = OutPaths::new(out_dir);
        manifest.write_copy(out.root())?;
        Ok(Ctx { manifest, out })
    }
}
