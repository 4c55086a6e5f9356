//! The run manifest: one JSON document configuring every stage.
//!
//! Precedence is fixed: built-in defaults, then the manifest file, then
//! command-line flags. The effective configuration (after overrides, with
//! input paths resolved) is copied to `<out>/manifest.json` and hashed
//! into `<out>/manifest.sha256`, so every output tree carries the exact
//! configuration — seed included — that produced it. The copy leaves out
//! the output directory and the thread cap: neither changes a single
//! output byte, so trees produced from the same configuration stay
//! byte-identical wherever they are written.

use std::collections::BTreeSet;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use mobiprev_core::{parse_timestamp, Quality, Window};
use mobiprev_explain::ContributionConfig;
use mobiprev_prevalence::{KernelConfig, QualityThresholds};
use mobiprev_regress::ModelSpec;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::util::{derive_seed, sha256_hex, write_file};

fn default_window() -> WindowSpec {
    WindowSpec {
        start: "2011-12-01T00:00:00".to_string(),
        end: "2012-04-29T00:00:00".to_string(),
    }
}

/// Observation window as inclusive start / exclusive end timestamps,
/// `YYYY-MM-DDTHH:MM:SS`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub start: String,
    pub end: String,
}

impl Default for WindowSpec {
    fn default() -> Self {
        default_window()
    }
}

/// Input dataset paths. Any path left unset falls back to the standard
/// file name under `data_dir`. Relative manifest paths resolve against
/// the manifest's directory; relative flag paths resolve against the
/// working directory.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InputSpec {
    #[serde(skip_serializing)]
    pub data_dir: Option<PathBuf>,
    pub hierarchy: Option<PathBuf>,
    pub population: Option<PathBuf>,
    pub cdr: Option<PathBuf>,
    pub trajectories: Option<PathBuf>,
    pub clusters: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelSpec {
    pub n_min: u64,
    pub grid_step_km: f64,
}

impl Default for KernelSpec {
    fn default() -> Self {
        let d = KernelConfig::default();
        KernelSpec {
            n_min: d.n_min,
            grid_step_km: d.grid_step_km,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ThresholdSpec {
    pub good: u64,
    pub moderate: u64,
}

impl Default for ThresholdSpec {
    fn default() -> Self {
        let d = QualityThresholds::default();
        ThresholdSpec {
            good: d.good,
            moderate: d.moderate,
        }
    }
}

fn default_target_features() -> Option<usize> {
    Some(10)
}

/// Regression configuration. `grid` and `epsilon` default per method;
/// `target_features: null` disables feature elimination.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelManifest {
    pub method: String,
    pub grid: Option<Vec<f64>>,
    pub epsilon: Option<f64>,
    #[serde(default = "default_target_features")]
    pub target_features: Option<usize>,
    pub nested: bool,
}

impl Default for ModelManifest {
    fn default() -> Self {
        ModelManifest {
            method: "svr".to_string(),
            grid: None,
            epsilon: None,
            target_features: default_target_features(),
            nested: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContributionManifest {
    pub probes: usize,
    pub iterations: usize,
}

impl Default for ContributionManifest {
    fn default() -> Self {
        ContributionManifest {
            probes: mobiprev_explain::DEFAULT_PROBES,
            iterations: mobiprev_explain::DEFAULT_ITERATIONS,
        }
    }
}

fn default_quality() -> Vec<String> {
    vec!["good".to_string(), "moderate".to_string()]
}

fn default_departments() -> String {
    "filtered".to_string()
}

fn default_top_features() -> usize {
    mobiprev_explain::DEFAULT_TOP_FEATURES
}

fn default_permutation_seeds() -> usize {
    10
}

fn default_threads() -> usize {
    1
}

/// Everything a run needs. See the README for the full key reference.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunManifest {
    pub seed: u64,
    pub window: WindowSpec,
    pub inputs: InputSpec,
    /// Output directory; flags may override it, so the manifest copy
    /// never records it.
    #[serde(skip_serializing)]
    pub out: Option<PathBuf>,
    pub kernel: KernelSpec,
    pub quality_thresholds: ThresholdSpec,
    /// Quality grades whose departments enter the regression when
    /// `departments` is `"filtered"`.
    pub quality: Vec<String>,
    /// `"filtered"` restricts regression rows by `quality`; `"all"` uses
    /// every department.
    pub departments: String,
    pub model: ModelManifest,
    pub contribution: ContributionManifest,
    /// Curves per feature family in the explanation report.
    pub top_features: usize,
    /// Number of shuffled-feature baselines in the evaluation stage.
    pub permutation_seeds: usize,
    /// Worker cap. Execution is sequential, so any value ≥ 1 is accepted
    /// and results never depend on it; excluded from the manifest copy.
    #[serde(skip_serializing)]
    pub threads: usize,
}

impl Default for RunManifest {
    fn default() -> Self {
        RunManifest {
            seed: 0,
            window: default_window(),
            inputs: InputSpec::default(),
            out: None,
            kernel: KernelSpec::default(),
            quality_thresholds: ThresholdSpec::default(),
            quality: default_quality(),
            departments: default_departments(),
            model: ModelManifest::default(),
            contribution: ContributionManifest::default(),
            top_features: default_top_features(),
            permutation_seeds: default_permutation_seeds(),
            threads: default_threads(),
        }
    }
}

/// The standard dataset file names, shared with the generator.
pub const STD_HIERARCHY: &str = "hierarchy.json";
pub const STD_POPULATION: &str = "population.json";
pub const STD_CDR: &str = "cdr.tsv";
pub const STD_TRAJECTORIES: &str = "trajectories.tsv";
pub const STD_CLUSTERS: &str = "clusters.tsv";

/// One of the five dataset inputs, used to name errors precisely.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Input {
    Hierarchy,
    Population,
    Cdr,
    Trajectories,
    Clusters,
}

impl Input {
    pub const ALL: [Input; 5] = [
        Input::Hierarchy,
        Input::Population,
        Input::Cdr,
        Input::Trajectories,
        Input::Clusters,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Input::Hierarchy => "hierarchy",
            Input::Population => "population",
            Input::Cdr => "cdr",
            Input::Trajectories => "trajectories",
            Input::Clusters => "clusters",
        }
    }

    fn std_name(self) -> &'static str {
        match self {
            Input::Hierarchy => STD_HIERARCHY,
            Input::Population => STD_POPULATION,
            Input::Cdr => STD_CDR,
            Input::Trajectories => STD_TRAJECTORIES,
            Input::Clusters => STD_CLUSTERS,
        }
    }
}

pub fn join_base(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

impl RunManifest {
    /// Parses a manifest file. Unknown keys are configuration errors so a
    /// typo never silently falls back to a default.
    pub fn load(path: &Path) -> Result<RunManifest> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("reading manifest {}: {e}", path.display())))?;
        let mut m: RunManifest = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("manifest {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
        m.resolve_against(&base);
        Ok(m)
    }

    /// Rebases every relative path onto `base` (the manifest directory
    /// for file-sourced values, the working directory for flag values).
    pub fn resolve_against(&mut self, base: &Path) {
        let i = &mut self.inputs;
        for slot in [
            &mut i.data_dir,
            &mut i.hierarchy,
            &mut i.population,
            &mut i.cdr,
            &mut i.trajectories,
            &mut i.clusters,
        ] {
            if let Some(p) = slot.as_ref() {
                *slot = Some(join_base(base, p));
            }
        }
        if let Some(o) = self.out.as_ref() {
            self.out = Some(join_base(base, o));
        }
    }

    /// Fills any unset input slot from `data_dir`, then returns the path
    /// for `input`, or a configuration error naming the missing key.
    pub fn input_path(&self, input: Input) -> Result<PathBuf> {
        let explicit = match input {
            Input::Hierarchy => &self.inputs.hierarchy,
            Input::Population => &self.inputs.population,
            Input::Cdr => &self.inputs.cdr,
            Input::Trajectories => &self.inputs.trajectories,
            Input::Clusters => &self.inputs.clusters,
        };
        if let Some(p) = explicit {
            return Ok(p.clone());
        }
        if let Some(dir) = &self.inputs.data_dir {
            return Ok(dir.join(input.std_name()));
        }
        Err(CliError::Config(format!(
            "no {0} input configured; set inputs.{0} or inputs.data_dir in the manifest, or pass --data",
            input.key()
        )))
    }

    /// Checks the given inputs are configured and exist on disk.
    pub fn require_inputs(&self, inputs: &[Input]) -> Result<()> {
        for &input in inputs {
            let path = self.input_path(input)?;
            if !path.is_file() {
                return Err(CliError::Config(format!(
                    "{} input {} does not exist",
                    input.key(),
                    path.display()
                )));
            }
        }
        Ok(())
    }

    pub fn window(&self) -> Result<Window> {
        let start = parse_timestamp(&self.window.start)
            .map_err(|e| CliError::Config(format!("window.start: {e}")))?;
        let end = parse_timestamp(&self.window.end)
            .map_err(|e| CliError::Config(format!("window.end: {e}")))?;
        Window::new(start, end).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn kernel_config(&self) -> Result<KernelConfig> {
        let cfg = KernelConfig {
            n_min: self.kernel.n_min,
            grid_step_km: self.kernel.grid_step_km,
        };
        cfg.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(cfg)
    }

    pub fn quality_thresholds(&self) -> Result<QualityThresholds> {
        let t = QualityThresholds {
            good: self.quality_thresholds.good,
            moderate: self.quality_thresholds.moderate,
        };
        t.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(t)
    }

    /// The quality grades admitted into the regression, or `None` when
    /// every department row is used.
    pub fn quality_filter(&self) -> Result<Option<BTreeSet<Quality>>> {
        match self.departments.as_str() {
            "all" => Ok(None),
            "filtered" => {
                if self.quality.is_empty() {
                    return Err(CliError::Config(
                        "quality list is empty while departments = \"filtered\"".to_string(),
                    ));
                }
                let mut set = BTreeSet::new();
                for q in &self.quality {
                    set.insert(parse_quality(q)?);
                }
                Ok(Some(set))
            }
            other => Err(CliError::Config(format!(
                "departments must be \"filtered\" or \"all\", got {other:?}"
            ))),
        }
    }

    pub fn model_spec(&self) -> Result<ModelSpec> {
        let mut spec = match self.model.method.as_str() {
            "ridge" => ModelSpec::ridge(),
            "svr" => ModelSpec::svr(),
            other => {
                return Err(CliError::Config(format!(
                    "model.method must be \"ridge\" or \"svr\", got {other:?}"
                )))
            }
        };
        if let Some(grid) = &self.model.grid {
            spec.grid = grid.clone();
        }
        if let Some(eps) = self.model.epsilon {
            spec.epsilon = eps;
        }
        spec.target_features = self.model.target_features;
        spec.nested = self.model.nested;
        spec.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(spec)
    }

    /// Contribution sampling configuration for one feature family; each
    /// family gets its own derived seed so no two reuse a stream.
    pub fn contribution_config(&self, family_index: u64) -> Result<ContributionConfig> {
        let cfg = ContributionConfig {
            probes: self.contribution.probes,
            iterations: self.contribution.iterations,
            seed: derive_seed(self.seed, "explain", family_index),
        };
        cfg.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(cfg)
    }

    pub fn permutation_seed_list(&self) -> Vec<u64> {
        (0..self.permutation_seeds as u64)
            .map(|k| derive_seed(self.seed, "permutation", k))
            .collect()
    }

    /// Cross-field checks that do not need any file access.
    pub fn validate(&self) -> Result<()> {
        self.window()?;
        self.kernel_config()?;
        self.quality_thresholds()?;
        self.quality_filter()?;
        self.model_spec()?;
        self.contribution_config(0)?;
        if self.top_features == 0 {
            return Err(CliError::Config("top_features must be at least 1".into()));
        }
        if self.permutation_seeds == 0 {
            return Err(CliError::Config(
                "permutation_seeds must be at least 1".into(),
            ));
        }
        if self.threads == 0 {
            return Err(CliError::Config("threads must be at least 1".into()));
        }
        Ok(())
    }

    /// The canonical serialized form that gets copied and hashed.
    pub fn canonical_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Runtime(format!("serializing manifest: {e}")))?;
        text.push('\n');
        Ok(text)
    }

    /// Writes `manifest.json` and `manifest.sha256` under `out`, and
    /// returns the hash. Every command that produces outputs calls this,
    /// so stage-wise and pipeline runs stamp identical copies.
    pub fn write_copy(&self, out: &Path) -> Result<String> {
        let text = self.canonical_json()?;
        let hash = sha256_hex(text.as_bytes());
        write_file(&out.join("manifest.json"), |w| {
            w.write_all(text.as_bytes())?;
            Ok(())
        })?;
        let line = format!("{hash}  manifest.json\n");
        write_file(&out.join("manifest.sha256"), |w| {
            w.write_all(line.as_bytes())?;
            Ok(())
        })?;
        Ok(hash)
    }
}

pub fn parse_quality(s: &str) -> Result<Quality> {
    match s {
        "good" => Ok(Quality::Good),
        "moderate" => Ok(Quality::Moderate),
        "uncertain" => Ok(Quality::Uncertain),
        other => Err(CliError::Config(format!(
            "unknown quality grade {other:?} (expected good, moderate, or uncertain)"
        ))),
    }
}
