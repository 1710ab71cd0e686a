use std::path::{Path, PathBuf};

use serde::Deserialize;

use stec_core::grid::{
    parse_generation_csv, CsvSchema, EmissionFactorTable, GenerationDataset, RegionId,
    RegionRegistry, Resolution,
};
use stec_core::hardware::HardwareBundle;
use stec_core::intensity::{SeasonConvention, WeightMode};

use crate::CliError;

/// Project file, flat TOML with one `[[data]]` section per input file.
/// Unknown keys are rejected; relative paths resolve against the config
/// file's directory.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectConfig {
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_builtin")]
    pub emission_factors: String,
    #[serde(default = "default_builtin")]
    pub hardware_specs: String,
    #[serde(default)]
    pub registry: Option<PathBuf>,
    #[serde(default = "default_season_convention")]
    pub season_convention: String,
    #[serde(default = "default_baseline_mode")]
    pub baseline_mode: String,
    #[serde(default)]
    pub data: Vec<DataFileConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataFileConfig {
    pub path: PathBuf,
    pub schema: String,
    #[serde(default)]
    pub region_hint: Option<String>,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_builtin() -> String {
    "builtin".to_string()
}

fn default_season_convention() -> String {
    "northern".to_string()
}

fn default_baseline_mode() -> String {
    "unweighted".to_string()
}

impl ProjectConfig {
    /// Structural parse only; no path resolution or existence checks.
    pub fn from_toml_str(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::User(format!("config: {}", e.message())))
    }
}

/// A fully loaded project: parsed config plus every static table it names.
pub struct Project {
    pub output_dir: PathBuf,
    pub factors: EmissionFactorTable,
    pub registry: RegionRegistry,
    pub hardware: HardwareBundle,
    pub convention: SeasonConvention,
    pub baseline_mode: WeightMode,
    pub data: Vec<DataFile>,
}

pub struct DataFile {
    pub path: PathBuf,
    pub schema: CsvSchema,
    pub region_hint: Option<RegionId>,
}

pub struct FileSummary {
    pub path: PathBuf,
    pub schema: CsvSchema,
    pub records: usize,
    pub warnings: Vec<String>,
    /// (region, finest resolution, coverage start, coverage end)
    pub coverage: Vec<(String, Resolution, String, String)>,
}

impl Project {
    pub fn load(config_path: &Path) -> Result<Project, CliError> {
        let text = std::fs::read_to_string(config_path)
            .map_err(|e| CliError::User(format!("config {}: {e}", config_path.display())))?;
        let config = ProjectConfig::from_toml_str(&text)?;
        let base = config_path.parent().unwrap_or(Path::new("."));

        let resolve = |p: &Path| -> PathBuf {
            if p.is_absolute() {
                p.to_path_buf()
            } else {
                base.join(p)
            }
        };
        let require = |p: &PathBuf| -> Result<(), CliError> {
            if p.is_file() {
                Ok(())
            } else {
                Err(CliError::User(format!(
                    "config references a missing file: {}",
                    p.display()
                )))
            }
        };

        let convention = SeasonConvention::parse(&config.season_convention).ok_or_else(|| {
            CliError::User(format!(
                "config: unknown season_convention '{}' (expected northern or southern)",
                config.season_convention
            ))
        })?;
        let baseline_mode = WeightMode::parse(&config.baseline_mode).ok_or_else(|| {
            CliError::User(format!(
                "config: unknown baseline_mode '{}' (expected weighted or unweighted)",
                config.baseline_mode
            ))
        })?;

        let factors = if config.emission_factors == "builtin" {
            EmissionFactorTable::builtin()
        } else {
            let path = resolve(Path::new(&config.emission_factors));
            require(&path)?;
            EmissionFactorTable::from_path(&path).map_err(CliError::from)?
        };

        let hardware = if config.hardware_specs == "builtin" {
            HardwareBundle::builtin()
        } else {
            let path = resolve(Path::new(&config.hardware_specs));
            require(&path)?;
            HardwareBundle::from_path(&path).map_err(CliError::from)?
        };

        let registry = match &config.registry {
            Some(p) => {
                let path = resolve(p);
                require(&path)?;
                RegionRegistry::from_path(&path).map_err(CliError::from)?
            }
            None => RegionRegistry::new(),
        };

        let mut data = Vec::new();
        for entry in &config.data {
            let schema = CsvSchema::parse(&entry.schema).ok_or_else(|| {
                CliError::User(format!(
                    "config: unknown schema '{}' for {} (expected canonical, entsoe_like or owid_like)",
                    entry.schema,
                    entry.path.display()
                ))
            })?;
            let path = resolve(&entry.path);
            require(&path)?;
            data.push(DataFile {
                path,
                schema,
                region_hint: entry.region_hint.as_deref().map(RegionId::from),
            });
        }

        let output_dir = match std::env::var_os("STEC_OUTPUT_DIR") {
            Some(dir) => PathBuf::from(dir),
            None => resolve(&config.output_dir),
        };

        Ok(Project {
            output_dir,
            factors,
            registry,
            hardware,
            convention,
            baseline_mode,
            data,
        })
    }

    /// Ingest every configured file and merge into one dataset.
    pub fn ingest(&self, lenient: bool) -> Result<(GenerationDataset, Vec<FileSummary>), CliError> {
        let mut merged = GenerationDataset::empty();
        let mut summaries = Vec::new();
        for file in &self.data {
            let outcome =
                parse_generation_csv(&file.path, file.schema, file.region_hint.as_ref(), lenient)?;
            let coverage = outcome
                .dataset
                .regions()
                .map(|region| {
                    let resolution = outcome
                        .dataset
                        .finest_resolution(region)
                        .expect("region has records");
                    let (start, end) = outcome.dataset.coverage(region).expect("region has records");
                    (
                        region.to_string(),
                        resolution,
                        start.to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
                        end.to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
                    )
                })
                .collect();
            summaries.push(FileSummary {
                path: file.path.clone(),
                schema: file.schema,
                records: outcome.dataset.len(),
                warnings: outcome
                    .warnings
                    .iter()
                    .map(|w| match w.line {
                        Some(line) => format!("row {line}: {}", w.message),
                        None => w.message.clone(),
                    })
                    .collect(),
                coverage,
            });
            merged = merged.merge(outcome.dataset)?;
        }
        Ok((merged, summaries))
    }
}
