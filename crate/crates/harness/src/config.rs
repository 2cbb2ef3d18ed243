//! Run configuration: command-line flags layered over an optional TOML file.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use ghz_erasure_core::codec::{CodeLayout, Erasure, ErasureFlags};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::spec::{parse_erasure_list, parse_model_list, ErasureSpec, ModelSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    /// Encode every basis word and compare with the analytic codeword.
    EncodeTable,
    /// One erasure pattern, `trials` random messages.
    SingleRun,
    /// Every legal erasure pattern for every model.
    Sweep,
    /// Write one operator as a text circuit.
    ExportCircuit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Operators available to `export-circuit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Red,
    Had,
    Ghz,
    Enc,
    Dec,
    Rec,
    Restore,
}

#[derive(Debug, Parser)]
#[command(name = "ghz-erasure", version, about = "Simulate the GHZ block erasure code")]
pub struct Cli {
    /// Message length in qubits (3, 4 or 5).
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum)]
    pub scenario: Option<Scenario>,
    /// Flagged erasures, e.g. `0:1:phase,1:5:phase`.
    #[arg(long, value_name = "B:P[:MODEL],...")]
    pub erase: Option<String>,
    /// Corruption models, comma separated; `all` is the standard seven.
    #[arg(long, value_name = "MODEL,...")]
    pub model: Option<String>,
    /// Base seed; trial `i` uses message seed `seed + i`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random messages per erasure pattern and model
    #[arg(long)]
    pub trials: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Operator for `export-circuit`.
    #[arg(long, value_enum)]
    pub which: Option<Operator>,
    /// TOML file with the same keys; flags override it.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    #[default]
    Empty,
    One(String),
    Many(Vec<String>),
}

impl OneOrMany {
    fn joined(self) -> Option<String> {
        match self {
            OneOrMany::Empty => None,
            OneOrMany::One(s) => Some(s),
            OneOrMany::Many(v) => Some(v.join(",")),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    k: Option<usize>,
    scenario: Option<Scenario>,
    #[serde(default)]
    erase: OneOrMany,
    #[serde(default)]
    model: OneOrMany,
    seed: Option<u64>,
    trials: Option<usize>,
    output: Option<PathBuf>,
    format: Option<Format>,
    which: Option<Operator>,
}

/// A validated run. Serializes (without the output path) as the report's
/// config echo.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub k: usize,
    pub scenario: Scenario,
    pub erasures: Vec<ErasureSpec>,
    pub models: Vec<ModelSpec>,
    pub seed: u64,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub which: Option<Operator>,
    pub format: Format,
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(path) => load_file(path)?,
            None => ConfigFile::default(),
        };
        let k = cli.k.or(file.k).ok_or_else(|| usage("--k is required"))?;
        let scenario = cli.scenario.or(file.scenario).ok_or_else(|| usage("--scenario is required"))?;
        let erasures = match cli.erase.or(file.erase.joined()) {
            Some(s) => parse_erasure_list(&s)?,
            None => Vec::new(),
        };
        let models = match cli.model.or(file.model.joined()) {
            Some(s) => parse_model_list(&s)?,
            None => Vec::new(),
        };
        let config = RunConfig {
            k,
            scenario,
            erasures,
            models,
            seed: cli.seed.or(file.seed).unwrap_or(0),
            trials: cli.trials.or(file.trials).unwrap_or(1),
            which: cli.which.or(file.which),
            format: cli.format.or(file.format).unwrap_or(Format::Json),
            output: cli.output.or(file.output),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn layout(&self) -> Result<CodeLayout> {
        Ok(CodeLayout::new(self.k)?)
    }

    /// Checks everything that can be checked before simulating.
    pub fn validate(&self) -> Result<()> {
        let layout = self.layout()?;
        if self.trials == 0 {
            return Err(usage("--trials must be at least 1"));
        }
        if self.seed.checked_add(self.trials as u64).is_none() {
            return Err(usage("--seed + --trials overflows"));
        }
        match self.scenario {
            Scenario::SingleRun => {
                self.flags(&layout)?;
                if self.models.len() > 1 && self.erasures.iter().any(|e| e.model.is_none()) {
                    return Err(usage("erasures without a model need exactly one --model"));
                }
            }
            Scenario::Sweep => {
                if !self.erasures.is_empty() {
                    return Err(usage("sweep enumerates every pattern; drop --erase"));
                }
            }
            Scenario::ExportCircuit => {
                let which = self.which.ok_or_else(|| usage("export-circuit needs --which"))?;
                self.flags(&layout)?;
                if which == Operator::Rec && self.erasures.len() != 1 {
                    return Err(usage("--which rec needs exactly one --erase entry"));
                }
            }
            Scenario::EncodeTable => {}
        }
        Ok(())
    }

    pub fn flags(&self, layout: &CodeLayout) -> Result<ErasureFlags> {
        let entries = self.erasures.iter().map(|e| Erasure { block: e.block, position: e.position });
        Ok(ErasureFlags::new(layout, entries)?)
    }

    /// Models to sweep: the configured list, or the standard set.
    pub fn sweep_models(&self) -> Vec<ModelSpec> {
        if self.models.is_empty() {
            ModelSpec::standard_set()
        } else {
            self.models.clone()
        }
    }

    /// Model applied to one erasure in a single run.
    pub fn model_for(&self, e: &ErasureSpec) -> ModelSpec {
        e.model.or(self.models.first().copied()).unwrap_or(ModelSpec::Identity)
    }
}

fn load_file(path: &Path) -> Result<ConfigFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| HarnessError::ConfigRead { path: path.to_owned(), source })?;
    toml::from_str(&text).map_err(|source| HarnessError::ConfigParse { path: path.to_owned(), source })
}

fn usage(msg: &str) -> HarnessError {
    HarnessError::Usage(msg.to_owned())
}
