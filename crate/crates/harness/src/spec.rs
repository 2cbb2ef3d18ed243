//! Text forms of corruption models and erasure flags used by the CLI and
//! config files.

use std::fmt;
use std::str::FromStr;

use ghz_erasure_core::channel::{random_leak_unitary, CorruptionModel};
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

/// A corruption model by name. Leaks carry the seed of their unitary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ModelSpec {
    Identity,
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
    EntanglingLeak(u64),
}

impl ModelSpec {
    /// The four Pauli-type models plus leaks seeded 0, 1 and 2.
    pub fn standard_set() -> Vec<ModelSpec> {
        vec![
            ModelSpec::Identity,
            ModelSpec::BitFlip,
            ModelSpec::PhaseFlip,
            ModelSpec::BitPhaseFlip,
            ModelSpec::EntanglingLeak(0),
            ModelSpec::EntanglingLeak(1),
            ModelSpec::EntanglingLeak(2),
        ]
    }

    pub fn build(self) -> CorruptionModel {
        match self {
            ModelSpec::Identity => CorruptionModel::Identity,
            ModelSpec::BitFlip => CorruptionModel::BitFlip,
            ModelSpec::PhaseFlip => CorruptionModel::PhaseFlip,
            ModelSpec::BitPhaseFlip => CorruptionModel::BitPhaseFlip,
            ModelSpec::EntanglingLeak(seed) => random_leak_unitary(seed),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Identity => f.write_str("identity"),
            ModelSpec::BitFlip => f.write_str("bit_flip"),
            ModelSpec::PhaseFlip => f.write_str("phase_flip"),
            ModelSpec::BitPhaseFlip => f.write_str("bit_phase_flip"),
            ModelSpec::EntanglingLeak(seed) => write!(f, "entangling_leak@{seed}"),
        }
    }
}

impl FromStr for ModelSpec {
    type Err = HarnessError;

    /// Accepts the kind strings plus short aliases (`bit`, `phase`,
    /// `bit_phase`, `leak`); a leak seed follows `@` and defaults to 0.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, seed) = match s.split_once('@') {
            Some((n, seed)) => (n, Some(seed)),
            None => (s, None),
        };
        let model = match name.to_ascii_lowercase().replace('-', "_").as_str() {
            "identity" | "id" | "none" => ModelSpec::Identity,
            "bit_flip" | "bit" | "x" => ModelSpec::BitFlip,
            "phase_flip" | "phase" | "z" => ModelSpec::PhaseFlip,
            "bit_phase_flip" | "bit_phase" | "xz" => ModelSpec::BitPhaseFlip,
            "entangling_leak" | "leak" => {
                let seed = match seed {
                    Some(v) => v
                        .parse()
                        .map_err(|_| HarnessError::Usage(format!("bad leak seed in `{s}`")))?,
                    None => 0,
                };
                return Ok(ModelSpec::EntanglingLeak(seed));
            }
            _ => return Err(HarnessError::Usage(format!("unknown corruption model `{s}`"))),
        };
        if seed.is_some() {
            return Err(HarnessError::Usage(format!("only leaks take a seed: `{s}`")));
        }
        Ok(model)
    }
}

impl TryFrom<String> for ModelSpec {
    type Error = HarnessError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<ModelSpec> for String {
    fn from(m: ModelSpec) -> String {
        m.to_string()
    }
}

/// Parses a comma-separated model list; `all` expands to [`ModelSpec::standard_set`].
pub fn parse_model_list(s: &str) -> Result<Vec<ModelSpec>, HarnessError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part.eq_ignore_ascii_case("all") {
            out.extend(ModelSpec::standard_set());
        } else {
            out.push(part.parse()?);
        }
    }
    Ok(out)
}

/// One `block:position[:model]` entry. Positions are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ErasureSpec {
    pub block: usize,
    pub position: usize,
    pub model: Option<ModelSpec>,
}

impl fmt::Display for ErasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.block, self.position)?;
        if let Some(m) = self.model {
            write!(f, ":{m}")?;
        }
        Ok(())
    }
}

impl FromStr for ErasureSpec {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HarnessError::Usage(format!("erasure `{s}` is not block:position[:model]"));
        let mut parts = s.trim().splitn(3, ':');
        let block = parts.next().and_then(|p| p.trim().parse().ok()).ok_or_else(bad)?;
        let position = parts.next().and_then(|p| p.trim().parse().ok()).ok_or_else(bad)?;
        let model = parts.next().map(str::parse).transpose()?;
        Ok(ErasureSpec { block, position, model })
    }
}

impl TryFrom<String> for ErasureSpec {
    type Error = HarnessError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<ErasureSpec> for String {
    fn from(e: ErasureSpec) -> String {
        e.to_string()
    }
}

pub fn parse_erasure_list(s: &str) -> Result<Vec<ErasureSpec>, HarnessError> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(str::parse)
        .collect()
}
