//! Machine-readable run reports. JSON keys keep declaration order.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::Result;

/// Minimum fidelity counted as a successful recovery.
pub const FIDELITY_THRESHOLD: f64 = 1.0 - 1e-10;

/// Largest accepted per-amplitude deviation in encoding checks.
pub const AMPLITUDE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    /// Flagged erasures as `block:position` pairs, `-` for none.
    pub pattern: String,
    pub model: String,
    /// Basis word, for encoding-table cases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<usize>,
    pub trial_seed: Option<u64>,
    pub fidelity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
    /// Wall-clock time; the only nondeterministic field.
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub cases: usize,
    pub failures: usize,
    pub threshold: f64,
    pub min_fidelity: f64,
    pub mean_fidelity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
    pub pass: bool,
}

impl Summary {
    /// Aggregates in case order. The mean is accumulated as an offset from
    /// the minimum so that `min <= mean` survives rounding.
    pub fn from_cases(cases: &[Case]) -> Self {
        let min = cases.iter().map(|c| c.fidelity).fold(f64::INFINITY, f64::min);
        let min_fidelity = if cases.is_empty() { 0.0 } else { min };
        let offset: f64 = cases.iter().map(|c| c.fidelity - min_fidelity).sum();
        let mean_fidelity = if cases.is_empty() {
            0.0
        } else {
            min_fidelity + offset / cases.len() as f64
        };
        let max_deviation = cases
            .iter()
            .filter_map(|c| c.max_deviation)
            .reduce(f64::max);
        let failures = cases.iter().filter(|c| !(c.fidelity >= FIDELITY_THRESHOLD)).count();
        let deviation_ok = max_deviation.is_none_or(|d| d < AMPLITUDE_TOLERANCE);
        Summary {
            cases: cases.len(),
            failures,
            threshold: FIDELITY_THRESHOLD,
            min_fidelity,
            mean_fidelity,
            max_deviation,
            pass: !cases.is_empty() && min_fidelity >= FIDELITY_THRESHOLD && deviation_ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: RunConfig, cases: Vec<Case>) -> Self {
        let summary = Summary::from_cases(&cases);
        Report { config, cases, summary }
    }

    pub fn write_json(&self, mut w: impl Write) -> Result<()> {
        serde_json::to_writer_pretty(&mut w, self)?;
        w.write_all(b"\n")?;
        Ok(())
    }

    /// Flat projection of the per-case records.
    pub fn write_csv(&self, w: impl Write) -> Result<()> {
        #[derive(Serialize)]
        struct Row<'a> {
            pattern: &'a str,
            model: &'a str,
            word: Option<usize>,
            trial_seed: Option<u64>,
            fidelity: f64,
            max_deviation: Option<f64>,
            elapsed_ms: f64,
        }
        let mut out = csv::Writer::from_writer(w);
        for c in &self.cases {
            out.serialize(Row {
                pattern: &c.pattern,
                model: &c.model,
                word: c.word,
                trial_seed: c.trial_seed,
                fidelity: c.fidelity,
                max_deviation: c.max_deviation,
                elapsed_ms: c.elapsed_ms,
            })?;
        }
        out.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(f: f64) -> Case {
        Case {
            pattern: "-".into(),
            model: "identity".into(),
            word: None,
            trial_seed: Some(0),
            fidelity: f,
            max_deviation: None,
            elapsed_ms: 0.0,
        }
    }

    #[test]
    fn summary_rules() {
        let s = Summary::from_cases(&[case(1.0), case(1.0 - 1e-9)]);
        assert!(!s.pass);
        assert_eq!(s.failures, 1);
        assert!(s.min_fidelity <= s.mean_fidelity);
        let s = Summary::from_cases(&vec![case(0.1 + 0.2); 7]);
        assert!(s.min_fidelity <= s.mean_fidelity);
        assert!(!Summary::from_cases(&[]).pass);
        assert!(Summary::from_cases(&[case(1.0)]).pass);
        let mut c = case(1.0);
        c.fidelity = f64::NAN;
        assert_eq!(Summary::from_cases(&[c]).failures, 1);
    }
}
