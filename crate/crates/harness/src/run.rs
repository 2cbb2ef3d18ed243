//! Scenario execution and output.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

use ghz_erasure_core::channel::ErasureEvent;
use ghz_erasure_core::codec::{encode, CodeLayout};
use ghz_erasure_core::oracle::{analytic_encoded_state, random_message};
use ghz_erasure_core::State;

use crate::circuit;
use crate::config::{Format, RunConfig, Scenario};
use crate::error::{HarnessError, Result};
use crate::report::{Case, Report};
use crate::sweep::sweep_all_patterns;

/// What a run produced.
#[derive(Debug)]
pub enum Outcome {
    Report(Report),
    Circuit(String),
}

impl Outcome {
    pub fn passed(&self) -> bool {
        match self {
            Outcome::Report(r) => r.summary.pass,
            Outcome::Circuit(_) => true,
        }
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    config.validate()?;
    let layout = config.layout()?;
    let cases = match config.scenario {
        Scenario::EncodeTable => encode_table(&layout)?,
        Scenario::SingleRun => single_run(config, &layout)?,
        Scenario::Sweep => sweep_all_patterns(config.k, &config.sweep_models(), config.trials, config.seed)?,
        Scenario::ExportCircuit => {
            let which = config.which.expect("validated");
            let (seq, n) = circuit::operator(&layout, which, &config.flags(&layout)?)?;
            let text = circuit::to_text(&seq, n).map_err(|e| HarnessError::Usage(e.to_string()))?;
            return Ok(Outcome::Circuit(text));
        }
    };
    Ok(Outcome::Report(Report::new(config.clone(), cases)))
}

fn encode_table(layout: &CodeLayout) -> Result<Vec<Case>> {
    (0..1usize << layout.k())
        .map(|word| {
            let start = Instant::now();
            let psi = State::basis(layout.k(), word)?;
            let gate = encode(&psi, layout)?;
            let analytic = analytic_encoded_state(&psi, layout)?;
            let overlap = analytic.inner_product(&gate)?.norm_sqr();
            Ok(Case {
                pattern: "-".into(),
                model: "none".into(),
                word: Some(word),
                trial_seed: None,
                fidelity: overlap.min(1.0),
                max_deviation: Some(gate.max_abs_diff(&analytic)?),
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect()
}

fn single_run(config: &RunConfig, layout: &CodeLayout) -> Result<Vec<Case>> {
    let flags = config.flags(layout)?;
    let models: Vec<_> = config.erasures.iter().map(|e| config.model_for(e)).collect();
    let mut names: Vec<String> = models.iter().map(ToString::to_string).collect();
    names.dedup();
    let model = if names.is_empty() { "none".to_owned() } else { names.join("+") };
    let events: Vec<ErasureEvent> = config
        .erasures
        .iter()
        .zip(&models)
        .map(|(e, m)| ErasureEvent::new(e.block, e.position, m.build()))
        .collect();
    (0..config.trials as u64)
        .map(|i| {
            let start = Instant::now();
            let trial_seed = config.seed + i;
            let psi = random_message(config.k, trial_seed)?;
            let encoded = encode(&psi, layout)?;
            let corrupted = ghz_erasure_core::channel::apply_erasure(&encoded, layout, &events)?;
            let restored = ghz_erasure_core::codec::restore(&corrupted.state, layout, &corrupted.flags)?;
            let fidelity = ghz_erasure_core::codec::extract_message(&restored, layout)?.fidelity(&psi)?;
            Ok(Case {
                pattern: flags.to_string(),
                model: model.clone(),
                word: None,
                trial_seed: Some(trial_seed),
                fidelity,
                max_deviation: None,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect()
}

/// Writes the outcome to `config.output`, or stdout.
pub fn write_outcome(outcome: &Outcome, config: &RunConfig) -> Result<()> {
    let sink: Box<dyn Write> = match &config.output {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = BufWriter::new(sink);
    match outcome {
        Outcome::Circuit(text) => w.write_all(text.as_bytes())?,
        Outcome::Report(r) => match config.format {
            Format::Json => r.write_json(&mut w)?,
            Format::Csv => r.write_csv(&mut w)?,
        },
    }
    w.flush()?;
    Ok(())
}
