//! Exhaustive recovery sweep over every legal erasure pattern.

use std::time::Instant;

use ghz_erasure_core::codec::CodeLayout;
use ghz_erasure_core::oracle::{legal_patterns, random_message, recovery_fidelity};
use rayon::prelude::*;

use crate::error::{HarnessError, Result};
use crate::report::Case;
use crate::spec::ModelSpec;

/// Environment variable capping sweep worker threads.
pub const THREADS_ENV: &str = "GHZ_ERASURE_THREADS";

/// Runs encode, erasure, restore and extraction for every legal pattern,
/// every model and `trials` random messages (seeds `seed..seed + trials`).
/// Cases come back ordered by (pattern, model, trial).
pub fn sweep_all_patterns(
    k: usize,
    models: &[ModelSpec],
    trials: usize,
    seed: u64,
) -> Result<Vec<Case>> {
    let layout = CodeLayout::new(k)?;
    if trials == 0 {
        return Err(HarnessError::Usage("trials must be at least 1".into()));
    }
    let patterns = legal_patterns(&layout);
    let built: Vec<_> = models.iter().map(|m| m.build()).collect();
    let messages = (0..trials as u64)
        .map(|i| random_message(k, seed + i))
        .collect::<ghz_erasure_core::Result<Vec<_>>>()?;
    let jobs: Vec<(usize, usize, usize)> = (0..patterns.len())
        .flat_map(|p| (0..models.len()).flat_map(move |m| (0..trials).map(move |t| (p, m, t))))
        .collect();

    let pool = thread_pool()?;
    let mut cases = pool.install(|| {
        jobs.par_iter()
            .map(|&(p, m, t)| {
                let start = Instant::now();
                let fidelity = recovery_fidelity(&messages[t], &layout, &patterns[p], &built[m])?;
                let case = Case {
                    pattern: pattern_label(&patterns[p]),
                    model: models[m].to_string(),
                    word: None,
                    trial_seed: Some(seed + t as u64),
                    fidelity,
                    max_deviation: None,
                    elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                };
                Ok(((p, m, t), case))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    cases.sort_by_key(|(key, _)| *key);
    Ok(cases.into_iter().map(|(_, c)| c).collect())
}

pub fn pattern_label(p: &[ghz_erasure_core::codec::Erasure]) -> String {
    if p.is_empty() {
        return "-".into();
    }
    p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Pool sized by [`THREADS_ENV`] when set, else rayon's default.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => return Err(HarnessError::Usage(format!("{THREADS_ENV}={v} is not a positive integer"))),
        },
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| HarnessError::Io(std::io::Error::other(e)))
}
