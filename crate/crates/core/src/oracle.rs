//! Independent ground truth. Nothing here goes through the codec's gate
//! builders except where a comparison against them is the point.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::channel::{apply_erasure, CorruptionModel, ErasureEvent};
use crate::codec::{encode, extract_message, restore, CodeLayout, Erasure};
use crate::error::{Error, Result};
use crate::statevector::State;

/// Builds the encoded state by direct amplitude placement.
///
/// Message word `i` maps to `(|w⟩ + s|w̄⟩)/√2` in every code block, where
/// `w` is `i` with its last bit cleared, `w̄` its complement, and
/// `s = (−1)^(last bit of i)`.
pub fn analytic_encoded_state(psi: &State, layout: &CodeLayout) -> Result<State> {
    let k = layout.k();
    if psi.n_qubits() != k {
        return Err(Error::DimensionMismatch { expected: k, found: psi.n_qubits() });
    }
    let blocks = layout.n_code_blocks();
    let full = (1usize << k) - 1;
    let scale = 1.0 / Float::sqrt((1u64 << blocks) as f64);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << (k * blocks)];
    for (i, &lambda) in psi.amplitudes().iter().enumerate() {
        if lambda == Complex64::new(0.0, 0.0) {
            continue;
        }
        let w = i & !1;
        let sign = if i & 1 == 1 { -1.0 } else { 1.0 };
        // choice bit d set -> block d holds the complement word
        for choice in 0..1usize << blocks {
            let mut index = 0usize;
            let mut amp = lambda * scale;
            for d in 0..blocks {
                let word = if choice >> d & 1 == 1 {
                    amp *= sign;
                    w ^ full
                } else {
                    w
                };
                index = (index << k) | word;
            }
            amps[index] += amp;
        }
    }
    State::from_amplitudes(amps)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncodingTableCheck {
    pub k: usize,
    /// Number of basis words compared (`2^k`).
    pub words: usize,
    /// Largest per-amplitude deviation between gate-built and analytic states.
    pub max_deviation: f64,
}

/// Compares [`encode`] with [`analytic_encoded_state`] on every basis word.
pub fn verify_encoding_table(k: usize) -> Result<EncodingTableCheck> {
    let layout = CodeLayout::new(k)?;
    let words = 1usize << k;
    let mut max_deviation = 0.0f64;
    for i in 0..words {
        let psi = State::basis(k, i)?;
        let gate = encode(&psi, &layout)?;
        let analytic = analytic_encoded_state(&psi, &layout)?;
        max_deviation = max_deviation.max(gate.max_abs_diff(&analytic)?);
    }
    Ok(EncodingTableCheck { k, words, max_deviation })
}

/// Every legal erasure pattern: subsets of at most `t` distinct code blocks,
/// each with one erased position. Ordered by pattern size, then
/// lexicographically by (block, position).
pub fn legal_patterns(layout: &CodeLayout) -> Vec<Vec<Erasure>> {
    let mut out = Vec::new();
    for size in 0..=layout.t() {
        let mut acc = Vec::with_capacity(size);
        extend_patterns(layout, size, 0, &mut acc, &mut out);
    }
    out
}

fn extend_patterns(
    layout: &CodeLayout,
    remaining: usize,
    first_block: usize,
    acc: &mut Vec<Erasure>,
    out: &mut Vec<Vec<Erasure>>,
) {
    if remaining == 0 {
        out.push(acc.clone());
        return;
    }
    for block in first_block..layout.n_code_blocks() {
        for position in 1..=layout.k() {
            acc.push(Erasure { block, position });
            extend_patterns(layout, remaining - 1, block + 1, acc, out);
            acc.pop();
        }
    }
}

/// Seeded random message: normalized complex Gaussian amplitudes.
pub fn random_message(k: usize, seed: u64) -> Result<State> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = (0..1usize << k)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    State::normalized(amps)
}

/// Runs encode → erasure → restore → extract for one pattern and returns the
/// fidelity of the recovered block with `psi`. Every erasure in the
/// pattern suffers the same corruption model.
pub fn recovery_fidelity(
    psi: &State,
    layout: &CodeLayout,
    pattern: &[Erasure],
    model: &CorruptionModel,
) -> Result<f64> {
    let events: Vec<ErasureEvent> = pattern
        .iter()
        .map(|e| ErasureEvent::new(e.block, e.position, model.clone()))
        .collect();
    let encoded = encode(psi, layout)?;
    let corrupted = apply_erasure(&encoded, layout, &events)?;
    let restored = restore(&corrupted.state, layout, &corrupted.flags)?;
    extract_message(&restored, layout)?.fidelity(psi)
}
