//! Erasure channel: a flagged qubit is corrupted by a unitary coupling with
//! its own fresh environment qubit.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::codec::{CodeLayout, Erasure, ErasureFlags};
use crate::error::{Error, Result};
use crate::statevector::{Gate, State, Unitary2, Unitary4};

const O: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(1.0, 0.0);

/// How an erased qubit interacts with its environment qubit.
#[derive(Debug, Clone, PartialEq)]
pub enum CorruptionModel {
    Identity,
    BitFlip,
    PhaseFlip,
    /// `XZ` on the erased qubit.
    BitPhaseFlip,
    /// Arbitrary unitary on (erased qubit, environment qubit), erased qubit
    /// as the more significant factor. `seed` records its provenance.
    EntanglingLeak { seed: u64, unitary: Unitary4 },
}

impl CorruptionModel {
    /// Kind string used in configs and reports.
    pub fn kind(&self) -> &'static str {
        match self {
            CorruptionModel::Identity => "identity",
            CorruptionModel::BitFlip => "bit_flip",
            CorruptionModel::PhaseFlip => "phase_flip",
            CorruptionModel::BitPhaseFlip => "bit_phase_flip",
            CorruptionModel::EntanglingLeak { .. } => "entangling_leak",
        }
    }

    /// Whether the model acts on the erased qubit alone (a Pauli or identity).
    pub fn is_local_pauli(&self) -> bool {
        !matches!(self, CorruptionModel::EntanglingLeak { .. })
    }

    /// The 4×4 unitary on (erased qubit, environment qubit).
    pub fn coupling(&self) -> Unitary4 {
        let local = |m: [[Complex64; 2]; 2]| {
            Unitary4::new([
                [m[0][0], O, m[0][1], O],
                [O, m[0][0], O, m[0][1]],
                [m[1][0], O, m[1][1], O],
                [O, m[1][0], O, m[1][1]],
            ])
            .expect("Pauli tensor identity is unitary")
        };
        match self {
            CorruptionModel::Identity => Unitary4::identity(),
            CorruptionModel::BitFlip => local([[O, I], [I, O]]),
            CorruptionModel::PhaseFlip => local([[I, O], [O, -I]]),
            CorruptionModel::BitPhaseFlip => local([[O, -I], [I, O]]),
            CorruptionModel::EntanglingLeak { unitary, .. } => *unitary,
        }
    }

    fn pauli(&self) -> Option<Unitary2> {
        let m = match self {
            CorruptionModel::Identity => return Some(Unitary2::identity()),
            CorruptionModel::BitFlip => [[O, I], [I, O]],
            CorruptionModel::PhaseFlip => [[I, O], [O, -I]],
            CorruptionModel::BitPhaseFlip => [[O, -I], [I, O]],
            CorruptionModel::EntanglingLeak { .. } => return None,
        };
        Some(Unitary2::new(m).expect("Pauli matrices are unitary"))
    }
}

impl fmt::Display for CorruptionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorruptionModel::EntanglingLeak { seed, .. } => write!(f, "entangling_leak@{seed}"),
            m => f.write_str(m.kind()),
        }
    }
}

/// Seeded Haar-distributed 4×4 unitary: Gram–Schmidt over the columns of a
/// complex Gaussian matrix.
pub fn random_leak_unitary(seed: u64) -> CorruptionModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols = [[O; 4]; 4];
    loop {
        for col in cols.iter_mut() {
            for v in col.iter_mut() {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                *v = Complex64::new(re, im);
            }
        }
        if orthonormalize(&mut cols) {
            break;
        }
    }
    let mut m = [[O; 4]; 4];
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            m[i][j] = v;
        }
    }
    let unitary = Unitary4::new(m).expect("orthonormalized columns form a unitary");
    CorruptionModel::EntanglingLeak { seed, unitary }
}

/// Modified Gram–Schmidt with one reorthogonalization pass. Returns false on
/// a (numerically) rank-deficient draw.
fn orthonormalize(cols: &mut [[Complex64; 4]; 4]) -> bool {
    for j in 0..4 {
        for _ in 0..2 {
            for p in 0..j {
                let proj: Complex64 = (0..4).map(|i| cols[p][i].conj() * cols[j][i]).sum();
                for i in 0..4 {
                    let v = cols[p][i];
                    cols[j][i] -= proj * v;
                }
            }
        }
        let norm = Float::sqrt(cols[j].iter().map(|v| v.norm_sqr()).sum::<f64>());
        if norm < 1e-8 {
            return false;
        }
        cols[j].iter_mut().for_each(|v| *v /= norm);
    }
    true
}

/// One flagged erasure and the corruption it suffers.
#[derive(Debug, Clone, PartialEq)]
pub struct ErasureEvent {
    pub block: usize,
    pub position: usize,
    pub model: CorruptionModel,
}

impl ErasureEvent {
    pub fn new(block: usize, position: usize, model: CorruptionModel) -> Self {
        ErasureEvent { block, position, model }
    }
}

/// Output of [`apply_erasure`].
#[derive(Debug, Clone)]
pub struct Corrupted {
    pub state: State,
    /// Flags to hand to the restoring operation.
    pub flags: ErasureFlags,
    /// Global index of each event's environment qubit, in event order.
    pub env_qubits: Vec<usize>,
}

/// Corrupts an encoded `k(t+1)`-qubit state. One `|0⟩` environment qubit is
/// appended per event, after every qubit already present, and the event's
/// coupling is applied to (erased qubit, its environment qubit).
pub fn apply_erasure(s: &State, layout: &CodeLayout, events: &[ErasureEvent]) -> Result<Corrupted> {
    if s.n_qubits() != layout.code_qubits() {
        return Err(Error::DimensionMismatch {
            expected: layout.code_qubits(),
            found: s.n_qubits(),
        });
    }
    let flags = ErasureFlags::new(
        layout,
        events.iter().map(|e| Erasure { block: e.block, position: e.position }),
    )?;
    let base = s.n_qubits();
    let mut state = s.append_zero_qubits(events.len())?;
    let mut env_qubits = Vec::with_capacity(events.len());
    for (n, e) in events.iter().enumerate() {
        let target = layout.qubit(e.block, e.position);
        let env = base + n;
        env_qubits.push(env);
        // Pauli models skip the environment; the result is identical and cheaper.
        let gate = match e.model.pauli() {
            Some(matrix) => Gate::U1q { qubit: target, matrix },
            None => Gate::U2q { qubits: [target, env], matrix: e.model.coupling() },
        };
        state.apply_gate(&gate)?;
    }
    Ok(Corrupted { state, flags, env_qubits })
}
