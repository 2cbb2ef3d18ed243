//! Dense state-vector simulation of a GHZ block code that protects `k ≥ 3`
//! message qubits against up to `t = ⌊k/2⌋` flagged erasures in distinct
//! blocks.
//!
//! The crate is `no_std` (it needs `alloc`). The pipeline is
//! [`codec::encode`] → [`channel::apply_erasure`] → [`codec::restore`] →
//! [`codec::extract_message`]; [`oracle`] holds the independent checks.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod channel;
pub mod codec;
mod error;
pub mod oracle;
pub mod statevector;

pub use error::{Error, GateError, Result, MAX_KEPT_QUBITS, MAX_QUBITS};
pub use statevector::{DensityMatrix, Gate, GateKind, GateSequence, State};
