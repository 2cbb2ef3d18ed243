use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::State;
use crate::error::{Error, Result, MAX_KEPT_QUBITS};

/// Density operator of a small subsystem, `2^n × 2^n`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub(super) fn from_entries_unchecked(n_qubits: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), 1 << (2 * n_qubits));
        DensityMatrix { n_qubits, entries }
    }

    /// `|psi⟩⟨psi|`.
    pub fn from_pure(psi: &State) -> Result<Self> {
        if psi.n_qubits() > MAX_KEPT_QUBITS {
            return Err(Error::Capacity { requested: psi.n_qubits(), max: MAX_KEPT_QUBITS });
        }
        let a = psi.amplitudes();
        let entries = a.iter().flat_map(|x| a.iter().map(move |y| x * y.conj())).collect();
        Ok(DensityMatrix { n_qubits: psi.n_qubits(), entries })
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let d = 1usize << n_qubits;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            entries[i * d + i] = Complex64::new(1.0 / d as f64, 0.0);
        }
        DensityMatrix { n_qubits, entries }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    /// `max |ρ_ij − conj(ρ_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// `⟨psi|ρ|psi⟩`, clamped into `[0, 1]` against rounding.
    pub fn fidelity(&self, psi: &State) -> Result<f64> {
        if psi.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: psi.n_qubits(),
            });
        }
        let a = psi.amplitudes();
        let d = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            let row = &self.entries[i * d..(i + 1) * d];
            let r: Complex64 = row.iter().zip(a).map(|(x, y)| x * y).sum();
            acc += a[i].conj() * r;
        }
        Ok(acc.re.clamp(0.0, 1.0))
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `max |ρ − X^⊗n ρ X^⊗n|`; zero iff ρ commutes with the global bit flip.
    pub fn flip_symmetry_error(&self) -> f64 {
        let d = self.dim();
        let all = d - 1;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                worst = worst.max((self.get(i, j) - self.get(i ^ all, j ^ all)).norm());
            }
        }
        worst
    }

    /// Total weight of the diagonal on basis indices rejected by `keep`.
    pub fn population_outside(&self, keep: impl Fn(usize) -> bool) -> f64 {
        (0..self.dim()).filter(|&i| !keep(i)).map(|i| self.get(i, i).re).sum()
    }
}
