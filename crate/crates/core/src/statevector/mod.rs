//! Dense pure-state simulator.
//!
//! Qubit `g` of an `n`-qubit state is stored in bit `n - 1 - g` of the basis
//! index, so ket labels read left to right as qubit 0, 1, ..., n-1. Gates are
//! applied in place by iterating over index pairs; no `2^n × 2^n` operator is
//! ever materialized.

mod density;
mod gate;

pub use density::DensityMatrix;
pub use gate::{Gate, GateKind, GateSequence, Unitary, Unitary2, Unitary4, UNITARY_TOL};

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result, MAX_KEPT_QUBITS, MAX_QUBITS};

/// Accepted deviation of `Σ|a|²` from 1 for caller-supplied amplitudes.
pub const NORM_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct State {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl State {
    /// `|0…0⟩` on `n` qubits, `1 <= n <= 24`.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    /// Computational basis state `|index⟩`; `index` is read with qubit 0 as the most significant bit.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::Capacity { requested: n, max: MAX_QUBITS });
        }
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::InvalidState);
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(State { n_qubits: n, amplitudes })
    }

    /// The 0-qubit state (scalar 1), the unit of [`State::tensor`].
    pub fn scalar() -> Self {
        State { n_qubits: 0, amplitudes: vec![ONE] }
    }

    /// Wraps an amplitude vector that must already be normalized.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amplitudes.len())?;
        let s = State { n_qubits, amplitudes };
        if (s.norm_sqr() - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState);
        }
        Ok(s)
    }

    /// Wraps and rescales an arbitrary nonzero amplitude vector.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amplitudes.len())?;
        let norm = Float::sqrt(amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>());
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidState);
        }
        let inv = 1.0 / norm;
        amplitudes.iter_mut().for_each(|a| *a *= inv);
        Ok(State { n_qubits, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    fn bit(&self, qubit: usize) -> u32 {
        (self.n_qubits - 1 - qubit) as u32
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        apply_kernel(&mut self.amplitudes, self.n_qubits, gate, &Enumerate);
        Ok(())
    }

    /// Applies every gate in list order. The whole sequence is validated
    /// first, so an invalid gate leaves the state untouched.
    ///
    /// Consecutive gates that together touch at most [`FUSE_QUBITS`] qubits
    /// are applied in a single pass over the amplitudes.
    pub fn apply_sequence(&mut self, seq: &GateSequence) -> Result<()> {
        seq.validate(self.n_qubits)?;
        let gates = seq.gates();
        let mut start = 0;
        while start < gates.len() {
            let (end, support) = fusion_group(gates, start);
            if end - start > 1 && self.n_qubits > FUSE_QUBITS {
                self.apply_fused(&gates[start..end], &support);
            } else {
                for g in &gates[start..end] {
                    apply_kernel(&mut self.amplitudes, self.n_qubits, g, &Enumerate);
                }
            }
            start = end;
        }
        Ok(())
    }

    /// Consuming form of [`State::apply_sequence`].
    pub fn evolved(mut self, seq: &GateSequence) -> Result<Self> {
        self.apply_sequence(seq)?;
        Ok(self)
    }

    /// Gathers the `2^m` amplitudes spanned by `support` for each setting of
    /// the remaining qubits, runs `gates` on that buffer, and scatters back.
    fn apply_fused(&mut self, gates: &[Gate], support: &[usize]) {
        let m = support.len();
        let local = |q: usize| support.binary_search(&q).expect("gate qubit in support");
        let local_gates: Vec<Gate> = gates.iter().map(|g| g.remap(local)).collect();
        let bases: Vec<Vec<usize>> = local_gates
            .iter()
            .map(|g| {
                let mut bits: Vec<u32> = g.qubits().iter().map(|&q| (m - 1 - q) as u32).collect();
                let mut list = Vec::with_capacity(1 << (m - bits.len()));
                for_each_base(m, &mut bits, |i| list.push(i));
                list
            })
            .collect();
        let masks: Vec<usize> = support.iter().map(|&q| self.mask(q)).collect();
        let table = scatter_table(&masks);
        let mut outer_bits: Vec<u32> = support.iter().map(|&q| self.bit(q)).collect();
        let mut buf = vec![ZERO; 1 << m];
        let amps = &mut self.amplitudes;
        for_each_base(self.n_qubits, &mut outer_bits, |base| {
            for (b, &off) in buf.iter_mut().zip(&table) {
                *b = amps[base | off];
            }
            // gates are linear: an all-zero slice stays zero
            if buf.iter().all(|&b| b == ZERO) {
                return;
            }
            for (g, list) in local_gates.iter().zip(&bases) {
                apply_kernel(&mut buf, m, g, &Listed(list));
            }
            for (&b, &off) in buf.iter().zip(&table) {
                amps[base | off] = b;
            }
        });
    }

    /// `self ⊗ other`; the qubits of `self` come first (more significant).
    pub fn tensor(&self, other: &State) -> Result<State> {
        let n = self.n_qubits + other.n_qubits;
        if n > MAX_QUBITS {
            return Err(Error::Capacity { requested: n, max: MAX_QUBITS });
        }
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|&b| a * b));
        }
        Ok(State { n_qubits: n, amplitudes })
    }

    /// Inserts `count` fresh `|0⟩` qubits so that they occupy global
    /// positions `at..at + count`; qubits previously at `>= at` shift up.
    pub fn insert_zero_qubits(&self, at: usize, count: usize) -> Result<State> {
        if at > self.n_qubits {
            return Err(Error::InvalidSubset);
        }
        let n = self.n_qubits + count;
        if n > MAX_QUBITS {
            return Err(Error::Capacity { requested: n, max: MAX_QUBITS });
        }
        let low_bits = self.n_qubits - at;
        let low_mask = (1usize << low_bits) - 1;
        let mut amplitudes = vec![ZERO; 1usize << n];
        for (x, &a) in self.amplitudes.iter().enumerate() {
            let high = x >> low_bits;
            amplitudes[(high << (low_bits + count)) | (x & low_mask)] = a;
        }
        Ok(State { n_qubits: n, amplitudes })
    }

    /// Appends `count` `|0⟩` qubits after the existing ones.
    pub fn append_zero_qubits(&self, count: usize) -> Result<State> {
        self.insert_zero_qubits(self.n_qubits, count)
    }

    /// `⟨self|other⟩`.
    pub fn inner_product(&self, other: &State) -> Result<Complex64> {
        self.check_same_size(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Largest per-amplitude deviation `max_i |a_i − b_i|`.
    pub fn max_abs_diff(&self, other: &State) -> Result<f64> {
        self.check_same_size(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    fn check_same_size(&self, other: &State) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        Ok(())
    }

    /// Partial trace onto `keep`. The result's basis orders the kept qubits
    /// by ascending global index, whatever order `keep` lists them in.
    pub fn reduced_density_matrix(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if kept.is_empty()
            || kept.len() != keep.len()
            || kept.len() > MAX_KEPT_QUBITS
            || kept.iter().any(|&q| q >= self.n_qubits)
        {
            return Err(Error::InvalidSubset);
        }
        let rest: Vec<usize> = (0..self.n_qubits).filter(|q| !kept.contains(q)).collect();

        // scatter tables: local index -> global index bits
        let keep_masks: Vec<usize> = kept.iter().map(|&q| self.mask(q)).collect();
        let keep_tab = scatter_table(&keep_masks);
        let rest_masks: Vec<usize> = rest.iter().map(|&q| self.mask(q)).collect();
        let split = rest_masks.len() / 2;
        // rest_masks is ordered most significant first; the low half of the
        // local rest index maps to the tail of the list
        let (hi_masks, lo_masks) = rest_masks.split_at(rest_masks.len() - split);
        let lo_tab = scatter_table(lo_masks);
        let hi_tab = scatter_table(hi_masks);

        let d = keep_tab.len();
        let mut rho = vec![ZERO; d * d];
        let mut column = vec![ZERO; d];
        for &hi in &hi_tab {
            for &lo in &lo_tab {
                let base = hi | lo;
                for (c, &k) in column.iter_mut().zip(&keep_tab) {
                    *c = self.amplitudes[base | k];
                }
                for a in 0..d {
                    let va = column[a];
                    if va == ZERO {
                        continue;
                    }
                    let row = &mut rho[a * d..(a + 1) * d];
                    for b in a..d {
                        row[b] += va * column[b].conj();
                    }
                }
            }
        }
        for a in 0..d {
            for b in 0..a {
                rho[a * d + b] = rho[b * d + a].conj();
            }
        }
        Ok(DensityMatrix::from_entries_unchecked(kept.len(), rho))
    }
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if !len.is_power_of_two() {
        return Err(Error::InvalidState);
    }
    let n = len.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::Capacity { requested: n, max: MAX_QUBITS });
    }
    Ok(n)
}

/// `table[j]` ORs `masks[i]` for every set bit of `j`, where bit 0 of `j`
/// corresponds to the last mask.
fn scatter_table(masks: &[usize]) -> Vec<usize> {
    let m = masks.len();
    (0..1usize << m)
        .map(|j| {
            masks
                .iter()
                .enumerate()
                .filter(|(i, _)| j >> (m - 1 - i) & 1 == 1)
                .fold(0, |acc, (_, &mask)| acc | mask)
        })
        .collect()
}

/// Largest qubit set a fused gate group may span (a 16 KiB buffer).
pub const FUSE_QUBITS: usize = 10;

/// Greedy run of gates starting at `start` whose combined support stays
/// within [`FUSE_QUBITS`]. Returns the end index and the sorted support.
fn fusion_group(gates: &[Gate], start: usize) -> (usize, Vec<usize>) {
    let mut support: Vec<usize> = Vec::new();
    let mut end = start;
    while end < gates.len() {
        let mut next = support.clone();
        for q in gates[end].qubits() {
            if let Err(pos) = next.binary_search(&q) {
                next.insert(pos, q);
            }
        }
        if next.len() > FUSE_QUBITS && end > start {
            break;
        }
        support = next;
        end += 1;
    }
    (end, support)
}

/// Source of the base indices a kernel visits: indices whose bits at the
/// gate's positions are all zero.
trait BaseSource {
    fn visit(&self, n: usize, positions: &mut [u32], f: impl FnMut(usize));
}

/// Enumerates bases on the fly.
struct Enumerate;

impl BaseSource for Enumerate {
    fn visit(&self, n: usize, positions: &mut [u32], f: impl FnMut(usize)) {
        for_each_base(n, positions, f);
    }
}

/// Replays a precomputed base list.
struct Listed<'a>(&'a [usize]);

impl BaseSource for Listed<'_> {
    fn visit(&self, _n: usize, _positions: &mut [u32], mut f: impl FnMut(usize)) {
        self.0.iter().for_each(|&i| f(i));
    }
}

fn apply_kernel(amps: &mut [Complex64], n: usize, gate: &Gate, src: &impl BaseSource) {
    let mask = |q: usize| 1usize << (n - 1 - q);
    let bit = |q: usize| (n - 1 - q) as u32;
    match *gate {
        Gate::H(q) => {
            let h = core::f64::consts::FRAC_1_SQRT_2;
            let m = mask(q);
            src.visit(n, &mut [bit(q)], |i| {
                let a = amps[i];
                let b = amps[i | m];
                amps[i] = (a + b) * h;
                amps[i | m] = (a - b) * h;
            });
        }
        Gate::Cnot { control, target } => {
            let (cm, tm) = (mask(control), mask(target));
            src.visit(n, &mut [bit(control), bit(target)], |i| {
                amps.swap(i | cm, i | cm | tm);
            });
        }
        Gate::Toffoli { controls, target } => {
            let cm = mask(controls[0]) | mask(controls[1]);
            let tm = mask(target);
            let mut bits = [bit(controls[0]), bit(controls[1]), bit(target)];
            src.visit(n, &mut bits, |i| {
                amps.swap(i | cm, i | cm | tm);
            });
        }
        Gate::Cz { control, target } => {
            let m = mask(control) | mask(target);
            src.visit(n, &mut [bit(control), bit(target)], |i| {
                amps[i | m] = -amps[i | m];
            });
        }
        Gate::U1q { qubit, ref matrix } => {
            let u = *matrix.matrix();
            let m = mask(qubit);
            src.visit(n, &mut [bit(qubit)], |i| {
                let a = amps[i];
                let b = amps[i | m];
                amps[i] = u[0][0] * a + u[0][1] * b;
                amps[i | m] = u[1][0] * a + u[1][1] * b;
            });
        }
        Gate::U2q { qubits, ref matrix } => {
            let u = *matrix.matrix();
            let (hi, lo) = (mask(qubits[0]), mask(qubits[1]));
            src.visit(n, &mut [bit(qubits[0]), bit(qubits[1])], |i| {
                let idx = [i, i | lo, i | hi, i | hi | lo];
                let v = idx.map(|j| amps[j]);
                for (row, &j) in idx.iter().enumerate() {
                    amps[j] = u[row][0] * v[0] + u[row][1] * v[1] + u[row][2] * v[2] + u[row][3] * v[3];
                }
            });
        }
    }
}

/// Calls `f` for every basis index whose bits at `positions` are all zero.
fn for_each_base(n: usize, positions: &mut [u32], mut f: impl FnMut(usize)) {
    positions.sort_unstable();
    let count = 1usize << (n - positions.len());
    for j in 0..count {
        let mut idx = j;
        for &p in positions.iter() {
            let low = idx & ((1usize << p) - 1);
            idx = ((idx >> p) << (p + 1)) | low;
        }
        f(idx);
    }
}
