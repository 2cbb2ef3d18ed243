use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{GateError, Result};

/// Tolerance for the unitarity check on user-supplied matrices.
pub const UNITARY_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square unitary matrix of dimension `D`, row-major. Only constructible
/// through [`Unitary::new`], which checks `U†U = I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary<const D: usize>([[Complex64; D]; D]);

pub type Unitary2 = Unitary<2>;
pub type Unitary4 = Unitary<4>;

impl<const D: usize> Unitary<D> {
    pub fn new(m: [[Complex64; D]; D]) -> core::result::Result<Self, GateError> {
        if unitarity_error(&m) < UNITARY_TOL {
            Ok(Unitary(m))
        } else {
            Err(GateError::NotUnitary)
        }
    }

    pub fn identity() -> Self {
        let mut m = [[ZERO; D]; D];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = ONE;
        }
        Unitary(m)
    }

    pub fn matrix(&self) -> &[[Complex64; D]; D] {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        let mut m = [[ZERO; D]; D];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[j][i].conj();
            }
        }
        Unitary(m)
    }

    /// `max |(U†U − I)_ij|`.
    pub fn unitarity_error(&self) -> f64 {
        unitarity_error(&self.0)
    }
}

fn unitarity_error<const D: usize>(m: &[[Complex64; D]; D]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..D {
        for j in 0..D {
            let mut acc = ZERO;
            for row in m.iter() {
                acc += row[i].conj() * row[j];
            }
            if i == j {
                acc -= ONE;
            }
            worst = worst.max(acc.norm());
        }
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    Cnot,
    Toffoli,
    Cz,
    U1q,
    U2q,
}

/// Elementary gate. Qubit lists read controls first, target last.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    Cnot { control: usize, target: usize },
    Toffoli { controls: [usize; 2], target: usize },
    /// Controlled σ_z. Symmetric in its two qubits; the order is kept for export.
    Cz { control: usize, target: usize },
    U1q { qubit: usize, matrix: Unitary2 },
    /// Two-qubit unitary; `qubits[0]` is the more significant factor of the 4×4 matrix.
    U2q { qubits: [usize; 2], matrix: Unitary4 },
}

impl Gate {
    pub fn h(q: usize) -> Self {
        Gate::H(q)
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Self {
        Gate::Toffoli { controls: [c1, c2], target }
    }

    pub fn cz(control: usize, target: usize) -> Self {
        Gate::Cz { control, target }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Toffoli { .. } => GateKind::Toffoli,
            Gate::Cz { .. } => GateKind::Cz,
            Gate::U1q { .. } => GateKind::U1q,
            Gate::U2q { .. } => GateKind::U2q,
        }
    }

    /// Qubits in the order controls..., target.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::U1q { qubit: q, .. } => alloc::vec![q],
            Gate::Cnot { control, target } | Gate::Cz { control, target } => {
                alloc::vec![control, target]
            }
            Gate::Toffoli { controls, target } => alloc::vec![controls[0], controls[1], target],
            Gate::U2q { qubits, .. } => qubits.to_vec(),
        }
    }

    pub fn touches(&self, qubit: usize) -> bool {
        self.qubits().contains(&qubit)
    }

    pub fn validate(&self, n_qubits: usize) -> core::result::Result<(), GateError> {
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= n_qubits {
                return Err(GateError::OutOfRange { qubit: q, n_qubits });
            }
            if qs[..i].contains(&q) {
                return Err(GateError::Collision { qubit: q });
            }
        }
        Ok(())
    }

    /// Same gate with every qubit index passed through `f`.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> Self {
        match *self {
            Gate::H(q) => Gate::H(f(q)),
            Gate::Cnot { control, target } => Gate::cnot(f(control), f(target)),
            Gate::Toffoli { controls, target } => Gate::toffoli(f(controls[0]), f(controls[1]), f(target)),
            Gate::Cz { control, target } => Gate::cz(f(control), f(target)),
            Gate::U1q { qubit, matrix } => Gate::U1q { qubit: f(qubit), matrix },
            Gate::U2q { qubits, matrix } => Gate::U2q { qubits: qubits.map(f), matrix },
        }
    }

    /// Inverse gate. H, CNOT, Toffoli and CZ are involutions.
    pub fn inverse(&self) -> Self {
        match self {
            Gate::U1q { qubit, matrix } => Gate::U1q { qubit: *qubit, matrix: matrix.adjoint() },
            Gate::U2q { qubits, matrix } => Gate::U2q { qubits: *qubits, matrix: matrix.adjoint() },
            g => g.clone(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) => write!(f, "H {q}"),
            Gate::Cnot { control, target } => write!(f, "CX {control} {target}"),
            Gate::Toffoli { controls, target } => {
                write!(f, "CCX {} {} {target}", controls[0], controls[1])
            }
            Gate::Cz { control, target } => write!(f, "CZ {control} {target}"),
            Gate::U1q { qubit, .. } => write!(f, "U1 {qubit}"),
            Gate::U2q { qubits, .. } => write!(f, "U2 {} {}", qubits[0], qubits[1]),
        }
    }
}

/// Ordered gate list; element 0 is applied first.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GateSequence {
    gates: Vec<Gate>,
}

impl GateSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn append(&mut self, other: GateSequence) {
        self.gates.extend(other.gates);
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Gate> {
        self.gates.iter()
    }

    /// Reversed list of inverted gates.
    pub fn inverse(&self) -> Self {
        self.gates.iter().rev().map(Gate::inverse).collect()
    }

    /// One past the highest qubit index referenced, or 0 for an empty sequence.
    pub fn min_qubits(&self) -> usize {
        self.gates
            .iter()
            .flat_map(|g| g.qubits())
            .max()
            .map_or(0, |q| q + 1)
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        for (index, g) in self.gates.iter().enumerate() {
            g.validate(n_qubits)
                .map_err(|error| crate::Error::InvalidGateAt { index, error })?;
        }
        Ok(())
    }
}

impl FromIterator<Gate> for GateSequence {
    fn from_iter<I: IntoIterator<Item = Gate>>(iter: I) -> Self {
        GateSequence { gates: iter.into_iter().collect() }
    }
}

impl Extend<Gate> for GateSequence {
    fn extend<I: IntoIterator<Item = Gate>>(&mut self, iter: I) {
        self.gates.extend(iter);
    }
}

impl IntoIterator for GateSequence {
    type Item = Gate;
    type IntoIter = alloc::vec::IntoIter<Gate>;

    fn into_iter(self) -> Self::IntoIter {
        self.gates.into_iter()
    }
}

impl<'a> IntoIterator for &'a GateSequence {
    type Item = &'a Gate;
    type IntoIter = core::slice::Iter<'a, Gate>;

    fn into_iter(self) -> Self::IntoIter {
        self.gates.iter()
    }
}
