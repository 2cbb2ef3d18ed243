#![allow(dead_code)]

use ghz_erasure_core::statevector::{Unitary2, Unitary4};
use ghz_erasure_core::{Gate, State};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

pub const AMP_TOL: f64 = 1e-12;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn arb_state(n: usize) -> impl Strategy<Value = State> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1usize << n)
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(|v| State::normalized(v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap())
}

/// General single-qubit unitary from three angles.
pub fn u2_from_angles(theta: f64, phi: f64, lambda: f64) -> Unitary2 {
    let (s, co) = (theta / 2.0).sin_cos();
    let e = |x: f64| Complex64::from_polar(1.0, x);
    Unitary2::new([
        [c(co, 0.0), -e(lambda) * s],
        [e(phi) * s, e(phi + lambda) * co],
    ])
    .unwrap()
}

pub fn u4_from_seed(seed: u64) -> Unitary4 {
    ghz_erasure_core::channel::random_leak_unitary(seed).coupling()
}

fn distinct(n: usize, m: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |v| v[..m].to_vec())
}

/// Any gate on `n` qubits; gates needing more qubits than `n` fall back to H.
pub fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
    (0u8..6, distinct(n, n.min(3)), any::<(f64, f64, f64)>(), any::<u64>()).prop_map(
        move |(kind, q, (a, b, l), seed)| {
            let need = [1, 2, 3, 2, 1, 2][kind as usize];
            if need > q.len() {
                return Gate::h(q[0]);
            }
            match kind {
                0 => Gate::h(q[0]),
                1 => Gate::cnot(q[0], q[1]),
                2 => Gate::toffoli(q[0], q[1], q[2]),
                3 => Gate::cz(q[0], q[1]),
                4 => Gate::U1q {
                    qubit: q[0],
                    matrix: u2_from_angles(a % 7.0, b % 7.0, l % 7.0),
                },
                _ => Gate::U2q { qubits: [q[0], q[1]], matrix: u4_from_seed(seed) },
            }
        },
    )
}

/// Small-matrix form of a gate over its own qubit list (first listed qubit most significant).
fn local_matrix(g: &Gate) -> DMatrix<Complex64> {
    let one = c(1.0, 0.0);
    // identity with the last two basis states swapped
    let perm = |dim: usize, flip: usize| {
        let mut m = DMatrix::identity(dim, dim);
        m[(flip - 1, flip - 1)] = c(0.0, 0.0);
        m[(flip, flip)] = c(0.0, 0.0);
        m[(flip - 1, flip)] = one;
        m[(flip, flip - 1)] = one;
        m
    };
    match g {
        Gate::H(_) => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            DMatrix::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)])
        }
        Gate::Cnot { .. } => perm(4, 3),
        Gate::Toffoli { .. } => perm(8, 7),
        Gate::Cz { .. } => {
            let mut m = DMatrix::identity(4, 4);
            m[(3, 3)] = -one;
            m
        }
        Gate::U1q { matrix, .. } => {
            DMatrix::from_fn(2, 2, |r, col| matrix.matrix()[r][col])
        }
        Gate::U2q { matrix, .. } => {
            DMatrix::from_fn(4, 4, |r, col| matrix.matrix()[r][col])
        }
    }
}

/// Full `2^n × 2^n` operator of a gate, built entry by entry.
pub fn dense_gate(g: &Gate, n: usize) -> DMatrix<Complex64> {
    let qs = g.qubits();
    let m = local_matrix(g);
    let bit = |idx: usize, q: usize| (idx >> (n - 1 - q)) & 1;
    let sub = |idx: usize| qs.iter().fold(0, |acc, &q| (acc << 1) | bit(idx, q));
    let mask: usize = qs.iter().map(|&q| 1usize << (n - 1 - q)).sum();
    let dim = 1usize << n;
    DMatrix::from_fn(dim, dim, |r, col| {
        if r & !mask == col & !mask {
            m[(sub(r), sub(col))]
        } else {
            c(0.0, 0.0)
        }
    })
}

pub fn dense_sequence(gates: &[Gate], n: usize) -> DMatrix<Complex64> {
    let dim = 1usize << n;
    gates
        .iter()
        .fold(DMatrix::identity(dim, dim), |acc, g| dense_gate(g, n) * acc)
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
