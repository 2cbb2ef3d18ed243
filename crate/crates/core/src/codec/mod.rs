//! Gate-level synthesis of the GHZ block code and its restoring operation.
//!
//! Encoding copies the message's basis content into `t` redundant blocks,
//! then turns every block into a `k`-qubit GHZ pair `|w⟩ ± |w̄⟩` (Hadamard on
//! the last position, CNOT fan from it). Restoring appends a fresh block
//! `t + 1`, decodes the undamaged blocks into it, and rotates each flagged
//! block into a canonical GHZ state without touching the erased qubit.
//!
//! Every builder returns gates in application order.

mod layout;

pub use layout::{CodeLayout, Erasure, ErasureFlags};

use crate::error::{Error, Result};
use crate::statevector::{DensityMatrix, Gate, GateSequence, State};

/// CNOT fan-out `C_{i(0), i(d)}` copying the message block into blocks `1..=t`.
pub fn build_u_red(layout: &CodeLayout) -> GateSequence {
    let mut seq = GateSequence::new();
    for d in 1..=layout.t() {
        for i in 1..=layout.k() {
            seq.push(Gate::cnot(layout.qubit(0, i), layout.qubit(d, i)));
        }
    }
    seq
}

/// One Hadamard on position `k` of every code block.
pub fn build_hadamard_layer(layout: &CodeLayout) -> GateSequence {
    (0..layout.n_code_blocks())
        .map(|d| Gate::h(layout.qubit(d, layout.k())))
        .collect()
}

/// Per code block, CNOTs from position `k` onto positions `1..k`.
pub fn build_u_ghz(layout: &CodeLayout) -> GateSequence {
    (0..layout.n_code_blocks()).flat_map(|d| unghz_block(layout, d)).collect()
}

fn unghz_block(layout: &CodeLayout, d: usize) -> impl Iterator<Item = Gate> + '_ {
    let k = layout.k();
    (1..k).map(move |i| Gate::cnot(layout.qubit(d, k), layout.qubit(d, i)))
}

/// Full encoder: redundancy fan-out, Hadamard layer, GHZ fan.
pub fn build_u_enc(layout: &CodeLayout) -> GateSequence {
    let mut seq = build_u_red(layout);
    seq.append(build_hadamard_layer(layout));
    seq.append(build_u_ghz(layout));
    seq
}

/// Partial decoder over the undamaged blocks (those not in `flags`).
///
/// Each undamaged block is taken out of the GHZ basis (CNOT fan from
/// position `k`, then Hadamard on `k`), leaving `|i⟩` for message word `i`.
/// The lowest undamaged block is copied into the restore block, and every
/// undamaged block is then cleared to `|0^k⟩` by CNOTs from the restore block.
///
/// Only one block is copied: the undamaged blocks all carry the same word,
/// so copying an even number of them would cancel in the restore block.
pub fn build_u_dec(layout: &CodeLayout, flags: &ErasureFlags) -> GateSequence {
    let k = layout.k();
    let rb = layout.restore_block();
    let undamaged: alloc::vec::Vec<usize> =
        (0..layout.n_code_blocks()).filter(|&d| !flags.is_flagged(d)).collect();
    let mut seq = GateSequence::new();
    for (n, &d) in undamaged.iter().enumerate() {
        seq.extend(unghz_block(layout, d));
        seq.push(Gate::h(layout.qubit(d, k)));
        if n == 0 {
            seq.extend((1..=k).map(|i| Gate::cnot(layout.qubit(d, i), layout.qubit(rb, i))));
        }
    }
    for &d in &undamaged {
        seq.extend((1..=k).map(|i| Gate::cnot(layout.qubit(rb, i), layout.qubit(d, i))));
    }
    seq
}

/// Position inside a flagged block that carries the phase correction:
/// the largest surviving position other than `k`.
pub fn phase_position(k: usize, erased: usize) -> usize {
    if erased == k - 1 {
        k - 2
    } else {
        k - 1
    }
}

/// Recovery operator for an erasure at `position` of flagged block `block`.
/// Must run after [`build_u_dec`], which leaves the message word in the
/// restore block.
///
/// Turns the block into a canonical GHZ state independent of the message.
/// No gate addresses the erased qubit.
///
/// * `position == k`: CNOTs `C_{i(t+1), i(b)}` for `i < k`, then a CZ from
///   `k(t+1)` onto `(k−1)(b)`.
/// * otherwise, with `a = position` and `r` = [`phase_position`]: CNOT fan
///   from `a(t+1)` onto every surviving position of the block, CNOTs
///   `C_{i(t+1), i(b)}` for surviving `i < k`, then `T · CZ · T` with
///   `T = Toffoli(a(t+1), k(t+1); r(b))` and the CZ from `k(t+1)` onto `r(b)`.
///
/// The fan control is the restore-block copy of the erased position, so
/// the surviving qubits end up matching the erased one.
pub fn build_u_rec(layout: &CodeLayout, position: usize, block: usize) -> Result<GateSequence> {
    let k = layout.k();
    if block > layout.t() || !(1..=k).contains(&position) {
        return Err(Error::InvalidFlags { block, position });
    }
    let rb = layout.restore_block();
    let q = |blk, pos| layout.qubit(blk, pos);
    let mut seq = GateSequence::new();
    if position == k {
        seq.extend((1..k).map(|i| Gate::cnot(q(rb, i), q(block, i))));
        seq.push(Gate::cz(q(rb, k), q(block, k - 1)));
        return Ok(seq);
    }
    let a = position;
    let r = phase_position(k, a);
    seq.extend((1..=k).filter(|&i| i != a).map(|i| Gate::cnot(q(rb, a), q(block, i))));
    seq.extend((1..k).filter(|&i| i != a).map(|i| Gate::cnot(q(rb, i), q(block, i))));
    let toffoli = Gate::toffoli(q(rb, a), q(rb, k), q(block, r));
    seq.push(toffoli.clone());
    seq.push(Gate::cz(q(rb, k), q(block, r)));
    seq.push(toffoli);
    Ok(seq)
}

/// Restoring operation: [`build_u_dec`] followed by one [`build_u_rec`] per
/// flagged block, ascending by block. Acts on `k(t+2)` qubits (plus any
/// environment qubits beyond them).
pub fn build_restore(layout: &CodeLayout, flags: &ErasureFlags) -> Result<GateSequence> {
    let mut seq = build_u_dec(layout, flags);
    for e in flags.entries() {
        seq.append(build_u_rec(layout, e.position, e.block)?);
    }
    Ok(seq)
}

/// Encodes a `k`-qubit message into `k(t+1)` qubits.
pub fn encode(psi: &State, layout: &CodeLayout) -> Result<State> {
    if psi.n_qubits() != layout.k() {
        return Err(Error::DimensionMismatch { expected: layout.k(), found: psi.n_qubits() });
    }
    let padded = match layout.t() * layout.k() {
        0 => psi.clone(),
        n => psi.tensor(&State::zero(n)?)?,
    };
    padded.evolved(&build_u_enc(layout))
}

/// Appends the restore block at `k(t+1)..k(t+2)`, ahead of any environment
/// qubits already present, and applies the restoring operation.
pub fn restore(corrupted: &State, layout: &CodeLayout, flags: &ErasureFlags) -> Result<State> {
    if corrupted.n_qubits() < layout.code_qubits() {
        return Err(Error::DimensionMismatch {
            expected: layout.code_qubits(),
            found: corrupted.n_qubits(),
        });
    }
    let seq = build_restore(layout, flags)?;
    let widened = corrupted.insert_zero_qubits(layout.code_qubits(), layout.k())?;
    widened.evolved(&seq)
}

/// Reduced state of the restore block.
pub fn extract_message(restored: &State, layout: &CodeLayout) -> Result<DensityMatrix> {
    if restored.n_qubits() < layout.qubits_with_restore_block() {
        return Err(Error::DimensionMismatch {
            expected: layout.qubits_with_restore_block(),
            found: restored.n_qubits(),
        });
    }
    let keep: alloc::vec::Vec<usize> = layout.block_qubits(layout.restore_block()).collect();
    restored.reduced_density_matrix(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn cx(layout: &CodeLayout, cb: usize, cp: usize, tb: usize, tp: usize) -> Gate {
        Gate::cnot(layout.qubit(cb, cp), layout.qubit(tb, tp))
    }

    #[test]
    fn u_red_k3() {
        let l = CodeLayout::new(3).unwrap();
        let expect: Vec<Gate> = (1..=3).map(|i| cx(&l, 0, i, 1, i)).collect();
        assert_eq!(build_u_red(&l).gates(), expect.as_slice());
    }

    #[test]
    fn hadamard_layer_k3() {
        let l = CodeLayout::new(3).unwrap();
        assert_eq!(build_hadamard_layer(&l).gates(), &[Gate::h(2), Gate::h(5)]);
    }

    #[test]
    fn u_ghz_k3_gate_set() {
        let l = CodeLayout::new(3).unwrap();
        let seq = build_u_ghz(&l);
        let expect = [cx(&l, 0, 3, 0, 1), cx(&l, 0, 3, 0, 2), cx(&l, 1, 3, 1, 1), cx(&l, 1, 3, 1, 2)];
        assert_eq!(seq.len(), 4);
        for g in &expect {
            assert!(seq.gates().contains(g), "missing {g}");
        }
    }

    #[test]
    fn u_enc_counts() {
        for k in 3..=5 {
            let l = CodeLayout::new(k).unwrap();
            let t = l.t();
            assert_eq!(build_u_enc(&l).len(), k * t + (t + 1) + (k - 1) * (t + 1));
        }
        let l5 = CodeLayout::new(5).unwrap();
        assert_eq!(build_u_enc(&l5).len(), 25);
        assert_eq!(build_u_enc(&l5).gates()[0], cx(&l5, 0, 1, 1, 1));
    }

    #[test]
    fn u_dec_k5_single_undamaged_block() {
        // B = {0, 1}: the operator written out for block 2 and restore block 3
        let l = CodeLayout::new(5).unwrap();
        let e = |block, position| Erasure { block, position };
        let flags = ErasureFlags::new(&l, [e(0, 1), e(1, 5)]).unwrap();
        let mut expect: Vec<Gate> = (1..=4).map(|i| cx(&l, 2, 5, 2, i)).collect();
        expect.push(Gate::h(l.qubit(2, 5)));
        expect.extend((1..=5).map(|i| cx(&l, 2, i, 3, i)));
        expect.extend((1..=5).map(|i| cx(&l, 3, i, 2, i)));
        assert_eq!(build_u_dec(&l, &flags).gates(), expect.as_slice());
        assert_eq!(expect.len(), 15);
    }

    #[test]
    fn u_rec_k5_position_1_block_0() {
        let l = CodeLayout::new(5).unwrap();
        let mut expect: Vec<Gate> = (2..=5).map(|i| cx(&l, 3, 1, 0, i)).collect();
        expect.extend((2..=4).map(|i| cx(&l, 3, i, 0, i)));
        let t = Gate::toffoli(l.qubit(3, 1), l.qubit(3, 5), l.qubit(0, 4));
        expect.push(t.clone());
        expect.push(Gate::cz(l.qubit(3, 5), l.qubit(0, 4)));
        expect.push(t);
        assert_eq!(build_u_rec(&l, 1, 0).unwrap().gates(), expect.as_slice());
    }

    #[test]
    fn u_rec_k5_position_5_block_1() {
        let l = CodeLayout::new(5).unwrap();
        let mut expect: Vec<Gate> = (1..=4).map(|i| cx(&l, 3, i, 1, i)).collect();
        expect.push(Gate::cz(l.qubit(3, 5), l.qubit(1, 4)));
        assert_eq!(build_u_rec(&l, 5, 1).unwrap().gates(), expect.as_slice());
    }

    #[test]
    fn u_rec_k3_position_2() {
        let l = CodeLayout::new(3).unwrap();
        let seq = build_u_rec(&l, 2, 0).unwrap();
        let t = Gate::toffoli(l.qubit(2, 2), l.qubit(2, 3), l.qubit(0, 1));
        assert_eq!(seq.gates()[seq.len() - 1], t);
        assert_eq!(seq.gates()[seq.len() - 3], t);
    }

    #[test]
    fn u_rec_never_touches_erased_qubit() {
        for k in 3..=5 {
            let l = CodeLayout::new(k).unwrap();
            for b in 0..=l.t() {
                for a in 1..=k {
                    let erased = l.qubit(b, a);
                    let seq = build_u_rec(&l, a, b).unwrap();
                    assert!(seq.iter().all(|g| !g.touches(erased)), "k={k} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn u_rec_rejects_out_of_range() {
        let l = CodeLayout::new(3).unwrap();
        assert_eq!(build_u_rec(&l, 0, 0), Err(Error::InvalidFlags { block: 0, position: 0 }));
        assert_eq!(build_u_rec(&l, 1, 2), Err(Error::InvalidFlags { block: 2, position: 1 }));
    }

    #[test]
    fn phase_position_selection() {
        assert_eq!(phase_position(5, 1), 4);
        assert_eq!(phase_position(5, 4), 3);
        assert_eq!(phase_position(5, 5), 4);
        assert_eq!(phase_position(3, 2), 1);
    }

    #[test]
    fn encode_checks_dimension() {
        let l = CodeLayout::new(3).unwrap();
        assert!(matches!(
            encode(&State::zero(4).unwrap(), &l),
            Err(Error::DimensionMismatch { expected: 3, found: 4 })
        ));
        assert!(matches!(
            restore(&State::zero(5).unwrap(), &l, &ErasureFlags::none()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            extract_message(&State::zero(6).unwrap(), &l),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn zero_erasure_restore_k3() {
        let l = CodeLayout::new(3).unwrap();
        for i in 0..8 {
            let psi = State::basis(3, i).unwrap();
            let out = restore(&encode(&psi, &l).unwrap(), &l, &ErasureFlags::none()).unwrap();
            // blocks 0 and 1 cleared, message in block 2
            assert!(out.max_abs_diff(&State::basis(9, i).unwrap()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn all_zero_fixed_points() {
        let l = CodeLayout::new(4).unwrap();
        let z = State::zero(l.code_qubits()).unwrap();
        assert_eq!(z.clone().evolved(&build_u_red(&l)).unwrap(), z);
        assert_eq!(z.clone().evolved(&build_u_ghz(&l)).unwrap(), z);
    }
}
