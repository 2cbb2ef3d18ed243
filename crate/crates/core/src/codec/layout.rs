use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::error::{Error, Result, MAX_QUBITS};

/// Block structure of the code: `t + 1` code blocks of `k` qubits each, plus
/// the restore block `t + 1` appended during recovery.
///
/// Block `d` position `m` (1-based) lives at global qubit `d·k + m − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeLayout {
    k: usize,
    t: usize,
}

impl CodeLayout {
    /// Rejects `k < 3`, and any `k` whose worst-case simulation
    /// (`k(t+2)` code and restore qubits plus `t` environment qubits) exceeds
    /// the simulator's qubit cap.
    pub fn new(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidLayout { k });
        }
        let t = k / 2;
        let worst = k * (t + 2) + t;
        if worst > MAX_QUBITS {
            return Err(Error::Capacity { requested: worst, max: MAX_QUBITS });
        }
        Ok(CodeLayout { k, t })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Erasure budget `⌊k/2⌋`.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n_code_blocks(&self) -> usize {
        self.t + 1
    }

    /// Index of the block appended by the restoring operation.
    pub fn restore_block(&self) -> usize {
        self.t + 1
    }

    pub fn code_qubits(&self) -> usize {
        self.k * (self.t + 1)
    }

    pub fn qubits_with_restore_block(&self) -> usize {
        self.k * (self.t + 2)
    }

    /// Global index of `position` (1-based) in `block`.
    ///
    /// Panics if either is outside the layout.
    pub fn qubit(&self, block: usize, position: usize) -> usize {
        assert!(block <= self.t + 1, "block {block} outside layout");
        assert!((1..=self.k).contains(&position), "position {position} outside 1..={}", self.k);
        block * self.k + position - 1
    }

    pub fn block_qubits(&self, block: usize) -> Range<usize> {
        assert!(block <= self.t + 1, "block {block} outside layout");
        block * self.k..(block + 1) * self.k
    }
}

/// A flagged erasure at `position` (1..=k) of code block `block` (0..=t).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Erasure {
    pub block: usize,
    pub position: usize,
}

impl fmt::Display for Erasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.block, self.position)
    }
}

/// The set of flagged erasures: distinct code blocks, at most `t` of them.
/// Entries are kept sorted by block.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ErasureFlags {
    entries: Vec<Erasure>,
}

impl ErasureFlags {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn new(layout: &CodeLayout, entries: impl IntoIterator<Item = Erasure>) -> Result<Self> {
        let mut entries: Vec<Erasure> = entries.into_iter().collect();
        for e in &entries {
            if e.block > layout.t() || !(1..=layout.k()).contains(&e.position) {
                return Err(Error::InvalidFlags { block: e.block, position: e.position });
            }
        }
        entries.sort_unstable();
        if let Some(w) = entries.windows(2).find(|w| w[0].block == w[1].block) {
            return Err(Error::DuplicateBlock { block: w[0].block });
        }
        if entries.len() > layout.t() {
            return Err(Error::BudgetExceeded { erasures: entries.len(), budget: layout.t() });
        }
        Ok(ErasureFlags { entries })
    }

    pub fn entries(&self) -> &[Erasure] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_flagged(&self, block: usize) -> bool {
        self.entries.iter().any(|e| e.block == block)
    }
}

impl fmt::Display for ErasureFlags {
    /// `block:position` pairs joined by commas; `-` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("-");
        }
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}
