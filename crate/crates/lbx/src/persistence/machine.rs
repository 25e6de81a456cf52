//! The cell-probe machine abstraction.
//!
//! A machine is a *stateless program*: all of its state lives in a word
//! memory owned by the harness, and updates/queries touch that memory only
//! through [`MemRead`]/[`MemWrite`]. This is what lets the persistence
//! transforms in this module work for any machine — they interpose on the
//! reads and writes without knowing what the machine means by them.
//!
//! Two concrete machines are provided: a counter ([`CounterMachine`]) as
//! the minimal smoke test, and the marked-ancestor machine
//! ([`MarkedAncestorMachine`]) that the butterfly reduction builds on.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::problems::marked::{check_path, check_tree_params, MaOp, NodePath};

/// Read access to a word memory. Unwritten cells read 0.
pub trait MemRead {
    fn read(&self, addr: u64) -> u64;
}

/// Read/write access to a word memory.
pub trait MemWrite: MemRead {
    fn write(&mut self, addr: u64, value: u64);
}

/// A plain sparse memory: the direct-execution harness.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlatMemory {
    cells: BTreeMap<u64, u64>,
}

impl FlatMemory {
    pub fn new() -> Self {
        FlatMemory::default()
    }

    /// Cells that have ever been written (including with 0).
    pub fn written_cells(&self) -> usize {
        self.cells.len()
    }
}

impl MemRead for FlatMemory {
    fn read(&self, addr: u64) -> u64 {
        self.cells.get(&addr).copied().unwrap_or(0)
    }
}

impl MemWrite for FlatMemory {
    fn write(&mut self, addr: u64, value: u64) {
        self.cells.insert(addr, value);
    }
}

/// A data structure in the cell-probe model: updates and queries are
/// procedures against a harness-owned memory. Machines hold parameters
/// (shape, dimensions) but no mutable state of their own.
pub trait CellMachine {
    type Update: Clone;
    type Query: Clone;
    type Answer: PartialEq + std::fmt::Debug;

    /// Apply one update by reading and writing memory.
    fn apply_update(&self, mem: &mut dyn MemWrite, op: &Self::Update) -> Result<()>;

    /// Answer a query from memory alone (no writes).
    fn answer_query(&self, mem: &dyn MemRead, q: &Self::Query) -> Result<Self::Answer>;
}

/// The reference oracle: replay a prefix of the update sequence into a
/// fresh memory and answer the query there.
pub fn replay_fresh<M: CellMachine>(
    machine: &M,
    updates: &[M::Update],
    q: &M::Query,
) -> Result<M::Answer> {
    let mut mem = FlatMemory::new();
    for u in updates {
        machine.apply_update(&mut mem, u)?;
    }
    machine.answer_query(&mem, q)
}

/// A single counter at address 0. `Update = ()` increments; `Query = ()`
/// reads the count.
#[derive(Debug, Clone, Copy, Default)]
pub struct CounterMachine;

impl CellMachine for CounterMachine {
    type Update = ();
    type Query = ();
    type Answer = u64;

    fn apply_update(&self, mem: &mut dyn MemWrite, _op: &()) -> Result<()> {
        let v = mem.read(0);
        mem.write(0, v + 1);
        Ok(())
    }

    fn answer_query(&self, mem: &dyn MemRead, _q: &()) -> Result<u64> {
        Ok(mem.read(0))
    }
}

/// Marked-ancestor over a complete `b`-ary tree of leaf depth `d`, one
/// mark bit per node in its own cell.
///
/// Node addressing is breadth-first: nodes shallower than depth `k` occupy
/// addresses below `offset(k) = (b^k - 1) / (b - 1)`, and a node's rank
/// within its depth is its path read MSD-first. An update writes one cell;
/// a query reads the `d + 1` cells on the root→leaf path.
#[derive(Debug, Clone, Copy)]
pub struct MarkedAncestorMachine {
    degree: u32,
    depth: usize,
}

impl MarkedAncestorMachine {
    pub fn new(degree: u32, depth: usize) -> Result<Self> {
        check_tree_params(degree, depth)?;
        // The full node count must fit u64.
        let mut nodes: u64 = 0;
        let mut level: u64 = 1;
        for _ in 0..=depth {
            nodes = nodes
                .checked_add(level)
                .ok_or_else(|| Error::overflow("tree node count exceeds u64".to_string()))?;
            level = level
                .checked_mul(degree as u64)
                .ok_or_else(|| Error::overflow("tree node count exceeds u64".to_string()))?;
        }
        Ok(MarkedAncestorMachine { degree, depth })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Total node count `(b^(d+1) - 1) / (b - 1)`.
    pub fn node_count(&self) -> u64 {
        let b = self.degree as u64;
        let mut nodes = 0u64;
        let mut level = 1u64;
        for _ in 0..=self.depth {
            nodes += level;
            level *= b;
        }
        nodes
    }

    /// The cell holding a node's mark bit.
    pub fn node_address(&self, node: &[u32]) -> Result<u64> {
        check_path(self.degree, self.depth, node)?;
        let b = self.degree as u64;
        // offset(k) = number of strictly shallower nodes.
        let mut offset = 0u64;
        let mut level = 1u64;
        for _ in 0..node.len() {
            offset += level;
            level *= b;
        }
        let mut rank = 0u64;
        for &digit in node {
            rank = rank * b + digit as u64;
        }
        Ok(offset + rank)
    }
}

impl CellMachine for MarkedAncestorMachine {
    type Update = MaOp;
    type Query = NodePath;
    type Answer = bool;

    fn apply_update(&self, mem: &mut dyn MemWrite, op: &MaOp) -> Result<()> {
        let addr = self.node_address(op.node())?;
        let bit = matches!(op, MaOp::Mark(_));
        mem.write(addr, u64::from(bit));
        Ok(())
    }

    fn answer_query(&self, mem: &dyn MemRead, leaf: &NodePath) -> Result<bool> {
        if leaf.len() != self.depth {
            return Err(Error::range(format!(
                "leaf path has length {}, expected {}",
                leaf.len(),
                self.depth
            )));
        }
        check_path(self.degree, self.depth, leaf)?;
        for k in 0..=self.depth {
            if mem.read(self.node_address(&leaf[..k])?) != 0 {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
