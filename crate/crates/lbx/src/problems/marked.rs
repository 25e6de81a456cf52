//! The marked-ancestor problem on a complete ordered tree.
//!
//! The tree has degree `b >= 2` and leaf depth `d >= 1`; a node is the digit
//! string of its root path (the root is the empty string, leaves have length
//! `d`, digits lie in `[b]`). Marks form a set over nodes; a query asks
//! whether any node on a root→leaf path — endpoints included — is marked.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A node named by its root path. The root is the empty path.
pub type NodePath = Vec<u32>;

/// One update to a marked tree. The same enum drives the persistence
/// machines and the interval translator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MaOp {
    Mark(NodePath),
    Unmark(NodePath),
}

impl MaOp {
    /// The node the operation touches.
    pub fn node(&self) -> &[u32] {
        match self {
            MaOp::Mark(p) | MaOp::Unmark(p) => p,
        }
    }
}

/// A complete `b`-ary tree of leaf depth `d` with a set of marked nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedTree {
    degree: u32,
    depth: usize,
    marks: BTreeSet<NodePath>,
}

impl MarkedTree {
    /// New unmarked tree. Requires `degree >= 2` and `depth >= 1`, and the
    /// leaf count `degree^depth` must fit an exact `u64`.
    pub fn new(degree: u32, depth: usize) -> Result<Self> {
        check_tree_params(degree, depth)?;
        Ok(MarkedTree { degree, depth, marks: BTreeSet::new() })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Validate a node path: length at most the leaf depth, digits in range.
    pub fn check_node(&self, node: &[u32]) -> Result<()> {
        check_path(self.degree, self.depth, node)
    }

    /// Validate a leaf path (length exactly `depth`).
    pub fn check_leaf(&self, leaf: &[u32]) -> Result<()> {
        if leaf.len() != self.depth {
            return Err(Error::range(format!(
                "leaf path has length {}, expected {}",
                leaf.len(),
                self.depth
            )));
        }
        check_path(self.degree, self.depth, leaf)
    }

    /// Mark a node (set insertion; marking a marked node is a no-op).
    pub fn mark(&mut self, node: &[u32]) -> Result<()> {
        self.check_node(node)?;
        self.marks.insert(node.to_vec());
        Ok(())
    }

    /// Unmark a node (set removal; unmarking an unmarked node is a no-op).
    pub fn unmark(&mut self, node: &[u32]) -> Result<()> {
        self.check_node(node)?;
        self.marks.remove(node);
        Ok(())
    }

    pub fn is_marked(&self, node: &[u32]) -> Result<bool> {
        self.check_node(node)?;
        Ok(self.marks.contains(node))
    }

    /// Apply one update.
    pub fn apply(&mut self, op: &MaOp) -> Result<()> {
        match op {
            MaOp::Mark(p) => self.mark(p),
            MaOp::Unmark(p) => self.unmark(p),
        }
    }

    pub fn marks(&self) -> impl Iterator<Item = &NodePath> {
        self.marks.iter()
    }

    pub fn mark_count(&self) -> usize {
        self.marks.len()
    }
}

/// Whether any prefix of `leaf` (the root included, the leaf included) is
/// marked.
pub fn ma_query(tree: &MarkedTree, leaf: &[u32]) -> Result<bool> {
    tree.check_leaf(leaf)?;
    for k in 0..=leaf.len() {
        if tree.marks.contains(&leaf[..k].to_vec()) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Shared parameter validation for degree/depth pairs.
pub(crate) fn check_tree_params(degree: u32, depth: usize) -> Result<()> {
    if degree < 2 {
        return Err(Error::param(format!("tree degree {degree} < 2")));
    }
    if depth < 1 {
        return Err(Error::param("tree depth must be at least 1".to_string()));
    }
    let depth_u32 = u32::try_from(depth)
        .map_err(|_| Error::overflow(format!("tree depth {depth} out of range")))?;
    (degree as u64)
        .checked_pow(depth_u32)
        .ok_or_else(|| Error::overflow(format!("{degree}^{depth} exceeds u64")))?;
    Ok(())
}

/// Shared path validation (digits in `[degree]`, length at most `depth`).
pub(crate) fn check_path(degree: u32, depth: usize, path: &[u32]) -> Result<()> {
    if path.len() > depth {
        return Err(Error::range(format!(
            "node path of length {} in tree of depth {depth}",
            path.len()
        )));
    }
    for &digit in path {
        if digit >= degree {
            return Err(Error::range(format!(
                "digit {digit} out of range for degree {degree}"
            )));
        }
    }
    Ok(())
}
