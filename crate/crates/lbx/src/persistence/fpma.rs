//! Butterfly reachability via a fully persistent marked-ancestor
//! structure.
//!
//! Each butterfly edge owns one *slot*: a (version node, tree node) pair in
//! a complete `b`-ary version tree of depth `d` over a complete `b`-ary
//! marked-ancestor tree of leaf depth `d`. The bijection sends the edge at
//! level `j` with tail `u` writing `z` to
//!
//! * version path `(u_0, …, u_{j-1}, z)` — depth `j + 1`;
//! * tree path `(u_{d-1}, …, u_j)` — the reversed tail suffix, depth
//!   `d - j`.
//!
//! Deleting an edge marks its slot's tree node inside its slot's version.
//! For a query pair, read the version leaf named by the sink's digits and
//! the tree leaf named by the *reversed* source digits: the pair's path
//! uses a deleted edge exactly when that leaf has a marked ancestor in that
//! version, because prefix containment on the two paths reproduces the cut
//! condition on both sides. So: reachable ⟺ no marked ancestor.

use std::collections::BTreeMap;

use crate::butterfly::{ButterflyShape, EdgeRef, Subgraph};
use crate::error::{Error, Result};
use crate::persistence::full::{record_full, FullStore, VersionTree};
use crate::persistence::machine::MarkedAncestorMachine;
use crate::problems::marked::{check_path, MaOp, NodePath};

/// The slot of one edge: a version-tree node and a marked-ancestor node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlotRef {
    pub version_path: NodePath,
    pub ma_path: NodePath,
}

/// The slot owned by an edge. Bijective; see [`slot_to_edge`].
pub fn edge_to_slot(shape: &ButterflyShape, e: &EdgeRef) -> Result<SlotRef> {
    shape.edge_index(e)?; // validates
    let j = e.level();
    let d = shape.depth();
    let mut version_path = Vec::with_capacity(j + 1);
    version_path.extend_from_slice(&e.tail()[..j]);
    version_path.push(e.new_digit());
    let ma_path: NodePath = e.tail()[j..d].iter().rev().copied().collect();
    Ok(SlotRef { version_path, ma_path })
}

/// Inverse of [`edge_to_slot`].
pub fn slot_to_edge(shape: &ButterflyShape, slot: &SlotRef) -> Result<EdgeRef> {
    let d = shape.depth();
    if slot.version_path.is_empty() {
        return Err(Error::range("slot version path must be non-empty".to_string()));
    }
    if slot.version_path.len() + slot.ma_path.len() != d + 1 {
        return Err(Error::range(format!(
            "slot depths {} + {} != d + 1 = {}",
            slot.version_path.len(),
            slot.ma_path.len(),
            d + 1
        )));
    }
    check_path(shape.degree(), d, &slot.version_path)?;
    check_path(shape.degree(), d, &slot.ma_path)?;
    let j = slot.version_path.len() - 1;
    let z = slot.version_path[j];
    let mut tail = Vec::with_capacity(d);
    tail.extend_from_slice(&slot.version_path[..j]);
    tail.extend(slot.ma_path.iter().rev());
    shape.edge(j, tail, z)
}

/// The input the reduction hands to full persistence: a complete `b`-ary
/// version tree of depth `d` whose update batches mark the slots of the
/// subgraph's deleted edges.
#[derive(Debug, Clone)]
pub struct FpmaInstance {
    shape: ButterflyShape,
    tree: VersionTree<MaOp>,
}

impl FpmaInstance {
    pub fn shape(&self) -> &ButterflyShape {
        &self.shape
    }

    pub fn tree(&self) -> &VersionTree<MaOp> {
        &self.tree
    }

    /// Version-tree node id of a version path (breadth-first ids: all
    /// shallower versions first, then rank by path digits MSD-first).
    pub fn version_id(&self, path: &[u32]) -> Result<usize> {
        version_id(&self.shape, path)
    }
}

fn version_id(shape: &ButterflyShape, path: &[u32]) -> Result<usize> {
    check_path(shape.degree(), shape.depth(), path)?;
    let b = shape.degree() as u64;
    let mut offset = 0u64;
    let mut level = 1u64;
    for _ in 0..path.len() {
        offset += level;
        level *= b;
    }
    let mut rank = 0u64;
    for &digit in path {
        rank = rank * b + digit as u64;
    }
    Ok((offset + rank) as usize)
}

/// Build the version tree for a subgraph. Deterministic: versions are
/// created breadth-first, and each version's updates mark deleted-edge
/// slots in the subgraph's missing-edge order. The total update count
/// equals the number of deleted edges.
pub fn build_fpma_input(sub: &Subgraph) -> Result<FpmaInstance> {
    let shape = *sub.shape();
    // Group mark ops by version path.
    let mut batches: BTreeMap<NodePath, Vec<MaOp>> = BTreeMap::new();
    for e in sub.missing_edges() {
        let slot = edge_to_slot(&shape, e)?;
        batches.entry(slot.version_path).or_default().push(MaOp::Mark(slot.ma_path));
    }

    let mut tree: VersionTree<MaOp> = VersionTree::new(Vec::new());
    // Breadth-first: parents get dense ids before children, matching
    // `version_id`.
    let mut frontier: Vec<(usize, NodePath)> = vec![(0, Vec::new())];
    for _ in 0..shape.depth() {
        let mut next = Vec::new();
        for (id, path) in frontier {
            for digit in 0..shape.degree() {
                let mut child_path = path.clone();
                child_path.push(digit);
                let updates = batches.remove(&child_path).unwrap_or_default();
                let child_id = tree.add_child(id, updates)?;
                debug_assert_eq!(child_id, version_id(&shape, &child_path)?);
                next.push((child_id, child_path));
            }
        }
        frontier = next;
    }
    debug_assert!(batches.is_empty(), "every slot version exists in the tree");
    Ok(FpmaInstance { shape, tree })
}

/// A recorded persistent store answering reachability queries for one
/// subgraph.
#[derive(Debug, Clone)]
pub struct FpmaStore {
    shape: ButterflyShape,
    store: FullStore<MarkedAncestorMachine>,
}

impl FpmaStore {
    /// Build the version tree for `sub` and record it.
    pub fn new(sub: &Subgraph) -> Result<Self> {
        let instance = build_fpma_input(sub)?;
        let machine = MarkedAncestorMachine::new(instance.shape.degree(), instance.shape.depth())?;
        let store = record_full(machine, &instance.tree)?;
        Ok(FpmaStore { shape: instance.shape, store })
    }

    pub fn shape(&self) -> &ButterflyShape {
        &self.shape
    }

    /// Reachability through the persistent store: query the sink's version
    /// leaf at the reversed source digits; reachable iff no marked
    /// ancestor.
    pub fn reachable(&self, source: &[u32], sink: &[u32]) -> Result<bool> {
        self.shape.check_vector(source)?;
        self.shape.check_vector(sink)?;
        let version = version_id(&self.shape, sink)?;
        let leaf: NodePath = source.iter().rev().copied().collect();
        Ok(!self.store.query(&leaf, version)?)
    }
}

/// One-shot convenience: build the store and ask a single pair.
pub fn reach_via_fpma(sub: &Subgraph, source: &[u32], sink: &[u32]) -> Result<bool> {
    FpmaStore::new(sub)?.reachable(source, sink)
}
