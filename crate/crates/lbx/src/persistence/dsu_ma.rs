//! Decremental marked ancestor via union-find.
//!
//! The tree starts with *every* node marked and marks are only ever
//! removed. Unmarking a non-root node merges it with its parent, so each
//! union-find class is a connected cluster whose nodes' parent edges are
//! all "cleared"; the root reaches a leaf within one class exactly when no
//! node strictly below the root on that path is still marked. The root
//! itself has no parent edge, so its mark lives in a separate flag.
//!
//! `query(leaf)` answers "does the leaf still have a marked ancestor?" —
//! `true` iff the root flag is set or the leaf's class differs from the
//! root's.

use crate::error::{Error, Result};
use crate::problems::dsu::DisjointSets;
use crate::problems::marked::{check_path, check_tree_params};

/// Union-find-backed decremental marked-ancestor structure on a complete
/// `b`-ary tree of leaf depth `d`.
#[derive(Debug, Clone)]
pub struct DecrementalMarkedAncestor {
    degree: u32,
    depth: usize,
    dsu: DisjointSets,
    marked: Vec<bool>,
}

impl DecrementalMarkedAncestor {
    /// A fully marked tree. Tree node count must fit `usize`.
    pub fn new(degree: u32, depth: usize) -> Result<Self> {
        check_tree_params(degree, depth)?;
        let b = degree as u64;
        let mut count: u64 = 0;
        let mut level: u64 = 1;
        for _ in 0..=depth {
            count = count
                .checked_add(level)
                .ok_or_else(|| Error::overflow("tree node count exceeds u64".to_string()))?;
            level = level
                .checked_mul(b)
                .ok_or_else(|| Error::overflow("tree node count exceeds u64".to_string()))?;
        }
        let count = usize::try_from(count)
            .map_err(|_| Error::overflow("tree node count exceeds usize".to_string()))?;
        Ok(DecrementalMarkedAncestor {
            degree,
            depth,
            dsu: DisjointSets::new(count),
            marked: vec![true; count],
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Breadth-first node numbering (same scheme as the cell-probe
    /// marked-ancestor machine's addresses).
    pub fn node_index(&self, node: &[u32]) -> Result<usize> {
        check_path(self.degree, self.depth, node)?;
        let b = self.degree as u64;
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
        Ok((offset + rank) as usize)
    }

    pub fn is_marked(&self, node: &[u32]) -> Result<bool> {
        Ok(self.marked[self.node_index(node)?])
    }

    /// Remove a node's mark. Unmarking twice is rejected — the decremental
    /// contract gives each node one unmark.
    pub fn unmark(&mut self, node: &[u32]) -> Result<()> {
        let idx = self.node_index(node)?;
        if !self.marked[idx] {
            return Err(Error::op(format!("node {node:?} is already unmarked")));
        }
        self.marked[idx] = false;
        if !node.is_empty() {
            let parent_idx = self.node_index(&node[..node.len() - 1])?;
            self.dsu.union(idx, parent_idx)?;
        }
        Ok(())
    }

    /// Whether the leaf still has a marked ancestor (weak: the root and the
    /// leaf itself count). Takes `&mut self` because lookups compress
    /// union-find paths.
    pub fn query(&mut self, leaf: &[u32]) -> Result<bool> {
        if leaf.len() != self.depth {
            return Err(Error::range(format!(
                "leaf path has length {}, expected {}",
                leaf.len(),
                self.depth
            )));
        }
        let leaf_idx = self.node_index(leaf)?;
        let root_idx = 0;
        Ok(self.marked[root_idx] || self.dsu.find(root_idx)? != self.dsu.find(leaf_idx)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{ma_query, MarkedTree};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// All node paths of the complete tree, shallowest first.
    fn all_nodes(b: u32, d: usize) -> Vec<Vec<u32>> {
        let mut nodes: Vec<Vec<u32>> = vec![Vec::new()];
        let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..d {
            let mut next = Vec::new();
            for path in &frontier {
                for digit in 0..b {
                    let mut child = path.clone();
                    child.push(digit);
                    nodes.push(child.clone());
                    next.push(child);
                }
            }
            frontier = next;
        }
        nodes
    }

    /// Fully marked reference tree.
    fn marked_reference(b: u32, d: usize) -> MarkedTree {
        let mut tree = MarkedTree::new(b, d).unwrap();
        for node in all_nodes(b, d) {
            tree.mark(&node).unwrap();
        }
        tree
    }

    #[test]
    fn matches_reference_through_full_unmark_sequences() {
        for (b, d) in [(2u32, 3usize), (3, 2)] {
            let mut rng = ChaCha8Rng::seed_from_u64(53);
            let leaves: Vec<Vec<u32>> =
                all_nodes(b, d).into_iter().filter(|n| n.len() == d).collect();
            for _ in 0..20 {
                let mut order = all_nodes(b, d);
                order.shuffle(&mut rng);
                let mut fast = DecrementalMarkedAncestor::new(b, d).unwrap();
                let mut reference = marked_reference(b, d);
                for node in order {
                    fast.unmark(&node).unwrap();
                    reference.unmark(&node).unwrap();
                    for leaf in &leaves {
                        assert_eq!(
                            fast.query(leaf).unwrap(),
                            ma_query(&reference, leaf).unwrap(),
                            "after unmarking {node:?}, leaf {leaf:?}"
                        );
                    }
                }
                // Everything unmarked: no leaf has a marked ancestor.
                for leaf in &leaves {
                    assert!(!fast.query(leaf).unwrap());
                }
            }
        }
    }

    #[test]
    fn root_mark_dominates() {
        let mut s = DecrementalMarkedAncestor::new(2, 2).unwrap();
        // Clear the entire left path but keep the root marked.
        s.unmark(&[0]).unwrap();
        s.unmark(&[0, 0]).unwrap();
        assert!(s.query(&[0, 0]).unwrap());
        s.unmark(&[]).unwrap();
        assert!(!s.query(&[0, 0]).unwrap());
        // Right path still blocked below the root.
        assert!(s.query(&[1, 1]).unwrap());
    }

    #[test]
    fn double_unmark_rejected() {
        let mut s = DecrementalMarkedAncestor::new(2, 2).unwrap();
        s.unmark(&[1]).unwrap();
        assert!(s.unmark(&[1]).is_err());
        assert!(s.unmark(&[2]).is_err()); // bad digit
        assert!(s.query(&[1]).is_err()); // not a leaf
    }
}
