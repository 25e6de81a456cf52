//! Union-find over a fixed element range `[n]`, with path compression and
//! union by rank. Used directly and as the engine behind the decremental
//! marked-ancestor structure.

use crate::error::{Error, Result};

/// Disjoint sets over elements `0..n`.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
    sets: usize,
}

impl DisjointSets {
    /// `n` singleton sets.
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
            sets: n,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Number of distinct sets.
    pub fn set_count(&self) -> usize {
        self.sets
    }

    fn check(&self, a: usize) -> Result<()> {
        if a >= self.parent.len() {
            return Err(Error::range(format!(
                "element {a} out of range for {} elements",
                self.parent.len()
            )));
        }
        Ok(())
    }

    /// Representative of `a`'s set. Compresses the path it walks.
    pub fn find(&mut self, a: usize) -> Result<usize> {
        self.check(a)?;
        let mut root = a;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = a;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        Ok(root)
    }

    /// Merge the sets of `a` and `b`. Returns whether two distinct sets
    /// were actually merged.
    pub fn union(&mut self, a: usize, b: usize) -> Result<bool> {
        let ra = self.find(a)?;
        let rb = self.find(b)?;
        if ra == rb {
            return Ok(false);
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi;
        if self.rank[ra] == self.rank[rb] {
            self.rank[hi] += 1;
        }
        self.sets -= 1;
        Ok(true)
    }

    /// Whether `a` and `b` share a set.
    pub fn same(&mut self, a: usize, b: usize) -> Result<bool> {
        Ok(self.find(a)? == self.find(b)?)
    }
}
