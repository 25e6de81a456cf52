//! Lopsided set-disjointness instances, at the three structural levels the
//! rebalancing chain moves through.
//!
//! * [`LsdInstance`] — the raw game: Alice holds `S`, Bob holds `T`, both
//!   subsets of a universe of `N` blocks of `B` values; the answer is
//!   whether they intersect.
//! * [`BlockedLsdInstance`] — every block holds exactly one `S` element.
//! * [`TwoBlockedLsdInstance`] — blocks are grouped `B` at a time into
//!   super-blocks viewed as `B × B` matrices (columns are blocks, rows are
//!   values), and `S` forms a permutation matrix in every super-block.
//!
//! All three share one file format through the canonical flat embedding
//! (see [`LsdInstance::to_text`]): a header line `N B`, then `S:` and `T:`
//! lines of integer element ids, where element `e` sits in block `e / B`
//! with value `e % B`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A raw lopsided set-disjointness instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LsdInstance {
    n_blocks: usize,
    block_size: usize,
    s: BTreeSet<u64>,
    t: BTreeSet<u64>,
}

impl LsdInstance {
    /// Build and validate: `N >= 1`, `B >= 1`, `N * B` fits `u64`, all
    /// elements below `N * B`.
    pub fn new(
        n_blocks: usize,
        block_size: usize,
        s: impl IntoIterator<Item = u64>,
        t: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        if n_blocks == 0 || block_size == 0 {
            return Err(Error::param(format!(
                "instance needs N >= 1 and B >= 1, got N = {n_blocks}, B = {block_size}"
            )));
        }
        let universe = (n_blocks as u64)
            .checked_mul(block_size as u64)
            .ok_or_else(|| Error::overflow("universe size exceeds u64".to_string()))?;
        let s: BTreeSet<u64> = s.into_iter().collect();
        let t: BTreeSet<u64> = t.into_iter().collect();
        for &e in s.iter().chain(t.iter()) {
            if e >= universe {
                return Err(Error::range(format!(
                    "element {e} out of range for universe {universe}"
                )));
            }
        }
        Ok(LsdInstance { n_blocks, block_size, s, t })
    }

    pub fn n_blocks(&self) -> usize {
        self.n_blocks
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn universe(&self) -> u64 {
        self.n_blocks as u64 * self.block_size as u64
    }

    pub fn s(&self) -> &BTreeSet<u64> {
        &self.s
    }

    pub fn t(&self) -> &BTreeSet<u64> {
        &self.t
    }

    /// Block of an element (0-based).
    pub fn block_of(&self, e: u64) -> usize {
        (e / self.block_size as u64) as usize
    }

    /// Value of an element within its block.
    pub fn value_of(&self, e: u64) -> u32 {
        (e % self.block_size as u64) as u32
    }

    /// The game's answer: do `S` and `T` share an element?
    pub fn intersects(&self) -> bool {
        !self.s.is_disjoint(&self.t)
    }

    /// Per-block `S` counts `c_i = |S ∩ block i|`.
    pub fn s_block_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n_blocks];
        for &e in &self.s {
            counts[self.block_of(e)] += 1;
        }
        counts
    }

    /// Serialize:
    ///
    /// ```text
    /// N B
    /// S: e1 e2 ...
    /// T: e1 e2 ...
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n_blocks, self.block_size).expect("string write");
        out.push_str("S:");
        for &e in &self.s {
            write!(out, " {e}").expect("string write");
        }
        out.push('\n');
        out.push_str("T:");
        for &e in &self.t {
            write!(out, " {e}").expect("string write");
        }
        out.push('\n');
        out
    }

    /// Parse the [`Self::to_text`] form. Blank lines and `#` comments are
    /// skipped; the `S:`/`T:` lines may come in either order but both must
    /// appear exactly once.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("missing instance header".to_string()))?;
        let mut fields = header.split_whitespace();
        let (n_str, b_str) = match (fields.next(), fields.next(), fields.next()) {
            (Some(n), Some(b), None) => (n, b),
            _ => return Err(Error::parse(format!("header {header:?}: expected \"N B\""))),
        };
        let n_blocks: usize = n_str
            .parse()
            .map_err(|_| Error::parse(format!("header {header:?}: bad N {n_str:?}")))?;
        let block_size: usize = b_str
            .parse()
            .map_err(|_| Error::parse(format!("header {header:?}: bad B {b_str:?}")))?;

        let mut s: Option<Vec<u64>> = None;
        let mut t: Option<Vec<u64>> = None;
        for line in lines {
            let (label, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(format!("line {line:?}: expected \"S:\" or \"T:\"")))?;
            let elements: Vec<u64> = rest
                .split_whitespace()
                .map(|f| {
                    f.parse::<u64>()
                        .map_err(|_| Error::parse(format!("line {line:?}: bad element {f:?}")))
                })
                .collect::<Result<_>>()?;
            let slot = match label.trim() {
                "S" => &mut s,
                "T" => &mut t,
                other => {
                    return Err(Error::parse(format!("line {line:?}: unknown label {other:?}")))
                }
            };
            if slot.replace(elements).is_some() {
                return Err(Error::parse(format!("duplicate {label:?} line")));
            }
        }
        let s = s.ok_or_else(|| Error::parse("missing S: line".to_string()))?;
        let t = t.ok_or_else(|| Error::parse("missing T: line".to_string()))?;
        LsdInstance::new(n_blocks, block_size, s, t)
    }
}

/// An instance where every block holds exactly one element of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockedLsdInstance {
    block_size: usize,
    /// `s[x]` is Alice's value in block `x`; the length is the block count.
    s: Vec<u32>,
    /// Bob's `(block, value)` pairs.
    t: BTreeSet<(u32, u32)>,
}

impl BlockedLsdInstance {
    pub fn new(
        block_size: usize,
        s: Vec<u32>,
        t: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        if block_size == 0 || s.is_empty() {
            return Err(Error::param(
                "blocked instance needs B >= 1 and at least one block".to_string(),
            ));
        }
        let n_blocks = s.len();
        if u32::try_from(n_blocks).is_err() || u32::try_from(block_size).is_err() {
            return Err(Error::overflow("block coordinates exceed u32".to_string()));
        }
        (n_blocks as u64)
            .checked_mul(block_size as u64)
            .ok_or_else(|| Error::overflow("universe size exceeds u64".to_string()))?;
        for (x, &v) in s.iter().enumerate() {
            if v as usize >= block_size {
                return Err(Error::range(format!(
                    "S value {v} in block {x} out of range for B = {block_size}"
                )));
            }
        }
        let t: BTreeSet<(u32, u32)> = t.into_iter().collect();
        for &(x, v) in &t {
            if x as usize >= n_blocks || v as usize >= block_size {
                return Err(Error::range(format!(
                    "T pair ({x}, {v}) out of range for N = {n_blocks}, B = {block_size}"
                )));
            }
        }
        Ok(BlockedLsdInstance { block_size, s, t })
    }

    pub fn n_blocks(&self) -> usize {
        self.s.len()
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    pub fn t(&self) -> &BTreeSet<(u32, u32)> {
        &self.t
    }

    pub fn intersects(&self) -> bool {
        self.s.iter().enumerate().any(|(x, &v)| self.t.contains(&(x as u32, v)))
    }

    /// Canonical flat embedding: `(x, v) ↦ x * B + v`.
    pub fn to_flat(&self) -> LsdInstance {
        let b = self.block_size as u64;
        let s = self.s.iter().enumerate().map(|(x, &v)| x as u64 * b + v as u64);
        let t = self.t.iter().map(|&(x, v)| x as u64 * b + v as u64);
        LsdInstance::new(self.n_blocks(), self.block_size, s, t)
            .expect("validated fields embed cleanly")
    }

    /// Inverse of [`Self::to_flat`]: requires exactly one `S` element per
    /// block.
    pub fn from_flat(inst: &LsdInstance) -> Result<Self> {
        let mut s: Vec<Option<u32>> = vec![None; inst.n_blocks()];
        for &e in inst.s() {
            let x = inst.block_of(e);
            if s[x].replace(inst.value_of(e)).is_some() {
                return Err(Error::param(format!(
                    "block {x} holds more than one S element"
                )));
            }
        }
        let s: Vec<u32> = s
            .into_iter()
            .enumerate()
            .map(|(x, v)| v.ok_or_else(|| Error::param(format!("block {x} holds no S element"))))
            .collect::<Result<_>>()?;
        let t = inst.t().iter().map(|&e| (inst.block_of(e) as u32, inst.value_of(e)));
        BlockedLsdInstance::new(inst.block_size(), s, t)
    }
}

/// An instance whose blocks are grouped into `B`-block super-blocks, with
/// `S` forming a permutation matrix in each: element `(x, y, z)` means
/// super-block `x`, row (value) `y`, column (block within the group) `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoBlockedLsdInstance {
    super_blocks: usize,
    block_size: usize,
    s: BTreeSet<(u32, u32, u32)>,
    t: BTreeSet<(u32, u32, u32)>,
}

impl TwoBlockedLsdInstance {
    /// Build and validate. `S` must contain, per super-block, exactly one
    /// entry in every row and every column.
    pub fn new(
        super_blocks: usize,
        block_size: usize,
        s: impl IntoIterator<Item = (u32, u32, u32)>,
        t: impl IntoIterator<Item = (u32, u32, u32)>,
    ) -> Result<Self> {
        if super_blocks == 0 || block_size == 0 {
            return Err(Error::param(
                "two-blocked instance needs at least one super-block and B >= 1".to_string(),
            ));
        }
        if u32::try_from(super_blocks).is_err() || u32::try_from(block_size).is_err() {
            return Err(Error::overflow("super-block coordinates exceed u32".to_string()));
        }
        (super_blocks as u64)
            .checked_mul(block_size as u64)
            .and_then(|n| n.checked_mul(block_size as u64))
            .ok_or_else(|| Error::overflow("universe size exceeds u64".to_string()))?;
        let s: BTreeSet<(u32, u32, u32)> = s.into_iter().collect();
        let t: BTreeSet<(u32, u32, u32)> = t.into_iter().collect();
        for &(x, y, z) in s.iter().chain(t.iter()) {
            if x as usize >= super_blocks
                || y as usize >= block_size
                || z as usize >= block_size
            {
                return Err(Error::range(format!(
                    "triple ({x}, {y}, {z}) out of range for {super_blocks} super-blocks of B = {block_size}"
                )));
            }
        }
        // Permutation check per super-block.
        for x in 0..super_blocks as u32 {
            let mut rows = vec![false; block_size];
            let mut cols = vec![false; block_size];
            let mut entries = 0usize;
            for &(sx, y, z) in s.range((x, 0, 0)..=(x, u32::MAX, u32::MAX)) {
                debug_assert_eq!(sx, x);
                if std::mem::replace(&mut rows[y as usize], true) {
                    return Err(Error::param(format!(
                        "super-block {x}: row {y} appears twice in S"
                    )));
                }
                if std::mem::replace(&mut cols[z as usize], true) {
                    return Err(Error::param(format!(
                        "super-block {x}: column {z} appears twice in S"
                    )));
                }
                entries += 1;
            }
            if entries != block_size {
                return Err(Error::param(format!(
                    "super-block {x}: S has {entries} entries, expected {block_size}"
                )));
            }
        }
        Ok(TwoBlockedLsdInstance { super_blocks, block_size, s, t })
    }

    pub fn super_blocks(&self) -> usize {
        self.super_blocks
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// Total block count `N = super_blocks * B`.
    pub fn n_blocks(&self) -> usize {
        self.super_blocks * self.block_size
    }

    pub fn s(&self) -> &BTreeSet<(u32, u32, u32)> {
        &self.s
    }

    pub fn t(&self) -> &BTreeSet<(u32, u32, u32)> {
        &self.t
    }

    pub fn intersects(&self) -> bool {
        !self.s.is_disjoint(&self.t)
    }

    /// The permutation of super-block `x` as a row → column map.
    pub fn s_permutation(&self, x: usize) -> Result<Vec<u32>> {
        if x >= self.super_blocks {
            return Err(Error::range(format!(
                "super-block {x} out of range for {}",
                self.super_blocks
            )));
        }
        let mut perm = vec![0u32; self.block_size];
        for &(_, y, z) in self.s.range((x as u32, 0, 0)..=(x as u32, u32::MAX, u32::MAX)) {
            perm[y as usize] = z;
        }
        Ok(perm)
    }

    /// Canonical flat embedding: `(x, y, z) ↦ x * B^2 + y * B + z`, i.e.
    /// flat block `x * B + y` (super-block, row) with value `z`.
    pub fn to_flat(&self) -> LsdInstance {
        let b = self.block_size as u64;
        let embed = |&(x, y, z): &(u32, u32, u32)| x as u64 * b * b + y as u64 * b + z as u64;
        LsdInstance::new(
            self.n_blocks(),
            self.block_size,
            self.s.iter().map(embed),
            self.t.iter().map(embed),
        )
        .expect("validated fields embed cleanly")
    }

    /// Inverse of [`Self::to_flat`]: the flat block count must be divisible
    /// by `B`, and the decoded `S` must satisfy the permutation invariant.
    pub fn from_flat(inst: &LsdInstance) -> Result<Self> {
        if inst.n_blocks() % inst.block_size() != 0 {
            return Err(Error::param(format!(
                "flat block count {} not divisible by B = {}",
                inst.n_blocks(),
                inst.block_size()
            )));
        }
        let super_blocks = inst.n_blocks() / inst.block_size();
        let b = inst.block_size() as u64;
        let split = |e: u64| ((e / (b * b)) as u32, ((e / b) % b) as u32, (e % b) as u32);
        TwoBlockedLsdInstance::new(
            super_blocks,
            inst.block_size(),
            inst.s().iter().map(|&e| split(e)),
            inst.t().iter().map(|&e| split(e)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lsd_basics() {
        let inst = LsdInstance::new(2, 2, [0, 1], [1, 2]).unwrap();
        assert_eq!(inst.universe(), 4);
        assert!(inst.intersects());
        assert_eq!(inst.s_block_counts(), vec![2, 0]);
        assert_eq!(inst.block_of(2), 1);
        assert_eq!(inst.value_of(3), 1);
        assert!(LsdInstance::new(2, 2, [4], []).is_err());
        assert!(LsdInstance::new(0, 2, [0u64; 0], []).is_err());

        let disjoint = LsdInstance::new(2, 2, [0, 3], [1, 2]).unwrap();
        assert!(!disjoint.intersects());
    }

    #[test]
    fn lsd_text_roundtrip() {
        let inst = LsdInstance::new(2, 2, [0, 1], [1, 2]).unwrap();
        let text = inst.to_text();
        assert_eq!(text, "2 2\nS: 0 1\nT: 1 2\n");
        assert_eq!(LsdInstance::from_text(&text).unwrap(), inst);

        // Empty sets and comments parse.
        let parsed = LsdInstance::from_text("# empty\n3 4\nS:\nT: 0\n").unwrap();
        assert!(parsed.s().is_empty());
        assert_eq!(parsed.t().len(), 1);

        assert!(LsdInstance::from_text("3\nS:\nT:\n").is_err());
        assert!(LsdInstance::from_text("2 2\nS: 1\n").is_err());
        assert!(LsdInstance::from_text("2 2\nS: 1\nS: 2\nT:\n").is_err());
        assert!(LsdInstance::from_text("2 2\nS: 9\nT:\n").is_err());
    }

    #[test]
    fn blocked_structure() {
        let inst = BlockedLsdInstance::new(3, vec![0, 2], [(0, 1), (1, 2)]).unwrap();
        assert_eq!(inst.n_blocks(), 2);
        assert!(inst.intersects()); // block 1 holds S value 2 and T has (1,2)
        assert!(BlockedLsdInstance::new(3, vec![0, 3], []).is_err());
        assert!(BlockedLsdInstance::new(3, vec![0], [(1, 0)]).is_err());

        let flat = inst.to_flat();
        assert_eq!(flat.s().iter().copied().collect::<Vec<_>>(), vec![0, 5]);
        assert_eq!(BlockedLsdInstance::from_flat(&flat).unwrap(), inst);

        // from_flat demands exactly one S element per block.
        let two_in_one = LsdInstance::new(2, 3, [0, 1], [2]).unwrap();
        assert!(BlockedLsdInstance::from_flat(&two_in_one).is_err());
        let missing = LsdInstance::new(2, 3, [0], [2]).unwrap();
        assert!(BlockedLsdInstance::from_flat(&missing).is_err());
    }

    #[test]
    fn two_blocked_permutation_invariant() {
        // One super-block of B = 2: S = {(0,0,1), (0,1,0)} is a permutation.
        let inst =
            TwoBlockedLsdInstance::new(1, 2, [(0, 0, 1), (0, 1, 0)], [(0, 0, 1)]).unwrap();
        assert!(inst.intersects());
        assert_eq!(inst.s_permutation(0).unwrap(), vec![1, 0]);
        assert_eq!(inst.n_blocks(), 2);

        // Row repeated.
        assert!(TwoBlockedLsdInstance::new(1, 2, [(0, 0, 0), (0, 0, 1)], []).is_err());
        // Column repeated.
        assert!(TwoBlockedLsdInstance::new(1, 2, [(0, 0, 0), (0, 1, 0)], []).is_err());
        // Wrong cardinality.
        assert!(TwoBlockedLsdInstance::new(1, 2, [(0, 0, 0)], []).is_err());
        // Out of range.
        assert!(TwoBlockedLsdInstance::new(1, 2, [(0, 0, 1), (0, 1, 0)], [(0, 2, 0)]).is_err());
    }

    #[test]
    fn two_blocked_flat_roundtrip() {
        let inst = TwoBlockedLsdInstance::new(
            2,
            2,
            [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)],
            [(1, 0, 1), (0, 1, 0)],
        )
        .unwrap();
        let flat = inst.to_flat();
        assert_eq!(flat.n_blocks(), 4);
        assert_eq!(flat.block_size(), 2);
        assert_eq!(TwoBlockedLsdInstance::from_flat(&flat).unwrap(), inst);
        assert_eq!(inst.to_flat().intersects(), inst.intersects());
    }
}
