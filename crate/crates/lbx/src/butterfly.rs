//! The layered butterfly graph and its subgraph reachability problem.
//!
//! A butterfly of degree `b >= 2` and depth `d >= 1` has `d + 1` levels of
//! `b^d` vertices each; a vertex is a digit vector in `[b]^d`. Level-`j`
//! edges (`j` counted from 0) connect level `j` to level `j + 1` and rewrite
//! coordinate `j`: vector `u` has an edge to every vector that agrees with
//! `u` outside coordinate `j`. Keeping the old digit is an edge like any
//! other, so every vertex has out-degree exactly `b` and the graph has
//! `d * b^(d+1)` edges.
//!
//! Because coordinate `j` is rewritten only at level `j`, a source vector
//! `s` (level 0) reaches a sink vector `t` (level `d`) through exactly one
//! path in the complete graph: the edge at level `j` must set coordinate
//! `j` to `t_j`. [`ButterflyShape::path_edges`] returns that path;
//! [`Subgraph::reachable`] asks whether it survives edge deletions, and
//! [`count_paths`] re-derives the same answer by exhaustive walk (it is the
//! reference oracle the fast path is tested against).
//!
//! Sources and sinks are numbered in opposite digit orders (see
//! [`ButterflyShape::source_index`] and [`ButterflyShape::sink_index`]);
//! the geometry reduction depends on exactly these orders.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::problems::marked::check_tree_params;

/// Degree/depth pair with the derived sizes validated to fit exact `u64`
/// arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ButterflyShape {
    degree: u32,
    depth: usize,
    level_size: u64,
}

/// A vertex: its level (`0 ..= depth`) and its digit vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeRef {
    level: usize,
    digits: Vec<u32>,
}

impl NodeRef {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }
}

/// An edge, identified by its level, tail vector, and the digit it writes
/// into coordinate `level`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    level: usize,
    tail: Vec<u32>,
    new_digit: u32,
}

impl EdgeRef {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn tail(&self) -> &[u32] {
        &self.tail
    }

    pub fn new_digit(&self) -> u32 {
        self.new_digit
    }

    /// The head vector: the tail with coordinate `level` rewritten.
    pub fn head(&self) -> Vec<u32> {
        let mut h = self.tail.clone();
        h[self.level] = self.new_digit;
        h
    }
}

impl fmt::Display for EdgeRef {
    /// Debug-friendly rendering `j:t0..t(d-1)→z` with base-36 digit chars;
    /// digits ≥ 36 print in braces. The parseable codec lives on
    /// [`ButterflyShape::edge_to_text`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.level)?;
        for &d in &self.tail {
            write_digit(f, d)?;
        }
        f.write_str("→")?;
        write_digit(f, self.new_digit)
    }
}

fn write_digit(f: &mut fmt::Formatter<'_>, d: u32) -> fmt::Result {
    match char::from_digit(d, 36) {
        Some(c) => write!(f, "{c}"),
        None => write!(f, "{{{d}}}"),
    }
}

/// A microset: the `b` vertices at one level that differ only in the
/// coordinate that level rewrites. `context` is the digit vector with that
/// coordinate removed (length `d - 1`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MicrosetId {
    level: usize,
    context: Vec<u32>,
}

impl MicrosetId {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn context(&self) -> &[u32] {
        &self.context
    }
}

impl ButterflyShape {
    /// Requires `degree >= 2`, `depth >= 1`, and `degree^depth` as well as
    /// the edge count `depth * degree^(depth+1)` to fit `u64`.
    pub fn new(degree: u32, depth: usize) -> Result<Self> {
        check_tree_params(degree, depth)?;
        let level_size = (degree as u64).pow(depth as u32);
        // Edge count = depth * degree^(depth+1); validate it fits too.
        level_size
            .checked_mul(degree as u64)
            .and_then(|per_level| per_level.checked_mul(depth as u64))
            .ok_or_else(|| Error::overflow(format!("edge count of butterfly({degree}, {depth})")))?;
        Ok(ButterflyShape { degree, depth, level_size })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Vertices per level: `b^d`.
    pub fn level_size(&self) -> u64 {
        self.level_size
    }

    /// Total edges: `d * b^(d+1)`.
    pub fn edge_count(&self) -> u64 {
        self.depth as u64 * self.level_size * self.degree as u64
    }

    /// Validate a digit vector.
    pub fn check_vector(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.depth {
            return Err(Error::range(format!(
                "vector of length {} in butterfly of depth {}",
                v.len(),
                self.depth
            )));
        }
        for &digit in v {
            if digit >= self.degree {
                return Err(Error::range(format!(
                    "digit {digit} out of range for degree {}",
                    self.degree
                )));
            }
        }
        Ok(())
    }

    /// Build a vertex reference after validating level and digits.
    pub fn node(&self, level: usize, digits: Vec<u32>) -> Result<NodeRef> {
        if level > self.depth {
            return Err(Error::range(format!(
                "level {level} out of range for depth {}", self.depth
            )));
        }
        self.check_vector(&digits)?;
        Ok(NodeRef { level, digits })
    }

    /// Build an edge reference after validating all three components.
    pub fn edge(&self, level: usize, tail: Vec<u32>, new_digit: u32) -> Result<EdgeRef> {
        if level >= self.depth {
            return Err(Error::range(format!(
                "edge level {level} out of range for depth {}", self.depth
            )));
        }
        self.check_vector(&tail)?;
        if new_digit >= self.degree {
            return Err(Error::range(format!(
                "edge digit {new_digit} out of range for degree {}", self.degree
            )));
        }
        Ok(EdgeRef { level, tail, new_digit })
    }

    /// Source numbering: coordinate 0 is least significant,
    /// `source_index(v) = Σ v_i * b^i`.
    pub fn source_index(&self, v: &[u32]) -> Result<u64> {
        self.check_vector(v)?;
        let b = self.degree as u64;
        let mut idx = 0u64;
        for &digit in v.iter().rev() {
            idx = idx * b + digit as u64;
        }
        Ok(idx)
    }

    /// Sink numbering: coordinate 0 is most significant,
    /// `sink_index(v) = Σ v_i * b^(d-1-i)`.
    pub fn sink_index(&self, v: &[u32]) -> Result<u64> {
        self.check_vector(v)?;
        let b = self.degree as u64;
        let mut idx = 0u64;
        for &digit in v.iter() {
            idx = idx * b + digit as u64;
        }
        Ok(idx)
    }

    /// Inverse of [`Self::source_index`].
    pub fn source_vector(&self, idx: u64) -> Result<Vec<u32>> {
        self.check_index(idx)?;
        let b = self.degree as u64;
        let mut v = Vec::with_capacity(self.depth);
        let mut rest = idx;
        for _ in 0..self.depth {
            v.push((rest % b) as u32);
            rest /= b;
        }
        Ok(v)
    }

    /// Inverse of [`Self::sink_index`].
    pub fn sink_vector(&self, idx: u64) -> Result<Vec<u32>> {
        let mut v = self.source_vector(idx)?;
        v.reverse();
        Ok(v)
    }

    fn check_index(&self, idx: u64) -> Result<()> {
        if idx >= self.level_size {
            return Err(Error::range(format!(
                "vertex index {idx} out of range for level size {}",
                self.level_size
            )));
        }
        Ok(())
    }

    /// All digit vectors, ascending by source index.
    pub fn vectors(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.level_size).map(|i| self.source_vector(i).expect("index in range"))
    }

    /// The unique source→sink path in the complete butterfly. Edge `j` has
    /// tail `(t_0 .. t_{j-1}, s_j .. s_{d-1})` and writes `t_j`; its head
    /// feeds edge `j + 1`, and the final head is the sink.
    pub fn path_edges(&self, source: &[u32], sink: &[u32]) -> Result<Vec<EdgeRef>> {
        self.check_vector(source)?;
        self.check_vector(sink)?;
        let mut current = source.to_vec();
        let mut path = Vec::with_capacity(self.depth);
        for j in 0..self.depth {
            let edge = EdgeRef { level: j, tail: current.clone(), new_digit: sink[j] };
            current[j] = sink[j];
            path.push(edge);
        }
        Ok(path)
    }

    /// All edges, ascending by [`Self::edge_index`].
    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        (0..self.edge_count()).map(|i| self.edge_from_index(i).expect("index in range"))
    }

    /// Canonical dense edge numbering:
    /// `(level * b^d + source_index(tail)) * b + new_digit`.
    /// This is the bit layout the cell-probe memory encoding uses.
    pub fn edge_index(&self, e: &EdgeRef) -> Result<u64> {
        if e.level >= self.depth {
            return Err(Error::range(format!(
                "edge level {} out of range for depth {}", e.level, self.depth
            )));
        }
        let tail_idx = self.source_index(&e.tail)?;
        if e.new_digit >= self.degree {
            return Err(Error::range(format!(
                "edge digit {} out of range for degree {}", e.new_digit, self.degree
            )));
        }
        Ok((e.level as u64 * self.level_size + tail_idx) * self.degree as u64
            + e.new_digit as u64)
    }

    /// Inverse of [`Self::edge_index`].
    pub fn edge_from_index(&self, idx: u64) -> Result<EdgeRef> {
        if idx >= self.edge_count() {
            return Err(Error::range(format!(
                "edge index {idx} out of range for {} edges",
                self.edge_count()
            )));
        }
        let b = self.degree as u64;
        let new_digit = (idx % b) as u32;
        let rest = idx / b;
        let tail = self.source_vector(rest % self.level_size)?;
        let level = (rest / self.level_size) as usize;
        Ok(EdgeRef { level, tail, new_digit })
    }

    /// Number of microsets: `d * b^(d-1)` (levels × contexts).
    pub fn microset_count(&self) -> u64 {
        self.depth as u64 * self.level_size / self.degree as u64
    }

    /// Microsets in index order.
    pub fn microsets(&self) -> impl Iterator<Item = MicrosetId> + '_ {
        (0..self.microset_count()).map(|i| self.microset_from_index(i).expect("index in range"))
    }

    /// Level-major microset numbering; within a level, contexts are ranked
    /// lexicographically with the first context digit most significant:
    /// `index = level * b^(d-1) + Σ context_i * b^(d-2-i)`.
    pub fn microset_index(&self, m: &MicrosetId) -> Result<u64> {
        if m.level >= self.depth {
            return Err(Error::range(format!(
                "microset level {} out of range for depth {}", m.level, self.depth
            )));
        }
        if m.context.len() + 1 != self.depth {
            return Err(Error::range(format!(
                "context of length {} in butterfly of depth {}",
                m.context.len(),
                self.depth
            )));
        }
        let b = self.degree as u64;
        let contexts_per_level = self.level_size / b;
        let mut rank = 0u64;
        for &digit in &m.context {
            if digit >= self.degree {
                return Err(Error::range(format!(
                    "digit {digit} out of range for degree {}", self.degree
                )));
            }
            rank = rank * b + digit as u64;
        }
        Ok(m.level as u64 * contexts_per_level + rank)
    }

    /// Inverse of [`Self::microset_index`].
    pub fn microset_from_index(&self, idx: u64) -> Result<MicrosetId> {
        if idx >= self.microset_count() {
            return Err(Error::range(format!(
                "microset index {idx} out of range for {} microsets",
                self.microset_count()
            )));
        }
        let b = self.degree as u64;
        let contexts_per_level = self.level_size / b;
        let level = (idx / contexts_per_level) as usize;
        let mut rank = idx % contexts_per_level;
        let mut context = vec![0u32; self.depth - 1];
        for slot in context.iter_mut().rev() {
            *slot = (rank % b) as u32;
            rank /= b;
        }
        Ok(MicrosetId { level, context })
    }

    /// The member of microset `m` whose rewritable coordinate holds `y`.
    pub fn microset_member(&self, m: &MicrosetId, y: u32) -> Result<NodeRef> {
        self.microset_index(m)?; // validates the id
        if y >= self.degree {
            return Err(Error::range(format!(
                "position {y} out of range for degree {}", self.degree
            )));
        }
        let mut digits = Vec::with_capacity(self.depth);
        digits.extend_from_slice(&m.context[..m.level]);
        digits.push(y);
        digits.extend_from_slice(&m.context[m.level..]);
        Ok(NodeRef { level: m.level, digits })
    }

    /// The microset of a non-sink vertex, plus the digit it holds in the
    /// rewritable coordinate.
    pub fn microset_of(&self, node: &NodeRef) -> Result<(MicrosetId, u32)> {
        if node.level >= self.depth {
            return Err(Error::range(format!(
                "vertex at sink level {} has no microset", node.level
            )));
        }
        self.check_vector(&node.digits)?;
        let y = node.digits[node.level];
        let mut context = node.digits.clone();
        context.remove(node.level);
        Ok((MicrosetId { level: node.level, context }, y))
    }

    /// Parseable edge rendering `j:t0t1…t(d-1)→z` with base-36 digits.
    /// Rejected for degrees above 36 (the in-memory API is unaffected).
    pub fn edge_to_text(&self, e: &EdgeRef) -> Result<String> {
        if self.degree > 36 {
            return Err(Error::param(format!(
                "edge text format supports degree <= 36, got {}", self.degree
            )));
        }
        self.edge_index(e)?; // validates the edge
        let mut s = format!("{}:", e.level);
        for &d in &e.tail {
            s.push(char::from_digit(d, 36).expect("digit < 36"));
        }
        s.push('→');
        s.push(char::from_digit(e.new_digit, 36).expect("digit < 36"));
        Ok(s)
    }

    /// Parse one edge line; accepts `→` or `->` as the arrow.
    pub fn edge_from_text(&self, line: &str) -> Result<EdgeRef> {
        let line = line.trim();
        let (level_str, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(format!("edge {line:?}: missing ':'")))?;
        let level: usize = level_str
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("edge {line:?}: bad level {level_str:?}")))?;
        let (tail_str, digit_str) = rest
            .split_once('→')
            .or_else(|| rest.split_once("->"))
            .ok_or_else(|| Error::parse(format!("edge {line:?}: missing arrow")))?;
        let parse_digit = |c: char| -> Result<u32> {
            c.to_digit(36)
                .ok_or_else(|| Error::parse(format!("edge {line:?}: bad digit {c:?}")))
        };
        let tail = tail_str.trim().chars().map(parse_digit).collect::<Result<Vec<u32>>>()?;
        let digit_str = digit_str.trim();
        let mut digit_chars = digit_str.chars();
        let z = match (digit_chars.next(), digit_chars.next()) {
            (Some(c), None) => parse_digit(c)?,
            _ => return Err(Error::parse(format!("edge {line:?}: bad new digit {digit_str:?}"))),
        };
        self.edge(level, tail, z)
    }
}

/// A butterfly with a set of deleted edges. Reachability is asked between a
/// level-0 vector (source) and a level-`d` vector (sink).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    shape: ButterflyShape,
    missing: BTreeSet<EdgeRef>,
}

impl Subgraph {
    /// The complete butterfly: nothing deleted.
    pub fn complete(shape: ButterflyShape) -> Self {
        Subgraph { shape, missing: BTreeSet::new() }
    }

    /// A subgraph with the given edges deleted (validated; duplicates
    /// collapse).
    pub fn with_missing(
        shape: ButterflyShape,
        missing: impl IntoIterator<Item = EdgeRef>,
    ) -> Result<Self> {
        let mut sub = Subgraph::complete(shape);
        for e in missing {
            sub.remove_edge(e)?;
        }
        Ok(sub)
    }

    pub fn shape(&self) -> &ButterflyShape {
        &self.shape
    }

    /// Delete an edge (idempotent).
    pub fn remove_edge(&mut self, e: EdgeRef) -> Result<()> {
        self.shape.edge_index(&e)?; // validates
        self.missing.insert(e);
        Ok(())
    }

    /// Whether an edge has been deleted.
    pub fn is_missing(&self, e: &EdgeRef) -> bool {
        self.missing.contains(e)
    }

    /// Whether an edge is present.
    pub fn has_edge(&self, e: &EdgeRef) -> bool {
        !self.missing.contains(e)
    }

    pub fn missing_edges(&self) -> impl Iterator<Item = &EdgeRef> {
        self.missing.iter()
    }

    pub fn missing_count(&self) -> usize {
        self.missing.len()
    }

    /// Whether `source` (level 0) reaches `sink` (level `d`): the unique
    /// complete-graph path must survive the deletions.
    pub fn reachable(&self, source: &[u32], sink: &[u32]) -> Result<bool> {
        let path = self.shape.path_edges(source, sink)?;
        Ok(path.iter().all(|e| self.has_edge(e)))
    }

    /// Deleted-edge list, one line per edge in set order.
    pub fn missing_to_text(&self) -> Result<String> {
        let mut out = String::new();
        for e in &self.missing {
            out.push_str(&self.shape.edge_to_text(e)?);
            out.push('\n');
        }
        Ok(out)
    }

    /// Parse a deleted-edge list (one edge per line; blank lines and lines
    /// starting with `#` are skipped).
    pub fn from_missing_text(shape: ButterflyShape, text: &str) -> Result<Self> {
        let mut sub = Subgraph::complete(shape);
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let e = shape.edge_from_text(line)?;
            sub.remove_edge(e)?;
        }
        Ok(sub)
    }
}

/// Count source→sink paths by exhaustive walk over present edges. This is
/// the reference oracle: in a complete butterfly it returns 1 for every
/// pair, and [`Subgraph::reachable`] must equal `count_paths > 0`.
pub fn count_paths(sub: &Subgraph, source: &[u32], sink: &[u32]) -> Result<u64> {
    let shape = *sub.shape();
    shape.check_vector(source)?;
    shape.check_vector(sink)?;
    fn walk(sub: &Subgraph, current: &mut Vec<u32>, level: usize, sink: &[u32]) -> u64 {
        if level == sub.shape().depth() {
            return u64::from(current.as_slice() == sink);
        }
        let mut total = 0;
        let old = current[level];
        for z in 0..sub.shape().degree() {
            let e = EdgeRef { level, tail: current.clone(), new_digit: z };
            if sub.has_edge(&e) {
                current[level] = z;
                total += walk(sub, current, level + 1, sink);
                current[level] = old;
            }
        }
        total
    }
    Ok(walk(sub, &mut source.to_vec(), 0, sink))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(b: u32, d: usize) -> ButterflyShape {
        ButterflyShape::new(b, d).unwrap()
    }

    #[test]
    fn shape_validation() {
        assert!(ButterflyShape::new(1, 2).is_err());
        assert!(ButterflyShape::new(2, 0).is_err());
        assert!(ButterflyShape::new(2, 63).is_err()); // edge count overflows
        let s = shape(2, 2);
        assert_eq!(s.level_size(), 4);
        assert_eq!(s.edge_count(), 16);
        assert_eq!(shape(3, 2).edge_count(), 2 * 27);
    }

    #[test]
    fn index_orders_differ() {
        // Degree 3, depth 2: coordinate 0 is least significant for sources,
        // most significant for sinks.
        let s = shape(3, 2);
        assert_eq!(s.source_index(&[2, 1]).unwrap(), 5);
        assert_eq!(s.sink_index(&[2, 1]).unwrap(), 7);
        assert_eq!(s.source_vector(5).unwrap(), vec![2, 1]);
        assert_eq!(s.sink_vector(7).unwrap(), vec![2, 1]);
        for idx in 0..s.level_size() {
            assert_eq!(s.source_index(&s.source_vector(idx).unwrap()).unwrap(), idx);
            assert_eq!(s.sink_index(&s.sink_vector(idx).unwrap()).unwrap(), idx);
        }
        assert!(s.source_index(&[3, 0]).is_err());
        assert!(s.source_vector(9).is_err());
    }

    #[test]
    fn path_edges_morph_source_into_sink() {
        let s = shape(2, 2);
        let path = s.path_edges(&[0, 1], &[1, 0]).unwrap();
        assert_eq!(path.len(), 2);
        assert_eq!(path[0], s.edge(0, vec![0, 1], 1).unwrap());
        assert_eq!(path[1], s.edge(1, vec![1, 1], 0).unwrap());
        assert_eq!(path[1].head(), vec![1, 0]);

        // Chaining property on a bigger shape, all pairs.
        let s = shape(3, 2);
        for src in s.vectors() {
            for snk in s.vectors() {
                let path = s.path_edges(&src, &snk).unwrap();
                let mut cur = src.clone();
                for (j, e) in path.iter().enumerate() {
                    assert_eq!(e.level(), j);
                    assert_eq!(e.tail(), cur.as_slice());
                    cur = e.head();
                }
                assert_eq!(cur, snk);
            }
        }
    }

    #[test]
    fn identity_path_uses_self_digit_edges() {
        let s = shape(2, 3);
        let path = s.path_edges(&[1, 0, 1], &[1, 0, 1]).unwrap();
        for (j, e) in path.iter().enumerate() {
            assert_eq!(e.new_digit(), e.tail()[j]);
            assert_eq!(e.head(), e.tail());
        }
    }

    #[test]
    fn complete_graph_has_unique_paths() {
        for (b, d) in [(2, 2), (2, 3), (3, 2)] {
            let s = shape(b, d);
            let sub = Subgraph::complete(s);
            for src in s.vectors() {
                for snk in s.vectors() {
                    assert_eq!(count_paths(&sub, &src, &snk).unwrap(), 1);
                    assert!(sub.reachable(&src, &snk).unwrap());
                }
            }
        }
    }

    #[test]
    fn single_deletion_cuts_exactly_the_formula_pairs() {
        // Deleting level-0 edge with tail (0,1), new digit 1 at b=2, d=2
        // cuts the pairs {source (0,1)} × {sinks (1,0), (1,1)}: 2 of 16.
        let s = shape(2, 2);
        let e = s.edge(0, vec![0, 1], 1).unwrap();
        let sub = Subgraph::with_missing(s, [e]).unwrap();
        let mut cut = Vec::new();
        for src in s.vectors() {
            for snk in s.vectors() {
                let fast = sub.reachable(&src, &snk).unwrap();
                let slow = count_paths(&sub, &src, &snk).unwrap() > 0;
                assert_eq!(fast, slow);
                if !fast {
                    cut.push((src.clone(), snk.clone()));
                }
            }
        }
        assert_eq!(
            cut,
            vec![
                (vec![0, 1], vec![1, 0]),
                (vec![0, 1], vec![1, 1]),
            ]
        );
    }

    #[test]
    fn edge_index_roundtrip() {
        for (b, d) in [(2, 3), (3, 2)] {
            let s = shape(b, d);
            let mut seen = BTreeSet::new();
            for idx in 0..s.edge_count() {
                let e = s.edge_from_index(idx).unwrap();
                assert_eq!(s.edge_index(&e).unwrap(), idx);
                seen.insert(e);
            }
            assert_eq!(seen.len() as u64, s.edge_count());
        }
        assert!(shape(2, 2).edge_from_index(16).is_err());
    }

    #[test]
    fn microset_bijections() {
        for (b, d) in [(2, 1), (2, 3), (3, 2)] {
            let s = shape(b, d);
            assert_eq!(
                s.microset_count(),
                d as u64 * (b as u64).pow(d as u32 - 1)
            );
            // (index, position) <-> non-sink vertex is a bijection.
            let mut seen = BTreeSet::new();
            for idx in 0..s.microset_count() {
                let m = s.microset_from_index(idx).unwrap();
                assert_eq!(s.microset_index(&m).unwrap(), idx);
                for y in 0..b {
                    let node = s.microset_member(&m, y).unwrap();
                    let (m2, y2) = s.microset_of(&node).unwrap();
                    assert_eq!((&m2, y2), (&m, y));
                    seen.insert(node);
                }
            }
            assert_eq!(seen.len() as u64, s.microset_count() * b as u64);
        }
    }

    #[test]
    fn microset_members_share_all_but_one_coordinate() {
        let s = shape(3, 2);
        let m = s.microset_from_index(4).unwrap();
        let members: Vec<NodeRef> =
            (0..3).map(|y| s.microset_member(&m, y).unwrap()).collect();
        for pair in members.windows(2) {
            let a = pair[0].digits();
            let b = pair[1].digits();
            let diffs = a.iter().zip(b).filter(|(x, y)| x != y).count();
            assert_eq!(diffs, 1);
        }
        // Sink-level vertices have no microset.
        let sink = s.node(2, vec![0, 0]).unwrap();
        assert!(s.microset_of(&sink).is_err());
    }

    #[test]
    fn edge_text_roundtrip() {
        let s = shape(2, 2);
        let e = s.edge(0, vec![0, 1], 1).unwrap();
        let text = s.edge_to_text(&e).unwrap();
        assert_eq!(text, "0:01→1");
        assert_eq!(s.edge_from_text(&text).unwrap(), e);
        assert_eq!(s.edge_from_text("0:01->1").unwrap(), e);
        assert!(s.edge_from_text("2:01→1").is_err()); // level out of range
        assert!(s.edge_from_text("0:09→1").is_err()); // digit out of range
        assert!(s.edge_from_text("0:01=1").is_err()); // no arrow

        let sub = Subgraph::with_missing(
            s,
            [e.clone(), s.edge(1, vec![1, 1], 0).unwrap()],
        )
        .unwrap();
        let text = sub.missing_to_text().unwrap();
        let parsed = Subgraph::from_missing_text(s, &text).unwrap();
        assert_eq!(parsed, sub);
    }

    #[test]
    fn reachable_validates_input() {
        let s = shape(2, 2);
        let sub = Subgraph::complete(s);
        assert!(sub.reachable(&[0, 1, 0], &[0, 0]).is_err());
        assert!(sub.reachable(&[0, 2], &[0, 0]).is_err());
    }
}
