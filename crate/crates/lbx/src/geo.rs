//! Reductions from butterfly reachability into geometric query problems.
//!
//! The chain, each link checked against the brute-force solvers in
//! [`crate::problems`]:
//!
//! 1. **Deleted edge → rectangle** ([`edge_to_rectangle`]): the source/sink
//!    pairs whose unique path uses a given edge form a contiguous rectangle
//!    in the (sink index, source index) grid, of area exactly `b^(d-1)`.
//!    A pair is reachable iff its grid point ([`pair_to_point`]) is stabbed
//!    by **no** deleted-edge rectangle.
//! 2. **Stabbing → dominance counting** ([`stabbing_to_counting`]): each
//!    rectangle explodes into four signed corner points so that a dominance
//!    (two-sided, `<=`) weight sum equals the exact stab count.
//! 3. **Stabbing → 4-dimensional dominance reporting**
//!    ([`stabbing_to_reporting4d`], [`lift_query`]): each rectangle becomes
//!    the 4-point `(x_lo, x_hi, y_lo, y_hi)` and a query becomes a box that
//!    contains it iff the rectangle contains the query.
//! 4. **Marked ancestor → 1-dimensional stabbing** ([`MaToStab1d`]): each
//!    tree node owns the closed interval of leaf indices below it; a leaf
//!    has a marked ancestor iff its index is stabbed.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::butterfly::{ButterflyShape, EdgeRef, Subgraph};
use crate::error::{Error, Result};
use crate::problems::marked::{check_path, check_tree_params, MaOp};
use crate::problems::{Box4D, Rect2D, WeightedPoint2D};

/// A stabbing instance produced from a subgraph: one rectangle per deleted
/// edge, with `provenance[i]` naming the edge behind `rects[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabbingInstance {
    pub rects: Vec<Rect2D>,
    pub provenance: Vec<EdgeRef>,
}

/// The rectangle of source/sink pairs cut by deleting one edge.
///
/// For an edge at level `j` with tail `u` writing digit `z`, the cut pairs
/// are exactly
///
/// * sinks agreeing with `u` on coordinates `0..j` and holding `z` at
///   coordinate `j` — a contiguous sink-index range of length `b^(d-1-j)`;
/// * sources agreeing with `u` on coordinates `j..d` — a contiguous
///   source-index range of length `b^j`.
pub fn edge_to_rectangle(shape: &ButterflyShape, e: &EdgeRef) -> Result<Rect2D> {
    shape.edge_index(e)?; // validates the edge
    let b = shape.degree() as u64;
    let d = shape.depth();
    let j = e.level();

    // Sink axis: prefix (u_0 .. u_{j-1}, z), then zeros.
    let mut sink_lo_vec = Vec::with_capacity(d);
    sink_lo_vec.extend_from_slice(&e.tail()[..j]);
    sink_lo_vec.push(e.new_digit());
    sink_lo_vec.resize(d, 0);
    let x_lo = shape.sink_index(&sink_lo_vec)?;
    let x_hi = x_lo + b.pow((d - 1 - j) as u32) - 1;

    // Source axis: zeros, then suffix (u_j .. u_{d-1}).
    let mut source_lo_vec = vec![0u32; j];
    source_lo_vec.extend_from_slice(&e.tail()[j..]);
    let y_lo = shape.source_index(&source_lo_vec)?;
    let y_hi = y_lo + b.pow(j as u32) - 1;

    Rect2D::new(x_lo, x_hi, y_lo, y_hi)
}

/// One rectangle per deleted edge, in the subgraph's deterministic
/// missing-edge order.
pub fn build_stabbing_instance(sub: &Subgraph) -> Result<StabbingInstance> {
    let mut rects = Vec::with_capacity(sub.missing_count());
    let mut provenance = Vec::with_capacity(sub.missing_count());
    for e in sub.missing_edges() {
        rects.push(edge_to_rectangle(sub.shape(), e)?);
        provenance.push(e.clone());
    }
    Ok(StabbingInstance { rects, provenance })
}

/// The grid point of a source/sink pair: `(sink_index(t), source_index(s))`.
///
/// `Subgraph::reachable(s, t)` holds iff this point is stabbed by no
/// rectangle of [`build_stabbing_instance`].
pub fn pair_to_point(shape: &ButterflyShape, source: &[u32], sink: &[u32]) -> Result<(u64, u64)> {
    Ok((shape.sink_index(sink)?, shape.source_index(source)?))
}

/// The four-corner transform: a rectangle `[a1,b1] × [a2,b2]` becomes
///
/// ```text
/// +1 at (a1,   a2)      -1 at (a1,   b2+1)
/// -1 at (b1+1, a2)      +1 at (b1+1, b2+1)
/// ```
///
/// so that for every query `q`, the dominance-weight sum over the output
/// equals the number of input rectangles containing `q`. Output points come
/// in chunks of four per input rectangle, in input order, without
/// coalescing. The `+1` shifts must fit `u64`; saturated grids are rejected.
pub fn stabbing_to_counting(rects: &[Rect2D]) -> Result<Vec<WeightedPoint2D>> {
    let mut points = Vec::with_capacity(rects.len() * 4);
    for r in rects {
        let x_hi1 = r
            .x_hi
            .checked_add(1)
            .ok_or_else(|| Error::overflow(format!("corner x of {r:?} exceeds u64")))?;
        let y_hi1 = r
            .y_hi
            .checked_add(1)
            .ok_or_else(|| Error::overflow(format!("corner y of {r:?} exceeds u64")))?;
        points.push(WeightedPoint2D { x: r.x_lo, y: r.y_lo, weight: 1 });
        points.push(WeightedPoint2D { x: r.x_lo, y: y_hi1, weight: -1 });
        points.push(WeightedPoint2D { x: x_hi1, y: r.y_lo, weight: -1 });
        points.push(WeightedPoint2D { x: x_hi1, y: y_hi1, weight: 1 });
    }
    Ok(points)
}

/// Lift each rectangle to the 4-dimensional point
/// `(x_lo, x_hi, y_lo, y_hi)`.
pub fn stabbing_to_reporting4d(rects: &[Rect2D]) -> Vec<[u64; 4]> {
    rects.iter().map(|r| [r.x_lo, r.x_hi, r.y_lo, r.y_hi]).collect()
}

/// The query box matching [`stabbing_to_reporting4d`]: the box contains a
/// lifted rectangle iff that rectangle contains `q`. Open sides become the
/// grid extremes (coordinates are non-negative, so `-inf` is 0 and `+inf`
/// is `u64::MAX`).
pub fn lift_query(q: (u64, u64)) -> Box4D {
    Box4D {
        lo: [0, q.0, 0, q.1],
        hi: [q.0, u64::MAX, q.1, u64::MAX],
    }
}

/// One emitted interval operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalOp {
    Insert((u64, u64)),
    Delete((u64, u64)),
}

/// The closed leaf-index interval owned by a tree node at depth `k`:
/// `[P * b^(d-k), (P+1) * b^(d-k) - 1]` where `P` is the node's path read
/// as a base-`b` number, first digit most significant.
pub fn node_interval(degree: u32, depth: usize, node: &[u32]) -> Result<(u64, u64)> {
    check_tree_params(degree, depth)?;
    check_path(degree, depth, node)?;
    let b = degree as u64;
    let mut p = 0u64;
    for &digit in node {
        p = p * b + digit as u64;
    }
    let span = b.pow((depth - node.len()) as u32);
    Ok((p * span, (p + 1) * span - 1))
}

/// Leaf numbering used on the line: the leaf's path read MSD-first
/// (a leaf's interval is the single point at its index).
pub fn leaf_index(degree: u32, depth: usize, leaf: &[u32]) -> Result<u64> {
    if leaf.len() != depth {
        return Err(Error::range(format!(
            "leaf path has length {}, expected {depth}",
            leaf.len()
        )));
    }
    let (lo, hi) = node_interval(degree, depth, leaf)?;
    debug_assert_eq!(lo, hi);
    Ok(lo)
}

/// Dynamic translator from marked-ancestor updates to interval-set updates.
///
/// The active interval set mirrors the mark set exactly, so redundant
/// operations (marking a marked node, unmarking an unmarked one) are
/// rejected rather than silently collapsed. After any valid sequence,
/// `stab(leaf_index)` equals the marked-ancestor answer for that leaf.
#[derive(Debug, Clone)]
pub struct MaToStab1d {
    degree: u32,
    depth: usize,
    marked: BTreeSet<Vec<u32>>,
}

impl MaToStab1d {
    pub fn new(degree: u32, depth: usize) -> Result<Self> {
        check_tree_params(degree, depth)?;
        Ok(MaToStab1d { degree, depth, marked: BTreeSet::new() })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Translate one tree update into the interval operation it induces.
    pub fn apply(&mut self, op: &MaOp) -> Result<IntervalOp> {
        let node = op.node();
        let interval = node_interval(self.degree, self.depth, node)?;
        match op {
            MaOp::Mark(_) => {
                if !self.marked.insert(node.to_vec()) {
                    return Err(Error::op(format!("node {node:?} is already marked")));
                }
                Ok(IntervalOp::Insert(interval))
            }
            MaOp::Unmark(_) => {
                if !self.marked.remove(node) {
                    return Err(Error::op(format!("node {node:?} is not marked")));
                }
                Ok(IntervalOp::Delete(interval))
            }
        }
    }

    /// The current active intervals, in mark-set order.
    pub fn intervals(&self) -> Vec<(u64, u64)> {
        self.marked
            .iter()
            .map(|n| node_interval(self.degree, self.depth, n).expect("validated on insert"))
            .collect()
    }

    /// Stab query on the current interval set.
    pub fn stab(&self, leaf_idx: u64) -> bool {
        crate::problems::stab1d(&self.intervals(), leaf_idx)
    }
}

/// Serialize rectangles, one `x_lo x_hi y_lo y_hi` line each.
pub fn rects_to_text(rects: &[Rect2D]) -> String {
    let mut out = String::new();
    for r in rects {
        writeln!(out, "{} {} {} {}", r.x_lo, r.x_hi, r.y_lo, r.y_hi).expect("string write");
    }
    out
}

/// Parse rectangles from [`rects_to_text`] form. Blank lines and `#`
/// comments are skipped.
pub fn rects_from_text(text: &str) -> Result<Vec<Rect2D>> {
    let mut rects = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::parse(format!(
                "rectangle line {line:?}: expected 4 fields, got {}",
                fields.len()
            )));
        }
        let nums: Vec<u64> = fields
            .iter()
            .map(|f| {
                f.parse::<u64>()
                    .map_err(|_| Error::parse(format!("rectangle line {line:?}: bad number {f:?}")))
            })
            .collect::<Result<_>>()?;
        rects.push(Rect2D::new(nums[0], nums[1], nums[2], nums[3])?);
    }
    Ok(rects)
}

/// Serialize weighted points, one `x y w` line each.
pub fn points_to_text(points: &[WeightedPoint2D]) -> String {
    let mut out = String::new();
    for p in points {
        writeln!(out, "{} {} {}", p.x, p.y, p.weight).expect("string write");
    }
    out
}

/// Parse weighted points from [`points_to_text`] form.
pub fn points_from_text(text: &str) -> Result<Vec<WeightedPoint2D>> {
    let mut points = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(format!(
                "point line {line:?}: expected 3 fields, got {}",
                fields.len()
            )));
        }
        let x = fields[0]
            .parse::<u64>()
            .map_err(|_| Error::parse(format!("point line {line:?}: bad x {:?}", fields[0])))?;
        let y = fields[1]
            .parse::<u64>()
            .map_err(|_| Error::parse(format!("point line {line:?}: bad y {:?}", fields[1])))?;
        let weight = fields[2]
            .parse::<i64>()
            .map_err(|_| Error::parse(format!("point line {line:?}: bad weight {:?}", fields[2])))?;
        points.push(WeightedPoint2D { x, y, weight });
    }
    Ok(points)
}
