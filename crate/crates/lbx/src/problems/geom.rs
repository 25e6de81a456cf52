//! Geometric base problems on non-negative integer grids.
//!
//! All coordinates are `u64` and all intervals are closed. The solvers scan
//! the full instance; they exist to adjudicate the output of the reductions,
//! not to be fast.

use crate::error::{Error, Result};

/// An axis-aligned rectangle `[x_lo, x_hi] × [y_lo, y_hi]` with closed
/// integer ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rect2D {
    pub x_lo: u64,
    pub x_hi: u64,
    pub y_lo: u64,
    pub y_hi: u64,
}

impl Rect2D {
    /// Build a rectangle, rejecting empty ranges.
    pub fn new(x_lo: u64, x_hi: u64, y_lo: u64, y_hi: u64) -> Result<Self> {
        if x_lo > x_hi || y_lo > y_hi {
            return Err(Error::param(format!(
                "empty rectangle range [{x_lo},{x_hi}]x[{y_lo},{y_hi}]"
            )));
        }
        Ok(Rect2D { x_lo, x_hi, y_lo, y_hi })
    }

    /// Whether this rectangle contains the point `q`.
    pub fn contains(&self, q: (u64, u64)) -> bool {
        self.x_lo <= q.0 && q.0 <= self.x_hi && self.y_lo <= q.1 && q.1 <= self.y_hi
    }

    /// Number of grid points covered (exact).
    pub fn area(&self) -> u128 {
        (self.x_hi - self.x_lo + 1) as u128 * (self.y_hi - self.y_lo + 1) as u128
    }
}

/// A grid point with an integer weight (weights may be negative; the corner
/// transform below relies on cancellation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedPoint2D {
    pub x: u64,
    pub y: u64,
    pub weight: i64,
}

/// Answer of a stabbing query: the decision bit plus the exact count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabResult {
    pub stabbed: bool,
    pub count: u64,
}

/// How many rectangles contain `q`, and whether any does.
pub fn stab2d(rects: &[Rect2D], q: (u64, u64)) -> StabResult {
    let count = rects.iter().filter(|r| r.contains(q)).count() as u64;
    StabResult { stabbed: count > 0, count }
}

/// Sum of weights over points dominated by `q` (both coordinates `<=` the
/// query's). This is the two-sided dominance count the corner transform
/// targets.
pub fn dominance_count2d(points: &[WeightedPoint2D], q: (u64, u64)) -> i64 {
    points
        .iter()
        .filter(|p| p.x <= q.0 && p.y <= q.1)
        .map(|p| p.weight)
        .sum()
}

/// An axis-aligned box in four dimensions with closed ranges per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Box4D {
    pub lo: [u64; 4],
    pub hi: [u64; 4],
}

impl Box4D {
    /// Build a box, rejecting empty ranges.
    pub fn new(lo: [u64; 4], hi: [u64; 4]) -> Result<Self> {
        for axis in 0..4 {
            if lo[axis] > hi[axis] {
                return Err(Error::param(format!(
                    "empty box range on axis {axis}: [{}, {}]",
                    lo[axis], hi[axis]
                )));
            }
        }
        Ok(Box4D { lo, hi })
    }

    /// Whether the box contains a 4-dimensional point.
    pub fn contains(&self, p: &[u64; 4]) -> bool {
        (0..4).all(|axis| self.lo[axis] <= p[axis] && p[axis] <= self.hi[axis])
    }
}

/// Whether any point of the set lies inside the box (emptiness reporting).
pub fn report4d_nonempty(points: &[[u64; 4]], query: &Box4D) -> bool {
    points.iter().any(|p| query.contains(p))
}

/// Whether any closed interval `(lo, hi)` of the set contains `q`.
pub fn stab1d(intervals: &[(u64, u64)], q: u64) -> bool {
    intervals.iter().any(|&(lo, hi)| lo <= q && q <= hi)
}
