//! Reference problem definitions and brute-force solvers.
//!
//! Everything downstream (geometry reductions, persistence stores,
//! communication games) is checked against the solvers in this module, so
//! they are written for obviousness, not speed: plain scans over explicit
//! instance types. Each submodule owns one problem family:
//!
//! * [`geom`] — rectangle stabbing, dominance counting, 4-dimensional
//!   dominance reporting, 1-dimensional interval stabbing;
//! * [`strings`] — bit strings, star patterns, partial match and dominance
//!   match over string databases;
//! * [`marked`] — the marked-ancestor problem on complete ordered trees;
//! * [`dsu`] — union-find over a fixed element range.

pub mod dsu;
pub mod geom;
pub mod marked;
pub mod strings;

pub use dsu::DisjointSets;
pub use geom::{
    dominance_count2d, report4d_nonempty, stab1d, stab2d, Box4D, Rect2D, StabResult,
    WeightedPoint2D,
};
pub use marked::{ma_query, MaOp, MarkedTree, NodePath};
pub use strings::{
    dominance_match, partial_match, pattern_from_dominance, BitStr, PatSym, Pattern,
    PartialMatchDb,
};
