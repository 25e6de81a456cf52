//! Reduction from two-blocked set disjointness to butterfly reachability.
//!
//! A two-blocked instance with block size `B = b` and `N = d·b^d` blocks
//! maps onto the butterfly of degree `b` and depth `d`: super-blocks are
//! microsets, and element `(x, y, z)` is the edge with new digit `z` out
//! of member `y` of microset `x`. Bob's set removes its edges from the
//! butterfly; Alice's set — a permutation matrix per super-block — picks
//! one outgoing edge per non-sink vertex such that every level carries a
//! perfect matching. Following the matchings from each source yields
//! `b^d = N/d` pairwise vertex-disjoint source–sink paths that jointly
//! cover all of Alice's edges, and those endpoint pairs are the queries.
//!
//! Since a source–sink path in the butterfly is unique, a query pair is
//! unreachable in Bob's subgraph exactly when its path lost an edge, so
//!
//! `some query pair unreachable ⟺ S ∩ T ≠ ∅`.

use std::collections::BTreeSet;

use crate::butterfly::{ButterflyShape, EdgeRef, Subgraph};
use crate::error::{Error, Result};
use crate::lsd::instance::TwoBlockedLsdInstance;

/// Map a two-blocked element `(x, y, z)` to its butterfly edge.
pub fn element_to_edge(shape: &ButterflyShape, x: u64, y: u32, z: u32) -> Result<EdgeRef> {
    let microset = shape.microset_from_index(x)?;
    let member = shape.microset_member(&microset, y)?;
    shape.edge(member.level(), member.digits().to_vec(), z)
}

/// Map a butterfly edge back to its two-blocked element.
pub fn edge_to_element(shape: &ButterflyShape, e: &EdgeRef) -> Result<(u64, u32, u32)> {
    let tail = shape.node(e.level(), e.tail().to_vec())?;
    let (microset, y) = shape.microset_of(&tail)?;
    Ok((shape.microset_index(&microset)?, y, e.new_digit()))
}

/// A two-blocked instance rewritten as a reachability game.
#[derive(Debug, Clone)]
pub struct ReachabilityReduction {
    shape: ButterflyShape,
    subgraph: Subgraph,
    alice_edges: BTreeSet<EdgeRef>,
    queries: Vec<(Vec<u32>, Vec<u32>)>,
}

impl ReachabilityReduction {
    /// The butterfly both sides play on.
    pub fn shape(&self) -> &ButterflyShape {
        &self.shape
    }

    /// Bob's side: the butterfly minus his edges.
    pub fn subgraph(&self) -> &Subgraph {
        &self.subgraph
    }

    /// Alice's edges (her set, mapped onto the butterfly).
    pub fn alice_edges(&self) -> &BTreeSet<EdgeRef> {
        &self.alice_edges
    }

    /// The source–sink query pairs, in source order.
    pub fn queries(&self) -> &[(Vec<u32>, Vec<u32>)] {
        &self.queries
    }

    /// Whether some query pair is unreachable in Bob's subgraph.
    pub fn some_unreachable(&self) -> Result<bool> {
        for (source, sink) in &self.queries {
            if !self.subgraph.reachable(source, sink)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Rewrite a two-blocked instance as a reachability game on `shape`.
///
/// The instance must be dimensioned to the butterfly: block size equal to
/// the degree and one super-block per microset.
pub fn two_blocked_to_reachability(
    inst: &TwoBlockedLsdInstance,
    shape: ButterflyShape,
) -> Result<ReachabilityReduction> {
    if inst.block_size() as u64 != shape.degree() as u64 {
        return Err(Error::param(format!(
            "block size {} does not match degree {}",
            inst.block_size(),
            shape.degree()
        )));
    }
    if inst.super_blocks() as u64 != shape.microset_count() {
        return Err(Error::param(format!(
            "{} super-blocks do not match {} microsets",
            inst.super_blocks(),
            shape.microset_count()
        )));
    }

    let mut subgraph = Subgraph::complete(shape.clone());
    for &(x, y, z) in inst.t() {
        subgraph.remove_edge(element_to_edge(&shape, x as u64, y, z)?)?;
    }

    let mut alice_edges = BTreeSet::new();
    for &(x, y, z) in inst.s() {
        alice_edges.insert(element_to_edge(&shape, x as u64, y, z)?);
    }

    // Precompute each super-block's permutation, then follow the matched
    // edge at every level from each source to find its sink.
    let permutations: Vec<Vec<u32>> = (0..inst.super_blocks())
        .map(|x| inst.s_permutation(x))
        .collect::<Result<Vec<_>>>()?;
    let mut queries = Vec::new();
    for source in shape.vectors() {
        let mut current = source.clone();
        for level in 0..shape.depth() {
            let node = shape.node(level, current.clone())?;
            let (microset, y) = shape.microset_of(&node)?;
            let x = shape.microset_index(&microset)? as usize;
            current[level] = permutations[x][y as usize];
        }
        queries.push((source, current));
    }

    Ok(ReachabilityReduction { shape, subgraph, alice_edges, queries })
}
