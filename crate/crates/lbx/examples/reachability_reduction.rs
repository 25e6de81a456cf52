//! Two-blocked set disjointness becomes a reachability game on the
//! butterfly: Bob deletes his edges, Alice's permutation matrices pick one
//! outgoing edge per vertex, and following them yields vertex-disjoint
//! source-sink paths that cover all of Alice's edges. Some pair loses its
//! path exactly when the sets intersect.

use std::collections::BTreeSet;

use lbx::butterfly::ButterflyShape;
use lbx::comm::{edge_to_element, element_to_edge, two_blocked_to_reachability};
use lbx::lsd::TwoBlockedLsdInstance;

fn main() -> lbx::Result<()> {
    // The dimensions must align: block size = degree, super-blocks =
    // microsets. For b = 2, d = 2 that is 4 super-blocks of B = 2, with
    // the universe (x, y, z) naming edge z out of member y of microset x.
    let shape = ButterflyShape::new(2, 2)?;
    println!(
        "butterfly b=2 d=2: {} microsets of {} members, {} edges",
        shape.microset_count(),
        shape.degree(),
        shape.edge_count()
    );

    // The element <-> edge dictionary is a bijection.
    let mut seen = BTreeSet::new();
    for edge in shape.edges() {
        let (x, y, z) = edge_to_element(&shape, &edge)?;
        assert_eq!(element_to_edge(&shape, x, y, z)?, edge);
        assert!(seen.insert((x, y, z)));
    }
    println!("element dictionary covers all {} edges bijectively", seen.len());

    // Alice: one permutation per super-block — here the identity in
    // microsets 0..2 and the swap in microset 3. Bob: two elements.
    let mut s = Vec::new();
    for x in 0..3u32 {
        s.extend([(x, 0, 0), (x, 1, 1)]);
    }
    s.extend([(3, 0, 1), (3, 1, 0)]);
    let t = [(0u32, 0, 1), (3, 1, 0)];
    let inst = TwoBlockedLsdInstance::new(4, 2, s, t)?;
    println!("\ninstance intersects: {}", inst.intersects());

    let red = two_blocked_to_reachability(&inst, shape.clone())?;

    // Bob's subgraph is the butterfly minus T's edges.
    println!("Bob deleted {} edges:", red.subgraph().missing_count());
    for e in red.subgraph().missing_edges() {
        println!("  {}", shape.edge_to_text(e)?);
    }

    // Alice's edges split into per-level perfect matchings, and the
    // queries are b^d endpoint pairs with vertex-disjoint paths.
    assert_eq!(red.alice_edges().len() as u64, shape.edge_count() / 2);
    assert_eq!(red.queries().len() as u64, shape.level_size());
    println!("queries ({} disjoint paths):", red.queries().len());
    for (source, sink) in red.queries() {
        let reachable = red.subgraph().reachable(source, sink)?;
        println!("  {source:?} -> {sink:?}: reachable = {reachable}");
    }

    // Paths are pairwise vertex-disjoint and cover Alice's edges exactly.
    let mut covered = BTreeSet::new();
    for level in 0..=shape.depth() {
        let mut seen_at_level = BTreeSet::new();
        for (source, sink) in red.queries() {
            let path = shape.path_edges(source, sink)?;
            let vertex = if level == 0 {
                source.clone()
            } else {
                path[level - 1].head()
            };
            assert!(seen_at_level.insert(vertex));
        }
    }
    for (source, sink) in red.queries() {
        for e in shape.path_edges(source, sink)? {
            assert!(red.alice_edges().contains(&e));
            covered.insert(e);
        }
    }
    assert_eq!(covered.len(), red.alice_edges().len());
    println!("paths are vertex-disjoint per level and cover Alice's edges");

    // The punchline: a missing path is exactly an S/T collision.
    assert_eq!(red.some_unreachable()?, inst.intersects());
    println!("some pair unreachable = {} = intersects", red.some_unreachable()?);

    // With Bob's set swapped to avoid Alice, every query goes through.
    let t = [(0u32, 0, 1), (3, 1, 1)];
    let inst = TwoBlockedLsdInstance::new(4, 2, inst.s().iter().copied(), t)?;
    let red = two_blocked_to_reachability(&inst, shape)?;
    assert!(!inst.intersects() && !red.some_unreachable()?);
    println!("after moving Bob off S: all pairs reachable");
    Ok(())
}
