//! Butterfly reachability is fully-persistent marked-ancestor in disguise:
//! each edge owns one (version, tree-node) slot, deleted edges become mark
//! updates, and a pair is reachable exactly when its slot's node has no
//! marked ancestor in its version.

use lbx::butterfly::{ButterflyShape, Subgraph};
use lbx::persistence::{
    build_fpma_input, edge_to_slot, reach_via_fpma, slot_to_edge, tree_summary, FpmaStore,
    MaOpCodec, SlotRef,
};

fn main() -> lbx::Result<()> {
    let shape = ButterflyShape::new(2, 2)?;

    // --- The slot bijection. An edge at level j contributes its first j
    // digits plus the rewritten digit as a version path, and its remaining
    // digits (reversed) as a marked-ancestor node.
    let edge = shape.edge(1, vec![0, 1], 0)?;
    let slot = edge_to_slot(&shape, &edge)?;
    println!(
        "edge {} -> version path {:?}, ma path {:?}",
        shape.edge_to_text(&edge)?,
        slot.version_path,
        slot.ma_path
    );
    assert_eq!(slot_to_edge(&shape, &slot)?, edge);

    // Every edge gets a distinct slot and every slot maps back.
    let mut seen = std::collections::BTreeSet::new();
    for edge in shape.edges() {
        let slot = edge_to_slot(&shape, &edge)?;
        assert_eq!(slot_to_edge(&shape, &slot)?, edge);
        assert!(seen.insert(slot));
    }
    assert_eq!(seen.len() as u64, shape.edge_count());
    println!("slot map is a bijection over all {} edges", shape.edge_count());

    // --- Deleting edges becomes marking. The generated version tree has
    // one node per version path, and its update count equals the number
    // of deleted edges — no matter how many versions exist.
    let mut sub = Subgraph::complete(shape.clone());
    sub.remove_edge(shape.edge(0, vec![0, 0], 1)?)?;
    sub.remove_edge(shape.edge(1, vec![1, 0], 0)?)?;
    sub.remove_edge(shape.edge(1, vec![1, 1], 1)?)?;

    let input = build_fpma_input(&sub)?;
    println!("version tree: {}", tree_summary(input.tree()));
    assert_eq!(input.tree().total_updates() as usize, 3);

    let codec = MaOpCodec::new(shape.degree(), shape.depth())?;
    println!("as text:\n{}", input.tree().to_text(&codec)?);

    // A version path is the sink-side digit prefix; e.g. version [1, 0]
    // is where sinks ending in digits 1 then 0 look up their answers.
    let vid = input.version_id(&[1, 0])?;
    println!("version path [1, 0] has version-tree id {vid}");

    // --- The punchline: reachability queries and marked-ancestor queries
    // agree on every pair, whether asked one-shot or through a store.
    let store = FpmaStore::new(&sub)?;
    let mut checked = 0;
    for s in 0..shape.level_size() {
        for t in 0..shape.level_size() {
            let source = shape.source_vector(s)?;
            let sink = shape.sink_vector(t)?;
            let direct = sub.reachable(&source, &sink)?;
            assert_eq!(store.reachable(&source, &sink)?, direct);
            assert_eq!(reach_via_fpma(&sub, &source, &sink)?, direct);
            checked += 1;
        }
    }
    println!("all {checked} source/sink pairs agree with the graph answer");

    // Slots compose the two halves: the version picks the sink-side
    // context, the ma path picks the source-side one.
    let sample = SlotRef { version_path: vec![0, 1], ma_path: vec![1] };
    println!(
        "slot {{version {:?}, ma {:?}}} belongs to edge {}",
        sample.version_path,
        sample.ma_path,
        shape.edge_to_text(&slot_to_edge(&shape, &sample)?)?
    );
    Ok(())
}
