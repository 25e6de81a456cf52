//! Tour of the butterfly graph: vertices, edges, indices, and the unique
//! source-to-sink path — then what deleting a single edge cuts.

use lbx::butterfly::{count_paths, ButterflyShape, Subgraph};

fn main() -> lbx::Result<()> {
    let shape = ButterflyShape::new(2, 3)?;
    println!(
        "butterfly b={} d={}: {} vertices per level, {} edges",
        shape.degree(),
        shape.depth(),
        shape.level_size(),
        shape.edge_count()
    );

    // Vertices are digit vectors; sources read them LSD-first, sinks
    // MSD-first, so the same vector gets two indices.
    let v = vec![1, 0, 1];
    println!(
        "vector {v:?}: source index {}, sink index {}",
        shape.source_index(&v)?,
        shape.sink_index(&v)?
    );

    // Level j rewrites coordinate j, so the path between any two vectors
    // is forced: d edges, one per level.
    let source = vec![0, 1, 1];
    let sink = vec![1, 0, 0];
    println!("path {source:?} -> {sink:?}:");
    for edge in shape.path_edges(&source, &sink)? {
        println!("  {}", shape.edge_to_text(&edge)?);
    }

    // The full graph has exactly one path per pair; deleting any edge of
    // that path cuts the pair off completely.
    let complete = Subgraph::complete(shape.clone());
    assert_eq!(count_paths(&complete, &source, &sink)?, 1);

    let cut = shape.path_edges(&source, &sink)?[1].clone();
    let mut sub = Subgraph::complete(shape.clone());
    sub.remove_edge(cut.clone())?;
    println!(
        "after deleting {}: reachable = {}, paths = {}",
        shape.edge_to_text(&cut)?,
        sub.reachable(&source, &sink)?,
        count_paths(&sub, &source, &sink)?
    );

    // Every edge also has a dense index, and microsets tile each level.
    println!(
        "edge {} has index {}; the graph has {} microsets of {} members",
        shape.edge_to_text(&cut)?,
        shape.edge_index(&cut)?,
        shape.microset_count(),
        shape.degree()
    );
    Ok(())
}
