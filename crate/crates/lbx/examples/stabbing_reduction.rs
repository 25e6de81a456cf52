//! Butterfly reachability as 2d stabbing: each deleted edge cuts a
//! rectangle of (sink, source) index pairs, and a pair is reachable
//! exactly when its point avoids every rectangle.

use lbx::butterfly::{ButterflyShape, Subgraph};
use lbx::geo::{build_stabbing_instance, pair_to_point, rects_to_text};
use lbx::problems::stab2d;

fn main() -> lbx::Result<()> {
    let shape = ButterflyShape::new(2, 2)?;

    // Delete two edges.
    let mut sub = Subgraph::complete(shape.clone());
    sub.remove_edge(shape.edge(0, vec![0, 1], 1)?)?;
    sub.remove_edge(shape.edge(1, vec![1, 0], 0)?)?;
    println!("deleted edges:\n{}", sub.missing_to_text()?);

    // One rectangle per deletion, in the interchange file format.
    let inst = build_stabbing_instance(&sub)?;
    println!("their cut rectangles:\n{}", rects_to_text(&inst.rects));

    // Sweep all pairs: reachable iff the pair's point is unstabbed.
    println!("pair sweep (source -> sink: reachable / stabbed):");
    for source in shape.vectors() {
        for sink in shape.vectors() {
            let q = pair_to_point(&shape, &source, &sink)?;
            let reach = sub.reachable(&source, &sink)?;
            let stab = stab2d(&inst.rects, q);
            assert_eq!(reach, !stab.stabbed);
            if stab.stabbed {
                println!(
                    "  {source:?} -> {sink:?} at point {q:?}: cut by {} rectangle(s)",
                    stab.count
                );
            }
        }
    }

    // Every rectangle covers b^(d-1) x ... pairs; the areas tell how many
    // pairs each single deletion severs.
    for (rect, edge) in inst.rects.iter().zip(&inst.provenance) {
        println!("edge {} cuts {} pairs", shape.edge_to_text(edge)?, rect.area());
    }
    Ok(())
}
