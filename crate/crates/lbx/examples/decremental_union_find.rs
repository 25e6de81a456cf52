//! Decremental marked ancestor in near-constant amortized time: start with
//! every node marked, only ever unmark, and let union-find absorb each
//! cleared node into its parent's cluster.

use lbx::persistence::DecrementalMarkedAncestor;
use lbx::problems::{ma_query, MaOp, MarkedTree};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// All node paths of the complete tree, shallowest first.
fn all_nodes(b: u32, d: usize) -> Vec<Vec<u32>> {
    let mut nodes: Vec<Vec<u32>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for path in &frontier {
            for digit in 0..b {
                let mut child = path.clone();
                child.push(digit);
                next.push(child);
            }
        }
        nodes.extend(next.iter().cloned());
        frontier = next;
    }
    nodes
}

fn main() -> lbx::Result<()> {
    let (b, d) = (2, 3);

    // --- A fully marked tree answers yes everywhere; unmarks peel answers
    // away one root-to-leaf path at a time.
    let mut dsu = DecrementalMarkedAncestor::new(b, d)?;
    let leaf = vec![0, 0, 0];
    assert!(dsu.query(&leaf)?);

    // Clearing the whole path from the root down is what it takes to turn
    // this one leaf's answer off.
    for k in 0..=d {
        dsu.unmark(&leaf[..k].to_vec())?;
        println!(
            "unmarked {:?}: leaf {leaf:?} has marked ancestor = {}",
            &leaf[..k],
            dsu.query(&leaf)?
        );
    }
    assert!(!dsu.query(&leaf)?);
    // A sibling leaf still sees its own marked suffix.
    assert!(dsu.query(&vec![0, 0, 1])?);

    // A second unmark of the same node violates the decremental contract.
    assert!(dsu.unmark(&[]).is_err());

    // --- The structure agrees with a plain marked tree on every prefix of
    // a random unmark order, for every leaf.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut order = all_nodes(b, d);
    order.shuffle(&mut rng);

    let mut dsu = DecrementalMarkedAncestor::new(b, d)?;
    let mut plain = MarkedTree::new(b, d)?;
    for node in all_nodes(b, d) {
        plain.mark(&node)?;
    }

    let leaves: Vec<Vec<u32>> =
        all_nodes(b, d).into_iter().filter(|n| n.len() == d).collect();
    let mut checks = 0;
    for node in &order {
        dsu.unmark(node)?;
        plain.apply(&MaOp::Unmark(node.clone()))?;
        for leaf in &leaves {
            assert_eq!(dsu.query(leaf)?, ma_query(&plain, leaf)?);
            checks += 1;
        }
    }
    println!(
        "random unmark order over {} nodes: {checks} queries agree with the plain tree",
        order.len()
    );

    // After the full order everything is unmarked and every query is no.
    for leaf in &leaves {
        assert!(!dsu.query(leaf)?);
    }
    println!("fully cleared tree answers false for all {} leaves", leaves.len());
    Ok(())
}
