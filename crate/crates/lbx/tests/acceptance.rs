//! Acceptance gate: every shipped guarantee exercised at full corpus size,
//! one pass/fail line per criterion.
//!
//! Runs without the test harness so the lines print unconditionally; the
//! process exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use lbx::butterfly::{ButterflyShape, EdgeRef, Subgraph};
use lbx::combinatorics::{binomial, bits_for_range, unrank_combination};
use lbx::comm::{
    blocked_to_partial_match, code_width, compile_parallel_queries, compile_single_query,
    decode_parallel, edge_to_element, element_to_edge, reachability_memory, run_direct,
    two_blocked_to_reachability, CellMemory, ChainedQuery, ProbeQuery, ReachProbeQuery,
    ReachabilityReduction, ScriptedQuery,
};
use lbx::geo::{
    build_stabbing_instance, lift_query, pair_to_point, stabbing_to_counting,
    stabbing_to_reporting4d,
};
use lbx::lsd::{
    block_entropy_exact, designated_intersection_probability, sample_dk, sample_dyes, to_blocked,
    to_two_blocked, BlockedLsdInstance, LsdInstance, TwoBlockedLsdInstance,
};
use lbx::persistence::{
    build_fpma_input, edge_to_slot, record_full, record_partial, replay_fresh, slot_to_edge,
    CounterMachine, FpmaStore, MarkedAncestorMachine, VersionTree,
};
use lbx::problems::{dominance_count2d, report4d_nonempty, stab2d, MaOp, Rect2D};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let criteria: &[(&str, fn())] = &[
        ("reduction 1 equivalence", c01_reduction1_equivalence),
        ("corner trick exactness", c02_corner_trick_exactness),
        ("4d lift", c03_four_d_lift),
        ("persistence soundness", c04_persistence_soundness),
        ("reduction 2 isomorphism", c05_reduction2_isomorphism),
        ("lsd chain", c06_lsd_chain),
        ("partial match reduction", c07_partial_match_reduction),
        ("reachability reduction", c08_reachability_reduction),
        ("hard distributions", c09_hard_distributions),
        ("compiler accounting", c10_compiler_accounting),
        ("end-to-end pipeline", c11_end_to_end_pipeline),
    ];

    let suite_start = Instant::now();
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let status = match outcome {
            Ok(()) => "PASS",
            Err(_) => {
                failures += 1;
                "FAIL"
            }
        };
        println!(
            "criterion {:>2} ({name}): {status} [{:.2?}]",
            i + 1,
            start.elapsed()
        );
    }

    let elapsed = suite_start.elapsed();
    if elapsed >= Duration::from_secs(300) {
        failures += 1;
        println!("suite runtime {elapsed:.2?} exceeds the 5 minute budget: FAIL");
    }
    println!(
        "acceptance: {} of {} criteria passed in {elapsed:.2?}",
        criteria.len() - failures.min(criteria.len()),
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------- helpers

/// Every (source, sink) vector pair of the shape.
fn all_pairs(shape: &ButterflyShape) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut pairs = Vec::new();
    for s in 0..shape.level_size() {
        for t in 0..shape.level_size() {
            pairs.push((
                shape.source_vector(s).expect("index in range"),
                shape.sink_vector(t).expect("index in range"),
            ));
        }
    }
    pairs
}

/// The subgraph whose deleted edges are the set bits of `mask` over
/// `edges`.
fn subgraph_from_mask(shape: &ButterflyShape, edges: &[EdgeRef], mask: u32) -> Subgraph {
    let mut sub = Subgraph::complete(shape.clone());
    for (i, e) in edges.iter().enumerate() {
        if mask >> i & 1 == 1 {
            sub.remove_edge(e.clone()).expect("edge of this shape");
        }
    }
    sub
}

/// A random subgraph with a per-draw deletion density.
fn random_subgraph(shape: &ButterflyShape, rng: &mut ChaCha8Rng) -> Subgraph {
    let density = rng.gen_range(0.0..=1.0);
    let mut sub = Subgraph::complete(shape.clone());
    for e in shape.edges().collect::<Vec<_>>() {
        if rng.gen_bool(density) {
            sub.remove_edge(e).expect("edge of this shape");
        }
    }
    sub
}

/// All node paths of the complete `b`-ary tree of leaf depth `d`,
/// shallowest first.
fn all_tree_nodes(b: u32, d: usize) -> Vec<Vec<u32>> {
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

// ------------------------------------------------------------ criterion 1

fn c01_reduction1_equivalence() {
    // Exhaustive: all 2^16 subgraphs of the b=2, d=2 butterfly, all 16
    // source/sink pairs, under a one-minute budget.
    let start = Instant::now();
    let shape = ButterflyShape::new(2, 2).expect("valid shape");
    let edges: Vec<EdgeRef> = shape.edges().collect();
    let pairs = all_pairs(&shape);
    assert_eq!(edges.len(), 16);
    assert_eq!(pairs.len(), 16);
    for mask in 0u32..1 << edges.len() {
        let sub = subgraph_from_mask(&shape, &edges, mask);
        let inst = build_stabbing_instance(&sub).expect("instance builds");
        for (source, sink) in &pairs {
            let q = pair_to_point(&shape, source, sink).expect("pair maps");
            assert_eq!(
                stab2d(&inst.rects, q).stabbed,
                !sub.reachable(source, sink).expect("pair in range"),
                "mask {mask}, pair {source:?} -> {sink:?}"
            );
        }
    }
    assert!(
        start.elapsed() < Duration::from_secs(60),
        "exhaustive sweep took {:.2?}",
        start.elapsed()
    );

    // Sampled: 10^3 seeded subgraphs at b=2, d=3 and b=3, d=2, all pairs.
    for (b, d, seed) in [(2u32, 3usize, 0x0101u64), (3, 2, 0x0102)] {
        let shape = ButterflyShape::new(b, d).expect("valid shape");
        let pairs = all_pairs(&shape);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for trial in 0..1000 {
            let sub = random_subgraph(&shape, &mut rng);
            let inst = build_stabbing_instance(&sub).expect("instance builds");
            for (source, sink) in &pairs {
                let q = pair_to_point(&shape, source, sink).expect("pair maps");
                assert_eq!(
                    stab2d(&inst.rects, q).stabbed,
                    !sub.reachable(source, sink).expect("pair in range"),
                    "b={b} d={d} trial {trial}, pair {source:?} -> {sink:?}"
                );
            }
        }
    }
}

// --------------------------------------------------------- criteria 2 & 3

/// 10^3 rectangle sets: every fourth is butterfly-derived (overlapping by
/// construction), the rest are random boxes on a small grid. Each set
/// comes with the grid extent its queries sweep.
fn rect_corpus(seed: u64) -> Vec<(Vec<Rect2D>, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = [(2u32, 2usize), (2, 3), (3, 2)];
    (0..1000)
        .map(|i| {
            if i % 4 == 0 {
                let (b, d) = shapes[(i / 4) % shapes.len()];
                let shape = ButterflyShape::new(b, d).expect("valid shape");
                let sub = random_subgraph(&shape, &mut rng);
                let rects = build_stabbing_instance(&sub).expect("instance builds").rects;
                (rects, shape.level_size())
            } else {
                let count = rng.gen_range(1..=12);
                let rects = (0..count)
                    .map(|_| {
                        let x_lo = rng.gen_range(0..8);
                        let y_lo = rng.gen_range(0..8);
                        let x_hi = rng.gen_range(x_lo..8);
                        let y_hi = rng.gen_range(y_lo..8);
                        Rect2D::new(x_lo, x_hi, y_lo, y_hi).expect("ordered corners")
                    })
                    .collect();
                (rects, 8)
            }
        })
        .collect()
}

fn c02_corner_trick_exactness() {
    for (rects, grid) in rect_corpus(0x0201) {
        let points = stabbing_to_counting(&rects).expect("grid not saturated");
        assert_eq!(points.len(), 4 * rects.len());
        for x in 0..=grid {
            for y in 0..=grid {
                assert_eq!(
                    dominance_count2d(&points, (x, y)),
                    stab2d(&rects, (x, y)).count as i64,
                    "query ({x}, {y})"
                );
            }
        }
    }
}

fn c03_four_d_lift() {
    // Same corpora as criterion 2 (same seed), decision flavor.
    for (rects, grid) in rect_corpus(0x0201) {
        let points = stabbing_to_reporting4d(&rects);
        assert_eq!(points.len(), rects.len());
        for x in 0..=grid {
            for y in 0..=grid {
                assert_eq!(
                    report4d_nonempty(&points, &lift_query((x, y))),
                    stab2d(&rects, (x, y)).stabbed,
                    "query ({x}, {y})"
                );
            }
        }
    }
}

// ------------------------------------------------------------ criterion 4

/// A random version tree with at most 200 updates in total; `chain` makes
/// every node extend the previous one.
fn random_version_tree<U>(
    rng: &mut ChaCha8Rng,
    chain: bool,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> U,
) -> VersionTree<U> {
    let budget = rng.gen_range(1..=200usize);
    let root_count = rng.gen_range(0..=budget.min(8));
    let mut spent = root_count;
    let mut tree = VersionTree::new((0..root_count).map(|_| draw(rng)).collect());
    while spent < budget && tree.node_count() < 300 {
        let parent = if chain {
            tree.node_count() - 1
        } else {
            rng.gen_range(0..tree.node_count())
        };
        let count = if rng.gen_bool(0.1) {
            0
        } else {
            rng.gen_range(1..=8).min(budget - spent)
        };
        let updates = (0..count).map(|_| draw(rng)).collect();
        tree.add_child(parent, updates).expect("parent in range");
        spent += count;
    }
    tree
}

/// The updates a version sees: its root path's updates, concatenated.
fn root_path_updates<U: Clone>(tree: &VersionTree<U>, version: usize) -> Vec<U> {
    let mut chain = Vec::new();
    let mut node = Some(version);
    while let Some(n) = node {
        chain.push(n);
        node = tree.parent(n).expect("node in range");
    }
    chain.reverse();
    chain
        .into_iter()
        .flat_map(|n| tree.updates(n).expect("node in range").iter().cloned())
        .collect()
}

fn c04_persistence_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0401);
    let machine = MarkedAncestorMachine::new(2, 3).expect("valid tree");
    let nodes = all_tree_nodes(2, 3);
    let leaves: Vec<Vec<u32>> = nodes.iter().filter(|n| n.len() == 3).cloned().collect();
    let random_op = |rng: &mut ChaCha8Rng, nodes: &[Vec<u32>]| {
        let node = nodes[rng.gen_range(0..nodes.len())].clone();
        if rng.gen_bool(0.5) {
            MaOp::Mark(node)
        } else {
            MaOp::Unmark(node)
        }
    };

    // 10^3 scripts cycling through {partial, full} x {counter, marked
    // ancestor}; full-persistence trees alternate chain and random shapes.
    for script in 0..1000usize {
        match script % 4 {
            0 => {
                let m = rng.gen_range(1..=200usize);
                let updates = vec![(); m];
                let store =
                    record_partial(CounterMachine, &updates).expect("recording succeeds");
                for tau in 0..=m as u64 {
                    let oracle = replay_fresh(&CounterMachine, &updates[..tau as usize], &())
                        .expect("oracle replays");
                    assert_eq!(store.query(&(), tau).expect("tau in range"), oracle);
                }
            }
            1 => {
                let m = rng.gen_range(1..=200usize);
                let updates: Vec<MaOp> = (0..m).map(|_| random_op(&mut rng, &nodes)).collect();
                let store =
                    record_partial(machine.clone(), &updates).expect("recording succeeds");
                for _ in 0..32 {
                    let tau = rng.gen_range(0..=m as u64);
                    let leaf = leaves[rng.gen_range(0..leaves.len())].clone();
                    let oracle = replay_fresh(&machine, &updates[..tau as usize], &leaf)
                        .expect("oracle replays");
                    assert_eq!(store.query(&leaf, tau).expect("tau in range"), oracle);
                }
            }
            2 => {
                let chain = (script / 4) % 2 == 0;
                let tree = random_version_tree(&mut rng, chain, |_| ());
                let store = record_full(CounterMachine, &tree).expect("recording succeeds");
                assert_eq!(store.version_count(), tree.node_count());
                for version in 0..tree.node_count() {
                    let updates = root_path_updates(&tree, version);
                    let oracle =
                        replay_fresh(&CounterMachine, &updates, &()).expect("oracle replays");
                    assert_eq!(store.query(&(), version).expect("version in range"), oracle);
                }
            }
            _ => {
                let chain = (script / 4) % 2 == 0;
                let tree =
                    random_version_tree(&mut rng, chain, |rng| random_op(rng, &nodes));
                let store = record_full(machine.clone(), &tree).expect("recording succeeds");
                assert_eq!(store.version_count(), tree.node_count());
                for version in 0..tree.node_count() {
                    let updates = root_path_updates(&tree, version);
                    for _ in 0..4 {
                        let leaf = leaves[rng.gen_range(0..leaves.len())].clone();
                        let oracle =
                            replay_fresh(&machine, &updates, &leaf).expect("oracle replays");
                        assert_eq!(
                            store.query(&leaf, version).expect("version in range"),
                            oracle
                        );
                    }
                }
            }
        }
    }
}

// ------------------------------------------------------------ criterion 5

fn check_fpma_subgraph(shape: &ButterflyShape, sub: &Subgraph, pairs: &[(Vec<u32>, Vec<u32>)]) {
    let input = build_fpma_input(sub).expect("input builds");
    assert_eq!(input.tree().total_updates(), sub.missing_count());
    let store = FpmaStore::new(sub).expect("store builds");
    for (source, sink) in pairs {
        assert_eq!(
            store.reachable(source, sink).expect("pair in range"),
            sub.reachable(source, sink).expect("pair in range"),
            "b={} d={} pair {source:?} -> {sink:?}",
            shape.degree(),
            shape.depth()
        );
    }
}

fn c05_reduction2_isomorphism() {
    // Slot bijection round-trips over every edge of three shapes.
    for (b, d) in [(2u32, 2usize), (2, 3), (3, 2)] {
        let shape = ButterflyShape::new(b, d).expect("valid shape");
        let mut seen = BTreeSet::new();
        for edge in shape.edges() {
            let slot = edge_to_slot(&shape, &edge).expect("edge maps");
            assert_eq!(slot_to_edge(&shape, &slot).expect("slot maps back"), edge);
            assert!(seen.insert(slot), "duplicate slot");
        }
        assert_eq!(seen.len() as u64, shape.edge_count());
    }

    // Exhaustive: all 2^16 subgraphs at b=2, d=2.
    let shape = ButterflyShape::new(2, 2).expect("valid shape");
    let edges: Vec<EdgeRef> = shape.edges().collect();
    let pairs = all_pairs(&shape);
    for mask in 0u32..1 << edges.len() {
        let sub = subgraph_from_mask(&shape, &edges, mask);
        check_fpma_subgraph(&shape, &sub, &pairs);
    }

    // Sampled: 10^3 subgraphs at b=2, d=3.
    let shape = ButterflyShape::new(2, 3).expect("valid shape");
    let pairs = all_pairs(&shape);
    let mut rng = ChaCha8Rng::seed_from_u64(0x0501);
    for _ in 0..1000 {
        let sub = random_subgraph(&shape, &mut rng);
        check_fpma_subgraph(&shape, &sub, &pairs);
    }
}

// ------------------------------------------------------------ criterion 6

fn check_lsd_chain(inst: &LsdInstance) {
    let n = inst.n_blocks() as u64;
    let blocked = to_blocked(inst).expect("|S| = N by construction");
    assert_eq!(blocked.instance.intersects(), inst.intersects());
    assert_eq!(blocked.transcript.alice_bits(), 2 * n);
    assert_eq!(blocked.transcript.bob_bits(), 0);

    let two = to_two_blocked(&blocked.instance).expect("B divides N by construction");
    assert_eq!(two.instance.intersects(), inst.intersects());
    assert_eq!(two.transcript.alice_bits(), 2 * n);
    assert_eq!(two.transcript.bob_bits(), 0);
}

fn c06_lsd_chain() {
    // Exhaustive at N=2, B=2: every |S| = 2 subset of the 4-element
    // universe against every T subset — 96 combinations.
    let combos = binomial(4, 2).expect("small binomial");
    let mut seen = 0;
    for rank in 0..combos {
        let s = unrank_combination(4, 2, rank).expect("rank in range");
        for t_mask in 0u32..16 {
            let t = (0..4u64).filter(|e| t_mask >> e & 1 == 1);
            let inst = LsdInstance::new(2, 2, s.iter().copied(), t).expect("valid instance");
            check_lsd_chain(&inst);
            seen += 1;
        }
    }
    assert_eq!(seen, 96);

    // Randomized: 10^3 trials at N=8, B=4.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0601);
    let universe = 32u64;
    let total = binomial(universe, 8).expect("small binomial");
    for _ in 0..1000 {
        let s = unrank_combination(universe, 8, rng.gen_range(0..total))
            .expect("rank in range");
        let density = rng.gen_range(0.05..=0.5);
        let t: Vec<u64> = (0..universe).filter(|_| rng.gen_bool(density)).collect();
        let inst = LsdInstance::new(8, 4, s, t).expect("valid instance");
        check_lsd_chain(&inst);
    }
}

// ------------------------------------------------------------ criterion 7

fn c07_partial_match_reduction() {
    // The code width law the dimension claim rests on.
    assert_eq!(code_width(2).expect("valid size"), 2);
    assert_eq!(code_width(4).expect("valid size"), 4);

    // Exhaustive at N=2 for B in {2, 4}: all S vectors x all T subsets.
    for block_size in [2usize, 4] {
        let n = 2usize;
        let width = code_width(block_size).expect("valid size");
        for s_code in 0..block_size * block_size {
            let s = vec![(s_code % block_size) as u32, (s_code / block_size) as u32];
            for t_mask in 0u32..1 << (n * block_size) {
                let t = (0..(n * block_size) as u32)
                    .filter(|e| t_mask >> e & 1 == 1)
                    .map(|e| (e / block_size as u32, e % block_size as u32));
                let inst =
                    BlockedLsdInstance::new(block_size, s.clone(), t).expect("valid instance");
                let red = blocked_to_partial_match(&inst).expect("reduction builds");
                assert_eq!(red.dimension(), n * width);
                assert_eq!(red.dominates().expect("widths align"), inst.intersects());
                assert_eq!(red.matches().expect("widths align"), inst.intersects());
            }
        }
    }
}

// ------------------------------------------------------------ criterion 8

fn check_reachability_structure(red: &ReachabilityReduction) {
    let shape = red.shape();
    let d = shape.depth();

    // Query count is exactly b^d = N/d.
    assert_eq!(red.queries().len() as u64, shape.level_size());

    // Alice's level-j edges form a perfect matching between consecutive
    // vertex levels.
    for level in 0..d {
        let at_level: Vec<&EdgeRef> =
            red.alice_edges().iter().filter(|e| e.level() == level).collect();
        assert_eq!(at_level.len() as u64, shape.level_size());
        let tails: BTreeSet<Vec<u32>> = at_level.iter().map(|e| e.tail().to_vec()).collect();
        let heads: BTreeSet<Vec<u32>> = at_level.iter().map(|e| e.head()).collect();
        assert_eq!(tails.len() as u64, shape.level_size(), "level {level} tails");
        assert_eq!(heads.len() as u64, shape.level_size(), "level {level} heads");
    }

    // The query paths are vertex-disjoint at every level and cover
    // Alice's edges exactly.
    for level in 0..=d {
        let mut seen = BTreeSet::new();
        for (source, sink) in red.queries() {
            let path = shape.path_edges(source, sink).expect("pair in range");
            let vertex = if level == 0 {
                source.clone()
            } else {
                path[level - 1].head()
            };
            assert!(seen.insert(vertex), "level {level} vertex reused");
        }
    }
    let mut covered = BTreeSet::new();
    for (source, sink) in red.queries() {
        for edge in shape.path_edges(source, sink).expect("pair in range") {
            assert!(red.alice_edges().contains(&edge), "path leaves Alice's edges");
            covered.insert(edge);
        }
    }
    assert_eq!(covered.len(), red.alice_edges().len());
}

/// A uniformly random S (one permutation per super-block) plus a random
/// T subset over the (x, y, z) universe.
fn random_two_blocked(
    rng: &mut ChaCha8Rng,
    super_blocks: usize,
    block_size: usize,
) -> TwoBlockedLsdInstance {
    let mut s = Vec::new();
    for x in 0..super_blocks as u32 {
        let mut perm: Vec<u32> = (0..block_size as u32).collect();
        perm.shuffle(rng);
        s.extend(perm.into_iter().enumerate().map(|(y, z)| (x, y as u32, z)));
    }
    let density = rng.gen_range(0.0..=0.5);
    let mut t = Vec::new();
    for x in 0..super_blocks as u32 {
        for y in 0..block_size as u32 {
            for z in 0..block_size as u32 {
                if rng.gen_bool(density) {
                    t.push((x, y, z));
                }
            }
        }
    }
    TwoBlockedLsdInstance::new(super_blocks, block_size, s, t).expect("valid instance")
}

fn c08_reachability_reduction() {
    // Exhaustive at b=2, d=1: both S permutations x all 16 T subsets.
    let shape = ButterflyShape::new(2, 1).expect("valid shape");
    for perm in [[0u32, 1], [1, 0]] {
        let s: Vec<(u32, u32, u32)> =
            perm.iter().enumerate().map(|(y, &z)| (0, y as u32, z)).collect();
        for t_mask in 0u32..16 {
            let t = (0..4u32)
                .filter(|e| t_mask >> e & 1 == 1)
                .map(|e| (0, e / 2, e % 2));
            let inst =
                TwoBlockedLsdInstance::new(1, 2, s.iter().copied(), t).expect("valid instance");
            let red =
                two_blocked_to_reachability(&inst, shape.clone()).expect("dimensions align");
            check_reachability_structure(&red);
            assert_eq!(red.some_unreachable().expect("queries run"), inst.intersects());
        }
    }

    // Randomized: 10^3 T-sets at b=2, d=2 with random permutations.
    let shape = ButterflyShape::new(2, 2).expect("valid shape");
    let mut rng = ChaCha8Rng::seed_from_u64(0x0801);
    for _ in 0..1000 {
        let inst = random_two_blocked(&mut rng, shape.microset_count() as usize, 2);
        let red = two_blocked_to_reachability(&inst, shape.clone()).expect("dimensions align");
        check_reachability_structure(&red);
        assert_eq!(red.some_unreachable().expect("queries run"), inst.intersects());
    }

    // The element dictionary is a bijection on the exercised shapes.
    for (b, d) in [(2u32, 1usize), (2, 2)] {
        let shape = ButterflyShape::new(b, d).expect("valid shape");
        let mut seen = BTreeSet::new();
        for edge in shape.edges() {
            let (x, y, z) = edge_to_element(&shape, &edge).expect("edge maps");
            assert_eq!(element_to_edge(&shape, x, y, z).expect("element maps"), edge);
            assert!(seen.insert((x, y, z)));
        }
        assert_eq!(seen.len() as u64, shape.edge_count());
    }
}

// ------------------------------------------------------------ criterion 9

fn c09_hard_distributions() {
    // Exact intersection probability 1/2 by enumerating the designated
    // block's joint distribution (the N=1 case).
    for block_size in [2usize, 4] {
        assert_eq!(
            designated_intersection_probability(block_size).expect("enumerable size"),
            (1, 2)
        );
    }

    // Exact conditional entropies by enumeration.
    for block_size in [2usize, 4, 8] {
        let (h_s_given_t, h_t_given_s) =
            block_entropy_exact(block_size).expect("enumerable size");
        let expected_s = (block_size as f64 / 2.0).log2();
        let expected_t = block_size as f64 / 2.0 - 1.0;
        assert!(
            (h_s_given_t - expected_s).abs() < 1e-9,
            "B={block_size}: H(S|T) = {h_s_given_t}, expected {expected_s}"
        );
        assert!(
            (h_t_given_s - expected_t).abs() < 1e-9,
            "B={block_size}: H(T|S) = {h_t_given_s}, expected {expected_t}"
        );
    }

    // Monte Carlo: 10^4 independent draws land within 0.5 +/- 0.05.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0901);
    let trials = 10_000u32;
    let mut hits = 0u32;
    for _ in 0..trials {
        if sample_dk(4, 4, 2, rng.gen()).expect("valid draw").intersects() {
            hits += 1;
        }
    }
    let freq = f64::from(hits) / f64::from(trials);
    assert!((freq - 0.5).abs() <= 0.05, "empirical rate {freq}");

    // D_yes never intersects.
    for _ in 0..1000 {
        assert!(!sample_dyes(4, 4, rng.gen()).expect("valid draw").intersects());
    }
}

// ----------------------------------------------------------- criterion 10

fn c10_compiler_accounting() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1001);
    for program in 0..100usize {
        let size = rng.gen_range(4..=16usize);
        let word_bits = rng.gen_range(1..=16u32);
        let mut mem = CellMemory::new(size, word_bits).expect("valid geometry");
        for addr in 0..size {
            mem.write(addr, rng.gen_range(0..1u64 << word_bits)).expect("value fits");
        }

        let k = rng.gen_range(1..=size.min(4));
        let queries: Vec<Box<dyn ProbeQuery>> = (0..k)
            .map(|_| -> Box<dyn ProbeQuery> {
                if rng.gen_bool(0.5) {
                    let len = rng.gen_range(0..=6);
                    let addrs = (0..len).map(|_| rng.gen_range(0..size)).collect();
                    Box::new(ScriptedQuery::new(addrs))
                } else {
                    Box::new(ChainedQuery::new(
                        rng.gen_range(0..size),
                        rng.gen_range(1..=6),
                        size,
                    ))
                }
            })
            .collect();

        // Single-query accounting: t probes cost exactly t*ceil(lg S)
        // from Alice and t*w from Bob.
        let addr_width = u64::from(bits_for_range(size as u128));
        for query in &queries {
            let (answer, probes) = run_direct(&mem, query.as_ref(), 64).expect("terminates");
            let compiled =
                compile_single_query(&mem, query.as_ref(), 64).expect("compiles");
            let t = compiled.probes.len() as u64;
            assert_eq!(compiled.answer, answer, "program {program}");
            assert_eq!(compiled.probes, probes);
            assert_eq!(compiled.transcript.alice_bits(), t * addr_width);
            assert_eq!(compiled.transcript.bob_bits(), t * u64::from(word_bits));
        }

        // Parallel accounting: each round costs ceil(lg C(S, k)) from
        // Alice and k*w from Bob; the collision maps are tallied apart.
        let refs: Vec<&dyn ProbeQuery> = queries.iter().map(AsRef::as_ref).collect();
        let batch = compile_parallel_queries(&mem, &refs, 64).expect("compiles");
        let rounds = batch.accounting.rounds as u64;
        let rank_width = u64::from(bits_for_range(
            binomial(size as u64, k as u64).expect("small binomial"),
        ));
        assert_eq!(batch.transcript.alice_bits(), rounds * rank_width);
        assert_eq!(
            batch.transcript.bob_bits(),
            rounds * k as u64 * u64::from(word_bits)
        );
        assert_eq!(
            batch.accounting.assignment_bits,
            rounds * k as u64 * u64::from(bits_for_range(k as u128))
        );
        assert_eq!(batch.accounting.assignments.len() as u64, rounds);

        // Compiled answers equal direct execution, and the transcript
        // decodes back to real memory contents.
        for (i, query) in refs.iter().enumerate() {
            let (answer, _) = run_direct(&mem, *query, 64).expect("terminates");
            assert_eq!(batch.answers[i], answer, "program {program} query {i}");
        }
        let decoded =
            decode_parallel(&batch.transcript, size, word_bits, k).expect("decodes");
        assert_eq!(decoded.len() as u64, rounds);
        for (addrs, values) in &decoded {
            for (addr, value) in addrs.iter().zip(values) {
                assert_eq!(mem.read(*addr).expect("address in range"), *value);
            }
        }
    }
}

// ----------------------------------------------------------- criterion 11

fn c11_end_to_end_pipeline() {
    let shape = ButterflyShape::new(2, 2).expect("valid shape");
    let mut rng = ChaCha8Rng::seed_from_u64(0x1101);
    let mut intersecting = 0u32;
    for trial in 0..100 {
        let inst = random_two_blocked(&mut rng, shape.microset_count() as usize, 2);
        let red = two_blocked_to_reachability(&inst, shape.clone()).expect("dimensions align");

        // Bob's subgraph packed one bit per edge; each query path probes
        // its cells, stopping at the first missing edge.
        let mem = reachability_memory(red.subgraph(), 1).expect("memory builds");
        let queries: Vec<ReachProbeQuery> = red
            .queries()
            .iter()
            .map(|(source, sink)| ReachProbeQuery::new(&shape, 1, source, sink))
            .collect::<lbx::Result<_>>()
            .expect("plans build");
        let refs: Vec<&dyn ProbeQuery> =
            queries.iter().map(|q| q as &dyn ProbeQuery).collect();

        let batch =
            compile_parallel_queries(&mem, &refs, shape.depth()).expect("compiles");
        let recovered = batch.answers.iter().any(|&reachable| !reachable);
        assert_eq!(recovered, inst.intersects(), "trial {trial}");
        intersecting += u32::from(inst.intersects());

        // Sanity on the memory encoding itself: bits match edge presence.
        for edge in shape.edges() {
            let idx = shape.edge_index(&edge).expect("edge in range");
            let bit = mem.read(idx as usize).expect("cell in range");
            assert_eq!(bit == 1, red.subgraph().has_edge(&edge));
        }
    }
    // The seeded corpus must exercise both outcomes to mean anything.
    assert!(intersecting > 0 && intersecting < 100, "degenerate corpus");
}
