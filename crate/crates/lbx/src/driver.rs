//! The batch driver behind the CLI: per-reduction verification suites,
//! hard-distribution statistics, and the bound calculator.
//!
//! Each suite checks one reduction's contract over a corpus. The corpus is
//! exhaustive when the `exhaustive` flag is set *and* the parameters sit
//! below that suite's hard-coded threshold; otherwise it is a seeded
//! randomized corpus of `trials` instances. Both the decision and the
//! threshold are echoed into the report, so a given configuration always
//! runs the same work and emits byte-identical output.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::butterfly::{ButterflyShape, EdgeRef, Subgraph};
use crate::combinatorics::{binomial, bits_for_range, unrank_combination};
use crate::comm::{
    blocked_to_partial_match, bound_calculator, code_width, compile_parallel_queries,
    compile_single_query, decode_parallel, reachability_memory, run_direct,
    two_blocked_to_reachability, CellMemory, ChainedQuery, ProbeQuery, ReachProbeQuery,
    ScriptedQuery,
};
use crate::error::{Error, Result};
use crate::geo::{
    build_stabbing_instance, leaf_index, lift_query, pair_to_point, stabbing_to_counting,
    stabbing_to_reporting4d, MaToStab1d,
};
use crate::lsd::{
    block_entropy_exact, designated_intersection_probability, encode_counts_binomial,
    decode_counts_binomial, sample_dk, sample_dyes, to_blocked, to_two_blocked,
    BlockedLsdInstance, LsdInstance, TwoBlockedLsdInstance,
};
use crate::persistence::{DecrementalMarkedAncestor, FpmaStore, build_fpma_input};
use crate::problems::{
    dominance_count2d, ma_query, report4d_nonempty, stab2d, MaOp, MarkedTree, Rect2D,
};
use crate::report::{CheckRecord, Report};

/// The reductions `verify` knows how to drive.
pub const VERIFY_NAMES: &[&str] = &[
    "stabbing",
    "counting",
    "reporting4d",
    "ma-stab1d",
    "fpma",
    "dsu-ma",
    "blocked",
    "two-blocked",
    "partial-match",
    "reach-lsd",
    "compiler",
];

/// Parameters for `verify`, one knob per CLI flag.
#[derive(Debug, Clone)]
pub struct VerifyParams {
    /// Butterfly degree (`--b`).
    pub degree: u32,
    /// Butterfly depth (`--d`).
    pub depth: usize,
    /// Block count for the disjointness suites (`--N`).
    pub blocks: usize,
    /// Block size for the disjointness suites (`--B`).
    pub block_size: usize,
    /// Batch width for the compiler suite (`--k`).
    pub parallel: usize,
    pub trials: u64,
    pub seed: u64,
    /// Prefer the exhaustive corpus where the thresholds allow it.
    pub exhaustive: bool,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            degree: 2,
            depth: 2,
            blocks: 8,
            block_size: 4,
            parallel: 2,
            trials: 1000,
            seed: 1,
            exhaustive: false,
        }
    }
}

/// Exhaustive subgraph sweeps enumerate `2^edges` subsets; allow up to 16
/// edges (65536 subgraphs).
const SUBGRAPH_EDGE_LIMIT: u64 = 16;
/// Exhaustive mark-set sweeps enumerate `2^nodes` subsets.
const MARK_NODE_LIMIT: u64 = 7;
/// Exhaustive unmark-order sweeps enumerate `nodes!` permutations.
const ORDER_NODE_LIMIT: u64 = 7;
/// Exhaustive disjointness sweeps enumerate `(S choices) · 2^(N·B)` pairs.
const LSD_COMBO_LIMIT: u128 = 1 << 20;
/// Exhaustive reachability sweeps enumerate `(b!)^m · 2^(m·b²)` pairs.
const REACH_COMBO_LIMIT: u128 = 1 << 17;

fn echo_verify(report: &mut Report, params: &VerifyParams) {
    report.parameter("b", params.degree);
    report.parameter("d", params.depth);
    report.parameter("N", params.blocks);
    report.parameter("B", params.block_size);
    report.parameter("k", params.parallel);
    report.parameter("trials", params.trials);
    report.parameter("seed", params.seed);
    report.parameter("exhaustive", params.exhaustive);
}

/// Run one reduction's suite and assemble its report.
pub fn cmd_verify(name: &str, params: &VerifyParams) -> Result<Report> {
    let mut report = Report::new(format!("verify {name}"));
    echo_verify(&mut report, params);
    let check = match name {
        "stabbing" => verify_stabbing(params)?,
        "counting" => verify_counting(params)?,
        "reporting4d" => verify_reporting4d(params)?,
        "ma-stab1d" => verify_ma_stab1d(params)?,
        "fpma" => verify_fpma(params)?,
        "dsu-ma" => verify_dsu_ma(params)?,
        "blocked" => verify_blocked(params)?,
        "two-blocked" => verify_two_blocked(params)?,
        "partial-match" => verify_partial_match(params)?,
        "reach-lsd" => verify_reach_lsd(params)?,
        "compiler" => verify_compiler(params)?,
        other => {
            return Err(Error::param(format!(
                "unknown reduction {other:?}; known: {}",
                VERIFY_NAMES.join(", ")
            )))
        }
    };
    report.push_check(check);
    Ok(report)
}

/// Drive `per_subgraph` over the suite's subgraph corpus: all `2^edges`
/// missing-edge subsets in exhaustive mode, else `trials` seeded draws
/// with a fresh density per draw.
fn run_subgraph_corpus(
    shape: &ButterflyShape,
    params: &VerifyParams,
    check: &mut CheckRecord,
    mut per_subgraph: impl FnMut(&Subgraph, &mut CheckRecord) -> Result<()>,
) -> Result<()> {
    let edges: Vec<EdgeRef> = shape.edges().collect();
    check.detail(
        "exhaustive_threshold",
        format!("edge count <= {SUBGRAPH_EDGE_LIMIT}"),
    );
    if params.exhaustive && edges.len() as u64 <= SUBGRAPH_EDGE_LIMIT {
        check.detail("mode", "exhaustive");
        check.detail("subgraphs", 1u64 << edges.len());
        for mask in 0u64..1 << edges.len() {
            let missing = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e.clone());
            let sub = Subgraph::with_missing(shape.clone(), missing)?;
            per_subgraph(&sub, check)?;
        }
    } else {
        check.detail("mode", "randomized");
        check.detail("subgraphs", params.trials);
        if params.exhaustive {
            check.detail("exhaustive_fallback", "parameters exceed the threshold");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        for _ in 0..params.trials {
            let density: f64 = rng.gen();
            let missing = edges.iter().filter(|_| rng.gen_bool(density)).cloned();
            let sub = Subgraph::with_missing(shape.clone(), missing)?;
            per_subgraph(&sub, check)?;
        }
    }
    Ok(())
}

fn all_pairs(shape: &ButterflyShape) -> Vec<(Vec<u32>, Vec<u32>)> {
    let vectors: Vec<Vec<u32>> = shape.vectors().collect();
    let mut pairs = Vec::with_capacity(vectors.len() * vectors.len());
    for s in &vectors {
        for t in &vectors {
            pairs.push((s.clone(), t.clone()));
        }
    }
    pairs
}

fn verify_stabbing(params: &VerifyParams) -> Result<CheckRecord> {
    let shape = ButterflyShape::new(params.degree, params.depth)?;
    let mut check = CheckRecord::new("reachable iff pair point unstabbed");
    let pairs = all_pairs(&shape);
    run_subgraph_corpus(&shape, params, &mut check, |sub, check| {
        let inst = build_stabbing_instance(sub)?;
        for (source, sink) in &pairs {
            let q = pair_to_point(&shape, source, sink)?;
            let reach = sub.reachable(source, sink)?;
            check.tally(reach == !stab2d(&inst.rects, q).stabbed);
        }
        Ok(())
    })?;
    Ok(check)
}

fn random_rects(rng: &mut ChaCha8Rng, grid: u64) -> Vec<Rect2D> {
    let count = rng.gen_range(1..=12);
    (0..count)
        .map(|_| {
            let x_lo = rng.gen_range(0..grid);
            let x_hi = rng.gen_range(x_lo..grid);
            let y_lo = rng.gen_range(0..grid);
            let y_hi = rng.gen_range(y_lo..grid);
            Rect2D::new(x_lo, x_hi, y_lo, y_hi).expect("ordered bounds")
        })
        .collect()
}

fn verify_counting(params: &VerifyParams) -> Result<CheckRecord> {
    let mut check = CheckRecord::new("corner counts equal exact stab counts");
    check.detail("mode", "randomized");
    check.detail("exhaustive_threshold", "not applicable (unbounded rectangle corpus)");
    check.detail("rect_sets", params.trials);
    let grid = 8u64;
    check.detail("grid", format!("queries over [0, {grid}]^2"));
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..params.trials {
        let rects = random_rects(&mut rng, grid);
        let points = stabbing_to_counting(&rects)?;
        for qx in 0..=grid {
            for qy in 0..=grid {
                let exact = stab2d(&rects, (qx, qy)).count as i64;
                check.tally(dominance_count2d(&points, (qx, qy)) == exact);
            }
        }
    }
    // Corners past the coordinate ceiling cannot be represented; the
    // translation must refuse rather than wrap.
    let sky = Rect2D::new(0, u64::MAX, 0, 0).expect("valid bounds");
    check.tally(stabbing_to_counting(&[sky]).is_err());
    Ok(check)
}

fn verify_reporting4d(params: &VerifyParams) -> Result<CheckRecord> {
    let mut check = CheckRecord::new("4d emptiness equals stabbing");
    check.detail("mode", "randomized");
    check.detail("exhaustive_threshold", "not applicable (unbounded rectangle corpus)");
    check.detail("rect_sets", params.trials);
    let grid = 8u64;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..params.trials {
        let rects = random_rects(&mut rng, grid);
        let points = stabbing_to_reporting4d(&rects);
        for qx in 0..=grid {
            for qy in 0..=grid {
                let stabbed = stab2d(&rects, (qx, qy)).stabbed;
                check.tally(report4d_nonempty(&points, &lift_query((qx, qy))) == stabbed);
            }
        }
    }
    Ok(check)
}

fn all_nodes(degree: u32, depth: usize) -> Vec<Vec<u32>> {
    let mut nodes = Vec::new();
    for len in 0..=depth {
        let count = (degree as u64).pow(len as u32);
        for mut rank in 0..count {
            let mut digits = vec![0u32; len];
            for slot in (0..len).rev() {
                digits[slot] = (rank % degree as u64) as u32;
                rank /= degree as u64;
            }
            nodes.push(digits);
        }
    }
    nodes
}

fn leaves(degree: u32, depth: usize) -> Vec<Vec<u32>> {
    all_nodes(degree, depth)
        .into_iter()
        .filter(|n| n.len() == depth)
        .collect()
}

/// Check every leaf of the tree against the interval translation.
fn ma_leaves_agree(
    translator: &MaToStab1d,
    tree: &MarkedTree,
    leaves: &[Vec<u32>],
    check: &mut CheckRecord,
) -> Result<()> {
    for leaf in leaves {
        let idx = leaf_index(translator.degree(), translator.depth(), leaf)?;
        check.tally(translator.stab(idx) == ma_query(tree, leaf)?);
    }
    Ok(())
}

fn verify_ma_stab1d(params: &VerifyParams) -> Result<CheckRecord> {
    let (b, d) = (params.degree, params.depth);
    let mut check = CheckRecord::new("marked-ancestor equals 1d stabbing");
    let nodes = all_nodes(b, d);
    let leaves = leaves(b, d);
    check.detail(
        "exhaustive_threshold",
        format!("node count <= {MARK_NODE_LIMIT}"),
    );
    if params.exhaustive && nodes.len() as u64 <= MARK_NODE_LIMIT {
        check.detail("mode", "exhaustive");
        check.detail("mark_sets", 1u64 << nodes.len());
        for mask in 0u64..1 << nodes.len() {
            let mut translator = MaToStab1d::new(b, d)?;
            let mut tree = MarkedTree::new(b, d)?;
            let marked: Vec<&Vec<u32>> = nodes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, n)| n)
                .collect();
            for node in &marked {
                let op = MaOp::Mark((*node).clone());
                translator.apply(&op)?;
                tree.apply(&op)?;
                ma_leaves_agree(&translator, &tree, &leaves, &mut check)?;
            }
            // Tear back down, checking after every deletion too.
            for node in marked.iter().rev() {
                let op = MaOp::Unmark((*node).clone());
                translator.apply(&op)?;
                tree.apply(&op)?;
                ma_leaves_agree(&translator, &tree, &leaves, &mut check)?;
            }
        }
    } else {
        check.detail("mode", "randomized");
        check.detail("scripts", params.trials);
        if params.exhaustive {
            check.detail("exhaustive_fallback", "parameters exceed the threshold");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        for _ in 0..params.trials {
            let mut translator = MaToStab1d::new(b, d)?;
            let mut tree = MarkedTree::new(b, d)?;
            let mut marked: BTreeSet<usize> = BTreeSet::new();
            let ops = rng.gen_range(1..=200);
            for _ in 0..ops {
                let pick = rng.gen_range(0..nodes.len());
                let op = if marked.contains(&pick) {
                    marked.remove(&pick);
                    MaOp::Unmark(nodes[pick].clone())
                } else {
                    marked.insert(pick);
                    MaOp::Mark(nodes[pick].clone())
                };
                translator.apply(&op)?;
                tree.apply(&op)?;
                ma_leaves_agree(&translator, &tree, &leaves, &mut check)?;
            }
        }
    }
    Ok(check)
}

fn verify_fpma(params: &VerifyParams) -> Result<CheckRecord> {
    let shape = ButterflyShape::new(params.degree, params.depth)?;
    let mut check = CheckRecord::new("reachability equals persistent marked-ancestor");
    let pairs = all_pairs(&shape);
    run_subgraph_corpus(&shape, params, &mut check, |sub, check| {
        // One update per missing edge, placed by the slot bijection.
        let input = build_fpma_input(sub)?;
        check.tally(input.tree().total_updates() == sub.missing_count());
        let store = FpmaStore::new(sub)?;
        for (source, sink) in &pairs {
            check.tally(store.reachable(source, sink)? == sub.reachable(source, sink)?);
        }
        Ok(())
    })?;
    Ok(check)
}

fn verify_dsu_ma(params: &VerifyParams) -> Result<CheckRecord> {
    let (b, d) = (params.degree, params.depth);
    let mut check = CheckRecord::new("union-find equals decremental marked-ancestor");
    let nodes = all_nodes(b, d);
    let leaves = leaves(b, d);
    check.detail(
        "exhaustive_threshold",
        format!("node count <= {ORDER_NODE_LIMIT}"),
    );

    let run_order = |order: &[usize], check: &mut CheckRecord| -> Result<()> {
        let mut fast = DecrementalMarkedAncestor::new(b, d)?;
        let mut slow = MarkedTree::new(b, d)?;
        for node in &nodes {
            slow.mark(node)?;
        }
        for &i in order {
            fast.unmark(&nodes[i])?;
            slow.unmark(&nodes[i])?;
            for leaf in &leaves {
                check.tally(fast.query(leaf)? == ma_query(&slow, leaf)?);
            }
        }
        Ok(())
    };

    if params.exhaustive && nodes.len() as u64 <= ORDER_NODE_LIMIT {
        check.detail("mode", "exhaustive");
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        let mut count = 0u64;
        permute(&mut order, 0, &mut |order| {
            count += 1;
            run_order(order, &mut check)
        })?;
        check.detail("unmark_orders", count);
    } else {
        check.detail("mode", "randomized");
        check.detail("unmark_orders", params.trials);
        if params.exhaustive {
            check.detail("exhaustive_fallback", "parameters exceed the threshold");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        for _ in 0..params.trials {
            let mut order: Vec<usize> = (0..nodes.len()).collect();
            order.shuffle(&mut rng);
            run_order(&order, &mut check)?;
        }
    }
    Ok(check)
}

/// Heap's algorithm, calling `visit` on every permutation of `items`.
fn permute(
    items: &mut [usize],
    fixed: usize,
    visit: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if fixed == items.len() {
        return visit(items);
    }
    for swap in fixed..items.len() {
        items.swap(fixed, swap);
        permute(items, fixed + 1, visit)?;
        items.swap(fixed, swap);
    }
    Ok(())
}

/// Check one raw instance through the blocked rebalancing.
fn check_blocked_instance(inst: &LsdInstance, check: &mut CheckRecord) -> Result<()> {
    let n = inst.n_blocks() as u64;
    let red = to_blocked(inst)?;
    check.tally(red.instance.intersects() == inst.intersects());
    check.tally(red.transcript.alice_bits() == 2 * n && red.transcript.bob_bits() == 0);
    check.tally(red.origins.len() == inst.n_blocks());
    // The compact counts encoding round-trips within its budget.
    let counts = inst.s_block_counts();
    let bits = encode_counts_binomial(&counts)?;
    check.tally(bits.len() as u64 <= 2 * n - 1);
    check.tally(decode_counts_binomial(&bits, n, n)? == counts);
    Ok(())
}

fn verify_blocked(params: &VerifyParams) -> Result<CheckRecord> {
    let (n, b) = (params.blocks, params.block_size);
    let mut check = CheckRecord::new("blocked rebalancing preserves the answer in 2N bits");
    let universe = (n * b) as u64;
    let combos = binomial(universe, n as u64)?
        .checked_mul(1u128 << universe.min(127))
        .filter(|_| universe <= 63);
    check.detail("exhaustive_threshold", format!("C(N*B, N) * 2^(N*B) <= {LSD_COMBO_LIMIT}"));
    match combos {
        Some(total) if params.exhaustive && total <= LSD_COMBO_LIMIT => {
            check.detail("mode", "exhaustive");
            check.detail("instances_enumerated", total);
            let s_count = binomial(universe, n as u64)?;
            for s_rank in 0..s_count {
                let s = unrank_combination(universe, n as u64, s_rank)?;
                for t_mask in 0u64..1 << universe {
                    let t = (0..universe).filter(|i| t_mask >> i & 1 == 1);
                    let inst = LsdInstance::new(n, b, s.iter().copied(), t)?;
                    check_blocked_instance(&inst, &mut check)?;
                }
            }
        }
        _ => {
            check.detail("mode", "randomized");
            check.detail("instances_enumerated", params.trials);
            if params.exhaustive {
                check.detail("exhaustive_fallback", "parameters exceed the threshold");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            for _ in 0..params.trials {
                let mut s: BTreeSet<u64> = BTreeSet::new();
                while s.len() < n {
                    s.insert(rng.gen_range(0..universe));
                }
                let density: f64 = rng.gen();
                let t = (0..universe).filter(|_| rng.gen_bool(density));
                let inst = LsdInstance::new(n, b, s.iter().copied(), t)?;
                check_blocked_instance(&inst, &mut check)?;
            }
        }
    }
    Ok(check)
}

/// Drive `per_instance` over blocked instances: all `B^N` S-vectors times
/// all `2^(N·B)` T-sets in exhaustive mode, else `trials` seeded draws.
fn run_blocked_corpus(
    params: &VerifyParams,
    check: &mut CheckRecord,
    mut per_instance: impl FnMut(&BlockedLsdInstance, &mut CheckRecord) -> Result<()>,
) -> Result<()> {
    let (n, b) = (params.blocks, params.block_size);
    let universe = (n * b) as u64;
    let combos = (b as u128)
        .checked_pow(n as u32)
        .and_then(|s| s.checked_mul(1u128 << universe.min(127)))
        .filter(|_| universe <= 63);
    check.detail("exhaustive_threshold", format!("B^N * 2^(N*B) <= {LSD_COMBO_LIMIT}"));
    match combos {
        Some(total) if params.exhaustive && total <= LSD_COMBO_LIMIT => {
            check.detail("mode", "exhaustive");
            check.detail("instances_enumerated", total);
            let s_count = (b as u64).pow(n as u32);
            for mut s_rank in 0..s_count {
                let mut s = vec![0u32; n];
                for slot in 0..n {
                    s[slot] = (s_rank % b as u64) as u32;
                    s_rank /= b as u64;
                }
                for t_mask in 0u64..1 << universe {
                    let t = (0..universe)
                        .filter(|i| t_mask >> i & 1 == 1)
                        .map(|i| ((i / b as u64) as u32, (i % b as u64) as u32));
                    let inst = BlockedLsdInstance::new(b, s.clone(), t)?;
                    per_instance(&inst, check)?;
                }
            }
        }
        _ => {
            check.detail("mode", "randomized");
            check.detail("instances_enumerated", params.trials);
            if params.exhaustive {
                check.detail("exhaustive_fallback", "parameters exceed the threshold");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            for _ in 0..params.trials {
                let s: Vec<u32> = (0..n).map(|_| rng.gen_range(0..b as u32)).collect();
                let density: f64 = rng.gen();
                let t = (0..universe)
                    .filter(|_| rng.gen_bool(density))
                    .map(|i| ((i / b as u64) as u32, (i % b as u64) as u32));
                let inst = BlockedLsdInstance::new(b, s, t)?;
                per_instance(&inst, check)?;
            }
        }
    }
    Ok(())
}

fn verify_two_blocked(params: &VerifyParams) -> Result<CheckRecord> {
    if params.blocks % params.block_size != 0 {
        return Err(Error::param(format!(
            "two-blocked rebalancing requires B | N, got N = {}, B = {}",
            params.blocks, params.block_size
        )));
    }
    let mut check = CheckRecord::new("two-blocked rebalancing preserves the answer in 2N bits");
    let n = params.blocks as u64;
    run_blocked_corpus(params, &mut check, |inst, check| {
        let red = to_two_blocked(inst)?;
        check.tally(red.instance.intersects() == inst.intersects());
        check.tally(red.transcript.alice_bits() == 2 * n && red.transcript.bob_bits() == 0);
        // One permutation matrix per super-block is the constructor's
        // invariant; reaching here means it held. Row provenance covers
        // every output row exactly once.
        let rows: usize = red.row_origins.iter().map(|g| g.len()).sum();
        check.tally(rows == inst.n_blocks());
        Ok(())
    })?;
    Ok(check)
}

fn verify_partial_match(params: &VerifyParams) -> Result<CheckRecord> {
    let mut check = CheckRecord::new("partial match equals intersection");
    let width = code_width(params.block_size)?;
    check.detail("code_width", width);
    run_blocked_corpus(params, &mut check, |inst, check| {
        let red = blocked_to_partial_match(inst)?;
        check.tally(red.dimension() == inst.n_blocks() * width);
        check.tally(red.matches()? == inst.intersects());
        check.tally(red.dominates()? == inst.intersects());
        Ok(())
    })?;
    Ok(check)
}

/// All permutations of `[b]`, for exhaustive S enumeration.
fn permutations(b: u32) -> Vec<Vec<u32>> {
    let mut perms = Vec::new();
    let mut items: Vec<usize> = (0..b as usize).collect();
    permute(&mut items, 0, &mut |p| {
        perms.push(p.iter().map(|&x| x as u32).collect());
        Ok(())
    })
    .expect("collection cannot fail");
    perms
}

fn reach_elements(shape: &ButterflyShape) -> Vec<(u32, u32, u32)> {
    let b = shape.degree();
    (0..shape.microset_count() as u32)
        .flat_map(|x| (0..b).flat_map(move |y| (0..b).map(move |z| (x, y, z))))
        .collect()
}

/// S-set from one permutation choice per microset.
fn s_from_perms(perms: &[&Vec<u32>]) -> Vec<(u32, u32, u32)> {
    perms
        .iter()
        .enumerate()
        .flat_map(|(x, perm)| {
            perm.iter().enumerate().map(move |(y, &z)| (x as u32, y as u32, z))
        })
        .collect()
}

fn check_reach_instance(
    shape: &ButterflyShape,
    inst: &TwoBlockedLsdInstance,
    check: &mut CheckRecord,
) -> Result<()> {
    let red = two_blocked_to_reachability(inst, shape.clone())?;
    check.tally(red.some_unreachable()? == inst.intersects());
    check.tally(red.queries().len() as u64 == shape.level_size());
    // The queries' unique paths are vertex-disjoint per level and jointly
    // cover Alice's edges — the matching structure.
    let mut covered = BTreeSet::new();
    let mut disjoint = true;
    let mut seen: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); shape.depth() + 1];
    for (source, sink) in red.queries() {
        disjoint &= seen[0].insert(source.clone());
        for (level, edge) in shape.path_edges(source, sink)?.iter().enumerate() {
            disjoint &= seen[level + 1].insert(edge.head());
            covered.insert(edge.clone());
        }
    }
    check.tally(disjoint);
    check.tally(covered == *red.alice_edges());
    Ok(())
}

fn verify_reach_lsd(params: &VerifyParams) -> Result<CheckRecord> {
    let shape = ButterflyShape::new(params.degree, params.depth)?;
    let mut check = CheckRecord::new("some pair unreachable iff sets intersect");
    let b = params.degree;
    let m = shape.microset_count();
    let elements = reach_elements(&shape);
    let perms = permutations(b);
    let factorial = perms.len() as u128;
    let combos = factorial
        .checked_pow(m as u32)
        .and_then(|s| s.checked_mul(1u128 << (elements.len() as u32).min(127)))
        .filter(|_| elements.len() <= 63);
    check.detail(
        "exhaustive_threshold",
        format!("(b!)^microsets * 2^edges <= {REACH_COMBO_LIMIT}"),
    );
    match combos {
        Some(total) if params.exhaustive && total <= REACH_COMBO_LIMIT => {
            check.detail("mode", "exhaustive");
            check.detail("instances_enumerated", total);
            let mut choice = vec![0usize; m as usize];
            loop {
                let picked: Vec<&Vec<u32>> = choice.iter().map(|&i| &perms[i]).collect();
                let s = s_from_perms(&picked);
                for t_mask in 0u64..1 << elements.len() {
                    let t: Vec<_> = elements
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| t_mask >> i & 1 == 1)
                        .map(|(_, &e)| e)
                        .collect();
                    let inst = TwoBlockedLsdInstance::new(
                        m as usize,
                        b as usize,
                        s.iter().copied(),
                        t,
                    )?;
                    check_reach_instance(&shape, &inst, &mut check)?;
                }
                // Next permutation choice, odometer style.
                let mut slot = 0;
                loop {
                    if slot == choice.len() {
                        break;
                    }
                    choice[slot] += 1;
                    if choice[slot] < perms.len() {
                        break;
                    }
                    choice[slot] = 0;
                    slot += 1;
                }
                if slot == choice.len() {
                    break;
                }
            }
        }
        _ => {
            check.detail("mode", "randomized");
            check.detail("instances_enumerated", params.trials);
            if params.exhaustive {
                check.detail("exhaustive_fallback", "parameters exceed the threshold");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            for _ in 0..params.trials {
                let picked: Vec<&Vec<u32>> =
                    (0..m).map(|_| &perms[rng.gen_range(0..perms.len())]).collect();
                let s = s_from_perms(&picked);
                let density: f64 = rng.gen();
                let t: Vec<_> =
                    elements.iter().filter(|_| rng.gen_bool(density)).copied().collect();
                let inst =
                    TwoBlockedLsdInstance::new(m as usize, b as usize, s.iter().copied(), t)?;
                check_reach_instance(&shape, &inst, &mut check)?;
            }
        }
    }
    Ok(check)
}

fn verify_compiler(params: &VerifyParams) -> Result<CheckRecord> {
    let mut check = CheckRecord::new("compiled transcripts equal direct execution");
    check.detail("mode", "randomized");
    check.detail("exhaustive_threshold", "not applicable (program corpus)");
    check.detail("programs", params.trials);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for trial in 0..params.trials {
        let size = rng.gen_range(4..=16usize);
        let word_bits = rng.gen_range(1..=16u32);
        let mask = if word_bits == 64 { u64::MAX } else { (1u64 << word_bits) - 1 };
        let mut mem = CellMemory::new(size, word_bits)?;
        for addr in 0..size {
            mem.write(addr, rng.gen::<u64>() & mask)?;
        }
        let k = params.parallel.clamp(1, size);
        let queries: Vec<Box<dyn ProbeQuery>> = (0..k)
            .map(|_| -> Box<dyn ProbeQuery> {
                if rng.gen_bool(0.5) {
                    let len = rng.gen_range(0..=5);
                    Box::new(ScriptedQuery::new(
                        (0..len).map(|_| rng.gen_range(0..size)).collect(),
                    ))
                } else {
                    Box::new(ChainedQuery::new(rng.gen_range(0..size), rng.gen_range(0..=5), size))
                }
            })
            .collect();
        let refs: Vec<&dyn ProbeQuery> = queries.iter().map(|q| q.as_ref()).collect();

        let mut longest = 0u64;
        for query in &refs {
            let (answer, probes) = run_direct(&mem, *query, 1000)?;
            let single = compile_single_query(&mem, *query, 1000)?;
            check.tally(single.answer == answer);
            let t = probes.len() as u64;
            check.tally(
                single.transcript.alice_bits() == t * bits_for_range(size as u128) as u64,
            );
            check.tally(single.transcript.bob_bits() == t * word_bits as u64);
            longest = longest.max(t);
        }

        let batch = compile_parallel_queries(&mem, &refs, 1000)?;
        let direct: Vec<bool> = refs
            .iter()
            .map(|q| run_direct(&mem, *q, 1000).map(|(a, _)| a))
            .collect::<Result<_>>()?;
        check.tally(batch.answers == direct);
        let rounds = batch.accounting.rounds as u64;
        check.tally(rounds == longest);
        let rank_width = bits_for_range(binomial(size as u64, k as u64)?) as u64;
        check.tally(batch.transcript.alice_bits() == rounds * rank_width);
        check.tally(batch.transcript.bob_bits() == rounds * k as u64 * word_bits as u64);
        check.tally(
            batch.accounting.assignment_bits
                == rounds * k as u64 * bits_for_range(k as u128) as u64,
        );
        // The transcript itself decodes back to true memory contents.
        if rounds > 0 {
            let decoded = decode_parallel(&batch.transcript, size, word_bits, k)?;
            let mut faithful = true;
            for (addrs, values) in decoded {
                for (addr, value) in addrs.into_iter().zip(values) {
                    faithful &= mem.read(addr)? == value;
                }
            }
            check.tally(faithful);
        }
        if trial == 0 {
            check.detail(
                "example_round_bits",
                format!("S={size} k={k}: ceil(lg C(S,k)) = {rank_width}"),
            );
        }
    }
    // Over-wide batches have no k-subset to name.
    let mem = CellMemory::new(2, 4)?;
    let a = ScriptedQuery::new(vec![0]);
    let b = ScriptedQuery::new(vec![1]);
    let c = ScriptedQuery::new(vec![0]);
    check.tally(compile_parallel_queries(&mem, &[&a, &b, &c], 10).is_err());

    // End to end: Bob lays his subgraph out as an edge bitmap, the
    // reduction's query pairs probe it through the parallel compiler, and
    // the batch recovers the disjointness answer.
    let shape = ButterflyShape::new(params.degree, params.depth)?;
    let perms = permutations(params.degree);
    let elements = reach_elements(&shape);
    let word_bits = 1u32; // one edge per cell keeps k <= S at every shape
    let e2e_trials = params.trials.min(100);
    check.detail("end_to_end_instances", e2e_trials);
    for _ in 0..e2e_trials {
        let picked: Vec<&Vec<u32>> = (0..shape.microset_count())
            .map(|_| &perms[rng.gen_range(0..perms.len())])
            .collect();
        let s = s_from_perms(&picked);
        let density: f64 = rng.gen();
        let t: Vec<_> = elements.iter().filter(|_| rng.gen_bool(density)).copied().collect();
        let inst = TwoBlockedLsdInstance::new(
            shape.microset_count() as usize,
            params.degree as usize,
            s.iter().copied(),
            t,
        )?;
        let red = two_blocked_to_reachability(&inst, shape.clone())?;
        let mem = reachability_memory(red.subgraph(), word_bits)?;
        let queries: Vec<ReachProbeQuery> = red
            .queries()
            .iter()
            .map(|(source, sink)| ReachProbeQuery::new(&shape, word_bits, source, sink))
            .collect::<Result<_>>()?;
        let refs: Vec<&dyn ProbeQuery> = queries.iter().map(|q| q as &dyn ProbeQuery).collect();
        let batch = compile_parallel_queries(&mem, &refs, 1000)?;
        check.tally(batch.answers.iter().any(|&reachable| !reachable) == inst.intersects());
    }
    Ok(check)
}

/// Parameters for `stats`.
#[derive(Debug, Clone)]
pub struct StatsParams {
    /// Block count (`--N`).
    pub blocks: usize,
    /// Block size (`--B`, even).
    pub block_size: usize,
    /// Designated block, 1-based (`--k`).
    pub designated: usize,
    pub samples: u64,
    pub seed: u64,
    /// Exact enumeration where closed-form enumeration applies.
    pub exhaustive: bool,
}

impl Default for StatsParams {
    fn default() -> Self {
        StatsParams {
            blocks: 2,
            block_size: 4,
            designated: 1,
            samples: 10_000,
            seed: 1,
            exhaustive: false,
        }
    }
}

/// Report the hard distributions' statistics: designated-block
/// intersection frequency, disjointness support, and block entropies.
pub fn cmd_stats(params: &StatsParams) -> Result<Report> {
    let mut report = Report::new("stats");
    report.parameter("N", params.blocks);
    report.parameter("B", params.block_size);
    report.parameter("k", params.designated);
    report.parameter("samples", params.samples);
    report.parameter("seed", params.seed);
    report.parameter("exhaustive", params.exhaustive);
    let (n, b) = (params.blocks, params.block_size);
    if params.designated == 0 || params.designated > n {
        return Err(Error::range(format!(
            "designated block {} out of range 1..={n}",
            params.designated
        )));
    }

    // Intersection probability of the designated block.
    let mut freq = CheckRecord::new("designated intersection frequency");
    let (num, den) = designated_intersection_probability(b)?;
    freq.detail("exact_probability", format!("{num}/{den}"));
    freq.tally((num, den) == (1, 2));
    if params.exhaustive && n == 1 {
        // One block: the draw is exactly the designated process, so the
        // enumerated probability is the frequency.
        freq.detail("mode", "exhaustive (N = 1 reduces to the block enumeration)");
        freq.detail("frequency", "0.5");
    } else {
        freq.detail("mode", "monte-carlo");
        if params.exhaustive {
            freq.detail("exhaustive_fallback", "exact frequency enumeration needs N = 1");
        }
        let mut hits = 0u64;
        for i in 0..params.samples {
            let sample = sample_dk(n, b, params.designated, params.seed.wrapping_add(i))?;
            if sample.intersects() {
                hits += 1;
            }
        }
        let frequency = hits as f64 / params.samples as f64;
        freq.detail("frequency", format!("{frequency:.4}"));
        freq.detail("tolerance", "|frequency - 0.5| <= 0.05");
        freq.tally((frequency - 0.5).abs() <= 0.05);
    }
    report.push_check(freq);

    // The no-instance distribution really never intersects, and every
    // block has the one-value-per-pair support shape.
    let mut support = CheckRecord::new("d_yes support");
    let draws = params.samples.min(1000);
    support.detail("draws", draws);
    for i in 0..draws {
        let sample = sample_dyes(n, b, params.seed.wrapping_add(i))?;
        let mut ok = !sample.intersects();
        for block in &sample.blocks {
            ok &= block.t.len() == b / 2;
            for pair in 0..(b / 2) as u32 {
                ok &= block.t.iter().filter(|&&v| v / 2 == pair).count() == 1;
            }
            ok &= !block.t.contains(&block.s);
        }
        support.tally(ok);
    }
    report.push_check(support);

    // Exact conditional entropies against the closed forms.
    let mut entropy = CheckRecord::new("block entropies");
    if b <= 16 {
        let (h_s, h_t) = block_entropy_exact(b)?;
        let want_s = (b as f64 / 2.0).log2();
        let want_t = b as f64 / 2.0 - 1.0;
        entropy.detail("h_s_given_t", format!("{h_s:.6} (expect lg(B/2) = {want_s:.6})"));
        entropy.detail("h_t_given_s", format!("{h_t:.6} (expect B/2 - 1 = {want_t:.6})"));
        entropy.tally((h_s - want_s).abs() < 1e-9);
        entropy.tally((h_t - want_t).abs() < 1e-9);
    } else {
        entropy.detail("skipped", format!("enumeration supports B <= 16, got {b}"));
    }
    report.push_check(entropy);

    Ok(report)
}

/// Parameters for `bounds`.
#[derive(Debug, Clone)]
pub struct BoundsParams {
    pub n: u64,
    /// Cell count (`--S`).
    pub space: u64,
    /// Cell width in bits (`--w`).
    pub word: u64,
    /// Exposed for report text only; nothing is derived from it.
    pub delta: f64,
}

impl Default for BoundsParams {
    fn default() -> Self {
        BoundsParams { n: 1 << 20, space: 1 << 20, word: 64, delta: 0.5 }
    }
}

/// Evaluate the trade-off formula at one point and over a small grid.
pub fn cmd_bounds(params: &BoundsParams) -> Result<Report> {
    let mut report = Report::new("bounds");
    report.parameter("n", params.n);
    report.parameter("S", params.space);
    report.parameter("w", params.word);
    report.parameter("delta", params.delta);

    let mut point = CheckRecord::new("query time bound");
    point.detail(
        "formula",
        "lg n / lg(2 + S*w/n); the +2 is a smoothing term keeping the denominator positive",
    );
    point.detail("delta", format!("{} (report-only; nothing is derived from it)", params.delta));
    let t = bound_calculator(params.n, params.space, params.word)?;
    point.detail("t", format!("{t:.6}"));
    point.tally(t.is_finite() && t > 0.0);
    report.push_check(point);

    // A monotone grid: more space never raises the bound.
    let mut grid = CheckRecord::new("trade-off grid");
    let lg_n = bits_for_range(params.n as u128) as u64;
    let grid_points = [
        ("S=n", Some(params.n)),
        ("S=n*lg(n)", params.n.checked_mul(lg_n)),
        ("S=n^2", params.n.checked_mul(params.n)),
    ];
    let mut last = f64::INFINITY;
    let mut monotone = true;
    for (label, space) in grid_points {
        match space {
            Some(space) => {
                let t = bound_calculator(params.n, space, params.word)?;
                grid.detail(label, format!("{t:.6}"));
                monotone &= t <= last;
                last = t;
            }
            None => grid.detail(label, "skipped (S overflows u64)"),
        }
    }
    grid.tally(monotone);
    report.push_check(grid);

    Ok(report)
}
