//! The full pipeline, end to end: a hard disjointness input flows through
//! the rebalancing chain into a reachability game, Bob's subgraph becomes
//! a bit-packed memory, and the cell-probe queries compile into an
//! address/content conversation whose bit totals obey the closed forms —
//! the accounting behind the lower-bound calculator.

use lbx::butterfly::ButterflyShape;
use lbx::comm::{
    bound_calculator, compile_parallel_queries, decode_parallel, reachability_memory,
    run_direct, two_blocked_to_reachability, CellMemory, ProbeQuery, ReachProbeQuery,
    ScriptedQuery,
};
use lbx::lsd::{sample_dk, to_blocked, to_two_blocked};

fn main() -> lbx::Result<()> {
    // --- Stage 1: a hard-distribution draw, rebalanced twice. The
    // two-blocked target for the b=2, d=2 butterfly needs N = d·b^d = 8
    // blocks of size B = b = 2.
    let (b, d) = (2u32, 2usize);
    let n_blocks = d * usize::pow(b as usize, d as u32);
    let sample = sample_dk(n_blocks, b as usize, 3, 41)?;
    let raw = sample.to_lsd();
    println!("drew from D_3: N={} B={} intersects={}", n_blocks, b, raw.intersects());

    let blocked = to_blocked(&raw)?;
    let two = to_two_blocked(&blocked.instance)?;
    println!(
        "rebalanced: alice announced {} + {} bits, answer preserved = {}",
        blocked.transcript.alice_bits(),
        two.transcript.alice_bits(),
        two.instance.intersects() == raw.intersects()
    );

    // --- Stage 2: the reachability game. Bob's subgraph is the butterfly
    // minus his edges; Alice's permutations fix b^d query pairs.
    let shape = ButterflyShape::new(b, d)?;
    let red = two_blocked_to_reachability(&two.instance, shape.clone())?;
    println!(
        "reachability game: {} queries on a {}-edge butterfly, {} edges deleted",
        red.queries().len(),
        shape.edge_count(),
        red.subgraph().missing_count()
    );

    // --- Stage 3: Bob's subgraph as a memory. One bit per edge, packed
    // into w-bit cells; this is the data structure the queries probe.
    let word_bits = 2;
    let mem = reachability_memory(red.subgraph(), word_bits)?;
    println!("memory snapshot ({} cells of {} bits):", mem.size(), mem.word_bits());
    print!("{}", mem.to_text());
    assert_eq!(CellMemory::from_text(&mem.to_text())?.to_text(), mem.to_text());

    // Each query walks its unique path, one probe per level, stopping
    // early at the first missing edge.
    let queries: Vec<ReachProbeQuery> = red
        .queries()
        .iter()
        .map(|(s, t)| ReachProbeQuery::new(&shape, word_bits, s, t))
        .collect::<lbx::Result<_>>()?;
    for (query, (s, t)) in queries.iter().zip(red.queries()) {
        let (alive, probes) = run_direct(&mem, query, d)?;
        println!("  {s:?} -> {t:?}: reachable={alive} after probes {probes:?}");
    }

    // --- Stage 4: compile the batch. Alice names each round's distinct
    // addresses as one combination rank; Bob returns the k cell values.
    let refs: Vec<&dyn ProbeQuery> = queries.iter().map(|q| q as &dyn ProbeQuery).collect();
    let batch = compile_parallel_queries(&mem, &refs, d)?;
    let k = refs.len() as u64;
    println!(
        "compiled: {} rounds, alice {} bits, bob {} bits, collision maps {} bits (separate)",
        batch.accounting.rounds,
        batch.transcript.alice_bits(),
        batch.transcript.bob_bits(),
        batch.accounting.assignment_bits
    );
    assert_eq!(batch.transcript.bob_bits(), batch.accounting.rounds as u64 * k * word_bits as u64);

    // The compiled answers decide disjointness: some query unreachable
    // means S met T, all reachable means disjoint.
    let some_unreachable = batch.answers.iter().any(|&a| !a);
    println!(
        "answers {:?} -> intersects = {some_unreachable} (truth: {})",
        batch.answers,
        raw.intersects()
    );
    assert_eq!(some_unreachable, raw.intersects());

    // The transcript alone reconstructs every round's reads.
    let rounds = decode_parallel(&batch.transcript, mem.size(), word_bits, refs.len())?;
    for (i, (addrs, values)) in rounds.iter().enumerate() {
        println!("  round {i}: cells {addrs:?} hold {values:?}");
    }

    // --- Single-query compilation has its own exact budget. A scripted
    // query probing t cells costs t·ceil(lg S) + t·w bits.
    let mem = CellMemory::new(8, 4)?;
    let script = ScriptedQuery::new(vec![1, 5, 2]);
    let single = lbx::comm::compile_single_query(&mem, &script, 8)?;
    println!(
        "\nscripted probe of 3 cells: alice {} bits (3 x 3), bob {} bits (3 x 4)",
        single.transcript.alice_bits(),
        single.transcript.bob_bits()
    );
    assert_eq!(single.transcript.alice_bits(), 9);
    assert_eq!(single.transcript.bob_bits(), 12);

    // --- Stage 5: what the accounting buys. Squeezing the conversation
    // below the disjointness lower bound forces probe count t to exceed
    // lg n / lg(2 + Sw/n) — the calculator evaluates that trade-off.
    println!("\nlower-bound curve (n = 2^20 elements):");
    let n = 1u64 << 20;
    for (label, space) in [("n", n), ("n lg n", n * 20), ("n^2", n * n)] {
        let t = bound_calculator(n, space, 64)?;
        println!("  space {label:>6}: t >= {t:.3}");
    }
    Ok(())
}
