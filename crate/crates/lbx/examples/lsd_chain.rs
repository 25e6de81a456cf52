//! The lopsided set disjointness rebalancing chain: a raw instance with
//! skewed blocks becomes blocked (one S element per block), then
//! two-blocked (S rows grouped into permutation matrices) — with the
//! answer preserved and Alice announcing only 2 bits per element.

use lbx::combinatorics::binomial;
use lbx::lsd::{
    decode_counts_binomial, encode_counts_binomial, to_blocked, to_two_blocked, LsdInstance,
};

fn main() -> lbx::Result<()> {
    // --- A raw instance over N = 4 blocks of size B = 4. Alice's set S is
    // lopsided: three elements crowd block 0, one sits in block 2, and
    // blocks 1 and 3 are empty.
    let inst = LsdInstance::new(
        4,
        4,
        [0u64, 1, 3, 9], // blocks 0,0,0,2
        [2u64, 5, 9, 14],
    )?;
    print!("raw instance:\n{}", inst.to_text());
    println!("S block counts: {:?}", inst.s_block_counts());
    println!("answer (S meets T): {}", inst.intersects());

    // The text form roundtrips, so instances travel as files.
    assert_eq!(LsdInstance::from_text(&inst.to_text())?.to_text(), inst.to_text());

    // --- Step 1: rebalance to one S element per block. Alice announces
    // her block counts in unary — exactly 2N bits — and Bob is silent.
    let blocked = to_blocked(&inst)?;
    let b = &blocked.instance;
    println!(
        "\nblocked: {} blocks of size {}, S = {:?}",
        b.n_blocks(),
        b.block_size(),
        b.s()
    );
    println!("origins (original block, copy): {:?}", blocked.origins);
    println!(
        "transcript: alice {} bits, bob {} bits",
        blocked.transcript.alice_bits(),
        blocked.transcript.bob_bits()
    );
    assert_eq!(blocked.transcript.alice_bits(), 2 * inst.n_blocks() as u64);
    assert_eq!(blocked.transcript.bob_bits(), 0);
    assert_eq!(b.intersects(), inst.intersects());

    // Transcripts serialize to JSON for inspection or storage.
    println!("transcript JSON:\n{}", blocked.transcript.to_json()?);

    // The same counts also fit in ceil(lg C(2N-1, N)) bits via a
    // combination rank — strictly fewer than the unary 2N.
    let counts = inst.s_block_counts();
    let packed = encode_counts_binomial(&counts)?;
    let n = inst.n_blocks() as u64;
    println!(
        "counts {:?} packed in {} bits (unary: {}), C(2N-1, N) = {}",
        counts,
        packed.len(),
        2 * n,
        binomial(2 * n - 1, n)?
    );
    assert!(packed.len() as u64 <= 2 * n - 1);
    assert_eq!(decode_counts_binomial(&packed, n, n)?, counts);

    // --- Step 2: group blocks into super-blocks of B rows each, so every
    // super-block's S rows form a permutation matrix. Again 2 bits per
    // block-row, again answer-preserving.
    let two = to_two_blocked(b)?;
    let tb = &two.instance;
    println!(
        "\ntwo-blocked: {} super-blocks, block size {}, alice {} bits",
        tb.super_blocks(),
        tb.block_size(),
        two.transcript.alice_bits()
    );
    assert_eq!(two.transcript.alice_bits(), 2 * b.n_blocks() as u64);
    assert_eq!(tb.intersects(), inst.intersects());

    // Each super-block's S is a permutation: row r holds exactly one
    // element, in column s_permutation(x)[r].
    for x in 0..tb.super_blocks() {
        println!("super-block {x}: S permutation {:?}", tb.s_permutation(x)?);
    }

    // Both reduced forms flatten back to plain instances over the larger
    // universes, with the flat embedding preserving the answer too.
    let flat_b = b.to_flat();
    let flat_tb = tb.to_flat();
    assert_eq!(flat_b.intersects(), inst.intersects());
    assert_eq!(flat_tb.intersects(), inst.intersects());
    println!(
        "\nflat views: blocked universe {}, two-blocked universe {}",
        flat_b.universe(),
        flat_tb.universe()
    );
    Ok(())
}
