//! The two input distributions that make blocked set disjointness hard:
//! `D_yes` never intersects yet hides lots of entropy behind the public
//! bit `q`, and `D_k` flips a fair coin inside one designated block.

use lbx::lsd::{block_entropy_exact, designated_intersection_probability, sample_dk, sample_dyes};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> lbx::Result<()> {
    let (n, b) = (4, 4);

    // --- D_yes. Each block first draws a public bit q. With q = 0 Bob's
    // set T picks one element from each partner pair and Alice's single
    // element avoids it; with q = 1 Alice's element is uniform and T is
    // forced onto partners that dodge it. Either way: disjoint.
    let sample = sample_dyes(n, b, 7)?;
    println!("D_yes draw over {n} blocks of size {b}:");
    for (x, block) in sample.blocks.iter().enumerate() {
        println!(
            "  block {x}: q={} s={} t={:?}",
            u8::from(sample.q[x]),
            block.s,
            block.t
        );
    }
    assert!(!sample.intersects());

    // Conditioned on q the leftover entropy is what the lower bound
    // spends: H(S|T) = lg(B/2) when q = 0, H(T|S) = B/2 - 1 when q = 1.
    for size in [2usize, 4, 8] {
        let (h_s_given_t, h_t_given_s) = block_entropy_exact(size)?;
        println!(
            "  B={size}: H(S|T) = {h_s_given_t:.3} (lg(B/2) = {:.3}), H(T|S) = {h_t_given_s:.3} (B/2 - 1 = {})",
            (size as f64 / 2.0).log2(),
            size / 2 - 1
        );
    }

    // --- D_k. Identical to D_yes except block k redraws S and T
    // independently, which makes them meet with probability exactly 1/2.
    let k = 2; // 1-based designated block
    let sample = sample_dk(n, b, k, 7)?;
    println!("\nD_{k} draw (same seed, designated block {k}):");
    for (x, block) in sample.blocks.iter().enumerate() {
        let tag = if x + 1 == k { " <- independent" } else { "" };
        println!(
            "  block {x}: q={} s={} t={:?}{tag}",
            u8::from(sample.q[x]),
            block.s,
            block.t
        );
    }

    let (num, den) = designated_intersection_probability(b)?;
    println!("designated block intersects with probability {num}/{den}");
    assert_eq!((num, den), (1, 2));

    // Bob's view hides q at the designated block: q_view reports None
    // there and the public bit everywhere else.
    let view = sample.q_view();
    println!("revealed halves: {view:?}");
    assert!(view[k - 1].is_none());

    // Monte Carlo agrees with the exact 1/2 (streams make draws i.i.d.).
    let trials = 20_000;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut hits = 0u32;
    for _ in 0..trials {
        let draw = sample_dk(n, b, k, rng.gen())?;
        hits += u32::from(draw.intersects());
    }
    let freq = f64::from(hits) / f64::from(trials);
    println!("empirical intersection rate over {trials} draws: {freq:.4}");
    assert!((freq - 0.5).abs() < 0.02);

    // Both distributions convert to plain instances for the reductions.
    let inst = sample.to_lsd();
    println!(
        "as an instance: |S| = {}, |T| = {}, intersects = {}",
        inst.s().len(),
        inst.t().len(),
        inst.intersects()
    );
    Ok(())
}
