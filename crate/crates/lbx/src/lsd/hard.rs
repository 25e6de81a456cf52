//! The hard input distributions for blocked set disjointness.
//!
//! Block values `[B]` (with `B` even) are grouped into pairs
//! `{0,1}, {2,3}, …`; Bob's set in a block is always *one value per pair*
//! (`B/2` values). Two block processes are used:
//!
//! * **Process 0** (query bit 0): Bob picks one value per pair uniformly;
//!   Alice picks uniformly among the `B/2` values *not* chosen (the unpicked
//!   partner of each pair). Disjoint by construction; Alice's conditional
//!   entropy given Bob is `lg(B/2)`.
//! * **Process 1** (query bit 1): Alice picks uniformly in `[B]`; Bob is
//!   forced to take the partner in Alice's pair and picks the remaining
//!   `B/2 - 1` pairs uniformly. Disjoint by construction; Bob's conditional
//!   entropy given Alice is `B/2 - 1`.
//!
//! `D_yes` ([`sample_dyes`]) draws a uniform query vector `q` and runs the
//! matching process in every block — the instance never intersects. `D_k`
//! ([`sample_dk`]) does the same except in designated block `k` (1-based),
//! where Alice and Bob draw *independently* uniform — that block intersects
//! with probability exactly 1/2, so the whole instance does.
//!
//! Randomness discipline: one ChaCha master seed; the query vector comes
//! from stream 0 and block `i` (0-based) from stream `i + 1`, so per-block
//! draws are reproducible regardless of other blocks. Within a block
//! stream, process 0 draws Bob's pair choices in pair order then Alice's
//! complement index; process 1 draws Alice's value then Bob's free pair
//! choices in pair order; the designated block draws Alice's value then
//! Bob's pair choices in pair order.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lsd::instance::LsdInstance;

/// One block's sampled sets: Alice's value and Bob's value set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSample {
    pub s: u32,
    pub t: BTreeSet<u32>,
}

impl BlockSample {
    /// Whether Alice's value lies in Bob's set.
    pub fn intersects(&self) -> bool {
        self.t.contains(&self.s)
    }
}

/// The revealed half of one block under the query view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QEntry {
    /// Query bit 0 reveals Alice's value.
    Value(u32),
    /// Query bit 1 reveals Bob's set.
    Set(BTreeSet<u32>),
}

/// One draw from `D_yes` or `D_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardSample {
    pub n_blocks: usize,
    pub block_size: usize,
    /// The query vector; for `D_k` the designated block's bit is drawn but
    /// unused (its block ignores the process split).
    pub q: Vec<bool>,
    pub blocks: Vec<BlockSample>,
    /// `Some(k)` (1-based) for `D_k`, `None` for `D_yes`.
    pub designated: Option<usize>,
}

impl HardSample {
    /// Whether any block intersects. Always `false` under `D_yes`.
    pub fn intersects(&self) -> bool {
        self.blocks.iter().any(BlockSample::intersects)
    }

    /// The query view: per block, the half the query bit reveals — `None`
    /// at the designated block, which the view excludes.
    pub fn q_view(&self) -> Vec<Option<QEntry>> {
        self.blocks
            .iter()
            .zip(&self.q)
            .enumerate()
            .map(|(i, (block, &bit))| {
                if self.designated == Some(i + 1) {
                    None
                } else if bit {
                    Some(QEntry::Set(block.t.clone()))
                } else {
                    Some(QEntry::Value(block.s))
                }
            })
            .collect()
    }

    /// View the sample as a raw LSD instance (block `i` occupies elements
    /// `i*B .. (i+1)*B`). `|S| = N`, so the rebalancing chain applies.
    pub fn to_lsd(&self) -> LsdInstance {
        let b = self.block_size as u64;
        let s = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, blk)| i as u64 * b + blk.s as u64);
        let t = self.blocks.iter().enumerate().flat_map(|(i, blk)| {
            blk.t.iter().map(move |&v| i as u64 * b + v as u64)
        });
        LsdInstance::new(self.n_blocks, self.block_size, s, t)
            .expect("sampled values are in range")
    }
}

fn check_params(n: usize, b: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::param("need at least one block".to_string()));
    }
    if b < 2 || b % 2 != 0 {
        return Err(Error::param(format!("block size must be even and >= 2, got {b}")));
    }
    u32::try_from(b).map_err(|_| Error::overflow("block size exceeds u32".to_string()))?;
    u64::try_from(n)
        .ok()
        .and_then(|n| n.checked_mul(b as u64))
        .ok_or_else(|| Error::overflow("universe size exceeds u64".to_string()))?;
    Ok(())
}

fn block_stream(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

fn query_stream(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    rng
}

/// Process 0: Bob one-per-pair uniform, Alice uniform on the complement.
fn sample_process0(rng: &mut ChaCha8Rng, b: usize) -> BlockSample {
    let pairs = b / 2;
    let mut t = BTreeSet::new();
    let mut complement = Vec::with_capacity(pairs);
    for p in 0..pairs {
        let pick = rng.gen_range(0..2u32);
        t.insert(2 * p as u32 + pick);
        complement.push(2 * p as u32 + (1 - pick));
    }
    let s = complement[rng.gen_range(0..pairs)];
    BlockSample { s, t }
}

/// Process 1: Alice uniform, Bob forced off Alice's value, free elsewhere.
fn sample_process1(rng: &mut ChaCha8Rng, b: usize) -> BlockSample {
    let pairs = b / 2;
    let s = rng.gen_range(0..b as u32);
    let s_pair = (s / 2) as usize;
    let mut t = BTreeSet::new();
    for p in 0..pairs {
        if p == s_pair {
            t.insert(s ^ 1); // the partner
        } else {
            let pick = rng.gen_range(0..2u32);
            t.insert(2 * p as u32 + pick);
        }
    }
    BlockSample { s, t }
}

/// Independent draw for the designated block: Alice uniform in `[B]`, Bob
/// one-per-pair uniform, independent of Alice.
fn sample_independent(rng: &mut ChaCha8Rng, b: usize) -> BlockSample {
    let pairs = b / 2;
    let s = rng.gen_range(0..b as u32);
    let mut t = BTreeSet::new();
    for p in 0..pairs {
        let pick = rng.gen_range(0..2u32);
        t.insert(2 * p as u32 + pick);
    }
    BlockSample { s, t }
}

/// Draw from `D_yes`: uniform query vector, process per bit, never
/// intersecting.
pub fn sample_dyes(n: usize, b: usize, seed: u64) -> Result<HardSample> {
    check_params(n, b)?;
    let mut qrng = query_stream(seed);
    let q: Vec<bool> = (0..n).map(|_| qrng.gen_bool(0.5)).collect();
    let blocks = (0..n)
        .map(|i| {
            let mut rng = block_stream(seed, i);
            if q[i] {
                sample_process1(&mut rng, b)
            } else {
                sample_process0(&mut rng, b)
            }
        })
        .collect();
    Ok(HardSample { n_blocks: n, block_size: b, q, blocks, designated: None })
}

/// Draw from `D_k` (`k` 1-based): like `D_yes` except block `k` draws
/// Alice and Bob independently.
pub fn sample_dk(n: usize, b: usize, k: usize, seed: u64) -> Result<HardSample> {
    check_params(n, b)?;
    if k == 0 || k > n {
        return Err(Error::range(format!(
            "designated block {k} out of range 1..={n}"
        )));
    }
    let mut qrng = query_stream(seed);
    let q: Vec<bool> = (0..n).map(|_| qrng.gen_bool(0.5)).collect();
    let blocks = (0..n)
        .map(|i| {
            let mut rng = block_stream(seed, i);
            if i + 1 == k {
                sample_independent(&mut rng, b)
            } else if q[i] {
                sample_process1(&mut rng, b)
            } else {
                sample_process0(&mut rng, b)
            }
        })
        .collect();
    Ok(HardSample { n_blocks: n, block_size: b, q, blocks, designated: Some(k) })
}

/// All one-value-per-pair sets over `[b]` (there are `2^(b/2)`).
pub fn one_per_pair_sets(b: usize) -> Result<Vec<BTreeSet<u32>>> {
    if b < 2 || b % 2 != 0 {
        return Err(Error::param(format!("block size must be even and >= 2, got {b}")));
    }
    if b > 32 {
        return Err(Error::param(format!("enumeration supports b <= 32, got {b}")));
    }
    let pairs = b / 2;
    let mut sets = Vec::with_capacity(1usize << pairs);
    for mask in 0..(1u64 << pairs) {
        let set: BTreeSet<u32> =
            (0..pairs).map(|p| 2 * p as u32 + ((mask >> p) & 1) as u32).collect();
        sets.push(set);
    }
    Ok(sets)
}

/// Exact intersection probability of the designated block, by enumerating
/// all (Alice value, Bob one-per-pair set) outcomes. Returned as a reduced
/// fraction; equals 1/2 for every even `b`.
pub fn designated_intersection_probability(b: usize) -> Result<(u64, u64)> {
    let sets = one_per_pair_sets(b)?;
    let mut hits = 0u64;
    let mut total = 0u64;
    for s in 0..b as u32 {
        for t in &sets {
            total += 1;
            if t.contains(&s) {
                hits += 1;
            }
        }
    }
    let g = gcd(hits, total);
    Ok((hits / g, total / g))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exact conditional entropies of the two processes, by full enumeration
/// of the joint distributions: returns
/// `(H(S | T) under process 0, H(T | S) under process 1)` in bits. Supports
/// even `b <= 16`. The values equal `lg(B/2)` and `B/2 - 1`.
pub fn block_entropy_exact(b: usize) -> Result<(f64, f64)> {
    if b > 16 {
        return Err(Error::param(format!("entropy enumeration supports b <= 16, got {b}")));
    }
    let sets = one_per_pair_sets(b)?;
    let pairs = (b / 2) as u32;

    // Process 0 joint: Bob uniform over sets, Alice uniform over the
    // complement values. P(s, t) = 1/|sets| * 2/b.
    let mut joint0: Vec<f64> = Vec::new();
    let mut t_marginal0: Vec<f64> = Vec::new();
    for t in &sets {
        let p_t = 1.0 / sets.len() as f64;
        t_marginal0.push(p_t);
        for s in 0..b as u32 {
            if !t.contains(&s) {
                joint0.push(p_t * 2.0 / b as f64);
            }
        }
    }
    let h_s_given_t = entropy(&joint0) - entropy(&t_marginal0);

    // Process 1 joint: Alice uniform over values, Bob forced on Alice's
    // pair and uniform on the rest. P(s, t) = 1/b * 2^-(pairs-1).
    let mut joint1: Vec<f64> = Vec::new();
    let s_marginal1: Vec<f64> = vec![1.0 / b as f64; b];
    for s in 0..b as u32 {
        for t in &sets {
            if t.contains(&(s ^ 1)) {
                joint1.push(1.0 / b as f64 * (0.5f64).powi(pairs as i32 - 1));
            }
        }
    }
    let h_t_given_s = entropy(&joint1) - entropy(&s_marginal1);

    Ok((h_s_given_t, h_t_given_s))
}

fn entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}
