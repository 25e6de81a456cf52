//! The two rebalancing reductions, each preserving the disjointness answer
//! while Alice announces only a count vector.
//!
//! **Raw → blocked** ([`to_blocked`]): Alice announces how many of her `N`
//! elements fall in each block (unary, exactly `2N` bits when `|S| = N`).
//! Both parties then rebuild the instance: block `i` is duplicated once per
//! `S` element it holds (dropped when it holds none), each copy keeps one
//! `S` element, and Bob's values in block `i` are copied into every copy.
//!
//! **Blocked → two-blocked** ([`to_two_blocked`]): blocks are grouped `B`
//! at a time; inside a group, Alice announces how many of its `B` blocks
//! hold each value (unary, `2B` bits per group, `2N` total). Rows (values)
//! of the `B × B` group matrix are duplicated per count — copies replacing
//! the originals, zero-count rows dropped — leaving Alice's entries as a
//! permutation matrix per group; Bob copies his `(block, value)` pairs to
//! every copy of their row.
//!
//! Count vectors also have a near-optimal binary encoding
//! ([`encode_counts_binomial`]) via composition ranking; the unary form is
//! what the transcripts use because its `2N` total is what the accounting
//! downstream relies on.

use crate::combinatorics::{
    binomial, bits_for_range, from_bits_be, rank_composition, to_bits_be, unrank_composition,
};
use crate::error::{Error, Result};
use crate::lsd::instance::{BlockedLsdInstance, LsdInstance, TwoBlockedLsdInstance};
use crate::lsd::transcript::{Party, Transcript};
use crate::problems::BitStr;

/// Unary count-vector encoding: `1^c 0` per count, concatenated.
pub fn encode_counts_unary(counts: &[u64]) -> BitStr {
    let total: u64 = counts.iter().sum();
    let mut bits = Vec::with_capacity((total as usize) + counts.len());
    for &c in counts {
        bits.extend(std::iter::repeat(true).take(c as usize));
        bits.push(false);
    }
    BitStr::from_bits(bits)
}

/// Inverse of [`encode_counts_unary`]; `parts` is the expected count
/// length, and the message must be consumed exactly.
pub fn decode_counts_unary(bits: &BitStr, parts: usize) -> Result<Vec<u64>> {
    let mut counts = Vec::with_capacity(parts);
    let mut run = 0u64;
    for &b in bits.bits() {
        if b {
            run += 1;
        } else {
            counts.push(run);
            run = 0;
        }
    }
    if run != 0 {
        return Err(Error::parse("unary counts: trailing ones".to_string()));
    }
    if counts.len() != parts {
        return Err(Error::parse(format!(
            "unary counts: found {} parts, expected {parts}",
            counts.len()
        )));
    }
    Ok(counts)
}

/// Binary count-vector encoding by composition rank: a vector of `parts`
/// counts summing to `m` is one of `C(m + parts - 1, parts - 1)`
/// compositions, sent as a big-endian rank of `⌈lg C⌉` bits. For
/// `m = parts = N` that is at most `2N - 1` bits.
pub fn encode_counts_binomial(counts: &[u64]) -> Result<BitStr> {
    let rank = rank_composition(counts)?;
    let m: u64 = counts.iter().sum();
    let total = binomial(m + counts.len() as u64 - 1, counts.len() as u64 - 1)?;
    Ok(BitStr::from_bits(to_bits_be(rank, bits_for_range(total))?))
}

/// Inverse of [`encode_counts_binomial`]; needs the sum `m` and the part
/// count the encoder used.
pub fn decode_counts_binomial(bits: &BitStr, m: u64, parts: u64) -> Result<Vec<u64>> {
    let total = binomial(m + parts - 1, parts - 1)?;
    if bits.len() != bits_for_range(total) as usize {
        return Err(Error::parse(format!(
            "composition rank: got {} bits, expected {}",
            bits.len(),
            bits_for_range(total)
        )));
    }
    let rank = from_bits_be(bits.bits())?;
    unrank_composition(m, parts, rank)
}

/// Output of [`to_blocked`]: the rebuilt instance, Alice's announcement,
/// and the provenance of every output block.
#[derive(Debug, Clone)]
pub struct BlockedReduction {
    pub instance: BlockedLsdInstance,
    pub transcript: Transcript,
    /// `origins[x] = (original block, copy index)` for output block `x`.
    pub origins: Vec<(usize, usize)>,
}

/// Rebalance a raw instance into blocked form. Requires `|S| = N` (one
/// element per block on average); the answer is preserved and Alice sends
/// exactly `2N` bits, Bob none.
pub fn to_blocked(inst: &LsdInstance) -> Result<BlockedReduction> {
    let n = inst.n_blocks();
    if inst.s().len() != n {
        return Err(Error::param(format!(
            "rebalancing requires |S| = N, got |S| = {} with N = {n}",
            inst.s().len()
        )));
    }
    let counts = inst.s_block_counts();

    let mut transcript = Transcript::new();
    transcript.push(Party::Alice, encode_counts_unary(&counts));

    // Per original block, its S values ascending and its T values.
    let mut s_values: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &e in inst.s() {
        s_values[inst.block_of(e)].push(inst.value_of(e));
    }
    let mut t_values: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &e in inst.t() {
        t_values[inst.block_of(e)].push(inst.value_of(e));
    }

    let mut s = Vec::with_capacity(n);
    let mut t = Vec::new();
    let mut origins = Vec::with_capacity(n);
    for (orig, values) in s_values.iter().enumerate() {
        for (copy, &v) in values.iter().enumerate() {
            let out_block = origins.len() as u32;
            origins.push((orig, copy));
            s.push(v);
            for &tv in &t_values[orig] {
                t.push((out_block, tv));
            }
        }
    }
    let instance = BlockedLsdInstance::new(inst.block_size(), s, t)?;
    Ok(BlockedReduction { instance, transcript, origins })
}

/// Output of [`to_two_blocked`]: the rebuilt instance, Alice's per-group
/// announcements, and the provenance of every output row.
#[derive(Debug, Clone)]
pub struct TwoBlockedReduction {
    pub instance: TwoBlockedLsdInstance,
    pub transcript: Transcript,
    /// `row_origins[g][r] = (original value, copy index)` for row `r` of
    /// super-block `g`.
    pub row_origins: Vec<Vec<(u32, usize)>>,
}

/// Rebalance a blocked instance into two-blocked form. Requires the block
/// count divisible by `B`; the answer is preserved and Alice sends exactly
/// `2B` bits per group (`2N` total), Bob none.
pub fn to_two_blocked(inst: &BlockedLsdInstance) -> Result<TwoBlockedReduction> {
    let n = inst.n_blocks();
    let b = inst.block_size();
    if n % b != 0 {
        return Err(Error::param(format!(
            "two-blocked rebalancing requires B | N, got N = {n}, B = {b}"
        )));
    }
    let groups = n / b;

    let mut transcript = Transcript::new();
    let mut s = Vec::with_capacity(n);
    let mut t = Vec::new();
    let mut row_origins = Vec::with_capacity(groups);

    for g in 0..groups {
        let cols = &inst.s()[g * b..(g + 1) * b];

        // How many columns of this group hold each value.
        let mut counts = vec![0u64; b];
        for &v in cols {
            counts[v as usize] += 1;
        }
        transcript.push(Party::Alice, encode_counts_unary(&counts));

        // New rows: counts[v] copies of row v, stacked in value order.
        // row_of[v] = first new row index of value v's copies.
        let mut row_of = vec![0u32; b];
        let mut origins = Vec::with_capacity(b);
        for v in 0..b {
            row_of[v] = origins.len() as u32;
            for copy in 0..counts[v] as usize {
                origins.push((v as u32, copy));
            }
        }

        // Columns with value v, ascending, take consecutive copies of row v.
        let mut next_copy = vec![0u32; b];
        for (z, &v) in cols.iter().enumerate() {
            let row = row_of[v as usize] + next_copy[v as usize];
            next_copy[v as usize] += 1;
            s.push((g as u32, row, z as u32));
        }

        // Bob's pairs duplicate to every copy of their row.
        for &(x, v) in inst.t().range((g as u32 * b as u32, 0)..((g as u32 + 1) * b as u32, 0)) {
            let z = x - g as u32 * b as u32;
            for copy in 0..counts[v as usize] as u32 {
                t.push((g as u32, row_of[v as usize] + copy, z));
            }
        }

        row_origins.push(origins);
    }

    let instance = TwoBlockedLsdInstance::new(groups, b, s, t)?;
    Ok(TwoBlockedReduction { instance, transcript, row_origins })
}
