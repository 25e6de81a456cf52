//! Exact combinatorial arithmetic: binomial coefficients, combination
//! ranking/unranking, and composition ranking.
//!
//! These functions back the transcript encoders (subset announcements, count
//! vectors) and the constant-weight code, so their orderings are part of the
//! crate's observable behaviour and are frozen by tests:
//!
//! * [`rank_combination`] / [`unrank_combination`] use lexicographic order on
//!   sorted position lists (the combinatorial number system).
//! * [`unrank_weight_string`] / [`rank_weight_string`] use lexicographic
//!   order on the bit *strings* themselves (`"0011" < "0101" < ...`), which
//!   coincides with ascending numeric value.
//! * [`rank_composition`] / [`unrank_composition`] use stars-and-bars: a
//!   composition of `m` into `parts` non-negative parts maps to the set of
//!   bar positions in a length `m + parts - 1` string, ranked with
//!   [`rank_combination`].

use crate::error::{Error, Result};

/// Exact binomial coefficient `C(n, k)` in `u128`, erroring on overflow.
///
/// `C(n, k) = 0` when `k > n`.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // acc * (n - k + i) is always divisible by i at this point.
        acc = acc
            .checked_mul((n - k + i) as u128)
            .ok_or_else(|| Error::overflow(format!("binomial({n}, {k})")))?
            / i as u128;
    }
    Ok(acc)
}

/// `⌈lg x⌉` for `x ≥ 1`; `ceil_log2(1) = 0`.
pub fn ceil_log2(x: u128) -> u32 {
    assert!(x >= 1, "ceil_log2 requires x >= 1");
    128 - (x - 1).leading_zeros()
}

/// Number of bits needed to address `n` distinct values: `⌈lg n⌉`.
///
/// A one-element range needs zero bits.
pub fn bits_for_range(n: u128) -> u32 {
    assert!(n >= 1, "bits_for_range requires n >= 1");
    ceil_log2(n)
}

/// Rank of a sorted `k`-subset of `[n]` in lexicographic order.
///
/// Inverse of [`unrank_combination`]. The subset must be strictly
/// increasing with all elements below `n`.
pub fn rank_combination(n: u64, subset: &[u64]) -> Result<u128> {
    let k = subset.len() as u64;
    for w in subset.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::param("subset must be strictly increasing"));
        }
    }
    if let Some(&last) = subset.last() {
        if last >= n {
            return Err(Error::range(format!("subset element {last} >= n = {n}")));
        }
    }
    // Lexicographic rank: count subsets that precede by diverging at
    // position i with a smaller element.
    let mut rank: u128 = 0;
    let mut prev: u64 = 0; // smallest candidate for position i
    for (i, &c) in subset.iter().enumerate() {
        for smaller in prev..c {
            rank = rank
                .checked_add(binomial(n - smaller - 1, k - i as u64 - 1)?)
                .ok_or_else(|| Error::overflow("combination rank".to_string()))?;
        }
        prev = c + 1;
    }
    Ok(rank)
}

/// The `rank`-th (0-based) sorted `k`-subset of `[n]` in lexicographic order.
pub fn unrank_combination(n: u64, k: u64, rank: u128) -> Result<Vec<u64>> {
    let total = binomial(n, k)?;
    if rank >= total {
        return Err(Error::range(format!(
            "combination rank {rank} >= C({n}, {k}) = {total}"
        )));
    }
    let mut rank = rank;
    let mut subset = Vec::with_capacity(k as usize);
    let mut candidate = 0u64;
    let mut remaining = k;
    while remaining > 0 {
        let with_candidate = binomial(n - candidate - 1, remaining - 1)?;
        if rank < with_candidate {
            subset.push(candidate);
            remaining -= 1;
        } else {
            rank -= with_candidate;
        }
        candidate += 1;
    }
    Ok(subset)
}

/// The `rank`-th (0-based) bit string of length `n` with exactly `k` ones,
/// in lexicographic string order (`'0' < '1'`).
///
/// Returned most-significant-first as a vector of bits.
pub fn unrank_weight_string(n: u64, k: u64, rank: u128) -> Result<Vec<bool>> {
    let total = binomial(n, k)?;
    if rank >= total {
        return Err(Error::range(format!(
            "weight-string rank {rank} >= C({n}, {k}) = {total}"
        )));
    }
    let mut bits = Vec::with_capacity(n as usize);
    let mut rank = rank;
    let mut n = n;
    let mut k = k;
    while n > 0 {
        let zero_branch = binomial(n - 1, k)?;
        if rank < zero_branch {
            bits.push(false);
        } else {
            bits.push(true);
            rank -= zero_branch;
            k -= 1;
        }
        n -= 1;
    }
    Ok(bits)
}

/// Rank of a bit string among the weight-`k` strings of its length, in
/// lexicographic string order. Inverse of [`unrank_weight_string`].
pub fn rank_weight_string(bits: &[bool]) -> Result<u128> {
    let mut k = bits.iter().filter(|&&b| b).count() as u64;
    let mut n = bits.len() as u64;
    let mut rank: u128 = 0;
    for &bit in bits {
        if bit {
            rank = rank
                .checked_add(binomial(n - 1, k)?)
                .ok_or_else(|| Error::overflow("weight-string rank".to_string()))?;
            k -= 1;
        }
        n -= 1;
    }
    Ok(rank)
}

/// Rank of a composition of `m` into `parts` non-negative parts, using the
/// stars-and-bars bijection with `(parts - 1)`-subsets of
/// `[m + parts - 1]` ranked lexicographically.
///
/// Total number of compositions is `C(m + parts - 1, parts - 1)`.
pub fn rank_composition(composition: &[u64]) -> Result<u128> {
    let parts = composition.len() as u64;
    if parts == 0 {
        return Err(Error::param("composition needs at least one part"));
    }
    let m: u64 = composition.iter().sum();
    // Bar i sits after the stars of parts 1..=i and the i-1 earlier bars.
    let mut bars = Vec::with_capacity(parts as usize - 1);
    let mut prefix = 0u64;
    for (i, &c) in composition[..composition.len() - 1].iter().enumerate() {
        prefix += c;
        bars.push(prefix + i as u64);
    }
    rank_combination(m + parts - 1, &bars)
}

/// Inverse of [`rank_composition`]: the `rank`-th composition of `m` into
/// `parts` non-negative parts.
pub fn unrank_composition(m: u64, parts: u64, rank: u128) -> Result<Vec<u64>> {
    if parts == 0 {
        return Err(Error::param("composition needs at least one part"));
    }
    let bars = unrank_combination(m + parts - 1, parts - 1, rank)?;
    let mut composition = Vec::with_capacity(parts as usize);
    let mut prev = 0u64; // positions consumed so far (stars + bars)
    for &bar in &bars {
        composition.push(bar - prev);
        prev = bar + 1;
    }
    composition.push(m + parts - 1 - prev);
    Ok(composition)
}

/// Encode `value` as exactly `width` big-endian bits. Errors if the value
/// does not fit.
pub fn to_bits_be(value: u128, width: u32) -> Result<Vec<bool>> {
    if width < 128 && value >> width != 0 {
        return Err(Error::range(format!("{value} does not fit in {width} bits")));
    }
    Ok((0..width).rev().map(|i| (value >> i) & 1 == 1).collect())
}

/// Decode big-endian bits into a value. Errors on widths above 128.
pub fn from_bits_be(bits: &[bool]) -> Result<u128> {
    if bits.len() > 128 {
        return Err(Error::overflow("bit string longer than 128".to_string()));
    }
    let mut value: u128 = 0;
    for &b in bits {
        value = (value << 1) | u128::from(b);
    }
    Ok(value)
}
