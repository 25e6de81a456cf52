//! Reduction from blocked set disjointness to partial match.
//!
//! Each block value is encoded with a constant-weight code
//! ([`ConstantWeightCode`]); a blocked instance over `N` blocks of size `B`
//! becomes a partial-match instance of dimension `N * b`, where `b` is the
//! code width. Bob's pairs become database strings — the codeword of the
//! value placed in its block's segment, zeros elsewhere — and Alice's
//! one-value-per-block vector becomes the concatenation of its codewords
//! (equivalently, the all-star-outside-support pattern derived from it).
//!
//! Because codewords share one weight, Alice's string dominates a database
//! string exactly when some block holds the same value on both sides, so
//!
//! `partial match ⟺ dominance match ⟺ the blocked instance intersects`.

use crate::comm::code::ConstantWeightCode;
use crate::error::{Error, Result};
use crate::lsd::instance::BlockedLsdInstance;
use crate::problems::strings::{
    dominance_match, partial_match, pattern_from_dominance, BitStr, Pattern, PartialMatchDb,
};

/// A blocked-disjointness instance rewritten as a partial-match instance.
#[derive(Debug, Clone)]
pub struct PmReduction {
    code: ConstantWeightCode,
    db: PartialMatchDb,
    query: BitStr,
}

impl PmReduction {
    /// The per-value code in use.
    pub fn code(&self) -> &ConstantWeightCode {
        &self.code
    }

    /// Bob's database: one string per pair in his set.
    pub fn db(&self) -> &PartialMatchDb {
        &self.db
    }

    /// Alice's query string: concatenated codewords, block by block.
    pub fn query(&self) -> &BitStr {
        &self.query
    }

    /// Alice's query in pattern form (stars on her support, zeros off it).
    pub fn pattern(&self) -> Pattern {
        pattern_from_dominance(&self.query)
    }

    /// Dimension of the partial-match instance.
    pub fn dimension(&self) -> usize {
        self.db.dim()
    }

    /// Evaluate the partial-match side.
    pub fn matches(&self) -> Result<bool> {
        partial_match(&self.db, &self.pattern())
    }

    /// Evaluate the dominance form directly.
    pub fn dominates(&self) -> Result<bool> {
        dominance_match(&self.db, &self.query)
    }
}

/// Encode one pair `(block, value)` as a database string: zeros everywhere
/// except the block's segment, which holds the value's codeword.
pub fn pair_to_string(
    code: &ConstantWeightCode,
    n_blocks: usize,
    block: usize,
    value: usize,
) -> Result<BitStr> {
    if block >= n_blocks {
        return Err(Error::range(format!("block {block} outside 0..{n_blocks}")));
    }
    let word = code.encode(value)?;
    let before = BitStr::zeros(block * code.width());
    let after = BitStr::zeros((n_blocks - 1 - block) * code.width());
    Ok(BitStr::concat([&before, word, &after]))
}

/// Rewrite a blocked instance as a partial-match instance.
pub fn blocked_to_partial_match(inst: &BlockedLsdInstance) -> Result<PmReduction> {
    let code = ConstantWeightCode::new(inst.block_size())?;
    let n = inst.n_blocks();

    let mut db = PartialMatchDb::new(n * code.width());
    for &(x, y) in inst.t() {
        db.insert(pair_to_string(&code, n, x as usize, y as usize)?)?;
    }

    let words: Vec<&BitStr> = inst
        .s()
        .iter()
        .map(|&v| code.encode(v as usize))
        .collect::<Result<Vec<_>>>()?;
    let query = BitStr::concat(words);

    Ok(PmReduction { code, db, query })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lsd::instance::LsdInstance;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn blocked(n: usize, b: usize, s: Vec<u32>, t: Vec<(u32, u32)>) -> BlockedLsdInstance {
        assert_eq!(s.len(), n);
        BlockedLsdInstance::new(b, s, t).unwrap()
    }

    #[test]
    fn worked_example_dimension_and_strings() {
        // Two blocks of size 4: the code has width 4, so dimension 8.
        let inst = blocked(2, 4, vec![1, 2], vec![(0, 1), (1, 3)]);
        let red = blocked_to_partial_match(&inst).unwrap();
        assert_eq!(red.dimension(), 8);
        // Codewords: 0 -> 0011, 1 -> 0101, 2 -> 0110, 3 -> 1001.
        assert_eq!(red.query().to_string(), "01010110");
        let db: Vec<String> = red.db().strings().map(|s| s.to_string()).collect();
        assert_eq!(db, ["00001001", "01010000"]);
        assert_eq!(red.pattern().to_string(), "0*0*0**0");
        // Block 0 collides (both hold 1), so the instance intersects.
        assert!(inst.intersects());
        assert!(red.matches().unwrap());
        assert!(red.dominates().unwrap());
    }

    #[test]
    fn exhaustive_small_blocks() {
        // Every S and every T over two blocks of size 2.
        for s0 in 0..2u32 {
            for s1 in 0..2u32 {
                for t_mask in 0u32..16 {
                    let t: Vec<(u32, u32)> = (0..4)
                        .filter(|i| t_mask >> i & 1 == 1)
                        .map(|i| (i / 2, i % 2))
                        .collect();
                    let inst = blocked(2, 2, vec![s0, s1], t);
                    let red = blocked_to_partial_match(&inst).unwrap();
                    assert_eq!(red.matches().unwrap(), inst.intersects());
                    assert_eq!(red.dominates().unwrap(), inst.intersects());
                }
            }
        }
    }

    #[test]
    fn random_instances_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..300 {
            let n = rng.gen_range(1..=5);
            let b = rng.gen_range(2..=6);
            let s: Vec<u32> = (0..n).map(|_| rng.gen_range(0..b as u32)).collect();
            let t: Vec<(u32, u32)> = (0..rng.gen_range(0..=10))
                .map(|_| (rng.gen_range(0..n as u32), rng.gen_range(0..b as u32)))
                .collect();
            let inst = blocked(n, b, s, t);
            let red = blocked_to_partial_match(&inst).unwrap();
            assert_eq!(red.matches().unwrap(), inst.intersects());
        }
    }

    #[test]
    fn flat_lsd_roundtrip_feeds_the_reduction() {
        let inst = blocked(3, 4, vec![0, 3, 2], vec![(1, 3), (2, 0)]);
        let flat: LsdInstance = inst.to_flat();
        let back = BlockedLsdInstance::from_flat(&flat).unwrap();
        let red = blocked_to_partial_match(&back).unwrap();
        assert_eq!(red.matches().unwrap(), inst.intersects());
    }
}
