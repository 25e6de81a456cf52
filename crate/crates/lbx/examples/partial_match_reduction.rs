//! Blocked set disjointness rewritten as partial match: a constant-weight
//! code turns values into bit strings whose pairwise dominance is exactly
//! equality, so "S meets T" becomes "some database string is dominated by
//! the query", which is a partial-match question.

use lbx::comm::{blocked_to_partial_match, code_width, pair_to_string, ConstantWeightCode};
use lbx::lsd::BlockedLsdInstance;
use lbx::problems::{partial_match, pattern_from_dominance};

fn main() -> lbx::Result<()> {
    // --- The code: the lexicographically first B strings of length b and
    // weight b/2, with b the smallest even width that fits B of them.
    let code = ConstantWeightCode::new(4)?;
    println!("constant-weight code for 4 values (width {}):", code.width());
    for (v, word) in code.words().iter().enumerate() {
        println!("  {v} -> {word}");
    }
    assert_eq!(code_width(4)?, 4);

    // Between codewords, dominance collapses to equality: equal weights
    // force any dominating pair to coincide.
    for a in 0..4 {
        for b in 0..4 {
            let dom = code.encode(a)?.dominates(code.encode(b)?)?;
            assert_eq!(dom, a == b);
        }
    }
    println!("codeword dominance == codeword equality (all 16 pairs)");

    // --- The reduction. Alice concatenates one codeword per block; Bob
    // writes one string per T element, zero except for that element's
    // codeword placed in its block segment.
    let inst = BlockedLsdInstance::new(4, vec![1, 2], [(0, 2), (0, 3), (1, 3)])?;
    let red = blocked_to_partial_match(&inst)?;

    println!("\nquery (blocks 0,1 hold values 1,2): {}", red.query());
    println!("database ({} strings of dimension {}):", red.db().len(), red.dimension());
    for s in red.db().strings() {
        println!("  {s}");
    }
    assert_eq!(red.dimension(), inst.n_blocks() * code_width(inst.block_size())?);

    // Dominance against the query and the star-pattern view agree, and
    // both equal the original intersection answer.
    let pattern = red.pattern();
    println!("as a partial-match pattern: {pattern}");
    assert_eq!(red.matches()?, inst.intersects());
    assert_eq!(red.dominates()?, inst.intersects());
    assert_eq!(partial_match(red.db(), &pattern)?, inst.intersects());
    println!("partial match == dominance == intersects == {}", inst.intersects());

    // The pattern is mechanical: query 1s become stars, 0s stay zeros.
    assert_eq!(pattern.to_string(), pattern_from_dominance(red.query()).to_string());

    // Single pairs embed the same way outside the full reduction.
    let word = pair_to_string(red.code(), inst.n_blocks(), 1, 3)?;
    println!("pair (block 1, value 3) embeds as {word}");

    // Flip Bob's set so it meets Alice and the match flips too.
    let hit = BlockedLsdInstance::new(4, vec![1, 2], [(0, 2), (0, 3), (1, 2), (1, 3)])?;
    let red = blocked_to_partial_match(&hit)?;
    assert!(hit.intersects() && red.matches()?);
    println!("after adding the pair (1, 2): match = {}", red.matches()?);
    Ok(())
}
