//! The reference lower-bound formula for dynamic reachability queries.
//!
//! For a structure on `n` elements using `S` cells of `w` bits, the query
//! time bound evaluates `lg n / lg(2 + S·w/n)`. The `2 +` term is a
//! smoothing choice: the raw form `lg(S·w/n)` hits zero at `S·w = n`, so
//! the calculator shifts the argument and labels the output accordingly.
//! The value is documentation-grade — a reference curve for reports, not
//! an asymptotic claim.

use crate::error::{Error, Result};

/// Evaluate `lg n / lg(2 + S·w/n)`. Requires `S·w >= n >= 2`.
pub fn bound_calculator(n: u64, space: u64, word_bits: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::param(format!("need n >= 2, got {n}")));
    }
    let bits = space
        .checked_mul(word_bits)
        .ok_or_else(|| Error::overflow("S * w exceeds u64".to_string()))?;
    if bits < n {
        return Err(Error::param(format!(
            "need S * w >= n, got {space} * {word_bits} < {n}"
        )));
    }
    let ratio = space as f64 * word_bits as f64 / n as f64;
    Ok((n as f64).log2() / (2.0 + ratio).log2())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_points() {
        // Linear space, single-bit words: 20 / lg 3.
        let t = bound_calculator(1 << 20, 1 << 20, 1).unwrap();
        assert!((t - 20.0 / 3f64.log2()).abs() < 1e-12);
        assert!((t - 12.618).abs() < 0.01);

        // Saturated space: about 1.
        let n = 1u64 << 20;
        let t = bound_calculator(n, n, n).unwrap();
        assert!((t - 20.0 / (2.0 + n as f64).log2()).abs() < 1e-12);
        assert!((t - 1.0).abs() < 0.01);

        // S = 2^25, w = 2^5: 20 / lg(2 + 2^10) ≈ 2.
        let t = bound_calculator(1 << 20, 1 << 25, 1 << 5).unwrap();
        assert!((t - 2.0).abs() < 0.01);
    }

    #[test]
    fn domain_is_enforced() {
        assert!(bound_calculator(1, 8, 8).is_err());
        assert!(bound_calculator(16, 3, 4).is_err());
        assert!(bound_calculator(16, 4, 4).is_ok());
        assert!(bound_calculator(u64::MAX, u64::MAX, 2).is_err());
    }

    #[test]
    fn monotone_in_space() {
        let n = 1u64 << 16;
        let mut last = f64::INFINITY;
        for space in [n, 4 * n, 16 * n, n * n] {
            let t = bound_calculator(n, space, 1).unwrap();
            assert!(t < last, "bound shrinks as space grows");
            last = t;
        }
    }
}
