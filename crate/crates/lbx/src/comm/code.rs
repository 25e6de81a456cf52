//! Constant-weight encoding of block values into bit strings.
//!
//! Values in `[B]` are mapped to distinct length-`b` strings of Hamming
//! weight exactly `b/2`, where `b` is the smallest even integer with
//! `C(b, b/2) >= B`. Because all codewords share one weight, no codeword
//! can dominate (cover coordinatewise) a different codeword — dominance
//! between codewords is equality. That soundness property is what lets a
//! membership test become a dominance test downstream.

use crate::combinatorics::{binomial, unrank_weight_string};
use crate::error::{Error, Result};
use crate::problems::strings::BitStr;

/// A constant-weight code: the first `size` weight-`width/2` strings of
/// length `width` in lexicographic order.
#[derive(Debug, Clone)]
pub struct ConstantWeightCode {
    size: usize,
    width: usize,
    words: Vec<BitStr>,
}

/// The smallest even `b` with `C(b, b/2) >= size`.
pub fn code_width(size: usize) -> Result<usize> {
    if size == 0 {
        return Err(Error::param("code must have at least one word".to_string()));
    }
    let mut b = 2usize;
    loop {
        if binomial(b as u64, b as u64 / 2)? >= size as u128 {
            return Ok(b);
        }
        b += 2;
    }
}

impl ConstantWeightCode {
    /// Build the code for `size` values.
    pub fn new(size: usize) -> Result<Self> {
        let width = code_width(size)?;
        let words = (0..size)
            .map(|i| {
                let bits = unrank_weight_string(width as u64, width as u64 / 2, i as u128)?;
                Ok(BitStr::from_bits(bits))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ConstantWeightCode { size, width, words })
    }

    /// Number of codewords.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Length of every codeword, in bits.
    pub fn width(&self) -> usize {
        self.width
    }

    /// The codeword for `value`.
    pub fn encode(&self, value: usize) -> Result<&BitStr> {
        self.words
            .get(value)
            .ok_or_else(|| Error::range(format!("value {value} outside code of size {}", self.size)))
    }

    /// The value whose codeword is `word`, if any.
    pub fn decode(&self, word: &BitStr) -> Option<usize> {
        self.words.iter().position(|w| w == word)
    }

    /// All codewords in value order.
    pub fn words(&self) -> &[BitStr] {
        &self.words
    }
}
