//! Bit strings, star patterns, and the two string-database queries the
//! communication reductions target: partial match and dominance match.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A fixed-length bit string. Ordered lexicographically (which for equal
/// lengths coincides with numeric order, most significant bit first).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitStr(Vec<bool>);

impl BitStr {
    /// Build from raw bits, most significant first.
    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitStr(bits)
    }

    /// The all-zero string of a given length.
    pub fn zeros(len: usize) -> Self {
        BitStr(vec![false; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn bit(&self, i: usize) -> bool {
        self.0[i]
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Coordinate-wise `self >= other` (every one of `other` is a one of
    /// `self`). Errors on length mismatch.
    pub fn dominates(&self, other: &BitStr) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::param(format!(
                "dominance between strings of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(self.0.iter().zip(&other.0).all(|(&a, &b)| a || !b))
    }

    /// Concatenate strings in order.
    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a BitStr>) -> Self {
        let mut bits = Vec::new();
        for p in parts {
            bits.extend_from_slice(&p.0);
        }
        BitStr(bits)
    }
}

impl fmt::Display for BitStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitStr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parse(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()
            .map(BitStr)
    }
}

/// One position of a star pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatSym {
    Zero,
    One,
    Star,
}

/// A pattern over `{0, 1, *}`; stars match either bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern(Vec<PatSym>);

impl Pattern {
    pub fn from_syms(syms: Vec<PatSym>) -> Self {
        Pattern(syms)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn syms(&self) -> &[PatSym] {
        &self.0
    }

    /// Whether `s` matches the pattern position by position.
    pub fn matches(&self, s: &BitStr) -> Result<bool> {
        if self.len() != s.len() {
            return Err(Error::param(format!(
                "pattern of length {} against string of length {}",
                self.len(),
                s.len()
            )));
        }
        Ok(self.0.iter().zip(s.bits()).all(|(p, &b)| match p {
            PatSym::Zero => !b,
            PatSym::One => b,
            PatSym::Star => true,
        }))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                PatSym::Zero => "0",
                PatSym::One => "1",
                PatSym::Star => "*",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(PatSym::Zero),
                '1' => Ok(PatSym::One),
                '*' | '⋆' => Ok(PatSym::Star),
                other => Err(Error::parse(format!("invalid pattern character {other:?}"))),
            })
            .collect::<Result<Vec<PatSym>>>()
            .map(Pattern)
    }
}

/// A set of equal-length bit strings queried by patterns or dominance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMatchDb {
    dim: usize,
    strings: BTreeSet<BitStr>,
}

impl PartialMatchDb {
    /// Empty database over strings of length `dim`.
    pub fn new(dim: usize) -> Self {
        PartialMatchDb { dim, strings: BTreeSet::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    /// Insert a string; errors on length mismatch. Duplicate inserts are
    /// no-ops (the database is a set).
    pub fn insert(&mut self, s: BitStr) -> Result<()> {
        if s.len() != self.dim {
            return Err(Error::param(format!(
                "string of length {} into database of dimension {}",
                s.len(),
                self.dim
            )));
        }
        self.strings.insert(s);
        Ok(())
    }

    pub fn strings(&self) -> impl Iterator<Item = &BitStr> {
        self.strings.iter()
    }
}

/// Whether some database string matches the pattern.
pub fn partial_match(db: &PartialMatchDb, pattern: &Pattern) -> Result<bool> {
    if pattern.len() != db.dim() {
        return Err(Error::param(format!(
            "pattern of length {} against database of dimension {}",
            pattern.len(),
            db.dim()
        )));
    }
    for s in db.strings() {
        if pattern.matches(s)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether some database string is coordinate-wise dominated by `q`.
pub fn dominance_match(db: &PartialMatchDb, q: &BitStr) -> Result<bool> {
    if q.len() != db.dim() {
        return Err(Error::param(format!(
            "query of length {} against database of dimension {}",
            q.len(),
            db.dim()
        )));
    }
    for s in db.strings() {
        if q.dominates(s)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The star form of a dominance query: ones become stars, zeros stay zeros.
/// With this translation `partial_match(db, pattern_from_dominance(q))`
/// equals `dominance_match(db, q)` on every database.
pub fn pattern_from_dominance(q: &BitStr) -> Pattern {
    Pattern::from_syms(
        q.bits()
            .iter()
            .map(|&b| if b { PatSym::Star } else { PatSym::Zero })
            .collect(),
    )
}
