//! Lopsided set disjointness: instances, rebalancing reductions, hard
//! distributions, and communication transcripts.
//!
//! The pipeline starts from a raw instance over a blocked universe
//! ([`LsdInstance`]), rebalances it so Alice holds exactly one element per
//! block ([`to_blocked`]), then regroups blocks so each super-block carries
//! a permutation matrix ([`to_two_blocked`]). Each step costs Alice a short
//! prefix of communication, tracked in a [`Transcript`]. The module also
//! samples the hard input distributions used to stress the reductions.

pub mod hard;
pub mod instance;
pub mod rebalance;
pub mod transcript;

pub use hard::{
    block_entropy_exact, designated_intersection_probability, sample_dk, sample_dyes,
    BlockSample, HardSample, QEntry,
};
pub use instance::{BlockedLsdInstance, LsdInstance, TwoBlockedLsdInstance};
pub use rebalance::{
    decode_counts_binomial, decode_counts_unary, encode_counts_binomial, encode_counts_unary,
    to_blocked, to_two_blocked, BlockedReduction, TwoBlockedReduction,
};
pub use transcript::{Message, Party, Transcript};
