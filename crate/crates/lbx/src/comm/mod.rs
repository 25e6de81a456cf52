//! From blocked disjointness to data-structure games and back: codes,
//! the partial-match and reachability reductions, and the compilers that
//! turn cell-probe query algorithms into communication transcripts.
//!
//! Together with [`crate::lsd`], this closes the loop: a two-blocked
//! instance becomes parallel reachability queries ([`reach`]) against a
//! memory Bob builds from his edges ([`compile::reachability_memory`]),
//! and compiling those queries ([`compile::compile_parallel_queries`])
//! answers the original disjointness question with the bit budgets the
//! accounting predicts. [`bounds`] evaluates the resulting trade-off
//! formula for reports.

pub mod bounds;
pub mod code;
pub mod compile;
pub mod pm;
pub mod reach;

pub use bounds::bound_calculator;
pub use code::{code_width, ConstantWeightCode};
pub use compile::{
    compile_parallel_queries, compile_single_query, decode_parallel, decode_single,
    reachability_memory, run_direct, CellMemory, ChainedQuery, CompiledBatch, CompiledQuery,
    ParallelAccounting, ProbeQuery, QueryStep, ReachProbeQuery, ScriptedQuery,
};
pub use pm::{blocked_to_partial_match, pair_to_string, PmReduction};
pub use reach::{
    edge_to_element, element_to_edge, two_blocked_to_reachability, ReachabilityReduction,
};
