//! Persistence transforms for cell-probe machines, and the reductions
//! built on them.
//!
//! * [`machine`] — the [`machine::CellMachine`] abstraction, the flat
//!   memory harness, and the counter / marked-ancestor machines.
//! * [`partial`] — partial persistence: record a linear history, query any
//!   timestamp.
//! * [`full`] — full persistence: record a version tree, query any
//!   version; includes the version-tree text format.
//! * [`fpma`] — butterfly reachability through a fully persistent
//!   marked-ancestor structure (the edge ↔ slot bijection).
//! * [`dsu_ma`] — the decremental marked-ancestor structure backed by
//!   union-find.

pub mod dsu_ma;
pub mod fpma;
pub mod full;
pub mod machine;
pub mod partial;

pub use dsu_ma::DecrementalMarkedAncestor;
pub use fpma::{build_fpma_input, edge_to_slot, reach_via_fpma, slot_to_edge, FpmaInstance,
    FpmaStore, SlotRef};
pub use full::{record_full, tree_summary, CounterCodec, FullStore, MaOpCodec, UpdateCodec,
    VersionTree};
pub use machine::{replay_fresh, CellMachine, CounterMachine, FlatMemory, MarkedAncestorMachine,
    MemRead, MemWrite};
pub use partial::{record_partial, PartialStore};
