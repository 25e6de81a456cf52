//! Reductions between dynamic data-structure problems and communication
//! games, with cell-probe simulation harnesses and a verification CLI.

pub mod butterfly;
pub mod combinatorics;
pub mod comm;
pub mod driver;
pub mod error;
pub mod geo;
pub mod lsd;
pub mod persistence;
pub mod problems;
pub mod report;

pub use error::{Error, Result};
