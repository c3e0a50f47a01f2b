//! Exact-arithmetic workbench for implicational BCI/BCK logics: enumeration
//! and classification of formulas, enumeration of closed lambda terms,
//! terminating proof search with term witnesses, exact counting sequences,
//! and rational density reports.

pub mod classify;
pub mod counting;
pub mod density;
pub mod error;
pub mod formula;
pub mod lambda;
pub mod prover;

pub use error::{Error, Result};
pub use formula::Formula;
pub use lambda::Term;
pub use prover::{Logic, Prover};
