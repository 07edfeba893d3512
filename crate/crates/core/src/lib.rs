//! Increasing-subsequence solvers, separator and gadget constructions, and
//! exact reductions from orthogonal-vectors and branching-program
//! satisfiability to LCIS.

pub mod error;
pub mod gadgets;
pub mod harness;
pub mod instances;
pub mod lcis;
pub mod reductions;
pub mod seqcore;
pub mod separators;

pub use error::{Error, Result};
pub use lcis::{Mode, SolveResult};
pub use seqcore::{AlphabetSpan, BlockedSeq, IntSeq};
