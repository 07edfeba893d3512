//! Exact and approximate solvers for LCIS, LCWIS and LIS.
//!
//! All solvers are pure functions of their inputs. [`lcis_oracle`] is an
//! exhaustive enumerator kept deliberately separate from the DP code so it
//! can validate everything else.

mod approx;
mod dp;
mod lis;
mod oracle;
mod sparse;

pub use approx::{lcis_approx, ApproxBranch, ApproxOutcome, ApproxParams};
pub use dp::{lcis_dp2, lcis_dpk, DPK_MAX_ARITY};
pub use lis::lis_length;
pub use oracle::{lcis_oracle, ORACLE_CAP};
pub use sparse::{lcis_matching_pairs, matching_pairs};

use crate::error::{Error, Result};
use crate::seqcore::IntSeq;

/// Which order the common subsequence must follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Strictly increasing (LCIS).
    Strict,
    /// Non-decreasing (LCWIS).
    Weak,
}

impl Mode {
    #[inline(always)]
    pub fn allows(self, prev: i64, next: i64) -> bool {
        match self {
            Mode::Strict => prev < next,
            Mode::Weak => prev <= next,
        }
    }
}

/// Length of a longest common (strictly or weakly) increasing subsequence,
/// with an optional witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub length: usize,
    pub witness: Option<IntSeq>,
}

impl SolveResult {
    pub fn length_only(length: usize) -> Self {
        SolveResult {
            length,
            witness: None,
        }
    }
}

/// Picks the exact solver by arity: LIS for one sequence, the quadratic DP
/// for two and the k-dimensional table beyond that.
pub fn lcis_length<S: AsRef<[i64]>>(seqs: &[S], mode: Mode) -> Result<usize> {
    match seqs.len() {
        0 => Err(Error::EmptyInstance("no input sequences".into())),
        1 => Ok(lis_length(seqs[0].as_ref(), mode)),
        2 => Ok(lcis_dp2(seqs[0].as_ref(), seqs[1].as_ref(), mode, false).length),
        _ => Ok(lcis_dpk(seqs, mode)?.length),
    }
}

/// True when `witness` is monotone under `mode` and a subsequence of every
/// sequence in `seqs`.
pub fn is_common_increasing<S: AsRef<[i64]>>(seqs: &[S], witness: &[i64], mode: Mode) -> bool {
    let monotone = witness.windows(2).all(|w| mode.allows(w[0], w[1]));
    monotone && seqs.iter().all(|s| is_subsequence(witness, s.as_ref()))
}

fn is_subsequence(needle: &[i64], hay: &[i64]) -> bool {
    let mut it = hay.iter();
    needle.iter().all(|x| it.any(|y| y == x))
}
