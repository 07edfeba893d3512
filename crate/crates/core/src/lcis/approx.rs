use std::collections::HashMap;

use super::{is_common_increasing, lcis_dp2, lcis_matching_pairs, Mode, SolveResult};
use crate::error::{Error, Result};

/// Frequency filter parameters of the `(1 + eps)` approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxParams {
    pub eps: f64,
    /// `ceil(2 sqrt(n / eps))`; symbols occurring more often than
    /// `2 sqrt(n / eps)` times in total are dropped.
    pub freq_threshold: u64,
}

impl ApproxParams {
    pub fn new(n: usize, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Parameter(format!("eps must be positive, got {eps}")));
        }
        Ok(ApproxParams {
            eps,
            freq_threshold: (2.0 * (n as f64 / eps).sqrt()).ceil().max(1.0) as u64,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxBranch {
    /// The filtered instance already had a long enough solution.
    Filtered,
    /// Short filtered solution; the exact solver ran on the original input.
    ExactFallback,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxOutcome {
    pub result: SolveResult,
    pub branch: ApproxBranch,
    pub params: ApproxParams,
}

/// Returns a common strictly increasing subsequence `Z` of `x` and `y` with
/// `L <= (1 + eps) |Z|`, where `L` is the exact LCIS length.
///
/// Both inputs are padded to a common length `n` with symbols that match
/// nothing. Symbols occurring more than `2 sqrt(n / eps)` times in total
/// are removed and the sparse solver runs on what is left. If its answer is
/// longer than `sqrt(n / eps)` it is returned, otherwise the exact quadratic
/// solver runs on the original input.
pub fn lcis_approx(x: &[i64], y: &[i64], eps: f64) -> Result<ApproxOutcome> {
    let n = x.len().max(y.len());
    let params = ApproxParams::new(n.max(1), eps)?;
    let (px, py) = pad_to_common_length(x, y)?;

    let limit = 2.0 * (n as f64 / eps).sqrt();
    let mut freq: HashMap<i64, u64> = HashMap::new();
    for &v in px.iter().chain(&py) {
        *freq.entry(v).or_default() += 1;
    }
    let keep = |v: &&i64| (freq[*v] as f64) <= limit;
    let fx: Vec<i64> = px.iter().filter(keep).copied().collect();
    let fy: Vec<i64> = py.iter().filter(keep).copied().collect();

    let filtered = lcis_matching_pairs(&fx, &fy, true);
    if filtered.length as f64 > (n as f64 / eps).sqrt() {
        let w = filtered.witness.as_deref().unwrap_or_default();
        // a subsequence of the filtered inputs is one of the originals
        debug_assert!(is_common_increasing(&[x, y], w, Mode::Strict));
        return Ok(ApproxOutcome {
            result: filtered,
            branch: ApproxBranch::Filtered,
            params,
        });
    }
    Ok(ApproxOutcome {
        result: lcis_dp2(x, y, Mode::Strict, true),
        branch: ApproxBranch::ExactFallback,
        params,
    })
}

fn pad_to_common_length(x: &[i64], y: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
    let n = x.len().max(y.len());
    let top = x.iter().chain(y).copied().max().unwrap_or(0);
    let fresh = |k: usize| -> Result<i64> {
        i64::try_from(k)
            .ok()
            .and_then(|k| top.checked_add(1)?.checked_add(k))
            .ok_or_else(|| Error::overflow("approximation padding symbols"))
    };
    let mut px = x.to_vec();
    let mut py = y.to_vec();
    // x padding uses fresh[0..], y padding fresh[n..]; the two never meet
    for k in 0..n - x.len() {
        px.push(fresh(k)?);
    }
    for k in 0..n - y.len() {
        py.push(fresh(n + k)?);
    }
    Ok((px, py))
}
