use super::{Mode, SolveResult};
use crate::error::{Error, Result};
use crate::seqcore::IntSeq;

/// Largest length of the shortest input the oracle accepts.
pub const ORACLE_CAP: usize = 20;

/// Exhaustive LCIS: enumerates every monotone subsequence of a shortest
/// input and keeps those that embed into all other inputs.
pub fn lcis_oracle<S: AsRef<[i64]>>(seqs: &[S], mode: Mode) -> Result<SolveResult> {
    let seqs: Vec<&[i64]> = seqs.iter().map(AsRef::as_ref).collect();
    let Some(base_idx) = (0..seqs.len()).min_by_key(|&i| seqs[i].len()) else {
        return Err(Error::EmptyInstance("no input sequences".into()));
    };
    let base = seqs[base_idx];
    if base.len() > ORACLE_CAP {
        return Err(Error::InstanceTooLarge(format!(
            "oracle needs shortest input <= {ORACLE_CAP}, got {}",
            base.len()
        )));
    }
    let others: Vec<&[i64]> = seqs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != base_idx)
        .map(|(_, s)| *s)
        .collect();

    let mut search = Search {
        base,
        others: &others,
        mode,
        chain: Vec::new(),
        best: Vec::new(),
    };
    let cursors = vec![0usize; others.len()];
    search.extend(0, &cursors);
    Ok(SolveResult {
        length: search.best.len(),
        witness: Some(IntSeq::new(search.best)),
    })
}

struct Search<'a> {
    base: &'a [i64],
    others: &'a [&'a [i64]],
    mode: Mode,
    chain: Vec<i64>,
    best: Vec<i64>,
}

impl Search<'_> {
    // `cursors[t]` is the first unused position of `others[t]` after greedily
    // embedding `chain`; greedy leftmost embedding decides subsequence-ness.
    fn extend(&mut self, from: usize, cursors: &[usize]) {
        if self.chain.len() > self.best.len() {
            self.best = self.chain.clone();
        }
        for idx in from..self.base.len() {
            let val = self.base[idx];
            if let Some(&last) = self.chain.last() {
                if !self.mode.allows(last, val) {
                    continue;
                }
            }
            let next: Option<Vec<usize>> = self
                .others
                .iter()
                .zip(cursors)
                .map(|(s, &c)| s[c..].iter().position(|&y| y == val).map(|p| c + p + 1))
                .collect();
            if let Some(next) = next {
                self.chain.push(val);
                self.extend(idx + 1, &next);
                self.chain.pop();
            }
        }
    }
}
