use std::collections::HashMap;

use super::dp::unwind;
use super::SolveResult;

const NIL: u32 = u32::MAX;

/// Number of index pairs `(i, j)` with `x[i] == y[j]`.
pub fn matching_pairs(x: &[i64], y: &[i64]) -> u64 {
    let mut count: HashMap<i64, u64> = HashMap::new();
    for &v in y {
        *count.entry(v).or_default() += 1;
    }
    x.iter().map(|v| count.get(v).copied().unwrap_or(0)).sum()
}

/// Strict LCIS that only touches matching pairs.
///
/// Rows of `x` are scanned in order; for each match `(i, j)` the best chain
/// ending at an earlier column `j' < j` with a smaller value is read from a
/// static two-dimensional prefix-maximum tree (columns outside, value ranks
/// inside). Matches of one row are handled from right to left.
/// Runs in `O((n + M) log² n)` for `M` matching pairs.
pub fn lcis_matching_pairs(x: &[i64], y: &[i64], with_witness: bool) -> SolveResult {
    let mut values: Vec<i64> = y.to_vec();
    values.sort_unstable();
    values.dedup();
    let rank = |v: i64| values.binary_search(&v).ok();

    let mut columns_of: Vec<Vec<usize>> = vec![Vec::new(); values.len()];
    let col_rank: Vec<usize> = y
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let r = rank(v).expect("value of y is ranked");
            columns_of[r].push(j);
            r
        })
        .collect();

    let mut tree = DominanceTree::new(&col_rank);
    let mut nodes: Vec<(i64, u32)> = Vec::new();
    let mut best = Entry::default();

    for &v in x {
        let Some(r) = rank(v) else { continue };
        for &j in columns_of[r].iter().rev() {
            let pred = tree.query(j, r);
            let mut entry = Entry {
                len: pred.len + 1,
                node: NIL,
            };
            if with_witness {
                entry.node = nodes.len() as u32;
                nodes.push((v, pred.node));
            }
            tree.update(j, r, entry);
            if entry.len > best.len {
                best = entry;
            }
        }
    }
    SolveResult {
        length: best.len as usize,
        witness: with_witness.then(|| unwind(&nodes, best.node)),
    }
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    len: u32,
    node: u32,
}

impl Default for Entry {
    fn default() -> Self {
        Entry { len: 0, node: NIL }
    }
}

/// Fenwick tree over columns whose nodes each hold a Fenwick tree over the
/// sorted value ranks of the columns they cover.
struct DominanceTree {
    ranks: Vec<Vec<usize>>,
    maxes: Vec<Vec<Entry>>,
}

impl DominanceTree {
    fn new(col_rank: &[usize]) -> Self {
        let m = col_rank.len();
        let mut ranks = vec![Vec::new(); m + 1];
        for (j, &r) in col_rank.iter().enumerate() {
            let mut o = j + 1;
            while o <= m {
                ranks[o].push(r);
                o += o & o.wrapping_neg();
            }
        }
        for list in &mut ranks {
            list.sort_unstable();
            list.dedup();
        }
        let maxes = ranks
            .iter()
            .map(|l| vec![Entry::default(); l.len() + 1])
            .collect();
        DominanceTree { ranks, maxes }
    }

    fn update(&mut self, col: usize, rank: usize, e: Entry) {
        let mut o = col + 1;
        while o < self.ranks.len() {
            let mut p = self.ranks[o].binary_search(&rank).expect("rank indexed") + 1;
            let inner = &mut self.maxes[o];
            while p < inner.len() {
                if e.len > inner[p].len {
                    inner[p] = e;
                }
                p += p & p.wrapping_neg();
            }
            o += o & o.wrapping_neg();
        }
    }

    /// Best entry over columns `< col` with rank `< rank`.
    fn query(&self, col: usize, rank: usize) -> Entry {
        let mut best = Entry::default();
        let mut o = col;
        while o > 0 {
            let mut p = self.ranks[o].partition_point(|&r| r < rank);
            let inner = &self.maxes[o];
            while p > 0 {
                if inner[p].len > best.len {
                    best = inner[p];
                }
                p -= p & p.wrapping_neg();
            }
            o -= o & o.wrapping_neg();
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcis::{is_common_increasing, lcis_dp2, Mode};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(lcis_matching_pairs(&[1, 2, 3], &[4, 5, 6], true).length, 0);
        let r = lcis_matching_pairs(&[1, 2, 4, 3, 5], &[1, 2, 3, 4, 5], true);
        assert_eq!(r.length, 4);
        assert!(is_common_increasing(
            &[[1, 2, 4, 3, 5], [1, 2, 3, 4, 5]],
            r.witness.as_ref().unwrap(),
            Mode::Strict
        ));
        // column order matters even when values increase along x
        assert_eq!(lcis_matching_pairs(&[1, 2], &[2, 1], false).length, 1);
        assert_eq!(matching_pairs(&[1, 1, 2], &[1, 2, 2]), 4);
    }

    proptest! {
        #[test]
        fn equals_dp2(x in prop::collection::vec(0i64..12, 0..40), y in prop::collection::vec(0i64..12, 0..40)) {
            let r = lcis_matching_pairs(&x, &y, true);
            prop_assert_eq!(r.length, lcis_dp2(&x, &y, Mode::Strict, false).length);
            let w = r.witness.unwrap();
            prop_assert_eq!(w.len(), r.length);
            prop_assert!(is_common_increasing(&[&x, &y], &w, Mode::Strict));
        }
    }
}
