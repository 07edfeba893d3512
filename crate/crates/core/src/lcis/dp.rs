use super::{Mode, SolveResult};
use crate::error::{Error, Result};
use crate::seqcore::IntSeq;

/// Largest arity accepted by [`lcis_dpk`].
pub const DPK_MAX_ARITY: usize = 5;

const NIL: u32 = u32::MAX;

/// Quadratic LCIS/LCWIS of two sequences.
///
/// `f[j]` holds the longest common run ending at `y[j]` using the rows of
/// `x` seen so far; `best` is the largest admissible predecessor value for
/// the current row. With `with_witness`, every improvement of `f[j]` records
/// an immutable chain node, so the witness stays consistent across rows.
pub fn lcis_dp2(x: &[i64], y: &[i64], mode: Mode, with_witness: bool) -> SolveResult {
    if with_witness {
        return dp2_witness(x, y, mode);
    }
    let mut f = vec![0u32; y.len()];
    match mode {
        Mode::Strict => {
            for &a in x {
                let mut best = 0u32;
                for (fj, &b) in f.iter_mut().zip(y) {
                    if b < a {
                        best = best.max(*fj);
                    } else if b == a && best + 1 > *fj {
                        *fj = best + 1;
                    }
                }
            }
        }
        Mode::Weak => {
            for &a in x {
                let mut best = 0u32;
                for (fj, &b) in f.iter_mut().zip(y) {
                    let old = *fj;
                    if b == a && best + 1 > old {
                        *fj = best + 1;
                    }
                    // the predecessor must come from an earlier row of x
                    if b <= a {
                        best = best.max(old);
                    }
                }
            }
        }
    }
    SolveResult::length_only(f.into_iter().max().unwrap_or(0) as usize)
}

fn dp2_witness(x: &[i64], y: &[i64], mode: Mode) -> SolveResult {
    let mut f = vec![0u32; y.len()];
    let mut node_of = vec![NIL; y.len()];
    // (value, previous node)
    let mut nodes: Vec<(i64, u32)> = Vec::new();
    for &a in x {
        let mut best = 0u32;
        let mut best_node = NIL;
        for j in 0..y.len() {
            let b = y[j];
            let (old, old_node) = (f[j], node_of[j]);
            if b == a && best + 1 > old {
                f[j] = best + 1;
                node_of[j] = nodes.len() as u32;
                nodes.push((b, best_node));
            }
            if mode.allows(b, a) && old > best {
                best = old;
                best_node = old_node;
            }
        }
    }
    let (length, head) = f
        .iter()
        .zip(&node_of)
        .max_by_key(|(l, _)| **l)
        .map(|(&l, &n)| (l as usize, n))
        .unwrap_or((0, NIL));
    SolveResult {
        length,
        witness: Some(unwind(&nodes, head)),
    }
}

pub(super) fn unwind(nodes: &[(i64, u32)], mut head: u32) -> IntSeq {
    let mut out = Vec::new();
    while head != NIL {
        let (v, prev) = nodes[head as usize];
        out.push(v);
        head = prev;
    }
    out.reverse();
    IntSeq::new(out)
}

/// LCIS/LCWIS of `k` sequences in `O(n_1 ⋯ n_k)` time.
///
/// `R[i_1, …, i_k]` is the longest common run of the prefixes that ends
/// exactly at `X_k[i_k - 1]`. If some `X_s[i_s - 1]` differs from that last
/// element, `R` equals the entry with `i_s` decremented. Otherwise every
/// prefix ends on the same symbol `σ` and `R = 1 + D[i_k]`, where
/// `D[i] = max R[i_1 - 1, …, i_{k-1} - 1, j]` over `j < i` with `X_k[j - 1]`
/// below `σ` (or equal to it in weak mode). `D` is filled by one running
/// maximum before each innermost loop.
///
/// Only two layers of the first index are kept alive, so memory is
/// `O(n_2 ⋯ n_k)`.
pub fn lcis_dpk<S: AsRef<[i64]>>(seqs: &[S], mode: Mode) -> Result<SolveResult> {
    let k = seqs.len();
    if !(2..=DPK_MAX_ARITY).contains(&k) {
        return Err(Error::UnsupportedArity {
            arity: k,
            min: 2,
            max: DPK_MAX_ARITY,
        });
    }
    let seqs: Vec<&[i64]> = seqs.iter().map(AsRef::as_ref).collect();
    if seqs.iter().any(|s| s.is_empty()) {
        return Ok(SolveResult::length_only(0));
    }
    let first = seqs[0];
    let last = seqs[k - 1];
    let mids = &seqs[1..k - 1];

    let width = last.len() + 1;
    // row strides of the middle dimensions, most significant first
    let mut mid_strides = vec![0usize; mids.len()];
    let mut rows = 1usize;
    for (s, m) in mids.iter().enumerate().rev() {
        mid_strides[s] = rows;
        rows = rows
            .checked_mul(m.len() + 1)
            .ok_or_else(|| Error::InstanceTooLarge("DP table size overflows".into()))?;
    }
    let layer = rows
        .checked_mul(width)
        .filter(|&l| l <= 1 << 31)
        .ok_or_else(|| Error::InstanceTooLarge("DP layer exceeds 2^31 cells".into()))?;
    let diag_step: usize = mid_strides.iter().sum();

    let mut prev = vec![0u32; layer];
    let mut cur = vec![0u32; layer];
    let mut idx = vec![0usize; mids.len()];

    for &a in first {
        std::mem::swap(&mut prev, &mut cur);
        idx.iter_mut().for_each(|i| *i = 0);
        for r in 0..rows {
            if r > 0 {
                // odometer over the middle indices
                for s in (0..idx.len()).rev() {
                    idx[s] += 1;
                    if idx[s] <= mids[s].len() {
                        break;
                    }
                    idx[s] = 0;
                }
            }
            if idx.contains(&0) {
                continue;
            }
            let differing = mids
                .iter()
                .zip(&idx)
                .position(|(m, &i)| m[i - 1] != a);
            let base = r * width;
            match differing {
                None => {
                    let diag = (r - diag_step) * width;
                    let sigma = a;
                    let mut d = 0u32;
                    for i in 1..width {
                        let v = last[i - 1];
                        cur[base + i] = if v == sigma { d + 1 } else { prev[base + i] };
                        if mode.allows(v, sigma) {
                            d = d.max(prev[diag + i]);
                        }
                    }
                }
                Some(s) => {
                    let shifted = (r - mid_strides[s]) * width;
                    for i in 1..width {
                        cur[base + i] = if last[i - 1] != a {
                            prev[base + i]
                        } else {
                            cur[shifted + i]
                        };
                    }
                }
            }
        }
    }
    let final_row = (rows - 1) * width;
    let best = cur[final_row..final_row + width]
        .iter()
        .copied()
        .max()
        .unwrap_or(0);
    Ok(SolveResult::length_only(best as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcis::{is_common_increasing, lcis_oracle};
    use proptest::prelude::*;

    #[test]
    fn dp2_examples() {
        assert_eq!(lcis_dp2(&[], &[1, 2], Mode::Strict, true).length, 0);
        let r = lcis_dp2(&[1, 2, 4, 3, 5], &[1, 2, 3, 4, 5], Mode::Strict, true);
        assert_eq!(r.length, 4);
        assert!(is_common_increasing(
            &[[1, 2, 4, 3, 5], [1, 2, 3, 4, 5]],
            r.witness.as_ref().unwrap(),
            Mode::Strict
        ));
        assert_eq!(lcis_dp2(&[2, 2], &[2, 2], Mode::Weak, false).length, 2);
        assert_eq!(lcis_dp2(&[2, 2], &[2, 2], Mode::Strict, false).length, 1);
        // x-row reuse must not chain a single x element twice
        assert_eq!(lcis_dp2(&[2], &[2, 2], Mode::Weak, true).length, 1);
    }

    #[test]
    fn dpk_examples() {
        let r = lcis_dpk(&[[1, 2, 3], [1, 2, 3], [1, 2, 3]], Mode::Strict).unwrap();
        assert_eq!(r.length, 3);
        assert!(matches!(
            lcis_dpk(&[[1]], Mode::Strict),
            Err(Error::UnsupportedArity { arity: 1, .. })
        ));
        let six = vec![vec![1i64]; 6];
        assert!(lcis_dpk(&six, Mode::Strict).is_err());
        assert_eq!(lcis_dpk(&[vec![1, 2], vec![], vec![1]], Mode::Strict).unwrap().length, 0);
        assert_eq!(
            lcis_dpk(&[[2, 2, 1], [2, 1, 2], [2, 2, 2]], Mode::Weak).unwrap().length,
            2
        );
    }

    fn small_seq() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(0i64..5, 0..9)
    }

    fn mode() -> impl Strategy<Value = Mode> {
        prop_oneof![Just(Mode::Strict), Just(Mode::Weak)]
    }

    proptest! {
        #[test]
        fn dp2_matches_oracle(x in small_seq(), y in small_seq(), mode in mode()) {
            let expect = lcis_oracle(&[&x, &y], mode).unwrap().length;
            let r = lcis_dp2(&x, &y, mode, true);
            prop_assert_eq!(r.length, expect);
            prop_assert_eq!(lcis_dp2(&x, &y, mode, false).length, expect);
            let w = r.witness.unwrap();
            prop_assert_eq!(w.len(), expect);
            prop_assert!(is_common_increasing(&[&x, &y], &w, mode));
        }

        #[test]
        fn dp2_symmetric(x in small_seq(), y in small_seq(), mode in mode()) {
            prop_assert_eq!(lcis_dp2(&x, &y, mode, false), lcis_dp2(&y, &x, mode, false));
        }

        #[test]
        fn dp2_monotone_under_append(x in small_seq(), y in small_seq(), extra in 0i64..5) {
            let base = lcis_dp2(&x, &y, Mode::Strict, false).length;
            let mut x2 = x.clone();
            x2.push(extra);
            prop_assert!(lcis_dp2(&x2, &y, Mode::Strict, false).length >= base);
        }

        #[test]
        fn dpk_matches_oracle(seqs in prop::collection::vec(small_seq(), 2..5), mode in mode()) {
            let expect = lcis_oracle(&seqs, mode).unwrap().length;
            prop_assert_eq!(lcis_dpk(&seqs, mode).unwrap().length, expect);
        }

        #[test]
        fn dpk_k2_matches_dp2(x in prop::collection::vec(0i64..30, 0..60), y in prop::collection::vec(0i64..30, 0..60), mode in mode()) {
            prop_assert_eq!(lcis_dpk(&[&x, &y], mode).unwrap().length, lcis_dp2(&x, &y, mode, false).length);
        }
    }
}
