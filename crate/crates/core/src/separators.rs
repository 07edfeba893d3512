//! Inflation and separator sequences.
//!
//! A separator family is a set of blocked sequences whose prefix-wise LCIS
//! is a fixed linear function of the prefix block counts. Families are
//! built level by level: every block is inflated and followed by a short
//! tail gadget of fresh symbols, which doubles the number of blocks.

use crate::error::{Error, Result};
use crate::lcis::Mode;
use crate::seqcore::{reverse_negate, BlockedSeq, IntSeq};

/// Largest level accepted by the separator constructions.
pub const MAX_LEVEL: u32 = 20;
/// Largest per-sequence length a family construction may produce.
pub const MAX_FAMILY_LEN: u64 = 1 << 27;

/// `⟨2a−1, 2a⟩` for every element `a`. Doubles LCIS values.
pub fn inflate(s: &[i64]) -> Result<IntSeq> {
    let mut out = Vec::with_capacity(2 * s.len());
    for &a in s {
        let hi = a
            .checked_mul(2)
            .ok_or_else(|| Error::overflow(format!("inflate {a}")))?;
        let lo = hi
            .checked_sub(1)
            .ok_or_else(|| Error::overflow(format!("inflate {a}")))?;
        out.push(lo);
        out.push(hi);
    }
    Ok(IntSeq::new(out))
}

/// `⟨a, a⟩` for every element `a`. Keeps the alphabet, doubles LCWIS values.
pub fn inflate_weak(s: &[i64]) -> IntSeq {
    s.iter().flat_map(|&a| [a, a]).collect()
}

/// Inflation matching `mode`: [`inflate`] for strict, [`inflate_weak`] for weak.
pub fn inflate_for(s: &[i64], mode: Mode) -> Result<IntSeq> {
    match mode {
        Mode::Strict => inflate(s),
        Mode::Weak => Ok(inflate_weak(s)),
    }
}

/// Applies [`inflate_for`] `times` times to every block.
pub fn inflate_blocks(b: &BlockedSeq, times: u32, mode: Mode) -> Result<BlockedSeq> {
    let mut cur = b.clone();
    for _ in 0..times {
        cur = cur.map_blocks(|blk| inflate_for(blk, mode))?;
    }
    Ok(cur)
}

/// The pairwise separator sequences at level `k`, each with `2^k` blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorPair {
    pub a: BlockedSeq,
    pub b: BlockedSeq,
    pub k: u32,
    /// Largest element of both sequences, `2^{k+2} − 3`.
    pub s: i64,
}

/// Builds the level-`k` pair from `A_0 = B_0 = ⟨1⟩`.
///
/// Each step inflates every block and splits it into two: block `2i` is
/// the inflated block followed by `2s+2` (in `A`) or `2s+1` (in `B`),
/// block `2i+1` is `⟨2s+1, 2s+3⟩` (in `A`) or `⟨2s+2, 2s+3⟩` (in `B`).
pub fn separator_pair(k: u32) -> Result<SeparatorPair> {
    if k > MAX_LEVEL {
        return Err(Error::InstanceTooLarge(format!(
            "separator level {k} exceeds {MAX_LEVEL}"
        )));
    }
    let mut a = BlockedSeq::from_blocks([[1i64]]);
    let mut b = a.clone();
    let mut s = 1i64;
    for _ in 0..k {
        a = double_blocks(&a, Mode::Strict, |_| (vec![2 * s + 2], vec![2 * s + 1, 2 * s + 3]))?;
        b = double_blocks(&b, Mode::Strict, |_| (vec![2 * s + 1], vec![2 * s + 2, 2 * s + 3]))?;
        s = 2 * s + 3;
    }
    Ok(SeparatorPair { a, b, k, s })
}

/// One inductive step: block `j` becomes `inflate(block_j) ∘ t0` followed by
/// the block `t1`, where `(t0, t1) = tails(j)`.
fn double_blocks<F>(src: &BlockedSeq, mode: Mode, mut tails: F) -> Result<BlockedSeq>
where
    F: FnMut(usize) -> (Vec<i64>, Vec<i64>),
{
    let mut seq = Vec::with_capacity(2 * src.seq().len() + 3 * src.num_blocks());
    let mut starts = Vec::with_capacity(2 * src.num_blocks());
    for (j, blk) in src.blocks().enumerate() {
        let (t0, t1) = tails(j);
        starts.push(seq.len());
        seq.extend_from_slice(&inflate_for(blk, mode)?);
        seq.extend_from_slice(&t0);
        starts.push(seq.len());
        seq.extend_from_slice(&t1);
    }
    BlockedSeq::new(IntSeq::new(seq), starts)
}

/// `m` separator sequences with `2^levels` blocks each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorFamily {
    pub seqs: Vec<BlockedSeq>,
    pub levels: u32,
    /// Largest element over all sequences.
    pub s: i64,
}

impl SeparatorFamily {
    pub fn arity(&self) -> usize {
        self.seqs.len()
    }

    pub fn num_blocks(&self) -> usize {
        1 << self.levels
    }
}

/// Predicted per-sequence length of a family: `L(2N) = 2 L(N) + (2^m − 1) N`.
pub fn family_len(levels: u32, arity: usize) -> u64 {
    let tail = (1u64 << arity) - 1;
    let mut len = 1u64;
    for l in 0..levels {
        len = 2 * len + tail * (1u64 << l);
    }
    len
}

/// Builds the `arity`-ary separator family.
///
/// With `s` the current largest element and `base` the largest element
/// after inflation (`2s` strict, `s` weak), the tails of sequence `i`
/// (1-based) are the increasing runs of `base + x`, `x ∈ 1..2^m`, split by
/// bit `i − 1` of `x`: `T_i^0` after each inflated block, `T_i^1` as the
/// new odd block. Weak mode replaces inflation by element duplication, so
/// only `2^m − 1` symbols are added per level.
pub fn separator_family(levels: u32, arity: usize, mode: Mode) -> Result<SeparatorFamily> {
    if !(2..=5).contains(&arity) {
        return Err(Error::UnsupportedArity {
            arity,
            min: 2,
            max: 5,
        });
    }
    if levels > MAX_LEVEL || family_len(levels, arity) > MAX_FAMILY_LEN {
        return Err(Error::InstanceTooLarge(format!(
            "separator family with {levels} levels and arity {arity}"
        )));
    }
    let mut seqs = vec![BlockedSeq::from_blocks([[1i64]]); arity];
    let mut s = 1i64;
    let span = (1i64 << arity) - 1;
    for _ in 0..levels {
        let base = match mode {
            Mode::Strict => 2 * s,
            Mode::Weak => s,
        };
        seqs = seqs
            .iter()
            .enumerate()
            .map(|(i, seq)| {
                let (t0, t1): (Vec<i64>, Vec<i64>) =
                    (1..=span).map(|x| base + x).partition(|v| ((v - base) >> i) & 1 == 0);
                double_blocks(seq, mode, |_| (t0.clone(), t1.clone()))
            })
            .collect::<Result<_>>()?;
        s = base + span;
    }
    Ok(SeparatorFamily { seqs, levels, s })
}

/// Reverses and negates a blocked sequence: hat block `j` is the
/// reverse-negation of block `N − 1 − j`. Prefix laws become suffix laws.
pub fn hat(sep: &BlockedSeq) -> Result<BlockedSeq> {
    let n = sep.num_blocks();
    let blocks = (0..n)
        .map(|j| reverse_negate(sep.block(n - 1 - j)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockedSeq::from_blocks(blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcis::{lcis_dp2, lcis_dpk, lcis_oracle};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn blocks(b: &BlockedSeq) -> Vec<Vec<i64>> {
        b.blocks().map(|x| x.to_vec()).collect()
    }

    #[test]
    fn inflate_examples() {
        assert_eq!(inflate(&[]).unwrap(), IntSeq::empty());
        assert_eq!(inflate(&[1, 2]).unwrap(), IntSeq::from([1, 2, 3, 4]));
        assert!(inflate(&[i64::MAX / 2 + 1]).is_err());
        assert!(inflate(&[i64::MIN / 2]).is_err());
        assert_eq!(inflate_weak(&[3]), IntSeq::from([3, 3]));
        assert_eq!(inflate_weak(&[]), IntSeq::empty());
    }

    #[test]
    fn pair_base_cases() {
        let p = separator_pair(0).unwrap();
        assert_eq!(blocks(&p.a), vec![vec![1]]);
        assert_eq!(blocks(&p.b), vec![vec![1]]);
        assert_eq!(p.s, 1);

        let p = separator_pair(1).unwrap();
        assert_eq!(blocks(&p.a), vec![vec![1, 2, 4], vec![3, 5]]);
        assert_eq!(blocks(&p.b), vec![vec![1, 2, 3], vec![4, 5]]);
        assert_eq!(p.s, 5);
        let v = lcis_oracle(&[p.a.prefix(1), p.b.prefix(0)], Mode::Strict).unwrap();
        assert_eq!(v.length, 3);
        assert!(separator_pair(MAX_LEVEL + 1).is_err());
    }

    #[test]
    fn pair_length_and_max() {
        for k in 0..=10u32 {
            let p = separator_pair(k).unwrap();
            // (3k/2 + 1) 2^k, written without fractions
            let expect = (3 * k as usize + 2) << k >> 1;
            assert_eq!(p.a.seq().len(), expect);
            assert_eq!(p.b.seq().len(), expect);
            assert_eq!(p.s, (1i64 << (k + 2)) - 3);
            assert_eq!(p.a.seq().iter().max(), Some(&p.s));
            assert_eq!(p.a.num_blocks(), 1 << k);
        }
    }

    #[test]
    fn pair_prefix_law_small() {
        for k in 0..=3u32 {
            let p = separator_pair(k).unwrap();
            let n = 1usize << k;
            for i in 0..n {
                for j in 0..n {
                    let got = lcis_dp2(p.a.prefix(i), p.b.prefix(j), Mode::Strict, false).length;
                    assert_eq!(got, i + j + n, "k={k} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn hat_examples() {
        let p = separator_pair(0).unwrap();
        assert_eq!(blocks(&hat(&p.a).unwrap()), vec![vec![-1]]);
        let p = separator_pair(1).unwrap();
        assert_eq!(blocks(&hat(&p.a).unwrap()), vec![vec![-5, -3], vec![-4, -2, -1]]);

        let p = separator_pair(2).unwrap();
        let (ha, hb) = (hat(&p.a).unwrap(), hat(&p.b).unwrap());
        let n = 4usize;
        for i in 0..n {
            for j in 0..n {
                let got = lcis_dp2(ha.suffix(i), hb.suffix(j), Mode::Strict, false).length;
                assert_eq!(got, 2 * (n - 1) - i - j + n);
            }
        }
    }

    #[test]
    fn family_matches_pair() {
        for levels in 0..=5 {
            let f = separator_family(levels, 2, Mode::Strict).unwrap();
            let p = separator_pair(levels).unwrap();
            assert_eq!(f.seqs[0], p.a);
            assert_eq!(f.seqs[1], p.b);
            assert_eq!(f.s, p.s);
        }
    }

    #[test]
    fn family_base_and_arity_guard() {
        let f = separator_family(0, 3, Mode::Strict).unwrap();
        assert!(f.seqs.iter().all(|s| s.seq().as_slice() == [1]));
        assert!(separator_family(1, 1, Mode::Strict).is_err());
        assert!(separator_family(1, 6, Mode::Strict).is_err());
        assert!(separator_family(MAX_LEVEL + 1, 2, Mode::Strict).is_err());
    }

    #[test]
    fn family_three_way_prefix_law() {
        let f = separator_family(2, 3, Mode::Strict).unwrap();
        let n = f.num_blocks();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let prefixes = [f.seqs[0].prefix(a), f.seqs[1].prefix(b), f.seqs[2].prefix(c)];
                    let got = lcis_dpk(&prefixes, Mode::Strict).unwrap().length;
                    assert_eq!(got, a + b + c + n);
                }
            }
        }
    }

    #[test]
    fn family_lengths_and_alphabet() {
        for arity in 2..=4usize {
            let mut prev_symbols = None;
            for levels in 0..=4u32 {
                let f = separator_family(levels, arity, Mode::Strict).unwrap();
                for s in &f.seqs {
                    assert_eq!(s.seq().len() as u64, family_len(levels, arity));
                    assert_eq!(s.num_blocks(), 1 << levels);
                }
                let symbols: BTreeSet<i64> =
                    f.seqs.iter().flat_map(|s| s.seq().iter().copied()).collect();
                if let Some(p) = prev_symbols {
                    assert_eq!(symbols.len(), 2 * p + (1 << arity) - 1);
                }
                prev_symbols = Some(symbols.len());
            }
        }
    }

    #[test]
    fn weak_family_keeps_alphabet_small() {
        let f = separator_family(3, 2, Mode::Weak).unwrap();
        let symbols: BTreeSet<i64> = f.seqs.iter().flat_map(|s| s.seq().iter().copied()).collect();
        assert_eq!(symbols.len(), 1 + 3 * 3);
    }

    proptest! {
        #[test]
        fn inflation_doubles_lcis(a in prop::collection::vec(-5i64..=5, 0..10), b in prop::collection::vec(-5i64..=5, 0..10)) {
            let base = lcis_dp2(&a, &b, Mode::Strict, false).length;
            let infl = lcis_dp2(&inflate(&a).unwrap(), &inflate(&b).unwrap(), Mode::Strict, false).length;
            prop_assert_eq!(infl, 2 * base);
        }

        #[test]
        fn weak_inflation_doubles_lcwis(a in prop::collection::vec(-5i64..=5, 0..10), b in prop::collection::vec(-5i64..=5, 0..10)) {
            let base = lcis_dp2(&a, &b, Mode::Weak, false).length;
            let infl = lcis_dp2(&inflate_weak(&a), &inflate_weak(&b), Mode::Weak, false).length;
            prop_assert_eq!(infl, 2 * base);
        }

        #[test]
        fn shifted_pair_keeps_prefix_law(c in -1000i64..1000, k in 0u32..3) {
            let p = separator_pair(k).unwrap();
            let (a, b) = (p.a.shift(c).unwrap(), p.b.shift(c).unwrap());
            let n = 1usize << k;
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(lcis_dp2(a.prefix(i), b.prefix(j), Mode::Strict, false).length, i + j + n);
                }
            }
        }
    }
}
