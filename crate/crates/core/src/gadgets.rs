//! Vector gadgets and the combiner that embeds a family of gadgets between
//! separator sequences.
//!
//! The combiner output satisfies
//! `lcis(X_1, …, X_k) = C + max lcis(G_1, …, G_k)` over all k-tuples of
//! gadgets, one from each input list, with `C` depending only on the padded
//! list length, the arity and the LIS bound `δ`.

use crate::error::{Error, Result};
use crate::instances::BitVector;
use crate::lcis::{lis_length, Mode};
use crate::separators::{hat, inflate_blocks, separator_family};
use crate::seqcore::{AlphabetSpan, BlockedSeq, IntSeq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    X,
    Y,
}

/// Pairwise vector gadget over symbols `1..=2d`, with
/// `lcis(vector_gadget(u, X), vector_gadget(v, Y)) = d − u·v`.
///
/// Coordinate `p` (1-based) emits `(2p−1, 2p)` or `(2p−1, 2p−1)` on side X
/// for bit 0 or 1, and `(2p, 2p−1)` or `(2p, 2p)` on side Y.
pub fn vector_gadget(v: &BitVector, side: Side) -> IntSeq {
    let mut out = Vec::with_capacity(2 * v.dim());
    for (p0, &bit) in v.bits().iter().enumerate() {
        let lo = 2 * p0 as i64 + 1;
        let hi = lo + 1;
        let pair = match (side, bit) {
            (Side::X, false) => [lo, hi],
            (Side::X, true) => [lo, lo],
            (Side::Y, false) => [hi, lo],
            (Side::Y, true) => [hi, hi],
        };
        out.extend_from_slice(&pair);
    }
    IntSeq::new(out)
}

/// Decreasing run over `kj+1..=kj+k`, skipping `kj+i` when `bit` is set.
/// `i` is 1-based, `j` 0-based.
pub fn coordinate_gadget(i: usize, j: usize, bit: bool, k: usize) -> Result<IntSeq> {
    if i == 0 || i > k {
        return Err(Error::Parameter(format!("sequence index {i} outside 1..={k}")));
    }
    let base = (k * j) as i64;
    Ok((1..=k)
        .rev()
        .filter(|&r| !(bit && r == i))
        .map(|r| base + r as i64)
        .collect())
}

/// Concatenated coordinate gadgets of `v` for sequence `i` of `k`.
pub fn vector_gadget_k(i: usize, v: &BitVector, k: usize) -> Result<IntSeq> {
    let mut out = IntSeq::empty();
    for (j, &bit) in v.bits().iter().enumerate() {
        out.extend_from(&coordinate_gadget(i, j, bit, k)?);
    }
    Ok(out)
}

/// Groups `q` gadgets with the descending shift ladder `2qd, 2qd − 2d, …, 2d`.
///
/// Side X takes `q` distinct gadgets. Side Y takes a single gadget and
/// repeats it `q` times. An increasing subsequence of the result lies in a
/// single shifted copy.
pub fn grouped_gadget(side: Side, gadgets: &[IntSeq], q: usize, d: usize) -> Result<IntSeq> {
    if q == 0 {
        return Err(Error::Parameter("group size q must be >= 1".into()));
    }
    let expected = match side {
        Side::X => q,
        Side::Y => 1,
    };
    if gadgets.len() != expected {
        return Err(Error::Parameter(format!(
            "side {side:?} takes {expected} gadgets, got {}",
            gadgets.len()
        )));
    }
    let step = i64::try_from(2 * d).map_err(|_| Error::overflow("group shift"))?;
    let mut out = IntSeq::empty();
    for t in 0..q {
        let g = &gadgets[if side == Side::X { t } else { 0 }];
        let shift = step
            .checked_mul((q - t) as i64)
            .ok_or_else(|| Error::overflow("group shift"))?;
        out.extend_from(&g.shift(shift)?);
    }
    Ok(out)
}

/// Shape and constant of a combiner output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CombineParams {
    pub delta: usize,
    /// `2^ceil(log2 δ)`, the inflation factor of the separators.
    pub ell: u64,
    /// Gadget lists are padded with empty gadgets to this power of two.
    pub n_blocks: usize,
    pub arity: usize,
    /// `ℓ (k (N − 1) + 2N)`; `ℓ (4N − 2)` for two sequences.
    pub constant: i64,
}

/// Options of [`combine_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CombineOptions {
    pub delta: usize,
    pub mode: Mode,
    /// Gadget alphabet used to place the separators. Must cover every
    /// gadget. `None` takes the span of the gadgets themselves; a fixed
    /// span makes the layout independent of gadget contents.
    pub span: Option<AlphabetSpan>,
}

impl CombineOptions {
    pub fn strict(delta: usize) -> Self {
        CombineOptions {
            delta,
            mode: Mode::Strict,
            span: None,
        }
    }
}

/// Two-sequence combiner: `lcis(X, Y) = C + max_{i,j} lcis(xs[i], ys[j])`.
pub fn combine(xs: &[IntSeq], ys: &[IntSeq], delta: usize) -> Result<(IntSeq, IntSeq, CombineParams)> {
    let (mut out, params) = combine_with(&[xs.to_vec(), ys.to_vec()], CombineOptions::strict(delta))?;
    let y = out.pop().expect("two outputs");
    let x = out.pop().expect("two outputs");
    Ok((x, y, params))
}

/// `k`-sequence combiner over a `k × n` gadget matrix.
pub fn combine_k(matrix: &[Vec<IntSeq>], delta: usize, k: usize) -> Result<(Vec<IntSeq>, CombineParams)> {
    if matrix.len() != k {
        return Err(Error::Shape(format!("expected {k} gadget lists, got {}", matrix.len())));
    }
    combine_with(matrix, CombineOptions::strict(delta))
}

/// Builds `X_r = α_r^0 G_r^0 α̂_r^0 α_r^1 G_r^1 α̂_r^1 …` for every row `r`.
///
/// The prefix separators sit just below the gadget alphabet and the hat
/// separators just above it. Rows may have different lengths; all are
/// padded with empty gadgets to the next power of two.
pub fn combine_with(matrix: &[Vec<IntSeq>], opts: CombineOptions) -> Result<(Vec<IntSeq>, CombineParams)> {
    let k = matrix.len();
    if !(2..=5).contains(&k) {
        return Err(Error::UnsupportedArity { arity: k, min: 2, max: 5 });
    }
    if opts.delta == 0 {
        return Err(Error::Parameter("delta must be >= 1".into()));
    }
    let n = matrix.iter().map(Vec::len).max().unwrap_or(0);
    if matrix.iter().any(Vec::is_empty) {
        return Err(Error::EmptyInstance("combiner needs at least one gadget per sequence".into()));
    }
    for (r, row) in matrix.iter().enumerate() {
        for (i, g) in row.iter().enumerate() {
            let lis = lis_length(g, opts.mode);
            if lis > opts.delta {
                return Err(Error::GadgetContract(format!(
                    "gadget {i} of sequence {r} has increasing subsequence {lis} > delta {}",
                    opts.delta
                )));
            }
        }
    }
    let actual = AlphabetSpan::of_all(matrix.iter().flatten());
    let span = match opts.span {
        Some(s) if !s.covers(&actual) => {
            return Err(Error::GadgetContract(format!("span {s:?} does not cover gadgets {actual:?}")));
        }
        Some(s) => s,
        None => actual,
    };
    let (lo, hi) = (span.lo().unwrap_or(0), span.hi().unwrap_or(0));

    let levels = n.next_power_of_two().trailing_zeros();
    let n_blocks = 1usize << levels;
    let times = opts.delta.next_power_of_two().trailing_zeros();
    let ell = 1u64 << times;

    let family = separator_family(levels, k, opts.mode)?;
    let seps = family
        .seqs
        .iter()
        .map(|s| inflate_blocks(s, times, opts.mode))
        .collect::<Result<Vec<_>>>()?;
    let sep_max = seps.iter().filter_map(|s| s.seq().span().hi()).max().unwrap_or(0);
    let pre_shift = lo
        .checked_sub(1)
        .and_then(|v| v.checked_sub(sep_max))
        .ok_or_else(|| Error::overflow("prefix separator shift"))?;
    // hat minimum is -sep_max
    let hat_shift = hi
        .checked_add(1)
        .and_then(|v| v.checked_add(sep_max))
        .ok_or_else(|| Error::overflow("hat separator shift"))?;

    let empty = IntSeq::empty();
    let mut out = Vec::with_capacity(k);
    for (row, sep) in matrix.iter().zip(&seps) {
        let pre: BlockedSeq = sep.shift(pre_shift)?;
        let post: BlockedSeq = hat(sep)?.shift(hat_shift)?;
        let mut x = IntSeq::empty();
        for i in 0..n_blocks {
            x.extend_from(pre.block(i));
            x.extend_from(row.get(i).unwrap_or(&empty));
            x.extend_from(post.block(i));
        }
        out.push(x);
    }

    let nb = n_blocks as u64;
    let constant = (k as u64 * (nb - 1) + 2 * nb)
        .checked_mul(ell)
        .and_then(|c| i64::try_from(c).ok())
        .ok_or_else(|| Error::overflow("combiner constant"))?;
    Ok((
        out,
        CombineParams {
            delta: opts.delta,
            ell,
            n_blocks,
            arity: k,
            constant,
        },
    ))
}
