//! Branching-program satisfiability to LCIS through reachability gadgets.
//!
//! Variables are split into two halves. For every assignment `a` of the
//! left half there is a gadget `RG_X(a)`, for every assignment `b` of the
//! right half a gadget `RG_Y(b)`, and for nodes `u`, `v` that are `2^k`
//! layers apart
//!
//! ```text
//! lcis(RG_X^{u→v}(a), RG_Y^{u→v}(b)) = C_k   if a∘b satisfies a u→v path
//!                                    < C_k   otherwise.
//! ```
//!
//! Level 0 gadgets are `⟨0⟩` or empty. Level `k` concatenates the two
//! half-length gadgets through each midpoint `w`, moves every midpoint
//! branch to its own alphabet range and combines the branches.

use super::{Identity, ReductionOutput};
use crate::error::{Error, Result};
use crate::gadgets::{combine, combine_with, CombineOptions, CombineParams};
use crate::instances::BranchingProgram;
use crate::lcis::{lis_length, Mode};
use crate::seqcore::{AlphabetSpan, IntSeq};

pub const BP_MAX_VARS: usize = 8;
pub const BP_MAX_WIDTH: usize = 3;
/// Largest `t` with `T = 2^t + 1`.
pub const BP_MAX_T: u32 = 2;

/// Constants of one recursion level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BpLevel {
    pub k: u32,
    /// LIS bound used by every combine call of this level.
    pub delta: usize,
    /// Constant of the level's combine calls.
    pub combine_constant: i64,
    /// `C_k`.
    pub c_k: i64,
    /// Longest gadget built at this level.
    pub max_gadget_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpSatReduction {
    /// `[X, Y]` with `threshold = final constant + C_t`.
    pub output: ReductionOutput,
    /// Levels `0..=t`; level 0 has `c_k = 1` and no combine.
    pub levels: Vec<BpLevel>,
    pub final_params: CombineParams,
    /// Variables after padding to an even count.
    pub n_vars: usize,
}

/// Gadgets for one node pair, indexed by half-assignment.
#[derive(Debug, Clone)]
struct Family {
    x: Vec<IntSeq>,
    y: Vec<IntSeq>,
}

impl Family {
    fn span(&self) -> AlphabetSpan {
        AlphabetSpan::of_all(self.x.iter().chain(&self.y))
    }

    fn shift(&self, c: i64) -> Result<Family> {
        let sh = |v: &Vec<IntSeq>| v.iter().map(|s| s.shift(c)).collect::<Result<Vec<_>>>();
        Ok(Family {
            x: sh(&self.x)?,
            y: sh(&self.y)?,
        })
    }

    fn max_len(&self) -> usize {
        self.x.iter().chain(&self.y).map(|s| s.len()).max().unwrap_or(0)
    }
}

/// `fams[seg][u][v]` for one level.
type Level = Vec<Vec<Vec<Family>>>;

/// Bit `i` (0-based, most significant first) of a `half`-bit assignment.
fn bit(assign: usize, i: usize, half: usize) -> bool {
    (assign >> (half - 1 - i)) & 1 == 1
}

fn check_shape(bp: &BranchingProgram) -> Result<u32> {
    bp.validate()?;
    let layers = bp.length - 1;
    if !layers.is_power_of_two() {
        return Err(Error::Shape(format!("length T = {} is not 2^t + 1", bp.length)));
    }
    let t = layers.trailing_zeros();
    if bp.n_vars > BP_MAX_VARS || bp.width > BP_MAX_WIDTH || t > BP_MAX_T {
        return Err(Error::Shape(format!(
            "N={} W={} t={t} exceeds caps N<={BP_MAX_VARS} W<={BP_MAX_WIDTH} t<={BP_MAX_T}",
            bp.n_vars, bp.width
        )));
    }
    Ok(t)
}

/// Builds `X` and `Y` with `lcis(X, Y) = threshold` iff `bp` accepts some
/// input, and `lcis(X, Y) < threshold` otherwise.
///
/// Odd `N` gets one extra variable that no layer tests. `T` must be
/// `2^t + 1`.
pub fn bpsat_to_lcis(bp: &BranchingProgram) -> Result<BpSatReduction> {
    let t = check_shape(bp)?;
    let n_vars = bp.n_vars + bp.n_vars % 2;
    let half = n_vars / 2;
    let assigns = 1usize << half;
    let w = bp.width;

    let mut level: Level = base_level(bp, half, assigns);
    let mut levels = vec![BpLevel {
        k: 0,
        delta: 1,
        combine_constant: 0,
        c_k: 1,
        max_gadget_len: 1,
    }];
    for k in 1..=t {
        let prev_c = levels.last().expect("level 0").c_k;
        let (next, info) = next_level(&level, w, k, prev_c)?;
        level = next;
        levels.push(info);
    }

    let top = &level[0][bp.start][bp.accept];
    let delta = top
        .x
        .iter()
        .chain(&top.y)
        .map(|s| lis_length(s, Mode::Strict))
        .max()
        .unwrap_or(0)
        .max(1);
    let (x, y, final_params) = combine(&top.x, &top.y, delta)?;
    let c_t = levels.last().expect("level 0").c_k;
    let threshold = final_params
        .constant
        .checked_add(c_t)
        .ok_or_else(|| Error::overflow("branching-program threshold"))?;
    Ok(BpSatReduction {
        output: ReductionOutput {
            sequences: vec![x, y],
            constant: final_params.constant,
            identity: Identity::BpAccept,
            threshold: Some(threshold),
        },
        levels,
        final_params,
        n_vars,
    })
}

fn base_level(bp: &BranchingProgram, half: usize, assigns: usize) -> Level {
    let w = bp.width;
    let one = IntSeq::from([0]);
    bp.layer_var
        .iter()
        .zip(&bp.edges)
        .map(|(&var, edges)| {
            let left = var <= half;
            let pos = if left { var - 1 } else { var - 1 - half };
            (0..w)
                .map(|u| {
                    (0..w)
                        .map(|v| {
                            let has = |label: bool| edges.iter().any(|e| e.from == u && e.to == v && e.label == label);
                            let side = |responsible: bool| -> Vec<IntSeq> {
                                (0..assigns)
                                    .map(|a| {
                                        if !responsible || has(bit(a, pos, half)) {
                                            one.clone()
                                        } else {
                                            IntSeq::empty()
                                        }
                                    })
                                    .collect()
                            };
                            Family {
                                x: side(left),
                                y: side(!left),
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn next_level(prev: &Level, w: usize, k: u32, prev_c: i64) -> Result<(Level, BpLevel)> {
    // branches[seg][u][v][i]: the u→w_i→v concatenation on its own range
    let mut branches: Vec<Vec<Vec<Vec<Family>>>> = Vec::with_capacity(prev.len() / 2);
    for pair in prev.chunks(2) {
        let (lhs, rhs) = (&pair[0], &pair[1]);
        let mut seg = Vec::with_capacity(w);
        for u in 0..w {
            let mut row = Vec::with_capacity(w);
            for v in 0..w {
                let mut placed = Vec::with_capacity(w);
                let mut cursor: Option<i64> = None;
                for mid in 0..w {
                    let b = concat_branch(&lhs[u][mid], &rhs[mid][v])?;
                    let b = match (b.span(), cursor) {
                        (AlphabetSpan::Range { lo, hi }, Some(c)) => {
                            let off = c + 1 - lo;
                            cursor = Some(hi + off);
                            b.shift(off)?
                        }
                        (AlphabetSpan::Range { hi, .. }, None) => {
                            cursor = Some(hi);
                            b
                        }
                        (AlphabetSpan::Empty, _) => b,
                    };
                    placed.push(b);
                }
                row.push(placed);
            }
            seg.push(row);
        }
        branches.push(seg);
    }

    let all = branches.iter().flatten().flatten().flatten();
    let delta = all
        .flat_map(|b| b.x.iter().chain(&b.y))
        .map(|s| lis_length(s, Mode::Strict))
        .max()
        .unwrap_or(0)
        .max(1);

    let mut combine_constant = None;
    let mut max_gadget_len = 0;
    let mut next: Level = Vec::with_capacity(branches.len());
    for seg in &branches {
        let mut out_seg = Vec::with_capacity(w);
        for row in seg {
            let mut out_row = Vec::with_capacity(w);
            for placed in row {
                let span = placed.iter().fold(AlphabetSpan::Empty, |s, b| s.union(b.span()));
                let opts = CombineOptions {
                    delta,
                    mode: Mode::Strict,
                    span: Some(span),
                };
                let assigns = placed[0].x.len();
                let mut fam = Family {
                    x: Vec::with_capacity(assigns),
                    y: Vec::with_capacity(assigns),
                };
                for a in 0..assigns {
                    let xs = placed.iter().map(|b| b.x[a].clone()).collect();
                    let ys = placed.iter().map(|b| b.y[a].clone()).collect();
                    // rows of the combiner are independent of each other,
                    // so row 0 is RG_X(a) and row 1 is RG_Y(a)
                    let (mut rows, params) = combine_with(&[xs, ys], opts)?;
                    combine_constant.get_or_insert(params.constant);
                    fam.y.push(rows.pop().expect("two rows"));
                    fam.x.push(rows.pop().expect("two rows"));
                }
                max_gadget_len = max_gadget_len.max(fam.max_len());
                out_row.push(fam);
            }
            out_seg.push(out_row);
        }
        next.push(out_seg);
    }
    let combine_constant = combine_constant.expect("at least one node pair");
    let c_k = prev_c
        .checked_mul(2)
        .and_then(|c| c.checked_add(combine_constant))
        .ok_or_else(|| Error::overflow("level constant"))?;
    Ok((
        next,
        BpLevel {
            k,
            delta,
            combine_constant,
            c_k,
            max_gadget_len,
        },
    ))
}

/// `left ∘ right`, with `right` moved above everything `left` uses. The
/// same shift applies to both sides and every assignment.
fn concat_branch(left: &Family, right: &Family) -> Result<Family> {
    let shift = match (left.span(), right.span()) {
        (AlphabetSpan::Range { hi, .. }, AlphabetSpan::Range { lo, .. }) => hi + 1 - lo,
        _ => 0,
    };
    let right = right.shift(shift)?;
    let cat = |a: &[IntSeq], b: &[IntSeq]| -> Vec<IntSeq> {
        a.iter().zip(b).map(|(p, q)| IntSeq::concat([p.as_slice(), q.as_slice()])).collect()
    };
    Ok(Family {
        x: cat(&left.x, &right.x),
        y: cat(&left.y, &right.y),
    })
}
