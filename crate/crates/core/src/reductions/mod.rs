//! Reductions from orthogonal vectors, k-OV, LCS and branching-program
//! satisfiability to LCIS and LCWIS.
//!
//! Every reduction returns a [`ReductionOutput`] whose `constant` and
//! `threshold` pin down the value an exact solver must report on the
//! produced sequences.

mod bpsat;

pub use bpsat::{bpsat_to_lcis, BpLevel, BpSatReduction, BP_MAX_T, BP_MAX_VARS, BP_MAX_WIDTH};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gadgets::{
    combine, combine_with, grouped_gadget, vector_gadget, vector_gadget_k, CombineOptions, Side,
};
use crate::instances::{BitVector, KOVInstance, OVInstance};
use crate::lcis::{lcis_length, Mode};
use crate::seqcore::{parse_sequences, AlphabetSpan, IntSeq};

/// Which identity a reduction output satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `lcis(X, Y) = C + d − min u·v`.
    OvMinDot,
    /// Same value, through grouped gadgets over the smaller set.
    OvUnbalanced,
    /// `lcis(X_1, …, X_k) = C + d − min Σ_p Π_i u_i[p]`.
    KovMinProduct,
    /// LCWIS reaches `threshold` iff an orthogonal tuple exists.
    KovWeakDecision,
    /// LCIS of the outputs equals the LCS of the inputs.
    Lcs,
    /// `lcis(X, Y) = threshold` iff the branching program is satisfiable.
    BpAccept,
}

impl Identity {
    pub fn as_str(self) -> &'static str {
        match self {
            Identity::OvMinDot => "ov-min-dot",
            Identity::OvUnbalanced => "ov-unbalanced-min-dot",
            Identity::KovMinProduct => "kov-min-product",
            Identity::KovWeakDecision => "kov-weak-decision",
            Identity::Lcs => "lcs",
            Identity::BpAccept => "bp-accept",
        }
    }

    /// Mode the produced sequences are meant to be solved in.
    pub fn mode(self) -> Mode {
        match self {
            Identity::KovWeakDecision => Mode::Weak,
            _ => Mode::Strict,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Identity::OvMinDot,
            Identity::OvUnbalanced,
            Identity::KovMinProduct,
            Identity::KovWeakDecision,
            Identity::Lcs,
            Identity::BpAccept,
        ]
        .into_iter()
        .find(|i| i.as_str() == s)
        .ok_or_else(|| Error::Parameter(format!("unknown identity `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub sequences: Vec<IntSeq>,
    pub constant: i64,
    pub identity: Identity,
    pub threshold: Option<i64>,
}

impl ReductionOutput {
    /// Number of distinct symbols over all sequences.
    pub fn alphabet_size(&self) -> usize {
        let mut all: Vec<i64> = self.sequences.iter().flat_map(|s| s.iter().copied()).collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    }

    pub fn header(&self) -> String {
        let t = self.threshold.map_or_else(|| "none".to_string(), |t| t.to_string());
        format!("# identity={} constant={} threshold={t}", self.identity, self.constant)
    }

    /// Header line followed by the sequences, one per line.
    pub fn to_text(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        out.push_str(&crate::seqcore::format_sequences(&self.sequences));
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let head = text.lines().next().unwrap_or("");
        let fields = head
            .strip_prefix('#')
            .ok_or_else(|| Error::parse(1, "missing `# identity=...` header"))?;
        let mut identity = None;
        let mut constant = None;
        let mut threshold = None;
        for kv in fields.split_whitespace() {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::parse(1, format!("expected key=value, got `{kv}`")))?;
            let num = |v: &str| v.parse::<i64>().map_err(|e| Error::parse(1, format!("bad {k} `{v}`: {e}")));
            match k {
                "identity" => identity = Some(v.parse::<Identity>().map_err(|e| Error::parse(1, e.to_string()))?),
                "constant" => constant = Some(num(v)?),
                "threshold" if v == "none" => threshold = Some(None),
                "threshold" => threshold = Some(Some(num(v)?)),
                _ => return Err(Error::parse(1, format!("unknown header key `{k}`"))),
            }
        }
        let missing = |k: &str| Error::parse(1, format!("header lacks `{k}`"));
        Ok(ReductionOutput {
            identity: identity.ok_or_else(|| missing("identity"))?,
            constant: constant.ok_or_else(|| missing("constant"))?,
            threshold: threshold.ok_or_else(|| missing("threshold"))?,
            sequences: parse_sequences(text)?,
        })
    }
}

fn to_i64(v: usize) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::overflow(format!("{v} does not fit in i64")))
}

/// Two-sequence OV reduction with `δ = 2d`.
///
/// `lcis(X, Y) = constant + d − min u·v`, so `threshold = constant + d` is
/// reached exactly when an orthogonal pair exists.
pub fn ov_to_lcis(inst: &OVInstance) -> Result<ReductionOutput> {
    let xs: Vec<IntSeq> = inst.u.iter().map(|u| vector_gadget(u, Side::X)).collect();
    let ys: Vec<IntSeq> = inst.v.iter().map(|v| vector_gadget(v, Side::Y)).collect();
    let (x, y, params) = combine(&xs, &ys, 2 * inst.d)?;
    Ok(ReductionOutput {
        sequences: vec![x, y],
        constant: params.constant,
        identity: Identity::OvMinDot,
        threshold: Some(params.constant + to_i64(inst.d)?),
    })
}

/// OV reduction for `|V| = m <= |U| = n`: the `U` gadgets are grouped `q`
/// at a time, `q = ceil(n / m)`, so the combiner only sees `m` blocks and
/// the LCIS value stays `O(m d)`. `U` is padded to `q m` with all-ones
/// vectors.
pub fn ov_to_lcis_unbalanced(inst: &OVInstance) -> Result<ReductionOutput> {
    let (n, m, d) = (inst.u.len(), inst.v.len(), inst.d);
    if m > n {
        return Err(Error::Parameter(format!("expected |V| <= |U|, got {m} > {n}")));
    }
    let q = n.div_ceil(m);
    let mut us = inst.u.clone();
    us.resize(q * m, BitVector::ones(d));
    let xs = us
        .chunks(q)
        .map(|grp| {
            let gs: Vec<IntSeq> = grp.iter().map(|u| vector_gadget(u, Side::X)).collect();
            grouped_gadget(Side::X, &gs, q, d)
        })
        .collect::<Result<Vec<_>>>()?;
    let ys = inst
        .v
        .iter()
        .map(|v| grouped_gadget(Side::Y, &[vector_gadget(v, Side::Y)], q, d))
        .collect::<Result<Vec<_>>>()?;
    let (x, y, params) = combine(&xs, &ys, 2 * d)?;
    Ok(ReductionOutput {
        sequences: vec![x, y],
        constant: params.constant,
        identity: Identity::OvUnbalanced,
        threshold: Some(params.constant + to_i64(d)?),
    })
}

fn padded_kov_gadgets(inst: &KOVInstance) -> Result<Vec<Vec<IntSeq>>> {
    let k = inst.k();
    let n = inst.n().next_power_of_two();
    inst.sets
        .iter()
        .enumerate()
        .map(|(i, set)| {
            let mut set = set.clone();
            set.resize(n, BitVector::ones(inst.d));
            set.iter().map(|u| vector_gadget_k(i + 1, u, k)).collect()
        })
        .collect()
}

fn kov_options(inst: &KOVInstance, mode: Mode) -> Result<CombineOptions> {
    // every k-ary gadget over d coordinates lives in 1..=kd
    let hi = to_i64(inst.k() * inst.d)?;
    Ok(CombineOptions {
        delta: inst.d,
        mode,
        span: Some(AlphabetSpan::Range { lo: 1, hi }),
    })
}

fn check_arity(k: usize, min: usize, max: usize) -> Result<()> {
    if (min..=max).contains(&k) {
        Ok(())
    } else {
        Err(Error::UnsupportedArity { arity: k, min, max })
    }
}

/// k-OV to k-LCIS: `lcis(X_1, …, X_k) = ℓ (k (n − 1) + 2n) + d − m`, with
/// `n` padded to a power of two and `m` the minimum product sum.
///
/// Each gadget has LIS at most `d`, so the separators are inflated
/// `ceil(log2 d)` times.
pub fn kov_to_klcis(inst: &KOVInstance) -> Result<ReductionOutput> {
    check_arity(inst.k(), 2, 5)?;
    let (sequences, params) = combine_with(&padded_kov_gadgets(inst)?, kov_options(inst, Mode::Strict)?)?;
    Ok(ReductionOutput {
        sequences,
        constant: params.constant,
        identity: Identity::KovMinProduct,
        threshold: Some(params.constant + to_i64(inst.d)?),
    })
}

/// k-OV to k-LCWIS over a small alphabet: the same assembly with element
/// duplication in place of inflation.
///
/// `constant` is the combiner constant. `threshold` is the LCWIS measured on
/// an all-zero instance of the same shape, which has an orthogonal tuple;
/// an instance reaches it iff it has one too.
pub fn kov_to_klcwis(inst: &KOVInstance) -> Result<ReductionOutput> {
    check_arity(inst.k(), 2, 4)?;
    let opts = kov_options(inst, Mode::Weak)?;
    let (sequences, params) = combine_with(&padded_kov_gadgets(inst)?, opts)?;
    let reference = KOVInstance::new(vec![vec![BitVector::zeros(inst.d); inst.n()]; inst.k()])?;
    let (ref_seqs, _) = combine_with(&padded_kov_gadgets(&reference)?, opts)?;
    let threshold = to_i64(lcis_length(&ref_seqs, Mode::Weak)?)?;
    Ok(ReductionOutput {
        sequences,
        constant: params.constant,
        identity: Identity::KovWeakDecision,
        threshold: Some(threshold),
    })
}

/// `k`-LCS to `(k−1)`-LCIS. Each symbol of `X_i`, `i >= 2`, is replaced by
/// the positions of that symbol in `X_1`, in descending order.
pub fn lcs_to_lcis(seqs: &[IntSeq]) -> Result<Vec<IntSeq>> {
    if seqs.len() < 2 {
        return Err(Error::Parameter(format!("LCS reduction needs >= 2 sequences, got {}", seqs.len())));
    }
    let mut positions: std::collections::HashMap<i64, Vec<i64>> = std::collections::HashMap::new();
    for (p, &sym) in seqs[0].iter().enumerate().rev() {
        positions.entry(sym).or_default().push(to_i64(p)?);
    }
    Ok(seqs[1..]
        .iter()
        .map(|s| {
            s.iter()
                .flat_map(|sym| positions.get(sym).map(Vec::as_slice).unwrap_or_default())
                .copied()
                .collect()
        })
        .collect())
}

/// [`lcs_to_lcis`] wrapped as a reduction output with constant 0.
pub fn lcs_reduction(seqs: &[IntSeq]) -> Result<ReductionOutput> {
    Ok(ReductionOutput {
        sequences: lcs_to_lcis(seqs)?,
        constant: 0,
        identity: Identity::Lcs,
        threshold: None,
    })
}
