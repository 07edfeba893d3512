//! Integer sequences, blocked sequences and the line-oriented text format
//! shared by every other module.
//!
//! Text format: one sequence per line, elements as signed decimals separated
//! by single spaces. An empty line is the empty sequence. Lines starting with
//! `#` are metadata (block offsets, reduction headers) and never sequences.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// A finite sequence of signed integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntSeq(Vec<i64>);

impl IntSeq {
    pub fn new(elems: Vec<i64>) -> Self {
        IntSeq(elems)
    }

    pub fn empty() -> Self {
        IntSeq(Vec::new())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn push(&mut self, x: i64) {
        self.0.push(x);
    }

    pub fn extend_from(&mut self, other: &[i64]) {
        self.0.extend_from_slice(other);
    }

    /// Concatenation of all parts in order.
    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a [i64]>) -> Self {
        let mut out = Vec::new();
        for p in parts {
            out.extend_from_slice(p);
        }
        IntSeq(out)
    }

    /// Adds `c` to every element.
    pub fn shift(&self, c: i64) -> Result<IntSeq> {
        shift(self, c)
    }

    pub fn reverse_negate(&self) -> Result<IntSeq> {
        reverse_negate(self)
    }

    pub fn span(&self) -> AlphabetSpan {
        span(self)
    }
}

impl Deref for IntSeq {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl AsRef<[i64]> for IntSeq {
    fn as_ref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for IntSeq {
    fn from(v: Vec<i64>) -> Self {
        IntSeq(v)
    }
}

impl From<&[i64]> for IntSeq {
    fn from(v: &[i64]) -> Self {
        IntSeq(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for IntSeq {
    fn from(v: [i64; N]) -> Self {
        IntSeq(v.to_vec())
    }
}

impl FromIterator<i64> for IntSeq {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        IntSeq(iter.into_iter().collect())
    }
}

impl fmt::Display for IntSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Closed range of values used by a sequence, or `Empty` for the empty
/// sequence. `Empty` is the identity of [`AlphabetSpan::union`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlphabetSpan {
    Empty,
    Range { lo: i64, hi: i64 },
}

impl AlphabetSpan {
    pub fn union(self, other: AlphabetSpan) -> AlphabetSpan {
        match (self, other) {
            (AlphabetSpan::Empty, s) | (s, AlphabetSpan::Empty) => s,
            (AlphabetSpan::Range { lo: a, hi: b }, AlphabetSpan::Range { lo: c, hi: d }) => {
                AlphabetSpan::Range {
                    lo: a.min(c),
                    hi: b.max(d),
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, AlphabetSpan::Empty)
    }

    pub fn lo(&self) -> Option<i64> {
        match self {
            AlphabetSpan::Empty => None,
            AlphabetSpan::Range { lo, .. } => Some(*lo),
        }
    }

    pub fn hi(&self) -> Option<i64> {
        match self {
            AlphabetSpan::Empty => None,
            AlphabetSpan::Range { hi, .. } => Some(*hi),
        }
    }

    /// True when every value of `other` lies inside `self`.
    pub fn covers(&self, other: &AlphabetSpan) -> bool {
        match (self, other) {
            (_, AlphabetSpan::Empty) => true,
            (AlphabetSpan::Empty, _) => false,
            (AlphabetSpan::Range { lo, hi }, AlphabetSpan::Range { lo: a, hi: b }) => {
                lo <= a && b <= hi
            }
        }
    }

    pub fn of_all<'a>(seqs: impl IntoIterator<Item = &'a IntSeq>) -> AlphabetSpan {
        seqs.into_iter()
            .fold(AlphabetSpan::Empty, |acc, s| acc.union(span(s)))
    }
}

/// Elementwise `s + c` with checked arithmetic.
pub fn shift(s: &[i64], c: i64) -> Result<IntSeq> {
    s.iter()
        .map(|&x| {
            x.checked_add(c)
                .ok_or_else(|| Error::overflow(format!("{x} + {c}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(IntSeq)
}

/// `out[i] = -s[n-1-i]`.
pub fn reverse_negate(s: &[i64]) -> Result<IntSeq> {
    s.iter()
        .rev()
        .map(|&x| {
            x.checked_neg()
                .ok_or_else(|| Error::overflow(format!("-({x})")))
        })
        .collect::<Result<Vec<_>>>()
        .map(IntSeq)
}

pub fn span(s: &[i64]) -> AlphabetSpan {
    match (s.iter().min(), s.iter().max()) {
        (Some(&lo), Some(&hi)) => AlphabetSpan::Range { lo, hi },
        _ => AlphabetSpan::Empty,
    }
}

/// A sequence cut into contiguous, possibly empty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockedSeq {
    seq: IntSeq,
    block_starts: Vec<usize>,
}

impl BlockedSeq {
    /// `block_starts` must begin with 0, be non-decreasing and stay within
    /// the sequence.
    pub fn new(seq: IntSeq, block_starts: Vec<usize>) -> Result<Self> {
        if block_starts.first() != Some(&0) {
            return Err(Error::Shape("first block must start at offset 0".into()));
        }
        if block_starts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Shape("block offsets must be non-decreasing".into()));
        }
        if block_starts.last().is_some_and(|&b| b > seq.len()) {
            return Err(Error::Shape("block offset past end of sequence".into()));
        }
        Ok(BlockedSeq { seq, block_starts })
    }

    pub fn from_blocks<I, S>(blocks: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[i64]>,
    {
        let mut seq = Vec::new();
        let mut block_starts = Vec::new();
        for b in blocks {
            block_starts.push(seq.len());
            seq.extend_from_slice(b.as_ref());
        }
        if block_starts.is_empty() {
            block_starts.push(0);
        }
        BlockedSeq {
            seq: IntSeq(seq),
            block_starts,
        }
    }

    pub fn seq(&self) -> &IntSeq {
        &self.seq
    }

    pub fn into_seq(self) -> IntSeq {
        self.seq
    }

    pub fn block_starts(&self) -> &[usize] {
        &self.block_starts
    }

    pub fn num_blocks(&self) -> usize {
        self.block_starts.len()
    }

    fn block_end(&self, i: usize) -> usize {
        self.block_starts
            .get(i + 1)
            .copied()
            .unwrap_or(self.seq.len())
    }

    pub fn block(&self, i: usize) -> &[i64] {
        &self.seq[self.block_starts[i]..self.block_end(i)]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[i64]> + '_ {
        (0..self.num_blocks()).map(move |i| self.block(i))
    }

    /// Concatenation of blocks `0..=i`.
    pub fn prefix(&self, i: usize) -> &[i64] {
        &self.seq[..self.block_end(i)]
    }

    /// Concatenation of blocks `j..`.
    pub fn suffix(&self, j: usize) -> &[i64] {
        &self.seq[self.block_starts[j]..]
    }

    /// Applies `f` to every block, keeping the block structure.
    pub fn map_blocks<F>(&self, mut f: F) -> Result<BlockedSeq>
    where
        F: FnMut(&[i64]) -> Result<IntSeq>,
    {
        let blocks = self.blocks().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(BlockedSeq::from_blocks(blocks))
    }

    pub fn shift(&self, c: i64) -> Result<BlockedSeq> {
        Ok(BlockedSeq {
            seq: shift(&self.seq, c)?,
            block_starts: self.block_starts.clone(),
        })
    }
}

/// Parses the sequence text format. `#` lines are skipped.
pub fn parse_sequences(text: &str) -> Result<Vec<IntSeq>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.starts_with('#') {
            continue;
        }
        out.push(parse_sequence_line(line, lineno + 1)?);
    }
    Ok(out)
}

pub fn parse_sequence_line(line: &str, lineno: usize) -> Result<IntSeq> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|e| Error::parse(lineno, format!("bad integer `{tok}`: {e}")))
        })
        .collect()
}

pub fn format_sequences<'a>(seqs: impl IntoIterator<Item = &'a IntSeq>) -> String {
    let mut out = String::new();
    for s in seqs {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

/// Writes each sequence followed by a `# blocks <offsets>` line.
pub fn format_blocked<'a>(seqs: impl IntoIterator<Item = &'a BlockedSeq>) -> String {
    let mut out = String::new();
    for b in seqs {
        out.push_str(&b.seq().to_string());
        out.push('\n');
        out.push_str("# blocks");
        for o in b.block_starts() {
            out.push_str(&format!(" {o}"));
        }
        out.push('\n');
    }
    out
}

/// Reads sequences written by [`format_blocked`]. A sequence with no
/// following `# blocks` line is a single block.
pub fn parse_blocked(text: &str) -> Result<Vec<BlockedSeq>> {
    let mut out: Vec<(IntSeq, Option<Vec<usize>>)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if let Some(rest) = line.strip_prefix("# blocks") {
            let offsets = rest
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| Error::parse(lineno, format!("bad offset `{t}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            match out.last_mut() {
                Some((_, slot @ None)) => *slot = Some(offsets),
                _ => return Err(Error::parse(lineno, "block line without a sequence")),
            }
        } else if !line.starts_with('#') {
            out.push((parse_sequence_line(line, lineno)?, None));
        }
    }
    out.into_iter()
        .map(|(s, b)| BlockedSeq::new(s, b.unwrap_or_else(|| vec![0])))
        .collect()
}
