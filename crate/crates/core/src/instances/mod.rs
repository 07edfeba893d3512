//! Source problems for the reductions: orthogonal vectors, k-OV and
//! branching programs, with brute-force solvers, text formats and seeded
//! generators.

mod bp;
mod vectors;

pub use bp::{
    bp_eval, bp_sat_bruteforce, emit_bp, parse_bp, BranchingProgram, Edge, BP_BRUTEFORCE_MAX_VARS,
};
pub use vectors::{
    k_min_product, min_inner_product, product_sum, BitVector, KOVInstance, OVInstance,
    KOV_TUPLE_CAP,
};

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Writes `ov n m d`, the `n` rows of U, `--`, then the `m` rows of V.
pub fn emit_ov(inst: &OVInstance) -> String {
    let mut out = format!("ov {} {} {}\n", inst.u.len(), inst.v.len(), inst.d);
    write_rows(&mut out, &inst.u);
    out.push_str("--\n");
    write_rows(&mut out, &inst.v);
    out
}

/// Writes `kov k n d` followed by `k` blocks of `n` rows separated by `--`.
pub fn emit_kov(inst: &KOVInstance) -> String {
    let mut out = format!("kov {} {} {}\n", inst.k(), inst.n(), inst.d);
    for (i, set) in inst.sets.iter().enumerate() {
        if i > 0 {
            out.push_str("--\n");
        }
        write_rows(&mut out, set);
    }
    out
}

fn write_rows(out: &mut String, rows: &[BitVector]) {
    for r in rows {
        let _ = writeln!(out, "{r}");
    }
}

pub fn parse_ov(text: &str) -> Result<OVInstance> {
    let (dims, mut blocks) = parse_vector_blocks(text, "ov", 3)?;
    let (n, m, d) = (dims[0], dims[1], dims[2]);
    check_blocks(&blocks, &[n, m], d)?;
    let v = blocks.pop().unwrap_or_default();
    let u = blocks.pop().unwrap_or_default();
    OVInstance::new(u, v)
}

pub fn parse_kov(text: &str) -> Result<KOVInstance> {
    let (dims, blocks) = parse_vector_blocks(text, "kov", 3)?;
    let (k, n, d) = (dims[0], dims[1], dims[2]);
    check_blocks(&blocks, &vec![n; k], d)?;
    KOVInstance::new(blocks)
}

fn check_blocks(blocks: &[Vec<BitVector>], sizes: &[usize], d: usize) -> Result<()> {
    if blocks.len() != sizes.len() {
        return Err(Error::Shape(format!(
            "expected {} vector blocks, found {}",
            sizes.len(),
            blocks.len()
        )));
    }
    for (i, (b, &want)) in blocks.iter().zip(sizes).enumerate() {
        if b.len() != want {
            return Err(Error::Shape(format!("block {i} has {} rows, header says {want}", b.len())));
        }
        if let Some(r) = b.iter().find(|r| r.dim() != d) {
            return Err(Error::Shape(format!("row `{r}` in block {i} has dimension {}, header says {d}", r.dim())));
        }
    }
    Ok(())
}

fn parse_vector_blocks(text: &str, key: &str, arity: usize) -> Result<(Vec<usize>, Vec<Vec<BitVector>>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (no, head) = lines
        .next()
        .ok_or_else(|| Error::parse(0, format!("missing `{key}` header")))?;
    let mut toks = head.split_whitespace();
    if toks.next() != Some(key) {
        return Err(Error::parse(no, format!("expected `{key}` header")));
    }
    let dims = toks
        .map(|t| t.parse::<usize>().map_err(|e| Error::parse(no, format!("bad number `{t}`: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    if dims.len() != arity {
        return Err(Error::parse(no, format!("`{key}` takes {arity} values")));
    }
    let mut blocks = vec![Vec::new()];
    for (no, line) in lines {
        if line == "--" {
            blocks.push(Vec::new());
            continue;
        }
        let row = line.parse::<BitVector>().map_err(|e| Error::parse(no, e.to_string()))?;
        blocks.last_mut().expect("at least one block").push(row);
    }
    Ok((dims, blocks))
}

fn random_vectors(rng: &mut ChaCha8Rng, count: usize, d: usize) -> Vec<BitVector> {
    (0..count)
        .map(|_| BitVector::new((0..d).map(|_| rng.gen_bool(0.5)).collect()).expect("d >= 1"))
        .collect()
}

fn need_positive(pairs: &[(&str, usize)]) -> Result<()> {
    match pairs.iter().find(|(_, v)| *v == 0) {
        Some((name, _)) => Err(Error::Parameter(format!("{name} must be >= 1"))),
        None => Ok(()),
    }
}

/// Uniformly random OV instance with `n` and `m` vectors of dimension `d`.
pub fn gen_ov(n: usize, m: usize, d: usize, seed: u64) -> Result<OVInstance> {
    need_positive(&[("n", n), ("m", m), ("d", d)])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_vectors(&mut rng, n, d);
    let v = random_vectors(&mut rng, m, d);
    OVInstance::new(u, v)
}

pub fn gen_kov(k: usize, n: usize, d: usize, seed: u64) -> Result<KOVInstance> {
    need_positive(&[("k", k), ("n", n), ("d", d)])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    KOVInstance::new((0..k).map(|_| random_vectors(&mut rng, n, d)).collect())
}

/// Random branching program with `2^t + 1` layers of width `w` over `n`
/// variables. Each of the `2 w^2` possible labelled edges of a layer is
/// present with probability `edge_density`.
pub fn gen_bp(n: usize, w: usize, t: u32, edge_density: f64, seed: u64) -> Result<BranchingProgram> {
    need_positive(&[("N", n), ("W", w)])?;
    if !(0.0..=1.0).contains(&edge_density) {
        return Err(Error::Parameter(format!("edge density {edge_density} outside [0, 1]")));
    }
    if t > 16 {
        return Err(Error::Parameter(format!("t = {t} gives too many layers")));
    }
    let length = (1usize << t) + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut layer_var = Vec::with_capacity(length - 1);
    let mut edges = Vec::with_capacity(length - 1);
    for _ in 0..length - 1 {
        layer_var.push(rng.gen_range(1..=n));
        let mut layer = Vec::new();
        for from in 0..w {
            for to in 0..w {
                for label in [false, true] {
                    if rng.gen_bool(edge_density) {
                        layer.push(Edge { from, to, label });
                    }
                }
            }
        }
        edges.push(layer);
    }
    let bp = BranchingProgram {
        n_vars: n,
        width: w,
        length,
        layer_var,
        edges,
        start: rng.gen_range(0..w),
        accept: rng.gen_range(0..w),
    };
    bp.validate()?;
    Ok(bp)
}
