use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An edge between consecutive layers, satisfied when the layer's variable
/// equals `label`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: bool,
}

/// A layered branching program: `length` layers of `width` nodes each.
/// Edges leaving layer `l` test variable `layer_var[l]` (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingProgram {
    pub n_vars: usize,
    pub width: usize,
    pub length: usize,
    pub layer_var: Vec<usize>,
    pub edges: Vec<Vec<Edge>>,
    pub start: usize,
    pub accept: usize,
}

impl BranchingProgram {
    pub fn validate(&self) -> Result<()> {
        let shape = |m: String| Err(Error::Shape(m));
        if self.n_vars == 0 || self.width == 0 {
            return shape("branching program needs N >= 1 and W >= 1".into());
        }
        if self.length < 2 {
            return shape(format!("length must be >= 2, got {}", self.length));
        }
        if self.layer_var.len() != self.length - 1 || self.edges.len() != self.length - 1 {
            return shape(format!("expected {} edge layers", self.length - 1));
        }
        if self.start >= self.width || self.accept >= self.width {
            return shape("start/accept node out of range".into());
        }
        for (l, (&var, edges)) in self.layer_var.iter().zip(&self.edges).enumerate() {
            if var == 0 || var > self.n_vars {
                return shape(format!("layer {l} tests variable {var} outside 1..={}", self.n_vars));
            }
            if let Some(e) = edges.iter().find(|e| e.from >= self.width || e.to >= self.width) {
                return shape(format!("layer {l} edge {}->{} leaves width {}", e.from, e.to, self.width));
            }
        }
        Ok(())
    }

    /// Number of edge layers, `T − 1`.
    pub fn edge_layers(&self) -> usize {
        self.length - 1
    }
}

/// Layered reachability from `start` under the edges satisfied by `x`.
///
/// # Panics
/// If `x.len() != bp.n_vars`.
pub fn bp_eval(bp: &BranchingProgram, x: &[bool]) -> bool {
    assert_eq!(x.len(), bp.n_vars, "assignment length must equal N");
    let mut frontier = vec![false; bp.width];
    frontier[bp.start] = true;
    for (var, edges) in bp.layer_var.iter().zip(&bp.edges) {
        let val = x[var - 1];
        let mut next = vec![false; bp.width];
        for e in edges {
            if frontier[e.from] && e.label == val {
                next[e.to] = true;
            }
        }
        frontier = next;
    }
    frontier[bp.accept]
}

/// Largest `N` accepted by [`bp_sat_bruteforce`].
pub const BP_BRUTEFORCE_MAX_VARS: usize = 20;

/// First accepted assignment in lexicographic order (`x_1` most
/// significant), if any.
pub fn bp_sat_bruteforce(bp: &BranchingProgram) -> Result<Option<Vec<bool>>> {
    if bp.n_vars > BP_BRUTEFORCE_MAX_VARS {
        return Err(Error::InstanceTooLarge(format!(
            "brute force over {} variables exceeds {BP_BRUTEFORCE_MAX_VARS}",
            bp.n_vars
        )));
    }
    let n = bp.n_vars;
    Ok((0u64..1 << n)
        .map(|c| (0..n).map(|i| (c >> (n - 1 - i)) & 1 == 1).collect::<Vec<_>>())
        .find(|x| bp_eval(bp, x)))
}

/// Text form:
///
/// ```text
/// bp N W T
/// start i
/// accept j
/// layer v=<var>        # T-1 blocks, one per edge layer
/// <from> <to> <label>
/// ```
///
/// Nodes are 0-based indices within their layer.
pub fn emit_bp(bp: &BranchingProgram) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "bp {} {} {}", bp.n_vars, bp.width, bp.length);
    let _ = writeln!(out, "start {}", bp.start);
    let _ = writeln!(out, "accept {}", bp.accept);
    for (var, edges) in bp.layer_var.iter().zip(&bp.edges) {
        let _ = writeln!(out, "layer v={var}");
        for e in edges {
            let _ = writeln!(out, "{} {} {}", e.from, e.to, u8::from(e.label));
        }
    }
    out
}

/// Parses the text form of [`emit_bp`]. `#` starts a comment. A node may
/// also be written `layer:index`; the layer must then be the source layer
/// (for `from`) or the next one (for `to`).
pub fn parse_bp(text: &str) -> Result<BranchingProgram> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let mut header = |key: &str, arity: usize| -> Result<(usize, Vec<usize>)> {
        let (no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(0, format!("missing `{key}` line")))?;
        let mut toks = line.split_whitespace();
        if toks.next() != Some(key) {
            return Err(Error::parse(no, format!("expected `{key}`")));
        }
        let vals = toks
            .map(|t| t.parse::<usize>().map_err(|e| Error::parse(no, format!("bad number `{t}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if vals.len() != arity {
            return Err(Error::parse(no, format!("`{key}` takes {arity} values")));
        }
        Ok((no, vals))
    };

    let (_, dims) = header("bp", 3)?;
    let (n_vars, width, length) = (dims[0], dims[1], dims[2]);
    let (_, start) = header("start", 1)?;
    let (_, accept) = header("accept", 1)?;
    if length < 2 {
        return Err(Error::Shape(format!("length must be >= 2, got {length}")));
    }

    let mut layer_var = Vec::new();
    let mut edges: Vec<Vec<Edge>> = Vec::new();
    for (no, line) in lines {
        if let Some(rest) = line.strip_prefix("layer") {
            let var = rest
                .trim()
                .strip_prefix("v=")
                .ok_or_else(|| Error::parse(no, "expected `layer v=<var>`"))?;
            let var = var
                .parse::<usize>()
                .map_err(|e| Error::parse(no, format!("bad variable `{var}`: {e}")))?;
            layer_var.push(var);
            edges.push(Vec::new());
            continue;
        }
        let Some(current) = edges.last_mut() else {
            return Err(Error::parse(no, "edge before the first `layer` line"));
        };
        let layer = layer_var.len() - 1;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::parse(no, "edge lines are `<from> <to> <label>`"));
        }
        let from = parse_node(toks[0], layer, no)?;
        let to = parse_node(toks[1], layer + 1, no)?;
        let label = match toks[2] {
            "0" => false,
            "1" => true,
            t => return Err(Error::parse(no, format!("label must be 0 or 1, got `{t}`"))),
        };
        current.push(Edge { from, to, label });
    }
    let bp = BranchingProgram {
        n_vars,
        width,
        length,
        layer_var,
        edges,
        start: start[0],
        accept: accept[0],
    };
    bp.validate()?;
    Ok(bp)
}

fn parse_node(tok: &str, expected_layer: usize, no: usize) -> Result<usize> {
    let bad = |e: std::num::ParseIntError| Error::parse(no, format!("bad node `{tok}`: {e}"));
    match tok.split_once(':') {
        Some((layer, idx)) => {
            let layer: usize = layer.parse().map_err(bad)?;
            if layer != expected_layer {
                return Err(Error::Shape(format!(
                    "line {no}: edge touches layer {layer}, expected layer {expected_layer}"
                )));
            }
            idx.parse().map_err(bad)
        }
        None => tok.parse().map_err(bad),
    }
}
