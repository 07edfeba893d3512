//! Brute-force oracles written without the library's solvers.

#![allow(dead_code)]

use lcislab_core::instances::BranchingProgram;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rand_seq(rng: &mut ChaCha8Rng, max_len: usize, lo: i64, hi: i64) -> Vec<i64> {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}

pub fn is_subseq(needle: &[i64], hay: &[i64]) -> bool {
    let mut i = 0;
    for &h in hay {
        if i < needle.len() && needle[i] == h {
            i += 1;
        }
    }
    i == needle.len()
}

/// `w` is strictly (or weakly) increasing and a subsequence of every input.
pub fn valid_witness(seqs: &[&[i64]], w: &[i64], strict: bool) -> bool {
    let mono = w.windows(2).all(|p| if strict { p[0] < p[1] } else { p[0] <= p[1] });
    mono && seqs.iter().all(|s| is_subseq(w, s))
}

/// Every monotone subsequence of the shortest input, tried against the rest.
pub fn lcis_exhaustive(seqs: &[&[i64]], strict: bool) -> usize {
    let base = seqs.iter().min_by_key(|s| s.len()).unwrap();
    assert!(base.len() <= 22, "exhaustive oracle is exponential");
    let mut best = 0;
    for mask in 0u32..1 << base.len() {
        let cand: Vec<i64> = (0..base.len()).filter(|i| mask >> i & 1 == 1).map(|i| base[i]).collect();
        if cand.len() > best && valid_witness(seqs, &cand, strict) {
            best = cand.len();
        }
    }
    best
}

/// `O(n²m²)` table over matched position pairs: the longest common strictly
/// increasing subsequence ending at `x[i] = y[j]`.
pub fn lcis_quartic(x: &[i64], y: &[i64]) -> usize {
    let mut f = vec![vec![0usize; y.len()]; x.len()];
    let mut best = 0;
    for i in 0..x.len() {
        for j in 0..y.len() {
            if x[i] != y[j] {
                continue;
            }
            let mut v = 1;
            for a in 0..i {
                for b in 0..j {
                    if x[a] == y[b] && x[a] < x[i] {
                        v = v.max(f[a][b] + 1);
                    }
                }
            }
            f[i][j] = v;
            best = best.max(v);
        }
    }
    best
}

/// Longest strictly increasing subsequence by the quadratic recurrence.
pub fn lis_quadratic(s: &[i64]) -> usize {
    let mut f = vec![1usize; s.len()];
    for i in 0..s.len() {
        for j in 0..i {
            if s[j] < s[i] {
                f[i] = f[i].max(f[j] + 1);
            }
        }
    }
    f.into_iter().max().unwrap_or(0)
}

/// Longest common subsequence of two sequences by subset enumeration.
pub fn lcs_exhaustive(x: &[i64], y: &[i64]) -> usize {
    let mut best = 0;
    for mask in 0u32..1 << x.len() {
        let cand: Vec<i64> = (0..x.len()).filter(|i| mask >> i & 1 == 1).map(|i| x[i]).collect();
        if cand.len() > best && is_subseq(&cand, y) {
            best = cand.len();
        }
    }
    best
}

pub type Bits = Vec<bool>;

pub fn rand_bits(rng: &mut ChaCha8Rng, d: usize) -> Bits {
    (0..d).map(|_| rng.gen_bool(0.5)).collect()
}

pub fn all_bits(d: usize) -> Vec<Bits> {
    (0u32..1 << d).map(|c| (0..d).map(|p| c >> p & 1 == 1).collect()).collect()
}

/// `Σ_p Π_i t_i[p]` over one tuple.
pub fn product_sum(tuple: &[&Bits]) -> usize {
    (0..tuple[0].len()).filter(|&p| tuple.iter().all(|v| v[p])).count()
}

/// Minimum of [`product_sum`] over every tuple with one vector per set.
pub fn min_product(sets: &[Vec<Bits>]) -> usize {
    let mut best = usize::MAX;
    let mut idx = vec![0; sets.len()];
    'outer: loop {
        let tuple: Vec<&Bits> = idx.iter().zip(sets).map(|(&i, s)| &s[i]).collect();
        best = best.min(product_sum(&tuple));
        for c in 0..idx.len() {
            idx[c] += 1;
            if idx[c] < sets[c].len() {
                continue 'outer;
            }
            idx[c] = 0;
        }
        return best;
    }
}

/// Follows every satisfied edge path by depth-first search.
pub fn bp_accepts(bp: &BranchingProgram, x: &[bool]) -> bool {
    fn go(bp: &BranchingProgram, x: &[bool], layer: usize, node: usize) -> bool {
        if layer == bp.edges.len() {
            return node == bp.accept;
        }
        let val = x[bp.layer_var[layer] - 1];
        bp.edges[layer]
            .iter()
            .any(|e| e.from == node && e.label == val && go(bp, x, layer + 1, e.to))
    }
    go(bp, x, 0, bp.start)
}

pub fn bp_satisfiable(bp: &BranchingProgram) -> bool {
    (0u32..1 << bp.n_vars).any(|c| {
        let x: Vec<bool> = (0..bp.n_vars).map(|i| c >> i & 1 == 1).collect();
        bp_accepts(bp, &x)
    })
}
