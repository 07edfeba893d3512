//! Acceptance checks. Each criterion prints one PASS/FAIL line; the
//! process exits nonzero if any fails. Runtime limits count as part of the
//! criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use lcislab_core::gadgets::{combine, coordinate_gadget, grouped_gadget, vector_gadget, vector_gadget_k, Side};
use lcislab_core::instances::{gen_bp, BitVector, KOVInstance, OVInstance};
use lcislab_core::lcis::{
    lcis_approx, lcis_dp2, lcis_dpk, lcis_length, lcis_matching_pairs, lcis_oracle, ApproxBranch,
};
use lcislab_core::reductions::{bpsat_to_lcis, kov_to_klcis, kov_to_klcwis, lcs_to_lcis, ov_to_lcis, ov_to_lcis_unbalanced};
use lcislab_core::separators::{hat, inflate, separator_family, separator_pair};
use lcislab_core::{IntSeq, Mode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_0000 + criterion)
}

fn bv(bits: &Bits) -> BitVector {
    BitVector::new(bits.clone()).unwrap()
}

fn dp2(x: &[i64], y: &[i64]) -> usize {
    lcis_dp2(x, y, Mode::Strict, false).length
}

fn inflation_law() -> Outcome {
    let mut r = rng(1);
    for t in 0..200 {
        let a = rand_seq(&mut r, 10, -5, 5);
        let b = rand_seq(&mut r, 10, -5, 5);
        let base = lcis_exhaustive(&[&a, &b], true);
        let got = dp2(&inflate(&a).unwrap(), &inflate(&b).unwrap());
        ensure!(got == 2 * base, "pair {t}: {a:?} {b:?}: inflated {got}, base {base}");
    }
    Ok("200 pairs".into())
}

fn separator_length() -> Outcome {
    for k in 0..=10u32 {
        let p = separator_pair(k).unwrap();
        let want = (3 * k as usize + 2) * (1 << k) / 2;
        ensure!(p.a.seq().len() == want && p.b.seq().len() == want, "k={k}: lengths {} {}, want {want}", p.a.seq().len(), p.b.seq().len());
        ensure!(p.a.num_blocks() == 1 << k && p.b.num_blocks() == 1 << k, "k={k}: block count");
        ensure!(p.s == (1 << (k + 2)) - 3, "k={k}: s = {}", p.s);
        let max = p.a.seq().iter().chain(p.b.seq().iter()).max().copied();
        ensure!(max == Some(p.s), "k={k}: largest element {max:?}");
    }
    Ok("k = 0..10".into())
}

fn separator_prefix_law() -> Outcome {
    let mut pairs = 0;
    for k in 0..=4u32 {
        let p = separator_pair(k).unwrap();
        let n = 1usize << k;
        for i in 0..n {
            for j in 0..n {
                let got = dp2(p.a.prefix(i), p.b.prefix(j));
                ensure!(got == i + j + n, "k={k} i={i} j={j}: {got}");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} prefix pairs"))
}

fn hat_suffix_law() -> Outcome {
    let mut pairs = 0;
    for k in 0..=3u32 {
        let p = separator_pair(k).unwrap();
        let (ha, hb) = (hat(&p.a).unwrap(), hat(&p.b).unwrap());
        let n = 1usize << k;
        for i in 0..n {
            for j in 0..n {
                let got = dp2(ha.suffix(i), hb.suffix(j));
                ensure!(got == 2 * (n - 1) - i - j + n, "k={k} i={i} j={j}: {got}");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} suffix pairs"))
}

fn vector_gadget_identity() -> Outcome {
    let mut pairs = 0;
    for d in 1..=4 {
        for u in all_bits(d) {
            for v in all_bits(d) {
                let x = vector_gadget(&bv(&u), Side::X);
                let y = vector_gadget(&bv(&v), Side::Y);
                let want = d - product_sum(&[&u, &v]);
                let got = lcis_quartic(&x, &y);
                ensure!(got == want && dp2(&x, &y) == want, "d={d} u={u:?} v={v:?}: {got}, want {want}");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn combiner() -> Outcome {
    let mut r = rng(6);
    for t in 0..100 {
        let n: usize = r.gen_range(1..=4);
        let xs: Vec<IntSeq> = (0..n).map(|_| rand_seq(&mut r, 6, 1, 9).into()).collect();
        let ys: Vec<IntSeq> = (0..n).map(|_| rand_seq(&mut r, 6, 1, 9).into()).collect();
        let delta = xs.iter().chain(&ys).map(|s| lis_quadratic(s)).max().unwrap().max(1);
        let m = xs.iter().flat_map(|x| ys.iter().map(move |y| lcis_quartic(x, y))).max().unwrap();
        let (x, y, _) = combine(&xs, &ys, delta).unwrap();
        let ell = delta.next_power_of_two();
        let want = ell * (4 * n.next_power_of_two() - 2) + m;
        let got = dp2(&x, &y);
        ensure!(got == want, "family {t}: n={n} delta={delta}: {got}, want {want}");
    }
    Ok("100 families".into())
}

fn ov_instance(r: &mut ChaCha8Rng, n: usize, m: usize, d: usize) -> (Vec<Bits>, Vec<Bits>, OVInstance) {
    let u: Vec<Bits> = (0..n).map(|_| rand_bits(r, d)).collect();
    let v: Vec<Bits> = (0..m).map(|_| rand_bits(r, d)).collect();
    let inst = OVInstance::new(u.iter().map(bv).collect(), v.iter().map(bv).collect()).unwrap();
    (u, v, inst)
}

fn theorem1() -> Outcome {
    let mut r = rng(7);
    for t in 0..100 {
        let (n, d) = (r.gen_range(1..=8), r.gen_range(1..=5));
        let (u, v, inst) = ov_instance(&mut r, n, n, d);
        let out = ov_to_lcis(&inst).unwrap();
        let min = min_product(&[u, v]) as i64;
        let got = dp2(&out.sequences[0], &out.sequences[1]) as i64;
        ensure!(got == out.constant + d as i64 - min, "instance {t}: n={n} d={d}: {got}, C={} min={min}", out.constant);
        let ell = (2 * d).next_power_of_two() as i64;
        ensure!(out.constant == ell * (4 * n.next_power_of_two() as i64 - 2), "instance {t}: constant {}", out.constant);
    }
    Ok("100 instances".into())
}

fn theorem2() -> Outcome {
    let mut r = rng(8);
    let mut isolation = 0;
    for t in 0..50 {
        let n = r.gen_range(1..=8);
        let m = r.gen_range(1..=n.min(4));
        let d = r.gen_range(1..=3);
        let (u, v, inst) = ov_instance(&mut r, n, m, d);
        let out = ov_to_lcis_unbalanced(&inst).unwrap();
        let min = min_product(&[u.clone(), v.clone()]) as i64;
        let got = dp2(&out.sequences[0], &out.sequences[1]) as i64;
        ensure!(got == out.constant + d as i64 - min, "instance {t}: n={n} m={m} d={d}: {got}, C={} min={min}", out.constant);

        // grouped gadgets only ever pair gadgets under the same shift
        let q = r.gen_range(1..=3);
        let us: Vec<Bits> = (0..q).map(|_| rand_bits(&mut r, d)).collect();
        let w = rand_bits(&mut r, d);
        let ux: Vec<IntSeq> = us.iter().map(|x| vector_gadget(&bv(x), Side::X)).collect();
        let wy = vector_gadget(&bv(&w), Side::Y);
        let gx = grouped_gadget(Side::X, &ux, q, d).unwrap();
        let gy = grouped_gadget(Side::Y, &[wy], q, d).unwrap();
        let want = us.iter().map(|x| d - product_sum(&[x, &w])).max().unwrap();
        let got = lcis_quartic(&gx, &gy);
        ensure!(got == want, "isolation {t}: q={q} d={d}: {got}, want {want}");
        isolation += 1;
    }
    Ok(format!("50 instances, {isolation} isolation checks"))
}

fn theorem3() -> Outcome {
    let mut r = rng(9);
    for t in 0..30 {
        let (n, d): (usize, usize) = (r.gen_range(1..=4), r.gen_range(1..=3));
        let sets: Vec<Vec<Bits>> = (0..3).map(|_| (0..n).map(|_| rand_bits(&mut r, d)).collect()).collect();
        let inst = KOVInstance::new(sets.iter().map(|s| s.iter().map(bv).collect()).collect()).unwrap();
        let out = kov_to_klcis(&inst).unwrap();
        let np = n.next_power_of_two() as i64;
        let ell = d.next_power_of_two() as i64;
        let c = ell * (3 * (np - 1) + 2 * np);
        let want = c + d as i64 - min_product(&sets) as i64;
        let got = lcis_dpk(&out.sequences, Mode::Strict).unwrap().length as i64;
        ensure!(out.constant == c, "instance {t}: constant {} vs {c}", out.constant);
        ensure!(got == want, "instance {t}: n={n} d={d}: {got}, want {want}");
    }
    Ok("30 instances".into())
}

fn kary_separator_law() -> Outcome {
    let mut triples = 0;
    for levels in 0..=2u32 {
        let fam = separator_family(levels, 3, Mode::Strict).unwrap();
        let n = fam.num_blocks();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let pre = [fam.seqs[0].prefix(a), fam.seqs[1].prefix(b), fam.seqs[2].prefix(c)];
                    let got = lcis_dpk(&pre, Mode::Strict).unwrap().length;
                    ensure!(got == a + b + c + n, "levels={levels} ({a},{b},{c}): {got}");
                    triples += 1;
                }
            }
        }
    }
    for k in 0..=8u32 {
        let fam = separator_family(k, 2, Mode::Strict).unwrap();
        let p = separator_pair(k).unwrap();
        ensure!(fam.seqs[0] == p.a && fam.seqs[1] == p.b && fam.s == p.s, "arity-2 family differs from the pair at k={k}");
    }
    Ok(format!("{triples} prefix triples, pair consistency k <= 8"))
}

fn coordinate_gadget_identity() -> Outcome {
    let mut cases = 0;
    for bits in all_bits(3) {
        let gs: Vec<IntSeq> = (0..3).map(|i| coordinate_gadget(i + 1, 0, bits[i], 3).unwrap()).collect();
        let want = 1 - usize::from(bits.iter().all(|&b| b));
        let got = lcis_dpk(&gs, Mode::Strict).unwrap().length;
        ensure!(got == want, "bits {bits:?}: {got}");
        cases += 1;
    }
    for d in 1..=3 {
        for a in all_bits(d) {
            for b in all_bits(d) {
                for c in all_bits(d) {
                    let gs: Vec<IntSeq> = [&a, &b, &c]
                        .iter()
                        .enumerate()
                        .map(|(i, v)| vector_gadget_k(i + 1, &bv(v), 3).unwrap())
                        .collect();
                    let want = d - product_sum(&[&a, &b, &c]);
                    let got = lcis_dpk(&gs, Mode::Strict).unwrap().length;
                    ensure!(got == want, "d={d} {a:?} {b:?} {c:?}: {got}, want {want}");
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn theorem4() -> Outcome {
    let mut r = rng(12);
    let mut fitted = 0f64;
    let mut orthogonal = 0;
    for t in 0..30 {
        let (n, d): (usize, usize) = (r.gen_range(1..=4), r.gen_range(1..=3));
        let sets: Vec<Vec<Bits>> = (0..2).map(|_| (0..n).map(|_| rand_bits(&mut r, d)).collect()).collect();
        let inst = KOVInstance::new(sets.iter().map(|s| s.iter().map(bv).collect()).collect()).unwrap();
        let out = kov_to_klcwis(&inst).unwrap();
        let thr = out.threshold.ok_or("missing threshold")?;
        let got = lcis_dp2(&out.sequences[0], &out.sequences[1], Mode::Weak, false).length as i64;
        let orth = min_product(&sets) == 0;
        orthogonal += usize::from(orth);
        ensure!(got <= thr, "instance {t}: {got} above threshold {thr}");
        ensure!((got == thr) == orth, "instance {t}: n={n} d={d}: lcwis {got}, threshold {thr}, orthogonal {orth}");
        let log_n = n.next_power_of_two().trailing_zeros() as f64;
        fitted = fitted.max(out.alphabet_size() as f64 / (log_n + d as f64));
    }
    ensure!(fitted <= 8.0, "fitted alphabet constant {fitted:.2} > 8");
    Ok(format!("30 instances ({orthogonal} orthogonal), fitted c = {fitted:.2}"))
}

fn observation1() -> Outcome {
    let mut r = rng(13);
    for t in 0..100 {
        let x = rand_seq(&mut r, 8, 1, 4);
        let y = rand_seq(&mut r, 8, 1, 4);
        let out = lcs_to_lcis(&[x.clone().into(), y.clone().into()]).unwrap();
        let got = lcis_length(&out, Mode::Strict).unwrap();
        ensure!(out.len() == 1 && lis_quadratic(&out[0]) == got, "pair {t}: shape of the output");
        let want = lcs_exhaustive(&x, &y);
        ensure!(got == want, "pair {t}: {x:?} {y:?}: {got}, want {want}");
    }
    Ok("100 pairs".into())
}

fn dp_k() -> Outcome {
    let mut r = rng(14);
    for t in 0..200 {
        let k = r.gen_range(2..=3);
        let seqs: Vec<Vec<i64>> = (0..k).map(|_| rand_seq(&mut r, 8, 0, 5)).collect();
        let refs: Vec<&[i64]> = seqs.iter().map(Vec::as_slice).collect();
        for (mode, strict) in [(Mode::Strict, true), (Mode::Weak, false)] {
            let got = lcis_dpk(&seqs, mode).unwrap().length;
            let want = lcis_oracle(&seqs, mode).unwrap().length;
            ensure!(got == want && want == lcis_exhaustive(&refs, strict), "instance {t} k={k} {mode:?}: {got} vs {want}");
        }
        let x = rand_seq(&mut r, 200, 0, 60);
        let y = rand_seq(&mut r, 200, 0, 60);
        let got = lcis_dpk(&[&x, &y], Mode::Strict).unwrap().length;
        ensure!(got == dp2(&x, &y), "instance {t}: two sequences of lengths {} {}", x.len(), y.len());
    }
    Ok("200 instances, 200 two-sequence comparisons".into())
}

fn approximation() -> Outcome {
    let mut r = rng(15);
    let (mut filtered, mut fallback) = (0, 0);
    for t in 0..100 {
        let eps = [0.1, 0.5, 1.0][t % 3];
        let (x, y) = match t % 4 {
            0 => (rand_seq(&mut r, 100, 0, 3), rand_seq(&mut r, 100, 0, 3)),
            1 => (rand_seq(&mut r, 100, 0, 400), rand_seq(&mut r, 100, 0, 400)),
            _ => {
                let mut sorted = || {
                    let n = r.gen_range(50..=100);
                    let mut s: Vec<i64> = (0..n).map(|_| r.gen_range(0..=200)).collect();
                    s.sort_unstable();
                    s
                };
                (sorted(), sorted())
            }
        };
        let out = lcis_approx(&x, &y, eps).unwrap();
        match out.branch {
            ApproxBranch::Filtered => filtered += 1,
            ApproxBranch::ExactFallback => fallback += 1,
        }
        let z = out.result.witness.unwrap_or_default();
        let exact = dp2(&x, &y);
        ensure!(z.len() == out.result.length, "instance {t}: witness length");
        ensure!(valid_witness(&[&x, &y], &z, true), "instance {t}: invalid witness");
        ensure!((1.0 + eps) * z.len() as f64 >= exact as f64, "instance {t}: |Z|={} exact={exact} eps={eps}", z.len());
    }
    ensure!(filtered > 0 && fallback > 0, "branches: {filtered} filtered, {fallback} fallback");
    Ok(format!("100 instances, {filtered} early returns, {fallback} fallbacks"))
}

/// `t ≤ 1` over the whole `N ≤ 6`, `W ≤ 3` grid at two densities, and
/// `t = 2` where `|X|·|Y|` stays within a few times `10^10`.
fn bp_family() -> Vec<(usize, usize, u32, f64)> {
    let mut out = Vec::new();
    for t in 0..=1 {
        for w in 1..=3 {
            for n in 1..=6 {
                for density in [0.3, 0.6] {
                    out.push((n, w, t, density));
                }
            }
        }
    }
    for (w, max_n) in [(1, 6), (2, 6), (3, 2)] {
        for n in 1..=max_n {
            out.push((n, w, 2, 0.5));
        }
    }
    out
}

fn bp_sat() -> Outcome {
    let family = bp_family();
    let mut sat = 0;
    for (idx, &(n, w, t, density)) in family.iter().enumerate() {
        let bp = gen_bp(n, w, t, density, 1000 + idx as u64).unwrap();
        let red = bpsat_to_lcis(&bp).unwrap();
        let key = format!("N={n} W={w} t={t} density={density}");
        ensure!(red.levels[0].c_k == 1, "{key}: C_0 = {}", red.levels[0].c_k);
        for pair in red.levels.windows(2) {
            let (prev, cur) = (&pair[0], &pair[1]);
            ensure!(cur.c_k == cur.combine_constant + 2 * prev.c_k, "{key}: C_{} recurrence", cur.k);
        }
        let thr = red.output.threshold.ok_or("missing threshold")?;
        let got = dp2(&red.output.sequences[0], &red.output.sequences[1]) as i64;
        let s = bp_satisfiable(&bp);
        sat += usize::from(s);
        ensure!(got <= thr, "{key}: {got} above threshold {thr}");
        ensure!((got == thr) == s, "{key}: lcis {got}, threshold {thr}, satisfiable {s}");
    }
    ensure!(family.len() >= 50, "family has {} programs", family.len());
    Ok(format!("{} programs ({sat} satisfiable)", family.len()))
}

fn solver_cross_checks() -> Outcome {
    let mut r = rng(17);
    for t in 0..500 {
        let top = [3, 20, 100, 1000][t % 4];
        let x = rand_seq(&mut r, 200, 0, top);
        let y = rand_seq(&mut r, 200, 0, top);
        let a = lcis_matching_pairs(&x, &y, true);
        let b = lcis_dp2(&x, &y, Mode::Strict, true);
        ensure!(a.length == b.length, "instance {t}: matching pairs {} vs dp2 {}", a.length, b.length);
        for (name, res) in [("matching pairs", &a), ("dp2", &b)] {
            let w = res.witness.as_ref().ok_or("missing witness")?;
            ensure!(w.len() == res.length && valid_witness(&[&x, &y], w, true), "instance {t}: {name} witness");
        }
        if x.len() <= 12 && y.len() <= 12 {
            ensure!(a.length == lcis_quartic(&x, &y), "instance {t}: quartic oracle");
        }
    }
    Ok("500 instances".into())
}

type Check = fn() -> Outcome;

const CRITERIA: [(&str, u64, Check); 17] = [
    ("inflation law", 1, inflation_law),
    ("separator length", 1, separator_length),
    ("separator prefix law", 10, separator_prefix_law),
    ("hat suffix law", 5, hat_suffix_law),
    ("vector gadget identity", 1, vector_gadget_identity),
    ("combiner", 10, combiner),
    ("OV to LCIS", 30, theorem1),
    ("unbalanced OV to LCIS", 30, theorem2),
    ("3-OV to 3-LCIS", 60, theorem3),
    ("k-ary separator law", 10, kary_separator_law),
    ("coordinate gadget", 1, coordinate_gadget_identity),
    ("2-OV to LCWIS decision", 30, theorem4),
    ("LCS to LCIS", 5, observation1),
    ("k-dimensional DP", 30, dp_k),
    ("approximation", 30, approximation),
    ("branching program SAT", 120, bp_sat),
    ("solver cross-checks", 30, solver_cross_checks),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, (name, limit, check)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let res = match res {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{detail}; took {:.2}s, limit {limit}s", elapsed.as_secs_f64()))
            }
            other => other,
        };
        match res {
            Ok(detail) => println!("criterion {:2} {name}: PASS ({detail}, {:.2}s)", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", CRITERIA.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
