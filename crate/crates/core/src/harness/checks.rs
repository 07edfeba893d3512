use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Budget, Lemma, Tally};
use crate::error::Result;
use crate::gadgets::{combine, coordinate_gadget, grouped_gadget, vector_gadget, vector_gadget_k, Side};
use crate::instances::{
    bp_sat_bruteforce, gen_bp, gen_kov, gen_ov, k_min_product, min_inner_product, product_sum, BitVector,
};
use crate::lcis::{
    is_common_increasing, lcis_approx, lcis_dp2, lcis_dpk, lcis_length, lcis_oracle, lis_length, ApproxBranch, Mode,
};
use crate::reductions::{bpsat_to_lcis, kov_to_klcis, kov_to_klcwis, lcs_to_lcis, ov_to_lcis, ov_to_lcis_unbalanced};
use crate::separators::{hat, inflate, inflate_weak, separator_pair};
use crate::seqcore::IntSeq;

pub(super) fn run(lemma: Lemma, b: &Budget, t: &mut Tally) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    match lemma {
        Lemma::Inflation => inflation(b, &mut rng, t),
        Lemma::SepLen => sep_len(b, t),
        Lemma::SepLcis => sep_lcis(b, t),
        Lemma::HatSuffix => hat_suffix(b, t),
        Lemma::VectorGadget => vector_gadgets(b, t),
        Lemma::CoordinateGadget => coordinate_gadgets(b, t),
        Lemma::Combiner => combiner(b, &mut rng, t),
        Lemma::Thm1 => thm1(b, &mut rng, t),
        Lemma::Thm2 => thm2(b, &mut rng, t),
        Lemma::Thm3 => thm3(b, &mut rng, t),
        Lemma::Thm4 => thm4(b, &mut rng, t),
        Lemma::Obs1 => obs1(b, &mut rng, t),
        Lemma::BpSat => bp_sat(b, t),
        Lemma::DpK => dp_k(b, &mut rng, t),
        Lemma::Approx => approx(b, &mut rng, t),
    }
}

fn rand_seq(rng: &mut ChaCha8Rng, max_len: usize, lo: i64, hi: i64) -> IntSeq {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}

fn all_vectors(d: usize) -> Vec<BitVector> {
    (0u32..1 << d)
        .map(|c| BitVector::new((0..d).map(|p| (c >> p) & 1 == 1).collect()).expect("d >= 1"))
        .collect()
}

fn lcis2(x: &[i64], y: &[i64]) -> usize {
    lcis_dp2(x, y, Mode::Strict, false).length
}

fn sorted_seq(rng: &mut ChaCha8Rng, max_n: usize) -> IntSeq {
    let n = rng.gen_range(max_n / 2..=max_n);
    let mut s: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2 * max_n as i64)).collect();
    s.sort_unstable();
    s.into()
}

fn inflation(b: &Budget, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for trial in 0..b.trials {
        let x = rand_seq(rng, b.max_n, -5, 5);
        let y = rand_seq(rng, b.max_n, -5, 5);
        let base = lcis_oracle(&[&x, &y], Mode::Strict)?.length;
        t.expect_eq(lcis2(&inflate(&x)?, &inflate(&y)?), 2 * base, || format!("trial {trial} x={x} y={y}"));
        let weak = lcis_oracle(&[&x, &y], Mode::Weak)?.length;
        let got = lcis_dp2(&inflate_weak(&x), &inflate_weak(&y), Mode::Weak, false).length;
        t.expect_eq(got, 2 * weak, || format!("trial {trial} weak x={x} y={y}"));
    }
    Ok(())
}

fn sep_len(b: &Budget, t: &mut Tally) -> Result<()> {
    for k in 0..=b.max_level {
        let p = separator_pair(k)?;
        let want = (3 * k as usize + 2) << k >> 1;
        t.expect_eq(p.a.seq().len(), want, || format!("|A_{k}|"));
        t.expect_eq(p.b.seq().len(), want, || format!("|B_{k}|"));
        t.expect_eq(p.s, (1i64 << (k + 2)) - 3, || format!("s_{k}"));
        t.expect_eq(p.a.num_blocks(), 1 << k, || format!("blocks of A_{k}"));
    }
    Ok(())
}

fn sep_lcis(b: &Budget, t: &mut Tally) -> Result<()> {
    for k in 0..=b.max_level {
        let p = separator_pair(k)?;
        let n = 1usize << k;
        for i in 0..n {
            for j in 0..n {
                let got = lcis2(p.a.prefix(i), p.b.prefix(j));
                t.expect_eq(got, i + j + n, || format!("k={k} i={i} j={j}"));
            }
        }
    }
    Ok(())
}

fn hat_suffix(b: &Budget, t: &mut Tally) -> Result<()> {
    for k in 0..=b.max_level {
        let p = separator_pair(k)?;
        let (ha, hb) = (hat(&p.a)?, hat(&p.b)?);
        let n = 1usize << k;
        for i in 0..n {
            for j in 0..n {
                let got = lcis2(ha.suffix(i), hb.suffix(j));
                t.expect_eq(got, 2 * (n - 1) - i - j + n, || format!("k={k} i={i} j={j}"));
            }
        }
    }
    Ok(())
}

fn vector_gadgets(b: &Budget, t: &mut Tally) -> Result<()> {
    for d in 1..=b.max_d {
        let vs = all_vectors(d);
        for u in &vs {
            for v in &vs {
                let got = lcis2(&vector_gadget(u, Side::X), &vector_gadget(v, Side::Y));
                t.expect_eq(got, d - u.dot(v), || format!("u={u} v={v}"));
            }
        }
    }
    Ok(())
}

fn coordinate_gadgets(b: &Budget, t: &mut Tally) -> Result<()> {
    for bits in 0..8u32 {
        let bs: Vec<bool> = (0..3).map(|i| (bits >> i) & 1 == 1).collect();
        let gs = (0..3)
            .map(|i| coordinate_gadget(i + 1, 0, bs[i], 3))
            .collect::<Result<Vec<_>>>()?;
        let want = 1 - usize::from(bs.iter().all(|&x| x));
        t.expect_eq(lcis_dpk(&gs, Mode::Strict)?.length, want, || format!("bits {bs:?}"));
    }
    for d in 1..=b.max_d {
        let vs = all_vectors(d);
        for a in &vs {
            for bb in &vs {
                for c in &vs {
                    let gs = [vector_gadget_k(1, a, 3)?, vector_gadget_k(2, bb, 3)?, vector_gadget_k(3, c, 3)?];
                    let want = d - product_sum(&[a, bb, c]);
                    t.expect_eq(lcis_dpk(&gs, Mode::Strict)?.length, want, || format!("{a} {bb} {c}"));
                }
            }
        }
    }
    Ok(())
}

fn combiner(b: &Budget, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for trial in 0..b.trials {
        let n = rng.gen_range(1..=b.max_n);
        let xs: Vec<IntSeq> = (0..n).map(|_| rand_seq(rng, b.max_d, -4, 8)).collect();
        let ys: Vec<IntSeq> = (0..n).map(|_| rand_seq(rng, b.max_d, -4, 8)).collect();
        let delta = xs.iter().chain(&ys).map(|s| lis_length(s, Mode::Strict)).max().unwrap_or(0).max(1);
        let m = xs.iter().flat_map(|x| ys.iter().map(move |y| lcis2(x, y))).max().unwrap_or(0);
        let (x, y, p) = combine(&xs, &ys, delta)?;
        let want = (p.ell * (4 * p.n_blocks as u64 - 2)) as i64 + m as i64;
        t.expect_eq(lcis2(&x, &y) as i64, want, || format!("trial {trial} n={n} delta={delta}"));
    }
    Ok(())
}

fn thm1(b: &Budget, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for trial in 0..b.trials {
        let (n, d) = (rng.gen_range(1..=b.max_n), rng.gen_range(1..=b.max_d));
        let inst = gen_ov(n, n, d, rng.gen())?;
        let out = ov_to_lcis(&inst)?;
        let want = out.constant + d as i64 - min_inner_product(&inst) as i64;
        let got = lcis2(&out.sequences[0], &out.sequences[1]) as i64;
        t.expect_eq(got, want, || format!("trial {trial} n={n} d={d}"));
    }
    Ok(())
}

fn thm2(b: &Budget, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for trial in 0..b.trials {
        let n = rng.gen_range(1..=b.max_n);
        let m = rng.gen_range(1..=n.min(4));
        let d = rng.gen_range(1..=b.max_d);
        let inst = gen_ov(n, m, d, rng.gen())?;
        let out = ov_to_lcis_unbalanced(&inst)?;
        let want = out.constant + d as i64 - min_inner_product(&inst) as i64;
        let got = lcis2(&out.sequences[0], &out.sequences[1]) as i64;
        t.expect_eq(got, want, || format!("trial {trial} n={n} m={m} d={d}"));

        // one group against one replicated gadget
        let q = n.div_ceil(m);
        let mut us = inst.u.clone();
        us.resize(q, BitVector::ones(d));
        let ux: Vec<IntSeq> = us.iter().map(|u| vector_gadget(u, Side::X)).collect();
        let vy = vector_gadget(&inst.v[0], Side::Y);
        let gx = grouped_gadget(Side::X, &ux, q, d)?;
        let gy = grouped_gadget(Side::Y, std::slice::from_ref(&vy), q, d)?;
        let best = ux.iter().map(|x| lcis2(x, &vy)).max().unwrap_or(0);
        t.expect_eq(lcis2(&gx, &gy), best, || format!("trial {trial} isolation q={q}"));
    }
    Ok(())
}

fn thm3(b: &Budget, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for trial in 0..b.trials {
        let (n, d) = (rng.gen_range(1..=b.max_n), rng.gen_range(1..=b.max_d));
        let inst = gen_kov(3, n, d, rng.gen())?;
        let out = kov_to_klcis(&inst)?;
        let np = n.next_power_of_two() as i64;
        let ell = d.next_power_of_two() as i64;
        let closed = ell * (3 * (np - 1) + 2 * np);
        t.expect_eq(out.constant, closed, || format!("trial {trial} constant"));
        let want = closed + d as i64 - k_min_product(&inst)? as i64;
        let got = lcis_dpk(&out.sequences, Mode::Strict)?.length as i64;
        t.expect_eq(got, want, || format!("trial {trial} n={n} d={d}"));
    }
    Ok(())
}

fn thm4(b: &Budget, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for trial in 0..b.trials {
        let (n, d) = (rng.gen_range(1..=b.max_n), rng.gen_range(1..=b.max_d));
        let inst = gen_kov(2, n, d, rng.gen())?;
        let out = kov_to_klcwis(&inst)?;
        let got = lcis_length(&out.sequences, Mode::Weak)? as i64;
        let orth = k_min_product(&inst)? == 0;
        t.check(Some(got) <= out.threshold && (Some(got) == out.threshold) == orth, || {
            format!("trial {trial} n={n} d={d}: lcwis {got}, threshold {:?}, orthogonal {orth}", out.threshold)
        });
        let log_n = n.next_power_of_two().trailing_zeros() as usize;
        let alpha = out.alphabet_size();
        t.check(alpha <= 8 * (log_n + d), || format!("trial {trial} alphabet {alpha} > 8({log_n}+{d})"));
    }
    Ok(())
}

fn lcs_brute(seqs: &[IntSeq]) -> usize {
    let x = &seqs[0];
    (0u32..1 << x.len())
        .filter(|mask| {
            let cand: Vec<i64> = (0..x.len()).filter(|i| mask >> i & 1 == 1).map(|i| x[i]).collect();
            seqs[1..].iter().all(|s| {
                let mut it = s.iter();
                cand.iter().all(|c| it.any(|y| y == c))
            })
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn obs1(b: &Budget, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let top = b.max_d.max(1) as i64;
    for trial in 0..b.trials {
        let seqs = [rand_seq(rng, b.max_n, 1, top), rand_seq(rng, b.max_n, 1, top)];
        let out = lcs_to_lcis(&seqs)?;
        let got = lcis_length(&out, Mode::Strict)?;
        t.expect_eq(got, lcs_brute(&seqs), || format!("trial {trial} x={} y={}", seqs[0], seqs[1]));
    }
    Ok(())
}

/// Grid over `N ≤ max_n`, `W ≤ max_d`, `t ≤ max_level` with `trials`
/// seeds per point. Instances whose quadratic check exceeds `max_cells`
/// are skipped and counted.
fn bp_sat(b: &Budget, t: &mut Tally) -> Result<()> {
    for lt in 0..=b.max_level {
        for w in 1..=b.max_d {
            for n in 1..=b.max_n {
                for s in 0..b.trials {
                    let seed = b.seed ^ ((lt as u64) << 48 | (w as u64) << 32 | (n as u64) << 16 | s as u64);
                    let density = [0.25, 0.4, 0.6][s % 3];
                    let bp = gen_bp(n, w, lt, density, seed)?;
                    let r = bpsat_to_lcis(&bp)?;
                    let key = || format!("N={n} W={w} t={lt} seed={seed}");
                    let mut c = 1;
                    for lvl in &r.levels[1..] {
                        t.expect_eq(lvl.c_k, lvl.combine_constant + 2 * c, || format!("{} level {}", key(), lvl.k));
                        c = lvl.c_k;
                    }
                    let (x, y) = (&r.output.sequences[0], &r.output.sequences[1]);
                    if (x.len() as u64).saturating_mul(y.len() as u64) > b.max_cells {
                        t.skipped += 1;
                        continue;
                    }
                    let v = lcis2(x, y) as i64;
                    let sat = bp_sat_bruteforce(&bp)?.is_some();
                    let thr = r.output.threshold.unwrap_or(i64::MAX);
                    t.check(v <= thr && (v == thr) == sat, || format!("{}: lcis {v}, threshold {thr}, sat {sat}", key()));
                }
            }
        }
    }
    Ok(())
}

fn dp_k(b: &Budget, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for trial in 0..b.trials {
        let k = rng.gen_range(2..=3);
        let mode = if rng.gen_bool(0.5) { Mode::Strict } else { Mode::Weak };
        let seqs: Vec<IntSeq> = (0..k).map(|_| rand_seq(rng, b.max_n, 0, 5)).collect();
        let got = lcis_dpk(&seqs, mode)?;
        let want = lcis_oracle(&seqs, mode)?.length;
        t.expect_eq(got.length, want, || format!("trial {trial} k={k} {mode:?}"));
        let x = rand_seq(rng, b.max_d, 0, 30);
        let y = rand_seq(rng, b.max_d, 0, 30);
        let dp = lcis_dp2(&x, &y, mode, true);
        t.expect_eq(lcis_dpk(&[&x, &y], mode)?.length, dp.length, || format!("trial {trial} two-sequence {mode:?}"));
        let w = dp.witness.unwrap_or_default();
        t.check(w.len() == dp.length && is_common_increasing(&[&x, &y], &w, mode), || {
            format!("trial {trial} dp2 witness")
        });
    }
    Ok(())
}

fn approx(b: &Budget, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let mut branches = [false; 2];
    for trial in 0..b.trials {
        let eps = [0.1, 0.5, 1.0][trial / 3 % 3];
        // dense random pairs fall back to the exact solver, long sorted
        // pairs over a wide alphabet return early
        let (x, y) = match trial % 3 {
            0 => (rand_seq(rng, b.max_n, 0, 3), rand_seq(rng, b.max_n, 0, 3)),
            1 => {
                let top = 4 * b.max_n as i64;
                (rand_seq(rng, b.max_n, 0, top), rand_seq(rng, b.max_n, 0, top))
            }
            _ => (sorted_seq(rng, b.max_n), sorted_seq(rng, b.max_n)),
        };
        let exact = lcis2(&x, &y);
        let out = lcis_approx(&x, &y, eps)?;
        branches[usize::from(out.branch == ApproxBranch::ExactFallback)] = true;
        let z = out.result.witness.unwrap_or_default();
        t.check(
            z.len() == out.result.length
                && is_common_increasing(&[&x, &y], &z, Mode::Strict)
                && (1.0 + eps) * z.len() as f64 >= exact as f64,
            || format!("trial {trial} eps={eps}: |Z|={}, exact {exact}", z.len()),
        );
    }
    if b.trials >= 20 {
        t.check(branches == [true, true], || format!("branches exercised {branches:?}"));
    }
    Ok(())
}
