use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DEFAULT_SEED;
use crate::error::{Error, Result};
use crate::lcis::{lcis_approx, lcis_dp2, lcis_dpk, lcis_matching_pairs, lis_length, Mode};
use crate::seqcore::IntSeq;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BenchSolver {
    Dp2,
    MatchingPairs,
    Dpk,
    Approx,
    Lis,
}

impl BenchSolver {
    pub fn name(self) -> &'static str {
        match self {
            BenchSolver::Dp2 => "dp2",
            BenchSolver::MatchingPairs => "matching-pairs",
            BenchSolver::Dpk => "dpk",
            BenchSolver::Approx => "approx",
            BenchSolver::Lis => "lis",
        }
    }
}

impl FromStr for BenchSolver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            BenchSolver::Dp2,
            BenchSolver::MatchingPairs,
            BenchSolver::Dpk,
            BenchSolver::Approx,
            BenchSolver::Lis,
        ]
        .into_iter()
        .find(|b| b.name() == s)
        .ok_or_else(|| Error::Parameter(format!("unknown solver {s:?}")))
    }
}

impl fmt::Display for BenchSolver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Random sequences over a small (`dense`) or a large (`sparse`) alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchFamily {
    /// Symbols in `0..8`: many matching pairs.
    Dense,
    /// Symbols in `0..4n`: about `n/4` matching pairs per sequence pair.
    Sparse,
}

impl BenchFamily {
    pub fn name(self) -> &'static str {
        match self {
            BenchFamily::Dense => "dense",
            BenchFamily::Sparse => "sparse",
        }
    }

    fn generate(self, n: usize, rng: &mut ChaCha8Rng) -> IntSeq {
        let top = match self {
            BenchFamily::Dense => 8,
            BenchFamily::Sparse => 4 * n.max(1) as i64,
        };
        (0..n).map(|_| rng.gen_range(0..top)).collect()
    }
}

impl FromStr for BenchFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(BenchFamily::Dense),
            "sparse" => Ok(BenchFamily::Sparse),
            _ => Err(Error::Parameter(format!("unknown instance family {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub solvers: Vec<BenchSolver>,
    pub family: BenchFamily,
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    /// Number of sequences for `dpk`; the other solvers use two (`lis` one).
    pub k: usize,
    pub eps: f64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            solvers: vec![BenchSolver::Dp2, BenchSolver::MatchingPairs],
            family: BenchFamily::Sparse,
            sizes: vec![100, 1_000, 5_000],
            reps: 5,
            seed: DEFAULT_SEED,
            k: 3,
            eps: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub solver: BenchSolver,
    pub family: BenchFamily,
    pub n: usize,
    pub k: usize,
    pub reps: usize,
    pub median_us: f64,
    pub result: usize,
    /// Exact value from the quadratic or k-dimensional DP.
    pub exact: usize,
    /// `result / exact`, 1 when both are zero.
    pub ratio: f64,
}

/// Times every solver on one instance per size. Instances depend only on
/// `seed`, `family`, the size and `k`, so rows of different solvers at the
/// same size describe the same input.
pub fn bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    if cfg.reps == 0 {
        return Err(Error::Parameter("reps must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (n as u64).rotate_left(32));
        let seqs: Vec<IntSeq> = (0..cfg.k.max(2)).map(|_| cfg.family.generate(n, &mut rng)).collect();
        let (x, y) = (&seqs[0], &seqs[1]);
        for &solver in &cfg.solvers {
            let k = match solver {
                BenchSolver::Dpk => cfg.k,
                BenchSolver::Lis => 1,
                _ => 2,
            };
            let run = || -> Result<usize> {
                Ok(match solver {
                    BenchSolver::Dp2 => lcis_dp2(x, y, Mode::Strict, false).length,
                    BenchSolver::MatchingPairs => lcis_matching_pairs(x, y, false).length,
                    BenchSolver::Dpk => lcis_dpk(&seqs[..cfg.k], Mode::Strict)?.length,
                    BenchSolver::Approx => lcis_approx(x, y, cfg.eps)?.result.length,
                    BenchSolver::Lis => lis_length(x, Mode::Strict),
                })
            };
            let mut times = Vec::with_capacity(cfg.reps);
            let mut result = 0;
            for rep in 0..cfg.reps {
                let start = Instant::now();
                let r = run()?;
                times.push(start.elapsed().as_secs_f64() * 1e6);
                if rep > 0 && r != result {
                    return Err(Error::Parameter(format!("{solver} is not deterministic at n={n}")));
                }
                result = r;
            }
            times.sort_by(f64::total_cmp);
            let exact = match solver {
                BenchSolver::Dpk => lcis_dpk(&seqs[..cfg.k], Mode::Strict)?.length,
                BenchSolver::Lis => lis_length(x, Mode::Strict),
                _ => lcis_dp2(x, y, Mode::Strict, false).length,
            };
            rows.push(BenchRow {
                solver,
                family: cfg.family,
                n,
                k,
                reps: cfg.reps,
                median_us: times[times.len() / 2],
                result,
                exact,
                ratio: if exact == 0 { 1.0 } else { result as f64 / exact as f64 },
            });
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchRow], w: W) -> Result<()> {
    let io = |e: csv::Error| Error::Parameter(format!("csv output: {e}"));
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["solver", "family", "n", "k", "reps", "median_us", "result", "exact", "ratio"])
        .map_err(io)?;
    for r in rows {
        out.write_record([
            r.solver.name().to_string(),
            r.family.name().to_string(),
            r.n.to_string(),
            r.k.to_string(),
            r.reps.to_string(),
            format!("{:.1}", r.median_us),
            r.result.to_string(),
            r.exact.to_string(),
            format!("{:.4}", r.ratio),
        ])
        .map_err(io)?;
    }
    out.flush().map_err(|e| Error::Parameter(format!("csv output: {e}")))?;
    Ok(())
}
