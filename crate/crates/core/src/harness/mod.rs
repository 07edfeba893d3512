//! Executable checks for every construction and a small benchmark runner.
//!
//! [`verify_lemma`] runs one exhaustive or seeded randomized grid and
//! compares each construction against an independent oracle with exact
//! integer equality.

mod bench;
mod checks;

pub use bench::{bench, write_csv, BenchConfig, BenchFamily, BenchRow, BenchSolver};

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_1c15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lemma {
    Inflation,
    SepLen,
    SepLcis,
    HatSuffix,
    VectorGadget,
    CoordinateGadget,
    Combiner,
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Obs1,
    BpSat,
    DpK,
    Approx,
}

impl Lemma {
    pub const ALL: [Lemma; 15] = [
        Lemma::Inflation,
        Lemma::SepLen,
        Lemma::SepLcis,
        Lemma::HatSuffix,
        Lemma::VectorGadget,
        Lemma::CoordinateGadget,
        Lemma::Combiner,
        Lemma::Thm1,
        Lemma::Thm2,
        Lemma::Thm3,
        Lemma::Thm4,
        Lemma::Obs1,
        Lemma::BpSat,
        Lemma::DpK,
        Lemma::Approx,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::Inflation => "inflation",
            Lemma::SepLen => "sep-len",
            Lemma::SepLcis => "sep-lcis",
            Lemma::HatSuffix => "hat-suffix",
            Lemma::VectorGadget => "vector-gadget",
            Lemma::CoordinateGadget => "coordinate-gadget",
            Lemma::Combiner => "combiner",
            Lemma::Thm1 => "thm1",
            Lemma::Thm2 => "thm2",
            Lemma::Thm3 => "thm3",
            Lemma::Thm4 => "thm4",
            Lemma::Obs1 => "obs1",
            Lemma::BpSat => "bp-sat",
            Lemma::DpK => "dp-k",
            Lemma::Approx => "approx",
        }
    }

    /// Default grid, then the largest values a budget may ask for.
    pub fn default_budget(self) -> Budget {
        let b = |trials, max_n, max_d, max_level| Budget {
            trials,
            max_n,
            max_d,
            max_level,
            seed: DEFAULT_SEED,
            max_cells: 4_000_000_000,
        };
        match self {
            Lemma::Inflation => b(200, 10, 0, 0),
            Lemma::SepLen => b(0, 0, 0, 10),
            Lemma::SepLcis => b(0, 0, 0, 4),
            Lemma::HatSuffix => b(0, 0, 0, 3),
            Lemma::VectorGadget => b(0, 0, 4, 0),
            Lemma::CoordinateGadget => b(0, 0, 3, 0),
            Lemma::Combiner => b(100, 4, 6, 0),
            Lemma::Thm1 => b(100, 8, 5, 0),
            Lemma::Thm2 => b(50, 8, 3, 0),
            Lemma::Thm3 => b(30, 4, 3, 0),
            Lemma::Thm4 => b(30, 4, 3, 0),
            Lemma::Obs1 => b(100, 8, 4, 0),
            Lemma::BpSat => b(2, 6, 3, 2),
            Lemma::DpK => b(200, 8, 200, 0),
            Lemma::Approx => b(100, 100, 0, 0),
        }
    }

    fn caps(self) -> Budget {
        let b = |trials, max_n, max_d, max_level| Budget {
            trials,
            max_n,
            max_d,
            max_level,
            seed: 0,
            max_cells: 200_000_000_000,
        };
        match self {
            Lemma::Inflation => b(100_000, 14, 0, 0),
            Lemma::SepLen => b(0, 0, 0, 20),
            Lemma::SepLcis | Lemma::HatSuffix => b(0, 0, 0, 7),
            Lemma::VectorGadget => b(0, 0, 6, 0),
            Lemma::CoordinateGadget => b(0, 0, 4, 0),
            Lemma::Combiner => b(100_000, 16, 12, 0),
            Lemma::Thm1 => b(100_000, 32, 10, 0),
            Lemma::Thm2 => b(100_000, 32, 8, 0),
            Lemma::Thm3 => b(10_000, 8, 4, 0),
            Lemma::Thm4 => b(10_000, 16, 6, 0),
            Lemma::Obs1 => b(100_000, 12, 8, 0),
            Lemma::BpSat => b(64, 8, 3, 2),
            Lemma::DpK => b(100_000, 12, 2_000, 0),
            Lemma::Approx => b(100_000, 5_000, 0, 0),
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

/// Size caps of one grid. Unused fields are ignored by a lemma.
///
/// `max_d` doubles as the largest dimension, gadget length, alphabet or
/// two-sequence length, depending on the lemma; `max_level` is the
/// separator level or, for `bp-sat`, the largest `t`. For `bp-sat`,
/// `trials` is the number of seeds per grid point, `max_n` the largest
/// `N` and `max_d` the largest width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub trials: usize,
    pub max_n: usize,
    pub max_d: usize,
    pub max_level: u32,
    pub seed: u64,
    /// Quadratic solver work above which a bp-sat instance is skipped.
    pub max_cells: u64,
}

impl Budget {
    fn within(&self, cap: &Budget) -> bool {
        self.trials <= cap.trials
            && self.max_n <= cap.max_n
            && self.max_d <= cap.max_d
            && self.max_level <= cap.max_level
            && self.max_cells <= cap.max_cells
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub lemma: Lemma,
    pub seed: u64,
    pub instances: usize,
    /// Instances left out because they exceed `max_cells`.
    pub skipped: usize,
    /// One line per failing instance, sorted.
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.instances > 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} instances, {} skipped, {} failures, seed {}, {:.3}s",
            self.lemma,
            self.instances,
            self.skipped,
            self.failures.len(),
            self.seed,
            self.elapsed.as_secs_f64()
        )?;
        for line in &self.failures {
            writeln!(f, "  FAIL {line}")?;
        }
        Ok(())
    }
}

/// Collects outcomes of one grid.
pub(crate) struct Tally {
    pub instances: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            instances: 0,
            skipped: 0,
            failures: Vec::new(),
        }
    }

    pub fn check(&mut self, ok: bool, key: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(key());
        }
    }

    pub fn expect_eq<T: PartialEq + fmt::Debug>(&mut self, got: T, want: T, key: impl FnOnce() -> String) {
        self.instances += 1;
        if got != want {
            self.failures.push(format!("{}: got {got:?}, want {want:?}", key()));
        }
    }
}

/// Runs the grid of `lemma` under `budget`. Construction errors are
/// reported as failures; only an out-of-range budget is an error.
pub fn verify_lemma(lemma: Lemma, budget: &Budget) -> Result<Report> {
    if !budget.within(&lemma.caps()) {
        return Err(Error::InstanceTooLarge(format!(
            "budget {budget:?} exceeds the caps of {lemma}"
        )));
    }
    let start = Instant::now();
    let mut tally = Tally::new();
    if let Err(e) = checks::run(lemma, budget, &mut tally) {
        tally.failures.push(format!("construction error: {e}"));
    }
    tally.failures.sort();
    Ok(Report {
        lemma,
        seed: budget.seed,
        instances: tally.instances,
        skipped: tally.skipped,
        failures: tally.failures,
        elapsed: start.elapsed(),
    })
}
