use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use lcislab_core::harness::{self, bench, write_csv, BenchConfig, BenchFamily, BenchSolver, Budget, Lemma};
use lcislab_core::instances::{emit_bp, emit_kov, emit_ov, gen_bp, gen_kov, gen_ov, parse_bp, parse_kov, parse_ov};
use lcislab_core::lcis::{lcis_approx, lcis_dp2, lcis_dpk, lcis_oracle, ORACLE_CAP};
use lcislab_core::reductions::{
    bpsat_to_lcis, kov_to_klcis, kov_to_klcwis, lcs_reduction, ov_to_lcis, ov_to_lcis_unbalanced, ReductionOutput,
};
use lcislab_core::separators::separator_family;
use lcislab_core::seqcore::{format_blocked, parse_sequences, IntSeq};
use lcislab_core::{Error, Mode};

#[derive(Parser)]
#[command(name = "lcislab", version, about = "LCIS solvers, hardness gadgets and their checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance read from sequence files.
    #[command(subcommand)]
    Solve(Solve),
    /// Generate an instance.
    #[command(subcommand)]
    Gen(Gen),
    /// Run a reduction and write its output sequences.
    Reduce(Reduce),
    /// Check a construction against brute force.
    Verify(Verify),
    /// Time solvers and print a CSV table.
    Bench(BenchArgs),
}

#[derive(Subcommand)]
enum Solve {
    /// Longest common strictly increasing subsequence.
    Lcis(SolveArgs),
    /// Longest common weakly increasing subsequence.
    Lcwis(SolveArgs),
    /// (1 + eps)-approximate LCIS of two sequences.
    Approx {
        #[arg(long)]
        eps: f64,
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        witness: bool,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Expected number of sequences over all files.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    witness: bool,
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Args)]
struct Out {
    /// Output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, env = "LCISLAB_SEED", default_value_t = harness::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Weak,
}

#[derive(Subcommand)]
enum Gen {
    /// Separator sequences in the blocked text format.
    Separator {
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
        /// Write one file per sequence, named `<output>.<i>` (1-based).
        #[arg(long, requires = "output")]
        split: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Random orthogonal-vectors instance.
    Ov {
        #[arg(long)]
        n: usize,
        /// Size of the second set; defaults to `n`.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Random k-OV instance.
    Kov {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Random layered branching program with `2^t + 1` layers.
    Bp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: usize,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    Ov2lcis,
    Ov2lcisUnbalanced,
    Kov2klcis,
    Kov2klcwis,
    Lcs2lcis,
    Bp2lcis,
}

#[derive(Args)]
struct Reduce {
    #[arg(value_enum)]
    kind: ReduceKind,
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct Verify {
    /// Lemma name, or `all`.
    lemma: String,
    /// Comma-separated overrides, e.g. `trials=50,max_n=6`. Keys: trials,
    /// max_n, max_d, max_level, max_cells.
    #[arg(long)]
    budget: Option<String>,
    #[arg(long, env = "LCISLAB_SEED")]
    seed: Option<u64>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "dp2,matching-pairs")]
    solvers: Vec<String>,
    #[arg(long, default_value = "sparse")]
    family: String,
    #[arg(long, value_delimiter = ',', default_value = "100,1000,5000")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    #[command(flatten)]
    out: Out,
}

/// A harness grid finished with failures.
#[derive(Debug)]
struct VerifyFailed;

impl std::fmt::Display for VerifyFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerifyFailed {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<VerifyFailed>() {
        return 3;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::InstanceTooLarge(_) | Error::Overflow(_)) => 4,
        Some(Error::UnknownLemma(_)) => 1,
        _ => 2,
    }
}

fn run(cmd: Cmd) -> anyhow::Result<()> {
    match cmd {
        Cmd::Solve(s) => solve(s),
        Cmd::Gen(g) => gen(g),
        Cmd::Reduce(r) => reduce(r),
        Cmd::Verify(v) => verify(v),
        Cmd::Bench(b) => run_bench(b),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_sequences(files: &[PathBuf]) -> anyhow::Result<Vec<IntSeq>> {
    let mut seqs = Vec::new();
    for f in files {
        seqs.extend(parse_sequences(&read(f)?).with_context(|| f.display().to_string())?);
    }
    Ok(seqs)
}

fn emit(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn solve(s: Solve) -> anyhow::Result<()> {
    let (args, mode) = match s {
        Solve::Lcis(a) => (a, Mode::Strict),
        Solve::Lcwis(a) => (a, Mode::Weak),
        Solve::Approx { eps, x, y, witness } => {
            let x = single(&x)?;
            let y = single(&y)?;
            let out = lcis_approx(&x, &y, eps)?;
            println!("{}", out.result.length);
            println!("bound {:.6}", (1.0 + eps) * out.result.length as f64);
            if witness {
                println!("{}", out.result.witness.unwrap_or_default());
            }
            return Ok(());
        }
    };
    let seqs = read_sequences(&args.files)?;
    if let Some(k) = args.k {
        if k != seqs.len() {
            return Err(Error::Shape(format!("--k {k} but the input holds {} sequences", seqs.len())).into());
        }
    }
    let result = match seqs.len() {
        0 => return Err(Error::EmptyInstance("no sequences in the input".into()).into()),
        // a single sequence: its longest increasing subsequence
        1 => lcis_dp2(&seqs[0], &seqs[0], mode, args.witness),
        2 => lcis_dp2(&seqs[0], &seqs[1], mode, args.witness),
        _ if args.witness => {
            if seqs.iter().all(|s| s.len() > ORACLE_CAP) {
                bail!(Error::Parameter(format!(
                    "a witness for three or more sequences needs one of length at most {ORACLE_CAP}"
                )));
            }
            lcis_oracle(&seqs, mode)?
        }
        _ => lcis_dpk(&seqs, mode)?,
    };
    println!("{}", result.length);
    if let Some(w) = result.witness {
        println!("{w}");
    }
    Ok(())
}

/// The only sequence of a file.
fn single(path: &Path) -> anyhow::Result<IntSeq> {
    let mut seqs = read_sequences(&[path.to_path_buf()])?;
    if seqs.len() != 1 {
        return Err(Error::Shape(format!("{} holds {} sequences, expected 1", path.display(), seqs.len())).into());
    }
    Ok(seqs.remove(0))
}

fn gen(g: Gen) -> anyhow::Result<()> {
    match g {
        Gen::Separator {
            level,
            arity,
            mode,
            split,
            out,
        } => {
            let mode = match mode {
                ModeArg::Strict => Mode::Strict,
                ModeArg::Weak => Mode::Weak,
            };
            let fam = separator_family(level, arity, mode)?;
            match (split, out.output) {
                (true, Some(base)) => {
                    for (i, s) in fam.seqs.iter().enumerate() {
                        let mut name = base.clone().into_os_string();
                        name.push(format!(".{}", i + 1));
                        emit(Some(Path::new(&name)), &format_blocked([s]))?;
                    }
                    Ok(())
                }
                (_, output) => emit(output.as_deref(), &format_blocked(&fam.seqs)),
            }
        }
        Gen::Ov { n, m, d, out } => emit(out.output.as_deref(), &emit_ov(&gen_ov(n, m.unwrap_or(n), d, out.seed)?)),
        Gen::Kov { k, n, d, out } => emit(out.output.as_deref(), &emit_kov(&gen_kov(k, n, d, out.seed)?)),
        Gen::Bp { n, w, t, density, out } => {
            emit(out.output.as_deref(), &emit_bp(&gen_bp(n, w, t, density, out.seed)?))
        }
    }
}

fn reduce(r: Reduce) -> anyhow::Result<()> {
    let text = read(&r.input)?;
    let out: ReductionOutput = match r.kind {
        ReduceKind::Ov2lcis => ov_to_lcis(&parse_ov(&text)?)?,
        ReduceKind::Ov2lcisUnbalanced => ov_to_lcis_unbalanced(&parse_ov(&text)?)?,
        ReduceKind::Kov2klcis => kov_to_klcis(&parse_kov(&text)?)?,
        ReduceKind::Kov2klcwis => kov_to_klcwis(&parse_kov(&text)?)?,
        ReduceKind::Lcs2lcis => lcs_reduction(&parse_sequences(&text)?)?,
        ReduceKind::Bp2lcis => bpsat_to_lcis(&parse_bp(&text)?)?.output,
    };
    fs::write(&r.output, out.to_text()).with_context(|| format!("writing {}", r.output.display()))?;
    println!("identity {}", out.identity);
    println!("constant {}", out.constant);
    match out.threshold {
        Some(t) => println!("threshold {t}"),
        None => println!("threshold none"),
    }
    println!("sequences {}", out.sequences.len());
    Ok(())
}

fn parse_budget(base: Budget, spec: &str) -> anyhow::Result<Budget> {
    let mut b = base;
    for kv in spec.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Parameter(format!("budget entry `{kv}` is not key=value")))?;
        let bad = |_| Error::Parameter(format!("budget value `{v}` for {k}"));
        match k {
            "trials" => b.trials = v.parse().map_err(bad)?,
            "max_n" => b.max_n = v.parse().map_err(bad)?,
            "max_d" => b.max_d = v.parse().map_err(bad)?,
            "max_level" => b.max_level = v.parse().map_err(bad)?,
            "max_cells" => b.max_cells = v.parse().map_err(bad)?,
            _ => return Err(Error::Parameter(format!("unknown budget key `{k}`")).into()),
        }
    }
    Ok(b)
}

fn verify(v: Verify) -> anyhow::Result<()> {
    let lemmas = if v.lemma == "all" {
        Lemma::ALL.to_vec()
    } else {
        vec![v.lemma.parse::<Lemma>()?]
    };
    let mut ok = true;
    for lemma in lemmas {
        let mut budget = lemma.default_budget();
        if let Some(spec) = &v.budget {
            budget = parse_budget(budget, spec)?;
        }
        if let Some(seed) = v.seed {
            budget.seed = seed;
        }
        let report = harness::verify_lemma(lemma, &budget)?;
        print!("{report}");
        ok &= report.passed();
    }
    if !ok {
        bail!(VerifyFailed);
    }
    Ok(())
}

fn run_bench(a: BenchArgs) -> anyhow::Result<()> {
    let cfg = BenchConfig {
        solvers: a.solvers.iter().map(|s| s.parse::<BenchSolver>()).collect::<Result<_, _>>()?,
        family: a.family.parse::<BenchFamily>()?,
        sizes: a.sizes,
        reps: a.reps,
        seed: a.out.seed,
        k: a.k,
        eps: a.eps,
    };
    let rows = bench(&cfg)?;
    match a.out.output {
        Some(p) => write_csv(&rows, fs::File::create(&p).with_context(|| format!("creating {}", p.display()))?)?,
        None => write_csv(&rows, io::stdout().lock())?,
    }
    Ok(())
}
