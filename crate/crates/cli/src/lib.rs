//! Command implementations for the `smatrix` binary.
//!
//! Every command returns a [`CommandOutcome`]; matrix data streams to the
//! `--out` destination or, without one, to the writer passed to [`run`].

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use smatrix::bench::compare_generators;
use smatrix::count::{self, BigCount};
use smatrix::format;
use smatrix::generate::{
    self, enumerate_pi, generate_bijective, generate_naive, naive_candidate_count,
    naive_overhead_ratio, pi_cardinality, PiMatrix,
};
use smatrix::sudoku::{self, SudokuMatrix};
use smatrix::{
    are_disjoint_pi, are_disjoint_sigma, is_s_permutation, phi, phi_inverse, Error, Guard,
    Permutation, SPermutationMatrix,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "smatrix",
    version,
    about = "Count and generate S-permutation matrices, Lambda-matrices and Sudoku decompositions"
)]
pub struct Cli {
    /// Print the report as key=value lines
    #[arg(long, global = true)]
    pub machine: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count Lambda-matrices (lambda) or block-constrained matrices (mu)
    Count(CountArgs),
    /// Emit a slice of the S-permutation matrices of order n
    Generate(GenerateArgs),
    /// Check the bijection, disjointness, generator and Sudoku invariants
    Verify(VerifyArgs),
    /// Time the naive generator against the bijective one
    Bench(BenchArgs),
    /// Validate, compose, decompose or enumerate Sudoku grids
    Sudoku(SudokuArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Lambda,
    Mu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Factorial,
    Sum,
    Anand,
    Good,
    System,
    Explicit,
    Formula,
    Brute,
    All,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    pub target: Target,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Defaults to the closed formula when one exists, otherwise brute
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// Run brute-force counts beyond the default size limit
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Naive,
    Bijection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Bm01,
    Spm,
    Pim,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub algorithm: Algorithm,
    /// Emit at most this many matrices
    #[arg(long)]
    pub limit: Option<u64>,
    /// Skip this many matrices of the stream first
    #[arg(long, default_value = "0")]
    pub skip: BigUint,
    /// Print only how many matrices the slice holds
    #[arg(long)]
    pub count_only: bool,
    #[arg(long, value_enum, default_value = "spm")]
    pub format: OutputFormat,
    /// Output file; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyCheck {
    Bijection,
    Disjointness,
    NaiveEquivalence,
    SudokuRoundtrip,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub check: VerifyCheck,
    #[arg(long)]
    pub n: usize,
    /// Random cases to draw when the check is sampled rather than exhaustive
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub repetitions: usize,
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct SudokuArgs {
    #[command(subcommand)]
    pub action: SudokuAction,
}

#[derive(Debug, Subcommand)]
pub enum SudokuAction {
    /// Check a `.sdk` grid; exit 1 naming the violated constraint
    Validate { file: PathBuf },
    /// Sum `.spm` parts (in value order) into a `.sdk` grid
    Compose {
        #[arg(required = true)]
        parts: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a `.sdk` grid into its digit indicator matrices
    Decompose {
        file: PathBuf,
        /// Directory receiving A1.spm, A2.spm, ...; one `.spm` stream on
        /// standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate all grids of order n
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
}

/// Result of one command: exit code, text for standard output, an optional
/// key=value rendering of the same facts, and notes for standard error.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub report: String,
    pub machine_report: Vec<(String, String)>,
    pub notes: String,
}

impl CommandOutcome {
    fn ok() -> Self {
        Self::default()
    }

    fn usage(message: impl Into<String>) -> Self {
        CommandOutcome {
            exit_code: EXIT_USAGE,
            notes: format!("error: {}\n", message.into()),
            ..Self::default()
        }
        .with("error", "usage")
    }

    fn line(mut self, text: impl AsRef<str>) -> Self {
        self.report.push_str(text.as_ref());
        self.report.push('\n');
        self
    }

    fn note(mut self, text: impl AsRef<str>) -> Self {
        self.notes.push_str(text.as_ref());
        self.notes.push('\n');
        self
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.machine_report
            .push((key.to_string(), value.to_string()));
        self
    }

    fn fail(mut self, check: impl AsRef<str>) -> Self {
        self.exit_code = EXIT_FAILED;
        self = self.line(format!("FAILED: {}", check.as_ref()));
        self.with("failed", check.as_ref())
    }

    /// The text to print on standard output for the chosen mode.
    pub fn render(&self, machine: bool) -> String {
        if machine {
            self.machine_report
                .iter()
                .map(|(k, v)| format!("{k}={v}\n"))
                .collect()
        } else {
            self.report.clone()
        }
    }
}

/// Maps library errors onto the exit-code contract: refused sizes and bad
/// input are usage errors, constraint violations are failures.
fn from_error(e: Error) -> CommandOutcome {
    match e {
        Error::SudokuViolation { .. } | Error::NotDisjoint { .. } | Error::NotSPermutation(_) => {
            CommandOutcome::ok().fail(e.to_string())
        }
        other => CommandOutcome::usage(other.to_string()),
    }
}

fn io_error(path: &Path, e: io::Error) -> CommandOutcome {
    CommandOutcome::usage(format!("{}: {e}", path.display()))
}

/// With `--force` past a default limit, prints the cost estimate to standard
/// error before any work starts and records it in the machine report.
fn forced_note(
    outcome: CommandOutcome,
    force: bool,
    n: usize,
    limit: usize,
    estimate: impl FnOnce() -> BigUint,
) -> CommandOutcome {
    if force && n > limit {
        let estimate = estimate();
        eprintln!(
            "warning: n = {n} exceeds the default limit {limit}; estimated search size up to {estimate} candidates"
        );
        outcome.with("forced_estimate", estimate)
    } else {
        outcome
    }
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> CommandOutcome {
    match cli.command {
        Command::Count(args) => cmd_count(&args),
        Command::Generate(args) => cmd_generate(&args, stdout),
        Command::Verify(args) => cmd_verify(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Sudoku(args) => cmd_sudoku(&args.action, stdout),
    }
}

pub fn cmd_count(args: &CountArgs) -> CommandOutcome {
    let (n, k) = (args.n, args.k);
    if n == 0 {
        return CommandOutcome::usage("--n must be at least 1");
    }
    let guard = Guard::from_force_flag(args.force);
    let side = match args.target {
        Target::Lambda => n,
        Target::Mu => n * n,
    };
    if k == 0 || k > side {
        return CommandOutcome::usage(format!("--k must lie in 1..={side}"));
    }

    use Method::*;
    let formulas: &[Method] = match (args.target, k) {
        (Target::Lambda, 1) => &[Factorial],
        (Target::Lambda, 2) => &[Sum, Anand, Good, System],
        (Target::Lambda, 3) => &[Explicit],
        (Target::Mu, 1) => &[Formula],
        _ => &[],
    };
    let method = args
        .method
        .unwrap_or_else(|| formulas.first().copied().unwrap_or(Brute));
    if method != All && method != Brute && !formulas.contains(&method) {
        let valid: Vec<String> = formulas
            .iter()
            .chain([&Brute, &All])
            .map(|m| format!("{m:?}").to_lowercase())
            .collect();
        return CommandOutcome::usage(format!(
            "method {:?} does not apply to {:?} with k = {k}; choose one of: {}",
            format!("{method:?}").to_lowercase(),
            format!("{:?}", args.target).to_lowercase(),
            valid.join(", ")
        ));
    }

    let (brute_limit, estimate): (usize, fn(usize, usize) -> BigUint) = match args.target {
        Target::Lambda => (count::LAMBDA_BRUTE_LIMIT, count::lambda_brute_estimate),
        Target::Mu => (count::MU_BRUTE_LIMIT, count::mu_brute_estimate),
    };
    let brute_allowed = args.force || n <= brute_limit;
    let methods: Vec<Method> = match method {
        All => {
            let mut m = formulas.to_vec();
            if brute_allowed || m.is_empty() {
                m.push(Brute);
            }
            m
        }
        single => vec![single],
    };

    let mut out = CommandOutcome::ok();
    if methods.contains(&Brute) {
        out = forced_note(out, args.force, n, brute_limit, || estimate(n, k));
    }
    let mut results: Vec<(Method, BigCount)> = Vec::new();
    for m in methods {
        let value = match (args.target, m) {
            (Target::Lambda, Factorial) => Ok(count::lambda_k1(n)),
            (Target::Lambda, Sum) => count::lambda_k2_sum(n),
            (Target::Lambda, Anand) => Ok(count::lambda_k2_anand(n)),
            (Target::Lambda, Good) => Ok(count::lambda_k2_good(n)),
            (Target::Lambda, System) => count::lambda_k2_system(n),
            (Target::Lambda, Explicit) => count::lambda_k3_explicit(n),
            (Target::Lambda, Brute) => count::lambda_brute(n, k, guard),
            (Target::Mu, Formula) => Ok(count::mu_k1(n)),
            (Target::Mu, Brute) => count::mu_brute(n, k, guard),
            _ => unreachable!("method filtered above"),
        };
        match value {
            Ok(v) => results.push((m, v)),
            Err(Error::Internal(msg)) => {
                return CommandOutcome::ok().fail(format!("internal consistency: {msg}"))
            }
            Err(e) => return from_error(e),
        }
    }

    out = out
        .with("target", format!("{:?}", args.target).to_lowercase())
        .with("n", n)
        .with("k", k);
    for (m, v) in &results {
        out = out.with(&format!("method.{}", format!("{m:?}").to_lowercase()), v);
    }
    let first = &results[0].1;
    if let Some((m, v)) = results.iter().find(|(_, v)| v != first) {
        let summary: Vec<String> = results
            .iter()
            .map(|(m, v)| format!("{}={v}", format!("{m:?}").to_lowercase()))
            .collect();
        return out.fail(format!(
            "methods disagree ({} gave {v}): {}",
            format!("{m:?}").to_lowercase(),
            summary.join(", ")
        ));
    }
    out.with("value", first).line(first.to_string())
}

fn open_destination<'a>(
    out: &Option<PathBuf>,
    stdout: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>, CommandOutcome> {
    match out {
        Some(path) => File::create(path)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| io_error(path, e)),
        None => Ok(Box::new(stdout)),
    }
}

fn write_or_usage(
    w: &mut dyn Write,
    bytes: &[u8],
    dest: &Option<PathBuf>,
) -> Result<(), CommandOutcome> {
    w.write_all(bytes).map_err(|e| match dest {
        Some(p) => io_error(p, e),
        None => CommandOutcome::usage(format!("standard output: {e}")),
    })
}

pub fn cmd_generate(args: &GenerateArgs, stdout: &mut dyn Write) -> CommandOutcome {
    let n = args.n;
    if n == 0 {
        return CommandOutcome::usage("--n must be at least 1");
    }
    let guard = Guard::from_force_flag(args.force);
    let limit = args.limit.unwrap_or(u64::MAX);
    let mut outcome = CommandOutcome::ok()
        .with("n", n)
        .with("algorithm", format!("{:?}", args.algorithm).to_lowercase());

    // n! rows per shard grow fast; a full bijective stream past n = 3 never
    // finishes, so it needs either a bound or --force
    if args.algorithm == Algorithm::Bijection && n > generate::NAIVE_LIMIT && args.limit.is_none() {
        if !args.force {
            return from_error(Error::GuardExceeded {
                what: "unbounded bijective generation",
                n,
                limit: generate::NAIVE_LIMIT,
                estimate: pi_cardinality(n).to_string(),
            })
            .note("hint: pass --limit to emit a slice");
        }
        outcome = outcome.note(format!(
            "warning: emitting all {} matrices",
            pi_cardinality(n)
        ));
    }

    let mut writer = if args.count_only {
        None
    } else {
        match open_destination(&args.out, stdout) {
            Ok(w) => Some(w),
            Err(e) => return e,
        }
    };
    if let (Some(w), OutputFormat::Spm) = (writer.as_mut(), args.format) {
        if let Err(e) = write_or_usage(w.as_mut(), format::spm_header(n).as_bytes(), &args.out) {
            return e;
        }
    }
    let writing = writer.is_some();
    let mut emit = |a: &SPermutationMatrix, pre: Option<&PiMatrix>| -> Result<(), CommandOutcome> {
        let Some(w) = writer.as_mut() else {
            return Ok(());
        };
        let text = match args.format {
            OutputFormat::Bm01 => format::write_bm01(&a.to_dense()),
            OutputFormat::Spm => format::spm_line(a),
            OutputFormat::Pim => match pre {
                Some(p) => format::write_pim(p),
                None => format::write_pim(&phi_inverse(a)),
            },
        };
        write_or_usage(w.as_mut(), text.as_bytes(), &args.out)
    };

    let mut emitted = 0u64;
    let mut candidates = None;
    match args.algorithm {
        Algorithm::Bijection => {
            let mut pis = enumerate_pi(n);
            pis.advance_by_big(&args.skip);
            for p in pis {
                if emitted == limit {
                    break;
                }
                if writing {
                    if let Err(e) = emit(&phi(&p), Some(&p)) {
                        return e;
                    }
                }
                emitted += 1;
            }
        }
        Algorithm::Naive => {
            let mut g = match generate_naive(n, guard) {
                Ok(g) => g,
                Err(e) => return from_error(e),
            };
            outcome = forced_note(outcome, args.force, n, generate::NAIVE_LIMIT, || {
                naive_candidate_count(n)
            });
            let mut to_skip = args.skip.clone();
            while to_skip > BigUint::ZERO {
                if g.next().is_none() {
                    break;
                }
                to_skip -= 1u32;
            }
            while emitted < limit {
                let Some(a) = g.next() else { break };
                if let Err(e) = emit(&a, None) {
                    return e;
                }
                emitted += 1;
            }
            candidates = Some(g.candidates_examined());
        }
    }
    if let Some(mut w) = writer {
        if let Err(e) = w.flush() {
            return CommandOutcome::usage(format!("flush failed: {e}"));
        }
    }

    outcome = outcome.with("emitted", emitted);
    if let Some(c) = candidates {
        outcome = outcome.with("candidates_examined", c);
    }
    let mut lines = vec![if args.count_only {
        emitted.to_string()
    } else {
        format!("emitted: {emitted}")
    }];
    if let Some(c) = candidates {
        lines.push(format!("candidates examined: {c}"));
    }
    // with data on standard output, keep the summary off it
    if !args.count_only && args.out.is_none() {
        for l in lines {
            outcome = outcome.note(l);
        }
    } else {
        for l in lines {
            outcome = outcome.line(l);
        }
    }
    outcome
}

fn random_pi(n: usize, rng: &mut ChaCha8Rng) -> PiMatrix {
    let rows = (0..2 * n)
        .map(|_| {
            let mut v: Vec<u32> = (1..=n as u32).collect();
            v.shuffle(rng);
            Permutation::new(v).expect("shuffled identity is a permutation")
        })
        .collect();
    PiMatrix::new(n, rows).expect("2n rows of length n")
}

pub fn cmd_verify(args: &VerifyArgs) -> CommandOutcome {
    let n = args.n;
    if n == 0 {
        return CommandOutcome::usage("--n must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let base = CommandOutcome::ok()
        .with("check", format!("{:?}", args.check).to_lowercase())
        .with("n", n);
    match args.check {
        VerifyCheck::Bijection => {
            let exhaustive = n <= 3;
            let cases: Box<dyn Iterator<Item = PiMatrix>> = if exhaustive {
                Box::new(enumerate_pi(n))
            } else {
                let samples: Vec<PiMatrix> =
                    (0..args.samples).map(|_| random_pi(n, &mut rng)).collect();
                Box::new(samples.into_iter())
            };
            let (mut total, mut passed) = (0u64, 0u64);
            let mut images = std::collections::HashSet::new();
            for p in cases {
                total += 1;
                let a = phi(&p);
                let sound = is_s_permutation(&a.to_dense()).unwrap_or(false);
                if sound && phi_inverse(&a) == p {
                    passed += 1;
                }
                if exhaustive {
                    images.insert(a);
                }
            }
            let mode = if exhaustive { "exhaustive" } else { "sampled" };
            let mut out = base
                .with("mode", mode)
                .with("cases", total)
                .with("passed", passed)
                .line(format!(
                    "bijection ({mode}): {passed}/{total} roundtrips pass"
                ));
            if passed != total {
                out = out.fail(format!("{} roundtrips failed", total - passed));
            }
            if exhaustive {
                let expected = pi_cardinality(n);
                out = out
                    .with("distinct_images", images.len())
                    .line(format!("distinct images: {} of {expected}", images.len()));
                if BigUint::from(images.len()) != expected {
                    out = out.fail("image set smaller than the domain");
                }
            }
            out
        }
        VerifyCheck::Disjointness => {
            let exhaustive = n <= 2;
            let pairs: Vec<(PiMatrix, PiMatrix)> = if exhaustive {
                let all: Vec<PiMatrix> = enumerate_pi(n).collect();
                all.iter()
                    .flat_map(|c| all.iter().map(move |d| (c.clone(), d.clone())))
                    .collect()
            } else {
                (0..args.samples)
                    .map(|_| (random_pi(n, &mut rng), random_pi(n, &mut rng)))
                    .collect()
            };
            let (mut passed, mut disjoint) = (0u64, 0u64);
            for (c, d) in &pairs {
                let left = are_disjoint_pi(c, d).expect("same order");
                let right = are_disjoint_sigma(&phi(c), &phi(d)).expect("same order");
                passed += (left == right) as u64;
                disjoint += left as u64;
            }
            let total = pairs.len() as u64;
            let mode = if exhaustive { "exhaustive" } else { "sampled" };
            let out = base
                .with("mode", mode)
                .with("cases", total)
                .with("passed", passed)
                .with("disjoint_pairs", disjoint)
                .line(format!(
                    "disjointness ({mode}): {passed}/{total} pair equivalences pass ({disjoint} disjoint pairs)"
                ));
            if passed == total {
                out
            } else {
                out.fail(format!("{} pairs disagree", total - passed))
            }
        }
        VerifyCheck::NaiveEquivalence => {
            let guard = Guard::from_force_flag(args.force);
            let mut naive = match generate_naive(n, guard) {
                Ok(g) => g,
                Err(e) => return from_error(e),
            };
            let base = forced_note(base, args.force, n, generate::NAIVE_LIMIT, || {
                naive_candidate_count(n)
            });
            let naive_set: std::collections::HashSet<_> = naive.by_ref().collect();
            let bij_set: std::collections::HashSet<_> = generate_bijective(n).collect();
            let out = base
                .with("naive_candidates", naive.candidates_examined())
                .with("naive_survivors", naive_set.len())
                .with("bijective", bij_set.len())
                .line(format!(
                    "naive: {} candidates, {} survivors; bijective: {} matrices",
                    naive.candidates_examined(),
                    naive_set.len(),
                    bij_set.len()
                ));
            if naive_set == bij_set {
                out.line(format!("sets equal ({} elements)", bij_set.len()))
            } else {
                out.fail("survivor set differs from the bijective image set")
            }
        }
        VerifyCheck::SudokuRoundtrip => {
            let guard = Guard::from_force_flag(args.force);
            let grids = match sudoku::enumerate_sudoku(n, guard) {
                Ok(g) => g,
                Err(e) => return from_error(e),
            };
            let (mut total, mut passed) = (0u64, 0u64);
            for g in grids {
                total += 1;
                let parts = sudoku::decompose(&g);
                let valid = sudoku::is_sudoku(&g.rows()).unwrap_or(false);
                if valid && sudoku::compose(&parts).as_ref() == Ok(&g) {
                    passed += 1;
                }
            }
            let out = base
                .with("cases", total)
                .with("passed", passed)
                .line(format!("sudoku roundtrip: {passed}/{total} grids pass"));
            if passed == total {
                out
            } else {
                out.fail(format!("{} grids failed the roundtrip", total - passed))
            }
        }
    }
}

pub fn cmd_bench(args: &BenchArgs) -> CommandOutcome {
    let n = args.n;
    if n == 0 {
        return CommandOutcome::usage("--n must be at least 1");
    }
    let candidates = naive_candidate_count(n);
    let survivors = pi_cardinality(n);
    let ratio = naive_overhead_ratio(n);
    let mut out = CommandOutcome::ok()
        .with("n", n)
        .with("ratio_numerator", &candidates)
        .with("ratio_denominator", &survivors)
        .with("ratio_reduced", &ratio)
        .line(format!(
            "ratio (n^2)!/(n!)^(2n): {candidates}/{survivors} = {ratio}"
        ));
    if n > generate::NAIVE_LIMIT && !args.force {
        return out.line("generation skipped (n above the naive limit; ratio only)");
    }
    out = forced_note(out, args.force, n, generate::NAIVE_LIMIT, || {
        candidates.clone()
    });
    let report = match compare_generators(n, args.repetitions, Guard::from_force_flag(args.force)) {
        Ok(r) => r,
        Err(e) => return from_error(e),
    };
    out = out
        .with("repetitions", report.repetitions)
        .with("naive_candidates", report.naive_candidates)
        .with("naive_survivors", report.naive_survivors)
        .with("naive_seconds", report.naive_time.as_secs_f64())
        .with("bijective_matrices", report.bijective_count)
        .with("bijective_seconds", report.bijective_time.as_secs_f64())
        .line(format!(
            "naive:     {} candidates, {} survivors, {:.6} s",
            report.naive_candidates,
            report.naive_survivors,
            report.naive_time.as_secs_f64()
        ))
        .line(format!(
            "bijective: {} matrices, {:.6} s",
            report.bijective_count,
            report.bijective_time.as_secs_f64()
        ));
    if n == 3 && !report.bijective_faster() {
        out = out.fail("bijective generator not faster than naive at n = 3");
    }
    out
}

fn read_file(path: &Path) -> Result<String, CommandOutcome> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn in_file(path: &Path, e: Error) -> CommandOutcome {
    match e {
        Error::Parse { .. } => CommandOutcome::usage(format!("{}: {e}", path.display())),
        other => from_error(other),
    }
}

pub fn cmd_sudoku(action: &SudokuAction, stdout: &mut dyn Write) -> CommandOutcome {
    match action {
        SudokuAction::Validate { file } => {
            let text = match read_file(file) {
                Ok(t) => t,
                Err(e) => return e,
            };
            let rows = match format::parse_sdk_rows(&text) {
                Ok((_, rows)) => rows,
                Err(e) => return in_file(file, e),
            };
            match sudoku::validate(&rows) {
                Ok(()) => CommandOutcome::ok().with("valid", true).line("valid"),
                Err(e @ Error::SudokuViolation { .. }) => CommandOutcome::ok()
                    .with("valid", false)
                    .fail(format!("invalid: {e}")),
                Err(e) => from_error(e),
            }
        }
        SudokuAction::Decompose { file, out } => {
            let text = match read_file(file) {
                Ok(t) => t,
                Err(e) => return e,
            };
            let grid = match format::parse_sdk(&text) {
                Ok(g) => g,
                Err(e) => return in_file(file, e),
            };
            let parts = sudoku::decompose(&grid);
            let n = grid.n();
            match out {
                Some(dir) => {
                    if let Err(e) = fs::create_dir_all(dir) {
                        return io_error(dir, e);
                    }
                    let mut outcome = CommandOutcome::ok().with("parts", parts.len());
                    for (v, a) in parts.iter().enumerate() {
                        let path = dir.join(format!("A{}.spm", v + 1));
                        let text =
                            format::write_spm(n, std::slice::from_ref(a)).expect("same order");
                        if let Err(e) = fs::write(&path, text) {
                            return io_error(&path, e);
                        }
                        outcome = outcome.line(path.display().to_string());
                    }
                    outcome
                }
                None => {
                    let text = format::write_spm(n, &parts).expect("same order");
                    if let Err(e) = stdout.write_all(text.as_bytes()) {
                        return CommandOutcome::usage(format!("standard output: {e}"));
                    }
                    CommandOutcome::ok()
                        .with("parts", parts.len())
                        .note(format!("{} parts written", parts.len()))
                }
            }
        }
        SudokuAction::Compose { parts, out } => {
            let mut all = Vec::new();
            for path in parts {
                let text = match read_file(path) {
                    Ok(t) => t,
                    Err(e) => return e,
                };
                match format::parse_spm(&text) {
                    Ok(ms) => all.extend(ms),
                    Err(e) => return in_file(path, e),
                }
            }
            let grid = match sudoku::compose(&all) {
                Ok(g) => g,
                Err(e) => return from_error(e),
            };
            write_grid(&grid, out, stdout)
        }
        SudokuAction::Enumerate {
            n,
            count_only,
            limit,
            out,
            force,
        } => {
            if *n == 0 {
                return CommandOutcome::usage("--n must be at least 1");
            }
            let grids = match sudoku::enumerate_sudoku(*n, Guard::from_force_flag(*force)) {
                Ok(g) => g,
                Err(e) => return from_error(e),
            };
            let outcome = forced_note(
                CommandOutcome::ok(),
                *force,
                *n,
                sudoku::SUDOKU_ENUMERATION_LIMIT,
                || sudoku::sudoku_search_estimate(*n),
            );
            let limit = limit.unwrap_or(u64::MAX);
            let mut count = 0u64;
            if *count_only {
                for _ in grids {
                    if count == limit {
                        break;
                    }
                    count += 1;
                }
                return outcome.with("grids", count).line(count.to_string());
            }
            let mut w = match open_destination(out, stdout) {
                Ok(w) => w,
                Err(e) => return e,
            };
            for g in grids {
                if count == limit {
                    break;
                }
                if let Err(e) = write_or_usage(w.as_mut(), format::write_sdk(&g).as_bytes(), out) {
                    return e;
                }
                count += 1;
            }
            if let Err(e) = w.flush() {
                return CommandOutcome::usage(format!("flush failed: {e}"));
            }
            drop(w);
            let outcome = outcome.with("grids", count);
            if out.is_some() {
                outcome.line(format!("grids: {count}"))
            } else {
                outcome.note(format!("grids: {count}"))
            }
        }
    }
}

fn write_grid(
    grid: &SudokuMatrix,
    out: &Option<PathBuf>,
    stdout: &mut dyn Write,
) -> CommandOutcome {
    let text = format::write_sdk(grid);
    match out {
        Some(path) => match fs::write(path, text) {
            Ok(()) => CommandOutcome::ok()
                .with("n", grid.n())
                .line(format!("wrote {}", path.display())),
            Err(e) => io_error(path, e),
        },
        None => match stdout.write_all(text.as_bytes()) {
            Ok(()) => CommandOutcome::ok().with("n", grid.n()),
            Err(e) => CommandOutcome::usage(format!("standard output: {e}")),
        },
    }
}
