//! Command-line surface. Each command returns a [`CommandResult`] so the
//! binary stays a thin printer and tests can drive commands in-process.
//!
//! Exit codes: `0` success or pass, `1` verification failure or stuck
//! decode, `2` usage or format error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::decoder::{self, CheckCollection, Code, ReceivedWord};
use crate::error::Error;
use crate::gensets::{self, GenericSet};
use crate::gf2::BitMatrix;
use crate::verifier::{self, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        Self {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(exit_code: i32, stdout: String) -> Self {
        Self {
            exit_code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Self {
            exit_code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

impl From<Error> for CommandResult {
    fn from(e: Error) -> Self {
        Self::usage(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "gecs", version, about = "Generic erasure correcting sets over GF(2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SetKind {
    /// All vectors with first coordinate 1 and weight at most m.
    Arm,
    /// Unit vectors plus e1+ei+ej (an (r,3) set).
    Weber,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct an explicit generic set.
    Genset {
        kind: SetKind,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a candidate set against every rank-m matrix.
    Verify {
        set: PathBuf,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        fail_fast: bool,
    },
    /// Look for a generic set among uniformly random sets.
    Search {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
    },
    /// Turn a set and a parity-check matrix into a check collection.
    Checks {
        set: PathBuf,
        pcm: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the peeling decoder on a word over {0,1,?}.
    Decode { checks: PathBuf, word: String },
    /// List small stopping sets of a check collection.
    Stopping {
        checks: PathBuf,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        pcm: Option<PathBuf>,
    },
    /// Lower bound, random-selection upper bound and construction size.
    Bounds {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
    },
}

pub fn run(cli: Cli) -> CommandResult {
    match cli.command {
        Command::Genset { kind, r, m, out } => cmd_genset(kind, r, m, out.as_deref()),
        Command::Verify {
            set,
            r,
            m,
            jobs,
            fail_fast,
        } => cmd_verify(&set, r, m, jobs.unwrap_or_else(default_jobs), fail_fast),
        Command::Search {
            r,
            m,
            size,
            seed,
            restarts,
        } => cmd_search(r, m, size, seed, restarts),
        Command::Checks { set, pcm, out } => cmd_checks(&set, &pcm, out.as_deref()),
        Command::Decode { checks, word } => cmd_decode(&checks, &word),
        Command::Stopping {
            checks,
            max_size,
            pcm,
        } => cmd_stopping(&checks, max_size, pcm.as_deref()),
        Command::Bounds { r, m } => cmd_bounds(r, m),
    }
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

fn read(path: &Path) -> Result<String, CommandResult> {
    fs::read_to_string(path)
        .map_err(|e| CommandResult::usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, body: &str, stdout: &mut String) -> Result<(), CommandResult> {
    match out {
        Some(p) => fs::write(p, body)
            .map_err(|e| CommandResult::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            stdout.push_str(body);
            Ok(())
        }
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return CommandResult::from(e),
        }
    };
}

pub fn cmd_genset(kind: SetKind, r: usize, m: Option<usize>, out: Option<&Path>) -> CommandResult {
    let set = match kind {
        SetKind::Arm => {
            let Some(m) = m else {
                return CommandResult::usage("--m is required for arm");
            };
            tri!(gensets::construct_arm(r, m))
        }
        SetKind::Weber => {
            if m.is_some_and(|m| m != 3) {
                return CommandResult::usage("weber sets are (r,3) sets; --m must be 3");
            }
            tri!(gensets::construct_weber(r))
        }
    };
    let mut stdout = format!("size: {}\n", set.len());
    if let Err(e) = emit(out, &set.to_text(), &mut stdout) {
        return e;
    }
    CommandResult::ok(stdout)
}

pub fn cmd_verify(
    set_path: &Path,
    r: Option<usize>,
    m: usize,
    jobs: usize,
    fail_fast: bool,
) -> CommandResult {
    let text = match read(set_path) {
        Ok(t) => t,
        Err(e) => return e,
    };
    let set = tri!(GenericSet::parse(&text, r));
    let report = tri!(verifier::verify_generic_with(
        &set,
        set.r(),
        m,
        VerifyOptions { jobs, fail_fast }
    ));
    let code = if report.passed() { EXIT_OK } else { EXIT_FAIL };
    CommandResult::with_code(code, report.to_text())
}

pub fn cmd_search(
    r: usize,
    m: usize,
    size: Option<usize>,
    seed: u64,
    restarts: usize,
) -> CommandResult {
    let budget = tri!(verifier::required_size_bound(r, m, true));
    let n = size.unwrap_or(budget as usize);
    let outcome = tri!(verifier::random_search(r, m, n, seed, restarts));
    let mut stdout = format!("budget: {}\n", outcome.budget);
    match &outcome.found {
        Some(set) => {
            let _ = writeln!(stdout, "found: yes");
            stdout.push_str(&set.to_text());
            CommandResult::ok(stdout)
        }
        None => {
            let _ = writeln!(stdout, "found: no");
            CommandResult::with_code(EXIT_FAIL, stdout)
        }
    }
}

fn load_code(path: &Path) -> Result<Code, CommandResult> {
    let text = read(path)?;
    let pcm: BitMatrix = text.parse().map_err(CommandResult::from)?;
    Code::new(pcm).map_err(CommandResult::from)
}

fn load_checks(path: &Path) -> Result<CheckCollection, CommandResult> {
    let text = read(path)?;
    CheckCollection::parse(&text).map_err(CommandResult::from)
}

pub fn cmd_checks(set_path: &Path, pcm_path: &Path, out: Option<&Path>) -> CommandResult {
    let run = || -> Result<CommandResult, CommandResult> {
        let code = load_code(pcm_path)?;
        let set = GenericSet::parse(&read(set_path)?, Some(code.r()))?;
        let checks = decoder::generate_checks(&set, &code)?;
        let mut stdout = format!("checks: {}\n", checks.len());
        emit(out, &checks.to_text(), &mut stdout)?;
        Ok(CommandResult::ok(stdout))
    };
    run().unwrap_or_else(|e| e)
}

pub fn cmd_decode(checks_path: &Path, word: &str) -> CommandResult {
    let run = || -> Result<CommandResult, CommandResult> {
        let checks = load_checks(checks_path)?;
        let word: ReceivedWord = word.parse()?;
        let trace = decoder::peel_decode(&checks, &word)?;
        let code = if trace.decoded().is_some() {
            EXIT_OK
        } else {
            EXIT_FAIL
        };
        Ok(CommandResult::with_code(code, trace.to_string()))
    };
    run().unwrap_or_else(|e| e)
}

pub fn cmd_stopping(checks_path: &Path, max_size: usize, pcm_path: Option<&Path>) -> CommandResult {
    let run = || -> Result<CommandResult, CommandResult> {
        let checks = load_checks(checks_path)?;
        let code = pcm_path.map(load_code).transpose()?;
        let sets = decoder::enumerate_stopping_sets(&checks, max_size, code.as_ref())?;
        let mut stdout = format!("count: {}\n", sets.len());
        for s in &sets {
            let _ = writeln!(stdout, "{s}");
        }
        Ok(CommandResult::ok(stdout))
    };
    run().unwrap_or_else(|e| e)
}

pub fn cmd_bounds(r: usize, m: usize) -> CommandResult {
    let report = tri!(gensets::bound_report(r, m));
    let budget = tri!(verifier::required_size_bound(r, m, true));
    let mut stdout = String::new();
    let _ = writeln!(stdout, "lower: {}", report.lower);
    let _ = writeln!(stdout, "upper_coefficient: {:.6}", report.upper_coefficient);
    let _ = writeln!(stdout, "upper: {}", report.upper);
    match report.construction_size {
        Some(size) => {
            let _ = writeln!(stdout, "construction_size: {size}");
        }
        None => stdout.push_str("construction_size: n/a\n"),
    }
    let _ = writeln!(stdout, "budget: {budget}");
    CommandResult::ok(stdout)
}
