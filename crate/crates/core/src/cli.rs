//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid arguments or constraints, 2 file
//! errors, 3 a computation refused for exceeding its budget.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::augment::{generate, EngineError, RunContext, RunStats};
use crate::canon::Mode;
use crate::code::CodeError;
use crate::constraints::ConstraintSet;
use crate::gf::{Field, Form};
use crate::io::{format_codes, read_codes, write_codes, FormatError, Header};
use crate::oracle::{classify_exhaustive, equivalent_bruteforce, OracleError};
use crate::symmetry::SymmetryError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_IO: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "codeclass", version, about = "Classify linear codes over GF(2), GF(3) and GF(4) up to equivalence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate one code per equivalence class.
    Classify(ClassifyArgs),
    /// Brute-force checks for tiny parameters.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Count classes by walking every generator matrix.
    Classify(TargetArgs),
    /// Decide whether the first codes of two files are equivalent.
    Equiv { first: PathBuf, second: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Column,
    Row,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum SoArg {
    None,
    Euclidean,
    Hermitian,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum FormatArg {
    Gen,
    Count,
}

#[derive(Debug, Args)]
struct TargetArgs {
    /// Field order: 2, 3 or 4.
    #[arg(long)]
    q: u32,
    /// Code length.
    #[arg(long)]
    n: usize,
    /// Dimension.
    #[arg(long)]
    k: usize,
    /// Minimum distance at least this.
    #[arg(long, default_value_t = 1)]
    dmin: usize,
    /// Dual distance at least this.
    #[arg(long = "dual-min", default_value_t = 1)]
    dual_min: usize,
    /// Self-orthogonality requirement.
    #[arg(long, value_enum, default_value_t = SoArg::None)]
    so: SoArg,
    /// Every weight divisible by this.
    #[arg(long)]
    divisible: Option<u32>,
}

impl TargetArgs {
    fn constraints(&self) -> ConstraintSet {
        ConstraintSet {
            d: self.dmin,
            d_dual: self.dual_min,
            so: match self.so {
                SoArg::None => None,
                SoArg::Euclidean => Some(Form::Euclidean),
                SoArg::Hermitian => Some(Form::Hermitian),
            },
            divisor: self.divisible,
        }
    }
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    target: TargetArgs,
    /// Generation mode; defaults to row mode for self-orthogonal or
    /// divisible runs with d >= 2, column mode otherwise.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Start from the codes in this file instead of the trivial code.
    #[arg(long = "seed-file")]
    seed_file: Option<PathBuf>,
    /// Write the codes to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Gen)]
    format: FormatArg,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Print run statistics.
    #[arg(long)]
    stats: bool,
}

fn code_exit(e: &CodeError) -> u8 {
    match e {
        CodeError::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_INVALID,
    }
}

fn engine_exit(e: &EngineError) -> u8 {
    match e {
        EngineError::Code(c) => code_exit(c),
        EngineError::Symmetry(SymmetryError::Budget { .. }) => EXIT_BUDGET,
        EngineError::Symmetry(SymmetryError::Code(c)) => code_exit(c),
        _ => EXIT_INVALID,
    }
}

fn format_exit(e: &FormatError) -> u8 {
    match e {
        FormatError::Io { .. } => EXIT_IO,
        FormatError::Parse { .. } => EXIT_INVALID,
    }
}

fn oracle_exit(e: &OracleError) -> u8 {
    match e {
        OracleError::Budget { .. } => EXIT_BUDGET,
        OracleError::Code(c) => code_exit(c),
        OracleError::Mismatch => EXIT_INVALID,
    }
}

fn print_stats(out: &mut dyn Write, stats: &RunStats) -> std::io::Result<()> {
    writeln!(out, "nodes expanded: {}", stats.nodes_expanded)?;
    writeln!(out, "children generated: {}", stats.children_generated)?;
    writeln!(out, "parent test passes: {}", stats.parent_test_passes)?;
    writeln!(out, "parent test failures: {}", stats.parent_test_failures)?;
    writeln!(out, "canonical forms: {}", stats.canonical_forms)?;
    for (level, (all, complete)) in stats.per_level.iter().zip(&stats.level_complete).enumerate() {
        writeln!(out, "level {level}: {all} codes, {complete} meeting all final constraints")?;
    }
    Ok(())
}

fn classify(args: ClassifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, std::io::Error> {
    let t = &args.target;
    let field = match Field::new(t.q) {
        Ok(f) => f,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_INVALID);
        }
    };
    let set = t.constraints();
    let mode = match args.mode {
        Some(ModeArg::Column) => Mode::Column,
        Some(ModeArg::Row) => Mode::Row,
        None if (set.so.is_some() || set.divisor.is_some()) && set.d >= 2 => Mode::Row,
        None => Mode::Column,
    };
    let mut ctx = RunContext::new(field, t.n, t.k, mode, set);
    ctx.jobs = args.jobs.max(1);
    if let Some(path) = &args.seed_file {
        match read_codes(path) {
            Ok((_, seeds)) => ctx.seeds = seeds,
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(format_exit(&e));
            }
        }
    }
    let output = match generate(&ctx) {
        Ok(o) => o,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(engine_exit(&e));
        }
    };
    if args.format == FormatArg::Gen {
        let header = Header { q: t.q, n: t.n, k: t.k };
        match &args.out {
            Some(path) => {
                if let Err(e) = write_codes(path, header, &output.codes) {
                    writeln!(err, "error: {e}")?;
                    return Ok(format_exit(&e));
                }
            }
            None => write!(out, "{}", format_codes(header, &output.codes))?,
        }
    }
    if args.stats {
        print_stats(out, &output.stats)?;
    }
    writeln!(out, "classified {} codes", output.codes.len())?;
    Ok(EXIT_OK)
}

fn oracle(cmd: OracleCommand, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, std::io::Error> {
    match cmd {
        OracleCommand::Classify(t) => {
            let field = match Field::new(t.q) {
                Ok(f) => f,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(EXIT_INVALID);
                }
            };
            if t.k > t.n || t.n > crate::packed::MAX_LEN {
                writeln!(err, "error: need k <= n <= {}", crate::packed::MAX_LEN)?;
                return Ok(EXIT_INVALID);
            }
            match classify_exhaustive(field, t.n, t.k, &t.constraints()) {
                Ok(r) => {
                    writeln!(out, "classified {} codes", r.count)?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    Ok(oracle_exit(&e))
                }
            }
        }
        OracleCommand::Equiv { first, second } => {
            let mut codes = Vec::new();
            for path in [&first, &second] {
                match read_codes(path) {
                    Ok((_, c)) if !c.is_empty() => codes.push(c.into_iter().next().unwrap()),
                    Ok(_) => {
                        writeln!(err, "error: {} contains no code", path.display())?;
                        return Ok(EXIT_INVALID);
                    }
                    Err(e) => {
                        writeln!(err, "error: {e}")?;
                        return Ok(format_exit(&e));
                    }
                }
            }
            match equivalent_bruteforce(&codes[0], &codes[1]) {
                Ok(Some(_)) => writeln!(out, "equivalent")?,
                Ok(None) => writeln!(out, "not equivalent")?,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(oracle_exit(&e));
                }
            }
            Ok(EXIT_OK)
        }
    }
}

/// Run the command line `args` (including the program name) and return the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Classify(a) => classify(a, out, err),
        Command::Oracle(c) => oracle(c, out, err),
    };
    result.unwrap_or(EXIT_IO)
}
