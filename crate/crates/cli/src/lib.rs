//! Command-line front end: prints sequences, words, matrices and series,
//! and runs the verification suites.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on a usage
//! error, 3 when a size guard trips or a computation fails.

mod render;
mod report;
mod suites;

pub use report::{RunReport, SuiteResult};
pub use suites::{
    random_eps, verify, Suite, VerifyArgs, ALL_SUITES, DEFAULT_ORDER, DEFAULT_SEED, DEFAULT_SIZE,
};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use paperfold::Error;
use render::Format;
use std::io::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "paperfold", version, about = "Paperfolding sequences, Hankel determinants and continued fractions")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first terms of a sign sequence.
    Seq {
        #[arg(long, value_enum)]
        kind: SeqArg,
        #[arg(long)]
        count: usize,
    },
    /// Print a folding word, or one letter of the infinite word.
    Word(WordArgs),
    /// Print a lower triangular matrix.
    Matrix {
        #[arg(long, value_enum)]
        kind: MatrixArg,
        #[arg(long)]
        size: usize,
    },
    /// Print a Hankel matrix and its LU decomposition.
    Hankel {
        #[arg(long, value_enum)]
        source: HankelArg,
        #[arg(long)]
        size: usize,
    },
    /// Print the limit of one of the example continued fractions.
    Cf {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        example: u32,
        #[arg(long)]
        order: usize,
    },
    /// Print the Jacobi fraction coefficients of `mu`.
    Jacobi {
        #[arg(long)]
        depth: usize,
    },
    /// Print the Hankel determinants of `mu`.
    Dets {
        #[arg(long)]
        max: usize,
    },
    /// Check a sequence against the determinant conditions, or search all
    /// sequences of a given length.
    Unique(UniqueArgs),
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Let conjecture suites decide the exit code.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct WordArgs {
    #[arg(long)]
    pub level: Option<u32>,
    #[arg(long)]
    pub index: Option<u64>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct UniqueArgs {
    /// Comma separated entries in {-1, 0, 1}.
    #[arg(long, allow_hyphen_values = true)]
    pub check: Option<String>,
    #[arg(long)]
    pub search: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqArg {
    S,
    Stilde,
    Ttilde,
    Mu,
    D,
    B0,
    Example1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixArg {
    #[value(name = "L")]
    L,
    #[value(name = "M")]
    M,
    #[value(name = "Ltilde")]
    Ltilde,
    #[value(name = "Mtilde")]
    Mtilde,
    #[value(name = "Ltilde0")]
    Ltilde0,
    #[value(name = "Mtilde0")]
    Mtilde0,
    #[value(name = "LZ")]
    LZ,
    #[value(name = "MZ")]
    MZ,
    #[value(name = "LtildeZ")]
    LtildeZ,
    #[value(name = "MtildeZ")]
    MtildeZ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HankelArg {
    Mu,
    MuShift,
    Catalan,
    CatalanShift,
}

/// What a command produced: text for standard output and whether it
/// counts as a failed check.
pub(crate) struct Outcome {
    pub text: String,
    pub failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, failed: false }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) => EXIT_USAGE,
        _ => EXIT_ERROR,
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing to `out` and `err`. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let mut text = e.render().to_string();
            if code == EXIT_USAGE && !text.contains("Usage:") {
                text.push_str(&format!("\n{}\n", Cli::command().render_usage()));
            }
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if out.write_all(outcome.text.as_bytes()).is_err() {
                return EXIT_ERROR;
            }
            if outcome.failed {
                EXIT_FAIL
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli) -> paperfold::Result<Outcome> {
    let f = cli.format;
    match &cli.command {
        Command::Seq { kind, count } => render::seq(f, *kind, *count).map(Outcome::ok),
        Command::Word(w) => match (w.level, w.index) {
            (Some(k), _) => render::word(f, k).map(Outcome::ok),
            (_, Some(n)) => render::letter(f, n).map(Outcome::ok),
            _ => unreachable!("clap enforces one of --level, --index"),
        },
        Command::Matrix { kind, size } => render::matrix(f, *kind, *size).map(Outcome::ok),
        Command::Hankel { source, size } => render::hankel(f, *source, *size).map(Outcome::ok),
        Command::Cf { example, order } => render::cf(f, *example, *order).map(Outcome::ok),
        Command::Jacobi { depth } => render::jacobi(f, *depth).map(Outcome::ok),
        Command::Dets { max } => render::dets(f, *max).map(Outcome::ok),
        Command::Unique(u) => match (&u.check, u.search) {
            (Some(list), _) => render::unique_check(f, list),
            (_, Some(len)) => render::unique_search(f, len).map(Outcome::ok),
            _ => unreachable!("clap enforces one of --check, --search"),
        },
        Command::Verify {
            suite,
            size,
            order,
            seed,
            strict,
        } => {
            let report = verify(VerifyArgs {
                suite: *suite,
                size: *size,
                order: *order,
                seed: *seed,
                strict: *strict,
            })?;
            Ok(Outcome {
                failed: !report.pass,
                text: render::run_report(f, &report),
            })
        }
    }
}
