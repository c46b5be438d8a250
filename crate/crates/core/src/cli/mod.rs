//! The `silting` command line: argument parsing, the commands, and exit
//! codes. Every command produces one deterministic document, JSON except
//! for `fan-svg`.

mod commands;
mod svg;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::AlgebraError;
use crate::complexes::ComplexError;
use crate::endo::EndoError;
use crate::equiv::EquivError;
use crate::silting::{Direction, SiltingError};

pub use commands::execute;
pub use svg::render_fan_svg;

#[derive(Parser, Debug, Clone, PartialEq, Eq)]
#[command(
    name = "silting",
    version,
    about = "Two-term silting theory over the algebras Λ^{p,q}"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Dimension, basis, Cartan matrix and (co)standard modules of Λ^{p,q}.
    Algebra { p: usize, q: usize },
    /// Flags, summands, g-vectors and Hom table of a complex.
    Check { file: PathBuf },
    /// Mutates a basic two-term silting complex at one summand.
    Mutate {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        summand: usize,
        #[arg(long, value_enum, default_value_t = Dir::Plus)]
        dir: Dir,
    },
    /// Mutation walk from Λ and Λ[1], written as fan.json.
    Walk {
        p: usize,
        q: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Draws a fan.json as SVG.
    FanSvg { file: PathBuf },
    /// Quiver presentation of the endomorphism algebra of a complex.
    Endo { file: PathBuf },
    /// Moves a tilting complex to a two-term one with powers of ν.
    Reduce {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_steps: usize,
    },
    /// Walk against the closed-form lists, and sampling in the gray region.
    Classify {
        p: usize,
        q: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Largest `a + b` of the sampled shapes.
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Plus,
    Minus,
}

impl From<Dir> for Direction {
    fn from(d: Dir) -> Direction {
        match d {
            Dir::Plus => Direction::Plus,
            Dir::Minus => Direction::Minus,
        }
    }
}

/// Exit status classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Failure = 1,
    InvalidInput = 2,
    Violation = 3,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{code}: {message}")]
pub struct CliError {
    pub status: Status,
    /// Stable machine-readable name, e.g. `not_a_complex`.
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(status: Status, code: &'static str, message: impl Into<String>) -> CliError {
        CliError {
            status,
            code,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status as i32
    }
}

/// A finished command. `violation` is set when the document records a
/// failed structural check; the document is still written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub document: String,
    pub violation: Option<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.violation.is_some() {
            Status::Violation as i32
        } else {
            Status::Ok as i32
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> CliError {
        let code = match e {
            ComplexError::Parse(_) => "malformed_json",
            ComplexError::NotAComplex(_) => "not_a_complex",
            ComplexError::Shape(_) => "block_shape",
            ComplexError::Misplaced(_) => "misplaced_entry",
            ComplexError::AlgebraMismatch => "algebra_mismatch",
            ComplexError::NotTwoTerm(..) => "not_two_term",
            ComplexError::NotAChainMap | ComplexError::ZeroComplex => "invalid_complex",
        };
        CliError::new(Status::InvalidInput, code, e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> CliError {
        CliError::new(Status::InvalidInput, "invalid_algebra", e.to_string())
    }
}

impl From<SiltingError> for CliError {
    fn from(e: SiltingError) -> CliError {
        match e {
            SiltingError::Overlap(..) => {
                CliError::new(Status::Violation, "fan_overlap", e.to_string())
            }
            SiltingError::Sampling(_) => {
                CliError::new(Status::Violation, "sampling", e.to_string())
            }
            SiltingError::NotSilting => {
                CliError::new(Status::InvalidInput, "not_silting", e.to_string())
            }
            SiltingError::NotTwoTerm { .. } => {
                CliError::new(Status::InvalidInput, "not_two_term", e.to_string())
            }
            _ => CliError::new(Status::InvalidInput, "invalid_input", e.to_string()),
        }
    }
}

impl From<EndoError> for CliError {
    fn from(e: EndoError) -> CliError {
        match e {
            EndoError::Complex(c) => c.into(),
            EndoError::Silting(s) => s.into(),
            EndoError::Algebra(a) => a.into(),
            _ => CliError::new(Status::InvalidInput, "invalid_input", e.to_string()),
        }
    }
}

impl From<EquivError> for CliError {
    fn from(e: EquivError) -> CliError {
        match e {
            EquivError::Complex(c) => c.into(),
            EquivError::Silting(s) => s.into(),
            EquivError::Algebra(a) => a.into(),
            EquivError::NotTilting => {
                CliError::new(Status::InvalidInput, "not_tilting", e.to_string())
            }
            EquivError::MaxSteps { .. } => {
                CliError::new(Status::Failure, "max_steps", e.to_string())
            }
            EquivError::NoHomotopy { .. } | EquivError::Recipe(_) | EquivError::Data(_) => {
                CliError::new(Status::Violation, "functor", e.to_string())
            }
            EquivError::Automorphism(_) => {
                CliError::new(Status::InvalidInput, "automorphism", e.to_string())
            }
        }
    }
}

/// Parses, executes and writes the result; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                Status::InvalidInput as i32
            } else {
                0
            };
        }
    };
    match execute(&cfg.command).and_then(|o| write(&cfg, &o).map(|_| o)) {
        Ok(o) => {
            if let Some(v) = &o.violation {
                eprintln!("error[violation]: {v}");
            }
            o.exit_code()
        }
        Err(e) => {
            eprintln!("error[{}]: {}", e.code, e.message);
            e.exit_code()
        }
    }
}

fn write(cfg: &RunConfig, o: &Outcome) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, &o.document)
            .map_err(|e| CliError::new(Status::Failure, "io", format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{}", o.document).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(CliError::new(Status::Failure, "io", e.to_string()))
                }
                _ => Ok(()),
            }
        }
    }
}
