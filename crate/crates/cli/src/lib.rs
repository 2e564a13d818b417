//! `dimer-lab`: command-line front end over the dimer crates.
//!
//! Every command builds a [`Report`]; text mode prints its human-readable
//! rendering, `--json` the structured form with exact rationals as strings.
//! Exit codes: 0 success, 1 validation failure (with witness), 2 usage error.

pub mod acceptance;
mod commands;
mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use dimer_core::{corpus, parse_dimer, parse_rep, parse_weights, Dimer, Q};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "dimer-lab", version, about = "Exact computations on dimer models")]
pub struct Cli {
    /// Print the structured JSON report instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Reference matching, 1-based in enumeration order
    #[arg(long, global = true, value_name = "INDEX")]
    pub seed_matching: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// A dimer argument is a DTF file, `-` for stdin, or a bundled corpus name.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and report surface invariants
    Validate { dimer: String },
    /// Print the mirror dimer in normal form
    Mirror { dimer: String },
    /// List perfect matchings with their lattice points
    Matchings { dimer: String },
    /// Matching polygon: corners, multiplicities, counts
    Polygon {
        dimer: String,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Zigzag consistency verdict with failure witnesses
    Consistent { dimer: String },
    /// Canonical form and Jacobi membership of a word, e.g. `x y z^-1`
    Path {
        dimer: String,
        #[arg(required = true, allow_hyphen_values = true)]
        word: Vec<String>,
    },
    /// Angle quiver and relations of the Gtl algebra
    Gtl { dimer: String },
    /// Matrix factorizations
    Mf {
        #[command(subcommand)]
        kind: MfCommand,
    },
    /// Tropical polynomial, subdivision, curve and spider graph of a weight
    Tropical {
        dimer: String,
        #[arg(long, value_name = "FILE")]
        weights: PathBuf,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Stable matchings of a weight
    Stable {
        dimer: String,
        #[arg(long, value_name = "FILE")]
        weights: PathBuf,
    },
    /// Reduce at a representation (`--rep`) or at a spider node (`--node --weights`)
    Reduce {
        dimer: String,
        #[arg(long, value_name = "FILE", conflicts_with = "node")]
        rep: Option<PathBuf>,
        #[arg(long, value_name = "K", requires = "weights")]
        node: Option<usize>,
        #[arg(long, value_name = "FILE")]
        weights: Option<PathBuf>,
    },
    /// Strip complex of the Strebel differential on the mirror
    Strebel {
        dimer: String,
        #[arg(long, value_name = "FILE")]
        weights: PathBuf,
        /// Strip heights as `weight <arrow> <value>` lines; 1 for every arrow by default
        #[arg(long, value_name = "FILE")]
        widths: Option<PathBuf>,
    },
    /// Run the acceptance suite over the bundled dimers
    Corpus,
}

#[derive(Debug, Subcommand)]
pub enum MfCommand {
    /// Factorization of a single arrow
    Arrow { dimer: String, arrow: String },
    /// Band factorization with trivial local system; entries alternate arrow and face id
    Band {
        dimer: String,
        #[arg(required = true)]
        entries: Vec<String>,
    },
    /// Bands of a toric representation
    Rep {
        dimer: String,
        #[arg(long, value_name = "FILE")]
        rep: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Invalid(_) => 1,
        }
    }
}

pub(crate) fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

/// Structured result of one command.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    /// `(name, sha256)` of every input read
    pub inputs: Vec<(String, String)>,
    pub results: Value,
    pub warnings: Vec<String>,
    pub text: String,
    /// validation verdict; a failed report exits with 1
    pub ok: bool,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs.iter().map(|(n, h)| json!({"name": n, "sha256": h})).collect::<Vec<_>>(),
            "results": self.results,
            "warnings": self.warnings,
            "ok": self.ok,
        })
    }
}

/// Input reader shared by the commands; records a hash of everything read.
pub(crate) struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    pub seen: Vec<(String, String)>,
}

impl Inputs<'_> {
    fn read(&mut self, name: &str) -> Result<(String, String), CliError> {
        let (label, text) = if name == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
            ("-".to_string(), s)
        } else if Path::new(name).exists() {
            let s = fs::read_to_string(name).map_err(|e| CliError::Usage(format!("{name}: {e}")))?;
            (name.to_string(), s)
        } else if let Some(s) = corpus::source(name) {
            (format!("corpus:{name}"), s.to_string())
        } else {
            return Err(CliError::Usage(format!("{name}: no such file or bundled dimer")));
        };
        self.seen.push((label.clone(), format!("{:x}", Sha256::digest(text.as_bytes()))));
        Ok((label, text))
    }

    pub fn dimer(&mut self, name: &str) -> Result<Dimer, CliError> {
        let (label, text) = self.read(name)?;
        parse_dimer(&text).map_err(|e| CliError::Invalid(format!("{label}: {e}")))
    }

    pub fn weights(&mut self, path: &Path, d: &Dimer) -> Result<Vec<Q>, CliError> {
        let (label, text) = self.read(&path.to_string_lossy())?;
        parse_weights(&text, d.arrow_count()).map_err(|e| CliError::Invalid(format!("{label}: {e}")))
    }

    pub fn rep(&mut self, path: &Path, d: &Dimer) -> Result<Vec<Q>, CliError> {
        let (label, text) = self.read(&path.to_string_lossy())?;
        parse_rep(&text, d.arrow_count()).map_err(|e| CliError::Invalid(format!("{label}: {e}")))
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut inputs = Inputs { stdin, seen: Vec::new() };
    match commands::execute(&cli, &mut inputs) {
        Ok(mut report) => {
            report.inputs = inputs.seen;
            let printed = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report.to_json()).expect("json"))
            } else {
                write!(out, "{}", report.text)
            };
            if printed.is_err() {
                return 2;
            }
            for w in &report.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            if report.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}
