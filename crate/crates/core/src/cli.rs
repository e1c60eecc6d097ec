//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on input errors (unreadable file, syntax,
//! invalid presentation, unsupported request), 2 when `--require-certified`
//! is given and the answer is only valid up to the degree bound.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::parse::{parse_field_descriptor, parse_presentation_with_field};
use crate::report::{analyse, Analysis, ReportError};

#[derive(Debug, Parser)]
#[command(name = "anick", version, about = "Gröbner bases, Anick resolutions and Koszulness checks for graded algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Presentation file; standard input when omitted.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Internal degree bound D.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_deg: usize,
    /// Homological level bound (defaults to D).
    #[arg(long, global = true)]
    pub max_level: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Ground field, `q` or `fp:<p>`; overrides the file header.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Exit with status 2 unless the answer is certified.
    #[arg(long, global = true)]
    pub require_certified: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Truncated Gröbner basis and its certificate.
    Gb,
    /// Anick chains by level.
    Chains,
    /// Differentials of the Anick resolution.
    Resolution,
    /// Bigraded Betti table.
    Betti,
    /// Koszulness verdict through the degree bound.
    Koszul,
    /// Quadratic dual presentation.
    Dual,
    /// Hilbert series prefix.
    Hilbert,
    /// Global dimension report.
    Gldim,
    /// Chain-generation graph.
    Graph,
}

impl Command {
    fn analysis(self) -> Analysis {
        match self {
            Command::Gb => Analysis::Gb,
            Command::Chains => Analysis::Chains,
            Command::Resolution => Analysis::Resolution,
            Command::Betti => Analysis::Betti,
            Command::Koszul => Analysis::Koszul,
            Command::Dual => Analysis::Dual,
            Command::Hilbert => Analysis::Hilbert,
            Command::Gldim => Analysis::Gldim,
            Command::Graph => Analysis::Graph,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

/// Output of one invocation: what to print and the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn failure(message: impl std::fmt::Display) -> Outcome {
    Outcome { stdout: String::new(), stderr: format!("error: {message}\n"), code: 1 }
}

/// Runs a parsed command line against the given presentation text.
pub fn run(cli: &Cli, text: &str) -> Outcome {
    let field = match cli.field.as_deref().map(parse_field_descriptor).transpose() {
        Ok(f) => f,
        Err(e) => return failure(format!("--field: {e}")),
    };
    let p = match parse_presentation_with_field(text, field) {
        Ok(p) => p,
        Err(e) => return failure(e),
    };
    let max_level = cli.max_level.unwrap_or(cli.max_deg);
    let analysis = cli.command.analysis();
    let start = Instant::now();
    let rendered = match analyse(analysis, &p, cli.max_deg, max_level) {
        Ok(r) => r,
        Err(e) => return failure(e),
    };
    let mut report = rendered.report;
    report.timing_ms = Some(start.elapsed().as_millis() as u64);
    let stdout = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => rendered.text,
        Format::Dot => match rendered.dot {
            Some(d) => d,
            None => return failure(ReportError::UnsupportedFormat("dot", analysis.name())),
        },
    };
    if cli.require_certified && !report.certified {
        let stderr = format!("uncertified: the `{}` answer is only valid up to degree {}\n", analysis.name(), cli.max_deg);
        return Outcome { stdout, stderr, code: 2 };
    }
    Outcome { stdout, stderr: String::new(), code: 0 }
}

/// Parses process arguments, reads the input and runs; returns the exit code.
pub fn main_with_args(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let text = match &cli.input {
        Some(path) => fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| format!("stdin: {e}"))
        }
    };
    let outcome = match text {
        Ok(t) => run(&cli, &t),
        Err(e) => failure(e),
    };
    let _ = io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = io::stderr().write_all(outcome.stderr.as_bytes());
    outcome.code
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: &str = "vars: x > y > z\nrelations:\n x^2 + y*x\n x*z\n z*y\n";

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("anick").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn gb_of_a_is_uncertified() {
        let out = run(&cli(&["gb", "--max-deg", "5", "--require-certified"]), A);
        assert_eq!(out.code, 2);
        assert!(out.stdout.contains("complete-up-to-degree 5"));
    }

    #[test]
    fn syntax_errors_exit_with_one() {
        let out = run(&cli(&["gb"]), "vars: x > x\n");
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("duplicate"));
    }

    #[test]
    fn dot_only_for_graphs() {
        assert_eq!(run(&cli(&["betti", "--format", "dot"]), A).code, 1);
        let out = run(&cli(&["graph", "--format", "dot", "--max-deg", "4"]), A);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("digraph"));
    }

    #[test]
    fn field_override() {
        let out = run(&cli(&["hilbert", "--field", "fp:7", "--format", "json", "--max-deg", "4"]), A);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("\"field\": \"Fp 7\""));
        assert_eq!(run(&cli(&["hilbert", "--field", "fp:8"]), A).code, 1);
    }
}
