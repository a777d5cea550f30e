//! Command-line front end: `lpacket analyze <file>`.
//!
//! Exit codes: 0 when every check passes, 2 when some check fails, 1 on input errors.

pub mod file;
pub mod report;
pub mod text;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use file::{parse, ParameterFile, ParseError};
pub use report::{run, Report, RunError, RunOptions};
pub use text::{render_machine, render_text};

use crate::lifting::Locality;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "lpacket", version, about = "Component groups, packet lifting and Clifford checks over exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full pipeline on a parameter file (`-` reads stdin).
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, conflicts_with = "archimedean")]
        nonarchimedean: bool,
        #[arg(long)]
        archimedean: bool,
        /// Require a realization for every parameter.
        #[arg(long)]
        oracle: bool,
        /// Reserved; always rejected.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print a parameter file in canonical machine form.
    Normalize { file: PathBuf },
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Runs a parsed command line; returns stdout, stderr and the exit code.
pub fn execute(cli: &Cli) -> (String, String, i32) {
    match &cli.command {
        Command::Analyze { file, format, archimedean, oracle, seed, .. } => {
            if seed.is_some() {
                return (String::new(), "error: --seed is reserved; exact mode uses no randomness\n".into(), EXIT_INPUT);
            }
            let text = match read_input(file) {
                Ok(t) => t,
                Err(e) => return (String::new(), format!("error: {e}\n"), EXIT_INPUT),
            };
            let parsed = match parse(&text) {
                Ok(p) => p,
                Err(e) => return (String::new(), format!("error: {}: {e}\n", file.display()), EXIT_INPUT),
            };
            let opts = RunOptions {
                locality: if *archimedean { Locality::Archimedean } else { Locality::Nonarchimedean },
                require_oracle: *oracle,
            };
            let report = match run(&parsed, &opts) {
                Ok(r) => r,
                Err(e) => return (String::new(), format!("error: {e}\n"), EXIT_INPUT),
            };
            let out = match format {
                Format::Text => render_text(&report),
                Format::Machine => render_machine(&report),
            };
            let failures = report.failures();
            if failures.is_empty() {
                (out, String::new(), EXIT_OK)
            } else {
                let err: String = failures.iter().map(|(id, c)| format!("check failed: {id}: {}: {}\n", c.name, c.detail)).collect();
                (out, err, EXIT_CHECK)
            }
        }
        Command::Normalize { file } => {
            let text = match read_input(file) {
                Ok(t) => t,
                Err(e) => return (String::new(), format!("error: {e}\n"), EXIT_INPUT),
            };
            match parse(&text) {
                Ok(p) => (p.to_canonical() + "\n", String::new(), EXIT_OK),
                Err(e) => (String::new(), format!("error: {}: {e}\n", file.display()), EXIT_INPUT),
            }
        }
    }
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let (out, err, code) = execute(&cli);
    print!("{out}");
    eprint!("{err}");
    code
}
