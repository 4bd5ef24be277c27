//! `cvdv`: run, validate and size `.hcir` circuits, and run named demos.
//!
//! Reports are pretty JSON with `"schema": 1` and 17-significant-digit
//! floats. Exit codes: 0 success, 1 parse/validation/parameter error,
//! 2 capacity error.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cvdv::engine::{run_with, RunOptions, SimResult};
use cvdv::ir::{self, Diagnostic, ResourceCount};
use cvdv::layout::DEFAULT_MEMORY_CEILING;
use cvdv::Error;
use serde::Serialize;
use serde_json::Value;

const SCHEMA: u32 = 1;
const CEILING_VAR: &str = "HCIR_MEM_CEILING_BYTES";

#[derive(Parser)]
#[command(name = "cvdv", version, about = "Hybrid qubit/qumode/rotor statevector simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, validate and simulate a circuit.
    Run {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        shots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count resources without allocating the state.
    Estimate {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report every diagnostic of a circuit.
    Validate {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named algorithm demo.
    Demo {
        /// rotor-qpe, shor, lchs, maxcut, qhd, bose-hubbard, lvc, spin-boson or ivr
        name: String,
        /// Inline JSON object or @path to a JSON file.
        #[arg(long)]
        params: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failed command: exit code plus the lines for stderr.
struct Failure {
    code: u8,
    lines: Vec<String>,
}

impl Failure {
    fn usage(msg: impl Display) -> Self {
        Failure { code: 1, lines: vec![format!("error: {msg}")] }
    }
}

fn from_core(file: &Path, err: Error) -> Failure {
    let f = file.display();
    match err {
        Error::Parse { line, col, message } => Failure { code: 1, lines: vec![format!("{f}:{line}:{col}: error: {message}")] },
        Error::Validation(diags) => Failure { code: 1, lines: diags.iter().map(|d| format!("{f}:{d}")).collect() },
        e @ Error::Capacity { .. } => Failure { code: 2, lines: vec![format!("{f}: error: {e}")] },
        e => Failure { code: 1, lines: vec![format!("{f}: error: {e}")] },
    }
}

#[derive(Serialize)]
struct RunReport<'a> {
    schema: u32,
    command: &'static str,
    file: String,
    seed: u64,
    #[serde(flatten)]
    result: &'a SimResult,
}

#[derive(Serialize)]
struct EstimateReport<'a> {
    schema: u32,
    command: &'static str,
    file: String,
    #[serde(flatten)]
    resources: &'a ResourceCount,
    ceiling_bytes: u128,
    fits: bool,
}

#[derive(Serialize)]
struct ValidateReport<'a> {
    schema: u32,
    command: &'static str,
    file: String,
    valid: bool,
    diagnostics: &'a [Diagnostic],
}

fn ceiling() -> Result<u128, Failure> {
    match std::env::var(CEILING_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::usage(format!("{CEILING_VAR} must be a non-negative integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_MEMORY_CEILING),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: String, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text + "\n").map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn warn_all(file: &Path, diags: &[Diagnostic]) {
    for d in diags {
        eprintln!("{}:{d}", file.display());
    }
}

fn execute(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Run { file, shots, seed, out } => {
            let circuit = ir::parse(&read(&file)?).map_err(|e| from_core(&file, e))?;
            warn_all(&file, &ir::validate(&circuit));
            let opts = RunOptions { shots, seed, ceiling_bytes: ceiling()? };
            let result = run_with(&circuit, &opts).map_err(|e| from_core(&file, e))?;
            let report = RunReport { schema: SCHEMA, command: "run", file: file.display().to_string(), seed, result: &result };
            emit(cvdv::json::to_string(&report), out.as_deref())
        }
        Command::Estimate { file, out } => {
            let circuit = ir::parse(&read(&file)?).map_err(|e| from_core(&file, e))?;
            let rc = ir::resource_count(&circuit);
            let ceiling_bytes = ceiling()?;
            let fits = rc.memory_bytes.is_some_and(|b| b <= ceiling_bytes);
            let report =
                EstimateReport { schema: SCHEMA, command: "estimate", file: file.display().to_string(), resources: &rc, ceiling_bytes, fits };
            emit(cvdv::json::to_string(&report), out.as_deref())
        }
        Command::Validate { file, out } => {
            let diagnostics = match ir::parse(&read(&file)?) {
                Ok(c) => ir::validate(&c),
                Err(Error::Validation(d)) => d,
                Err(e) => return Err(from_core(&file, e)),
            };
            warn_all(&file, &diagnostics);
            let valid = !diagnostics.iter().any(Diagnostic::is_error);
            let report = ValidateReport { schema: SCHEMA, command: "validate", file: file.display().to_string(), valid, diagnostics: &diagnostics };
            emit(cvdv::json::to_string(&report), out.as_deref())?;
            if valid {
                Ok(())
            } else {
                Err(Failure { code: 1, lines: vec![] })
            }
        }
        Command::Demo { name, params, seed, out } => {
            let params: Value = match params {
                None => Value::Null,
                Some(p) => {
                    let text = match p.strip_prefix('@') {
                        Some(path) => read(Path::new(path))?,
                        None => p,
                    };
                    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("--params is not valid JSON: {e}")))?
                }
            };
            let mut report = cvdv::demos::run_demo(&name, &params, seed).map_err(Failure::usage)?;
            let map = report.as_object_mut().expect("demo reports are objects");
            map.insert("schema".into(), SCHEMA.into());
            map.insert("command".into(), "demo".into());
            emit(cvdv::json::to_string(&report), out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            for l in f.lines {
                eprintln!("{l}");
            }
            ExitCode::from(f.code)
        }
    }
}
