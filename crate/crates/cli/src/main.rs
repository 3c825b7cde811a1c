use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use cyclic_lrc::codefile::{self, CodeFile, CodeFileError};
use cyclic_lrc::constructions::{LrcCode, Registry, SchemeParams};
use cyclic_lrc::cyclic::DEFAULT_BUDGET;
use cyclic_lrc::repair::{format_symbols, parse_symbols, repair_erasure, ErasedWord};
use cyclic_lrc::sweep::{sweep, SweepOptions};
use cyclic_lrc::verify::{verify_optimal, Verdict};

/// Usage errors, malformed files and malformed symbols.
const EXIT_USAGE: u8 = 64;
const EXIT_FAILURE: u8 = 1;

/// Optimal cyclic locally repairable codes.
#[derive(Parser, Debug)]
#[command(name = "lrc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code and write its JSON description.
    Construct {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: Option<usize>,
        /// Output file; the JSON goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify distance, locality and optimality of a code file.
    Verify {
        file: PathBuf,
        /// Largest message space enumerated exhaustively.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Systematically encode a comma-separated message of length k.
    Encode {
        file: PathBuf,
        #[arg(long)]
        message: String,
    },
    /// Recover one erased symbol ("_") from its repair group.
    Repair {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Enumerate admissible parameters and construct (and verify) each.
    Sweep {
        /// Scheme name, or "all".
        #[arg(long, default_value = "all")]
        scheme: String,
        #[arg(long)]
        qmax: u64,
        #[arg(long, default_value_t = 64)]
        nmax: usize,
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the registered schemes.
    Schemes,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn usage(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_USAGE,
            error: error.into(),
        }
    }
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(error: E) -> Self {
        Failure {
            code: EXIT_FAILURE,
            error: error.into(),
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> Result<u8, Failure> {
    let registry = Registry::with_defaults();
    match cmd {
        Command::Construct { scheme, q, n, r, d, out } => {
            let params = SchemeParams { q, n, r, d };
            let code = registry.construct(&scheme, &params)?;
            let json = codefile::save(&code);
            let summary = format!("{code}\ng(x) = {}", code.code().generator());
            match out {
                Some(path) => {
                    fs::write(&path, json).with_context(|| format!("writing {}", path.display()))?;
                    outln!("{summary}");
                }
                None => {
                    eprintln!("{summary}");
                    out!("{json}");
                }
            }
            Ok(0)
        }
        Command::Verify { file, budget } => {
            let text = read(&file)?;
            let parsed = CodeFile::from_json(&text).map_err(Failure::usage)?;
            match parsed.to_code() {
                Ok(code) => {
                    let report = verify_optimal(&code, budget);
                    outln!("{}", serde_json::to_string_pretty(&report)?);
                    Ok(report.verdict.exit_code() as u8)
                }
                Err(CodeFileError::Invalid(failures)) => {
                    let report = serde_json::json!({
                        "verdict": Verdict::Refuted,
                        "invariant_failures": failures,
                    });
                    outln!("{}", serde_json::to_string_pretty(&report)?);
                    Ok(Verdict::Refuted.exit_code() as u8)
                }
                Err(e) => Err(Failure::usage(e)),
            }
        }
        Command::Encode { file, message } => {
            let code = load(&file)?;
            let msg = parse_symbols(code.field(), &message).map_err(Failure::usage)?;
            let word = code.code().encode_raw(&msg).map_err(Failure::usage)?;
            outln!("{}", format_symbols(&word));
            Ok(0)
        }
        Command::Repair { file, word } => {
            let code = load(&file)?;
            let erased = ErasedWord::parse(code.field(), &word).map_err(Failure::usage)?;
            let rep = repair_erasure(&code, &erased).map_err(Failure::usage)?;
            let read: Vec<String> = rep.read.iter().map(usize::to_string).collect();
            outln!("{}", rep.value);
            outln!("read {}", read.join(","));
            Ok(0)
        }
        Command::Sweep {
            scheme,
            qmax,
            nmax,
            verify,
            budget,
            format,
            out,
        } => {
            let which = (scheme != "all").then_some(scheme.as_str());
            let opts = SweepOptions {
                q_max: qmax,
                n_max: nmax,
                verify: verify.then_some(budget),
            };
            let rows = sweep(&registry, which, opts).map_err(Failure::usage)?;
            let mut sink: Box<dyn Write> = match &out {
                Some(path) => Box::new(fs::File::create(path).with_context(|| format!("creating {}", path.display()))?),
                None => Box::new(io::stdout().lock()),
            };
            match format {
                Format::Csv => {
                    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut sink);
                    w.write_record(["scheme", "q", "n", "k", "r", "d", "verdict", "diagnostic"])?;
                    for row in &rows {
                        w.serialize(row)?;
                    }
                    w.flush()?;
                }
                Format::Jsonl => {
                    for row in &rows {
                        writeln!(sink, "{}", serde_json::to_string(row)?)?;
                    }
                }
            }
            sink.flush()?;
            Ok(0)
        }
        Command::Schemes => {
            for s in registry.iter() {
                outln!("{:<12} {}", s.name(), s.description());
            }
            Ok(0)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::usage)
}

fn load(path: &Path) -> Result<LrcCode, Failure> {
    codefile::load(&read(path)?).map_err(Failure::usage)
}
