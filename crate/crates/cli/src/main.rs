//! `heq`: decide algebraicity over subgroups of PSL(2,Z) from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use heq_core::ab_word::{abelianize, decompose};
use heq_core::brute_force::enumerate_kernel;
use heq_core::pipeline::{analyze_with_cap, equation_schreier, render_text, verify, DEFAULT_INDEX_CAP};
use heq_core::{AnalysisReport, HContext, ProjMat2};

#[derive(Parser)]
#[command(name = "heq", version, about = "Equations over finitely generated subgroups of PSL(2,Z)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of a matrix in a, b and its image in C2 x C3.
    Decompose {
        /// Matrix as "[[a,b],[c,d]]".
        matrix: String,
    },
    /// Decide whether g is algebraic over H and list generators of its ideal.
    Analyze {
        #[command(flatten)]
        inputs: Inputs,
        /// Print the report as JSON.
        #[arg(long, conflicts_with = "text")]
        json: bool,
        /// Print the report as text (the default).
        #[arg(long)]
        text: bool,
        /// Also print equations with matrix coefficients.
        #[arg(long)]
        show_matrices: bool,
        #[arg(long, default_value_t = DEFAULT_INDEX_CAP)]
        index_cap: usize,
    },
    /// Re-check a JSON report; "-" reads standard input.
    Verify { report: String },
    /// List short equations satisfied by g, one JSON object per line.
    Oracle {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Print the Schreier graph of the equations sent into F.
    Schreier {
        #[command(flatten)]
        inputs: Inputs,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
        #[arg(long, default_value_t = DEFAULT_INDEX_CAP)]
        index_cap: usize,
    },
}

#[derive(Args)]
struct Inputs {
    /// h_1 ... h_s followed by g, each as "[[a,b],[c,d]]".
    #[arg(required = true, num_args = 1..)]
    matrices: Vec<String>,
}

impl Inputs {
    fn parse(&self) -> Result<(Vec<ProjMat2>, ProjMat2), String> {
        let mut ms = self.matrices.iter().map(|s| parse_matrix(s)).collect::<Result<Vec<_>, _>>()?;
        let g = ms.pop().expect("at least one matrix");
        Ok((ms, g))
    }
}

enum Failure {
    Verification(String),
    Input(String),
}

impl From<heq_core::Error> for Failure {
    fn from(e: heq_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Input(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Accepts `[[a,b],[c,d]]` or `{"m": [[a,b],[c,d]]}`; entries may be
/// integers or decimal strings.
fn parse_matrix(s: &str) -> Result<ProjMat2, String> {
    let value: serde_json::Value = serde_json::from_str(s).map_err(|e| format!("malformed matrix {s:?}: {e}"))?;
    let value = match value {
        serde_json::Value::Object(mut map) => {
            map.remove("m").ok_or_else(|| format!("malformed matrix {s:?}: missing \"m\""))?
        }
        other => other,
    };
    serde_json::from_value(value).map_err(|e| format!("bad matrix {s:?}: {e}"))
}

fn run(command: Command, out: &mut impl Write) -> Result<(), Failure> {
    match command {
        Command::Decompose { matrix } => {
            let m = parse_matrix(&matrix)?;
            let w = decompose(&m);
            let word = if w.is_empty() { "(empty)".to_string() } else { w.to_string() };
            writeln!(out, "{word} | pi={}", abelianize(&w))?;
        }
        Command::Analyze { inputs, json, text: _, show_matrices, index_cap } => {
            let (h, g) = inputs.parse()?;
            let report = analyze_with_cap(&h, &g, index_cap)?;
            if json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                write!(out, "{}", render_text(&report, show_matrices))?;
            }
        }
        Command::Verify { report } => {
            let text = if report == "-" {
                let mut buf = String::new();
                io::stdin().read_to_string(&mut buf)?;
                buf
            } else {
                fs::read_to_string(&report).map_err(|e| format!("{report}: {e}"))?
            };
            let report = AnalysisReport::from_json(&text).map_err(|e| format!("malformed report: {e}"))?;
            let result = verify(&report);
            for c in &result.checks {
                writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
            }
            if !result.passed() {
                return Err(Failure::Verification("report failed verification".to_string()));
            }
        }
        Command::Oracle { inputs, max_len } => {
            let (h, g) = inputs.parse()?;
            let result = enumerate_kernel(&HContext::new(h, g), max_len);
            for w in &result.witnesses {
                let line = serde_json::json!({ "word": w.word.to_string(), "equation": w.equation.to_string() });
                writeln!(out, "{line}")?;
            }
            eprintln!("{} witnesses up to length {max_len}", result.witnesses.len());
        }
        Command::Schreier { inputs, dot, index_cap } => {
            let (h, g) = inputs.parse()?;
            let graph = equation_schreier(&HContext::new(h, g), index_cap)?;
            if dot {
                write!(out, "{}", graph.to_dot())?;
            } else {
                let names = graph.alphabet.names();
                for (v, l, t) in graph.edges() {
                    let mark = |u: usize| if u == 0 { "*" } else { "" };
                    writeln!(out, "{v}{} --{}--> {t}{}", mark(v), names[l], mark(t))?;
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    match run(cli.command, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("heq: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("heq: {msg}");
            ExitCode::from(2)
        }
    }
}
