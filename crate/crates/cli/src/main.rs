use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tricover::cover::CaseLabel;
use tricover::f3::Chart;
use tricover_cli::commands::{basis_text, h0_text, verify, Outcome, VerifyOptions, EXIT_INPUT};
use tricover_cli::repro::repro;

#[derive(Parser)]
#[command(name = "tricover", version, about = "Triple covers of the Hirzebruch surface F3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the cover described by a cover file.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Exit 1 unless the cover classifies as CASE.
        #[arg(long, value_name = "CASE", value_parser = parse_case)]
        expect: Option<CaseLabel>,
        /// Chart whose coordinates the sections are written in.
        #[arg(long, value_parser = parse_chart)]
        chart: Option<Chart>,
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        spair_budget: Option<u64>,
    },
    /// Replay a built-in dataset (M1, M2, M3, M4_PinZ, M4_PnotinZ, N) or the appendix sessions.
    Repro {
        name: String,
        #[arg(long)]
        json: bool,
    },
    /// Dimension of the sections of a·σ∞ + b·R.
    H0 {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
    },
    /// Monomial basis of the sections of a·σ∞ + b·R on V0.
    Basis {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
    },
}

fn parse_case(s: &str) -> Result<CaseLabel, String> {
    s.parse()
}

fn parse_chart(s: &str) -> Result<Chart, String> {
    match s {
        "V0" => Ok(Chart::V0),
        "V1" => Ok(Chart::V1),
        _ => Err(format!("chart must be V0 or V1, found `{}`", s)),
    }
}

fn emit(out: Outcome) -> ExitCode {
    let _ = std::io::stdout().lock().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let out = match cli.command {
        Command::Verify { file, json, expect, chart, spair_budget } => {
            let source = file.display().to_string();
            match std::fs::read_to_string(&file) {
                Ok(text) => {
                    let opts = VerifyOptions { json, expect, chart, spair_budget: spair_budget.map(|n| n as usize) };
                    verify(&source, &text, &opts)
                }
                Err(e) => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {}: {}\n", source, e) },
            }
        }
        Command::Repro { name, json } => repro(&name, json),
        Command::H0 { a, b } => Outcome { stdout: h0_text(a, b), ..Default::default() },
        Command::Basis { a, b } => Outcome { stdout: basis_text(a, b), ..Default::default() },
    };
    emit(out)
}
