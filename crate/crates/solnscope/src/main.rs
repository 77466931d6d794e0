//! Command-line front end: parse a problem specification, run the
//! diagnostics, and print the criterion table (or JSON). Exit codes:
//! 0 ok, 1 some criterion undecidable, 2 parse/dimension error,
//! 3 golden mismatch in the table suite.

use clap::{Parser, Subcommand};
use solnscope::report::run;
use solnscope::specfile::parse_spec;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "solnscope", version, about = "Exact solution-set diagnostics for regularized least squares and constrained minimization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run diagnostics on a problem specification file.
    Run {
        /// Path to the spec file (kind/f/A/b keys).
        spec: PathBuf,
        /// Emit the machine-readable JSON document instead of the table.
        #[arg(long)]
        json: bool,
        /// Restrict the verdict rows, e.g. existence,uniqueness.
        #[arg(long)]
        checks: Option<String>,
        /// Append a numerical cross-check section (grid and proximal
        /// gradient oracles).
        #[arg(long)]
        oracle_verify: bool,
        /// Seed for sampled oracle rows.
        #[arg(long, default_value = "17")]
        seed: u64,
    },
    /// Regenerate the committed evaluation-table reports and diff them
    /// against the goldens.
    PaperSuite {
        /// Output directory for the regenerated reports.
        dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            spec,
            json,
            checks,
            oracle_verify,
            seed,
        } => {
            let text = match std::fs::read_to_string(&spec) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", spec.display());
                    return ExitCode::from(2);
                }
            };
            let mut text = text;
            if let Some(c) = checks {
                text.push_str(&format!("checks = {c}\n"));
            }
            let parsed = match parse_spec(&text) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let doc = match run(&parsed) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&doc.json).unwrap());
            } else {
                print!("{}", doc.render_text());
            }
            if oracle_verify {
                match solnscope::verify::oracle_section(&parsed, seed) {
                    Ok(rows) => {
                        println!("oracle agreement:");
                        for (k, v) in rows {
                            println!("{k}: {v}");
                        }
                    }
                    Err(e) => {
                        println!("oracle agreement: unavailable ({e})");
                    }
                }
            }
            if doc.undecidable {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::PaperSuite { dir } => match solnscope::suite::run_suite(&dir) {
            Ok(outcome) => {
                println!(
                    "wrote {} reports to {}",
                    outcome.written,
                    dir.display()
                );
                if outcome.mismatches.is_empty() {
                    println!("all reports match the goldens");
                    ExitCode::SUCCESS
                } else {
                    for m in &outcome.mismatches {
                        eprintln!("mismatch {m}");
                    }
                    ExitCode::from(3)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
