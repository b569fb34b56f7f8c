//! `fusible`: inspect finite rings and modules, classify fusibility, and
//! check the statement registry against a corpus.

mod commands;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CorpusSource, Limits, Outcome, VerifyArgs};
use error::CliError;

#[derive(Parser)]
#[command(name = "fusible", version, about = "Finite ring and module workbench")]
struct Cli {
    /// Add wall-clock timing to the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ring-level queries.
    Ring {
        #[command(subcommand)]
        command: RingCommand,
    },
    /// Module-level queries.
    Module {
        #[command(subcommand)]
        command: ModuleCommand,
    },
    /// Evaluate registered statements on a corpus or a single instance.
    Verify {
        /// Statement name, or `all`.
        #[arg(long)]
        statement: String,
        /// `default` or a manifest file.
        #[arg(long, default_value = "default")]
        corpus: String,
        /// A single spec file; overrides --corpus.
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Cap ring orders in the default corpus.
        #[arg(long)]
        max_ring_order: Option<usize>,
        /// List every outcome, not only violations and anomalies.
        #[arg(long)]
        all_outcomes: bool,
    },
    /// Look for an instance where the converse of a statement fails.
    Search {
        #[arg(long)]
        converse: String,
        /// Hypothesis to drop, or `none`.
        #[arg(long, default_value = "none")]
        drop: String,
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long)]
        max_ring_order: Option<usize>,
    },
    /// Corpus manifests.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand)]
enum RingCommand {
    /// Axioms, element roles and ring predicates.
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum ModuleCommand {
    /// Torsion sets, zero divisors, singular submodule and fusibility.
    Classify {
        file: PathBuf,
        /// Include one witness triple per nonzero element.
        #[arg(long)]
        witnesses: bool,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Write the generated corpus as a manifest.
    Generate {
        #[arg(long, default_value_t = 81)]
        max_ring_order: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let limits = Limits::from_env()?;
    let timing = cli.timing;
    match cli.command {
        Command::Ring {
            command: RingCommand::Check { file },
        } => commands::ring_check(&file, limits, timing),
        Command::Module {
            command: ModuleCommand::Classify { file, witnesses },
        } => commands::module_classify(&file, witnesses, limits, timing),
        Command::Verify {
            statement,
            corpus,
            instance,
            max_ring_order,
            all_outcomes,
        } => commands::verify(
            VerifyArgs {
                statement,
                corpus: CorpusSource::parse(&corpus, max_ring_order),
                instance,
                all_outcomes,
            },
            limits,
            timing,
        ),
        Command::Search {
            converse,
            drop,
            corpus,
            max_ring_order,
        } => commands::search(
            &converse,
            &drop,
            CorpusSource::parse(&corpus, max_ring_order),
            limits,
            timing,
        ),
        Command::Corpus {
            command:
                CorpusCommand::Generate {
                    max_ring_order,
                    out,
                },
        } => commands::corpus_generate(max_ring_order, &out, limits, timing),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.json);
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
