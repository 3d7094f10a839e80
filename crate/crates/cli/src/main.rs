//! `rcsa`: ontology-based query expansion, tf.idf search and evaluation.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rcsa::pipeline::Strategy;

#[derive(Debug, Parser)]
#[command(
    name = "rcsa",
    version,
    about = "Ontology-based query expansion and tf.idf retrieval"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

/// Data locations and run parameters. Data paths default to the bundled
/// fixtures; `--config` supplies values that flags override.
#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML file with any of the settings below.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory with classes.tsv, entities.tsv, relations.tsv, facts.tsv.
    #[arg(long, global = true)]
    kb_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    phrases: Option<PathBuf>,
    #[arg(long, global = true)]
    class_lexicon: Option<PathBuf>,
    #[arg(long, global = true)]
    stopwords: Option<PathBuf>,
    /// JSON-lines corpus, one {"id", "text"} object per line.
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    /// Saved index; searched instead of building one from the corpus.
    #[arg(long, global = true)]
    index: Option<PathBuf>,
    #[arg(long, global = true)]
    qrels: Option<PathBuf>,
    /// lexical, csa or rcsa [default: rcsa]
    #[arg(long, global = true)]
    strategy: Option<Strategy>,
    /// Results per query [default: 10]
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Randomization test permutations [default: 100000]
    #[arg(long, global = true)]
    permutations: Option<u64>,
    /// Randomization test seed [default: 0]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cap on activated entities per query [default: no cap]
    #[arg(long, global = true)]
    max_added: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an index from the corpus and save it.
    Index {
        #[arg(long)]
        out: PathBuf,
    },
    /// Show how a query is expanded.
    Expand {
        query: String,
        /// Also print mentions, patterns and the activation trace.
        #[arg(long)]
        explain: bool,
        #[arg(long)]
        json: bool,
    },
    /// Rank documents for one query, or a query file as a TREC run.
    Search {
        query: Option<String>,
        /// `id<TAB>text` lines; writes a TREC run.
        #[arg(long, conflicts_with = "query")]
        queries: Option<PathBuf>,
        /// Write the run here instead of stdout.
        #[arg(long, requires = "queries")]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Score a run against qrels, or compare two runs (A against baseline B).
    Eval {
        run_a: PathBuf,
        run_b: Option<PathBuf>,
        /// Enumerate all 2^n sign vectors (n ≤ 20) instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Read queries from stdin and print expansions and results.
    Repl,
}

/// An invocation error detected after argument parsing.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli.global, cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

/// The error chain joined by `: `, skipping causes a message already ends with.
fn describe(e: &anyhow::Error) -> String {
    let mut msg = String::new();
    for cause in e.chain() {
        let text = cause.to_string();
        if msg.ends_with(&text) {
            continue;
        }
        if !msg.is_empty() {
            msg.push_str(": ");
        }
        msg.push_str(&text);
    }
    msg
}
