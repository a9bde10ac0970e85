//! `morita` — exact verification suites for the bicategory of
//! finite-dimensional rational algebras, bimodules and intertwiners.
//!
//! Exit codes: 0 all checks pass (skips allowed), 1 at least one
//! verification failure, 2 usage or input errors.

use clap::{Parser, Subcommand};
use morita::corpus::{Corpus, CorpusSpec};
use morita::report::CheckStatus;
use morita::suite::{run, SuiteCtx};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "morita", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites over a corpus and write a JSON report.
    Verify {
        /// Suite to run: bicategory, appendixA, morita, dualobjects,
        /// duality, rep, or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Corpus file produced by `gen-corpus`.
        #[arg(long)]
        corpus: PathBuf,
        /// Seed for the check-level sampling.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Dimension bound for sampled instances.
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
        /// Where to write the JSON report.
        #[arg(long)]
        report: PathBuf,
        /// Worker threads (default: MORITA_JOBS or all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Build a corpus file from a corpus description.
    GenCorpus {
        /// Corpus description (JSON).
        #[arg(long)]
        spec: PathBuf,
        /// Output corpus file.
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    match Cli::parse().cmd {
        Cmd::Verify { suite, corpus, seed, max_dim, report, jobs } => {
            let jobs = jobs.or_else(|| {
                std::env::var("MORITA_JOBS").ok().and_then(|v| v.parse().ok())
            });
            if let Some(n) = jobs {
                if let Err(e) =
                    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()
                {
                    eprintln!("error: cannot configure {n} worker threads: {e}");
                    return 2;
                }
            }
            let text = match std::fs::read_to_string(&corpus) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read corpus {}: {e}", corpus.display());
                    return 2;
                }
            };
            let corpus: Corpus = match serde_json::from_str(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: invalid corpus file: {e}");
                    return 2;
                }
            };
            let ctx = SuiteCtx::new(seed, max_dim);
            let result = match run(&suite, &corpus, &ctx) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 2;
                }
            };
            for s in &result.suites {
                println!(
                    "suite {:<12} {:>4} passed {:>3} failed {:>3} skipped",
                    s.name, s.passed, s.failed, s.skipped
                );
                for c in s.checks.iter().filter(|c| c.status == CheckStatus::Fail) {
                    println!(
                        "  FAIL {} [{}] {} — {}",
                        c.id,
                        c.law,
                        c.instance,
                        c.reason.as_deref().unwrap_or("")
                    );
                }
            }
            println!("digest {}", result.digest);
            println!("failures {}", result.failures);
            let json = match serde_json::to_string_pretty(&result) {
                Ok(j) => j,
                Err(e) => {
                    eprintln!("error: cannot serialise report: {e}");
                    return 2;
                }
            };
            if let Err(e) = std::fs::write(&report, json) {
                eprintln!("error: cannot write report {}: {e}", report.display());
                return 2;
            }
            if result.failures > 0 {
                1
            } else {
                0
            }
        }
        Cmd::GenCorpus { spec, out } => {
            let text = match std::fs::read_to_string(&spec) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read spec {}: {e}", spec.display());
                    return 2;
                }
            };
            let spec: CorpusSpec = match serde_json::from_str(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: invalid corpus spec: {e}");
                    return 2;
                }
            };
            let corpus = match Corpus::from_spec(&spec) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 2;
                }
            };
            let json = match serde_json::to_string_pretty(&corpus) {
                Ok(j) => j,
                Err(e) => {
                    eprintln!("error: cannot serialise corpus: {e}");
                    return 2;
                }
            };
            if let Err(e) = std::fs::write(&out, &json) {
                eprintln!("error: cannot write corpus {}: {e}", out.display());
                return 2;
            }
            println!("corpus digest {}", corpus.digest());
            0
        }
    }
}
