use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use sqrun_cli::{
    chabauty_stage, descent_stage, family, full_proof, geometry_stage, render, search_stage, ProofConfig, SearchConfig,
    Stage,
};
use sqrun_core::polyruns::n7_classification;

#[derive(Parser)]
#[command(name = "sqrun", version, about = "Square runs of symmetric quadratics: search, families and the proof for N = 7 and N >= 9")]
struct Cli {
    /// Worker threads; results do not depend on it
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exhaustive search over |a| <= a-bound, |c| <= c-bound
    Search {
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(i64).range(1..))]
        a_bound: i64,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(i64).range(1..))]
        c_bound: i64,
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u64).range(1..))]
        n_min: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Examples with a run of length n (5, 6, 8), or the N = 7 classification
    Families {
        #[arg(long, value_parser = clap::value_parser!(u64).range(5..=8))]
        n: u64,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Selmer sets, rank bounds, twists, orbit reduction and saturation
    Descent,
    /// Elliptic Chabauty on J+ mod 11 and J- mod 13, and C(Q)
    Chabauty,
    /// Identities of the model of C and its quotients
    VerifyGeometry,
    /// Every stage and the verdict table
    FullProof {
        #[arg(long)]
        skip_search: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn emit<T: Serialize>(v: &T, out: Option<&PathBuf>) -> Result<(), ExitCode> {
    let s = render(v);
    println!("{s}");
    if let Some(path) = out {
        std::fs::write(path, s + "\n").map_err(|e| {
            eprintln!("cannot write {}: {e}", path.display());
            ExitCode::from(1)
        })?;
    }
    Ok(())
}

fn stage_exit(s: &Stage) -> ExitCode {
    match emit(s, None) {
        Ok(()) if s.ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(1),
        Err(c) => c,
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    Ok(match cli.cmd {
        Cmd::Search { a_bound, c_bound, n_min, out } => {
            let (stage, _) = search_stage(SearchConfig { a_bound, c_bound, n_min: n_min as usize });
            emit(&stage, out.as_ref())?;
            if stage.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Cmd::Families { n: 7, .. } => match n7_classification() {
            Ok(r) => {
                emit(&r, None)?;
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("{e}");
                ExitCode::from(1)
            }
        },
        Cmd::Families { n, count } => match family(n as usize, count) {
            Ok(f) => {
                emit(&f, None)?;
                if f.examples.len() == count { ExitCode::SUCCESS } else { ExitCode::from(1) }
            }
            Err(sqrun_core::Error::InvalidArgument(m)) => {
                eprintln!("{m}");
                ExitCode::from(2)
            }
            Err(e) => {
                eprintln!("{e}");
                ExitCode::from(1)
            }
        },
        Cmd::Descent => stage_exit(&descent_stage()),
        Cmd::Chabauty => stage_exit(&chabauty_stage().0),
        Cmd::VerifyGeometry => stage_exit(&geometry_stage()),
        Cmd::FullProof { skip_search, report } => {
            let r = full_proof(ProofConfig { skip_search, ..ProofConfig::default() });
            emit(&r, report.as_ref())?;
            if r.failures.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 || rayon::ThreadPoolBuilder::new().num_threads(j).build_global().is_err() {
            eprintln!("--jobs must be a positive thread count");
            return ExitCode::from(2);
        }
    }
    run(cli).unwrap_or_else(|c| c)
}
