mod commands;
mod report;

use clap::{Args, Parser, Subcommand};
use commands::{Common, Source};
use report::{Exit, RunReport};
use std::path::PathBuf;
use std::process::ExitCode;

/// Marked plane sextics: generation, certification, lattice invariants,
/// higher Chow cycle certificates and degenerations.
#[derive(Parser)]
#[command(name = "sextic", version)]
struct Cli {
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write the artifact (instance, certificate, path, table) to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Bound on numerators and denominators of random data.
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(2..))]
    height: Option<i64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance JSON written by `generate`.
    #[arg(long, conflicts_with_all = ["r", "seed"])]
    instance: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..=18), requires = "seed")]
    r: Option<u32>,
    #[arg(long, requires = "r")]
    seed: Option<u64>,
}

impl InstanceArgs {
    fn source(&self) -> Option<Source> {
        match (&self.instance, self.r, self.seed) {
            (Some(p), _, _) => Some(Source::File(p.clone())),
            (None, Some(r), Some(seed)) => Some(Source::Fresh { r, seed }),
            _ => None,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate and certify a member of family r.
    Generate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=18))]
        r: u32,
        #[arg(long)]
        seed: u64,
    },
    /// Membership and genericity checks.
    Verify(InstanceArgs),
    /// (r, a, δ), fixed locus and overlattice index.
    Invariants(InstanceArgs),
    /// Higher Chow cycle certificate.
    Cycle {
        #[command(flatten)]
        src: InstanceArgs,
        /// node-1 or node-2
        #[arg(long, default_value = "node-1")]
        which: String,
        /// 0, inf or conjugate (default: the instance's strong marking, else 0)
        #[arg(long)]
        marking: Option<String>,
    },
    /// One-parameter degeneration from family r to family r + 1.
    Degenerate {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        seed: u64,
    },
    /// One instance per family with computed and expected invariants.
    Table {
        #[arg(long)]
        seed: u64,
    },
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(Exit::Usage as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Exit::Usage as u8) } else { ExitCode::SUCCESS };
        }
    };
    let common = Common { json: cli.json, out: cli.out.clone(), height: cli.height };
    let need = |a: &InstanceArgs| a.source().ok_or("give --instance PATH or both --r and --seed");
    let rep: RunReport = match &cli.cmd {
        Cmd::Generate { r, seed } => commands::generate(*r, *seed, &common),
        Cmd::Verify(a) => match need(a) {
            Ok(s) => commands::verify(&s, &common),
            Err(m) => return usage(m),
        },
        Cmd::Invariants(a) => match need(a) {
            Ok(s) => commands::invariants(&s, &common),
            Err(m) => return usage(m),
        },
        Cmd::Cycle { src, which, marking } => match need(src) {
            Ok(s) => commands::cycle(&s, which, marking.as_deref(), &common),
            Err(m) => return usage(m),
        },
        Cmd::Degenerate { r, seed } => {
            if !(3..=17).contains(r) {
                let why = if *r == 18 { "r = 18 is the starting family and has no boundary to degenerate to" } else { "r must be in 3..=17" };
                return usage(&format!("degenerate --r {r}: {why}"));
            }
            commands::degenerate(*r, *seed, &common)
        }
        Cmd::Table { seed } => commands::table(*seed, &common),
    };
    if common.json {
        println!("{}", serde_json::to_string_pretty(&rep.to_json()).expect("serializable"));
    } else {
        print!("{}", rep.to_text());
        println!("{} {}", rep.command, if rep.exit == Exit::Ok { "ok" } else { "FAILED" });
    }
    ExitCode::from(rep.exit as u8)
}
