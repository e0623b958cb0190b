//! `genus1`: JSON certificates for obstruction classes of genus-one curves.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use config::RunConfig;

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "genus1", version, about = "Obstruction classes of genus-one curves over tame local fields")]
struct Cli {
    /// TOML file with defaults for any flag.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Also write the JSON document to this file.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Seed for sampled checks; recorded in every document.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, env = "GENUS1_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Curves over F_p with full rational n-torsion.
    LevelSearch(LevelSearchArgs),
    /// Obstruction class of a cocycle given by Kummer data.
    Obstruct(ObstructArgs),
    /// Certificate that no nontrivial torsor becomes trivial over the quadratic twist.
    TwistCheck(PrimeLevel),
    /// Kummer pair whose symbol has a prescribed invariant.
    SolveSymbol(SolveArgs),
    /// Heisenberg cocycle identity on random cocycles of a Galois shadow.
    ThetaVerify(ThetaArgs),
    /// Exhaustive and counting certificates that no cyclic extension splits the symplectic example.
    WadsworthCheck(WadsworthArgs),
}

#[derive(Args, Debug)]
struct LevelSearchArgs {
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    pmin: Option<u64>,
    #[arg(long)]
    pmax: Option<u64>,
    /// Stop after this many curves per prime.
    #[arg(long)]
    max_per_prime: Option<usize>,
}

#[derive(Args, Debug)]
struct PrimeLevel {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args, Debug)]
struct ObstructArgs {
    #[command(flatten)]
    at: PrimeLevel,
    /// Kummer class `v,u`: valuation and unit residue.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    /// Base point `v,u;v,u` of the twisted obstruction.
    #[arg(long, allow_hyphen_values = true)]
    twist_by: Option<String>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    at: PrimeLevel,
    /// Target invariant `NUM/DEN`.
    #[arg(long)]
    target: String,
}

#[derive(Args, Debug)]
struct ThetaArgs {
    #[arg(long)]
    n: Option<u64>,
    /// Prime of the shadow; chosen automatically if omitted.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    group_order: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
}

#[derive(Args, Debug)]
struct WadsworthArgs {
    #[arg(long)]
    n: Option<u64>,
    /// Also enumerate every cyclic subgroup.
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Debug)]
pub enum Failure {
    /// Exit 1.
    Usage(String),
    /// Exit 2; the document is still printed.
    Precondition(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Precondition(_) => 2,
        }
    }
}

/// A finished command: its result and whether it certifies what it set out to.
pub struct Outcome {
    pub inputs: Value,
    pub result: Value,
    pub ok: bool,
    pub reason: Option<String>,
}

pub struct Resolved {
    pub cfg: RunConfig,
    pub seed: u64,
}

fn envelope(command: &str, seed: u64, inputs: Value, body: (&str, Value)) -> Value {
    let mut doc = json!({
        "schema": SCHEMA,
        "command": command,
        "seed": seed,
        "inputs": inputs,
    });
    doc[body.0] = body.1;
    doc
}

fn emit(doc: &Value, output: Option<&PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
    // a closed pipe (`genus1 ... | head`) is not an error
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if let Some(path) = output {
        std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(t) = cli.threads.or(cfg.threads) {
        if t == 0 {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let output = cli.output.clone().or(cfg.output.take());
    let seed = cli.seed.or(cfg.seed).unwrap_or(0);
    let env = Resolved { cfg, seed };

    let (name, outcome) = match cli.command {
        Command::LevelSearch(a) => ("level-search", commands::level_search(&env, a.n, a.pmin, a.pmax, a.max_per_prime)),
        Command::Obstruct(a) => (
            "obstruct",
            commands::obstruct(&env, a.at.p, a.at.n, &a.alpha, &a.beta, a.twist_by.as_deref()),
        ),
        Command::TwistCheck(a) => ("twist-check", commands::twist_check(&env, a.p, a.n)),
        Command::SolveSymbol(a) => ("solve-symbol", commands::solve_symbol(&env, a.at.p, a.at.n, &a.target)),
        Command::ThetaVerify(a) => ("theta-verify", commands::theta_verify(&env, a.n, a.p, a.group_order, a.trials)),
        Command::WadsworthCheck(a) => ("wadsworth-check", commands::wadsworth(&env, a.n, a.exhaustive)),
    };

    match outcome {
        Ok(out) => {
            let mut doc = envelope(name, seed, out.inputs, ("result", out.result));
            if let Some(reason) = &out.reason {
                doc["reason"] = json!(reason);
            }
            emit(&doc, output.as_ref())?;
            Ok(if out.ok { 0 } else { 2 })
        }
        Err(Failure::Precondition(reason)) => {
            let argv: Vec<String> = std::env::args().skip(1).collect();
            let inputs = json!({ "argv": argv });
            let doc = envelope(name, seed, inputs, ("error", json!({ "kind": "precondition", "reason": reason })));
            emit(&doc, output.as_ref())?;
            Ok(2)
        }
        Err(usage) => Err(usage),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let (Failure::Usage(msg) | Failure::Precondition(msg)) = &f;
            eprintln!("error: {msg}");
            if matches!(f, Failure::Usage(_)) {
                eprintln!("run `genus1 --help` for usage");
            }
            ExitCode::from(f.code())
        }
    }
}
