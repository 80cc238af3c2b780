use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ibas_workbench_cli::{
    cmd_aggregate, cmd_aggverify, cmd_break_patched_agg, cmd_fork_demo, cmd_forge, cmd_forge_agg,
    cmd_keygen, cmd_rerandomize, cmd_setup, cmd_sign, cmd_verify, error_kind, AdversaryArg,
    CliError, CmdOutput, ForgeAggArgs, ForgeArgs, ForkDemoArgs, RerandomizeArgs, SchemeKind,
    SetupArgs, SignArgs,
};

const DEFAULT_MODULUS: u64 = ibas_workbench::DEFAULT_MODULUS;

/// Workbench for a pairing-based identity-based (aggregate) signature
/// scheme, its forgery attacks, and fork-and-replay extraction experiments.
/// All randomness is seed-derived, so every demo is reproducible.
#[derive(Parser)]
#[command(name = "ibas-workbench", version)]
struct Cli {
    /// Working directory for params.json, master.json, key and signature files.
    #[arg(long, global = true, default_value = ".")]
    dir: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate public parameters and a master key.
    Setup {
        /// Prime group order.
        #[arg(long, env = "IBAS_WORKBENCH_MODULUS", default_value_t = DEFAULT_MODULUS)]
        modulus: u64,
        #[arg(long, env = "IBAS_WORKBENCH_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "original")]
        scheme: SchemeKind,
        /// Fixture file pinning oracle tables, master key, and tape values.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Derive the private key for an identity.
    Keygen {
        #[arg(long)]
        id: String,
        /// Output path (default: <dir>/key.json).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sign a message with the current key.
    Sign {
        #[arg(long)]
        msg: String,
        /// Key file (default: <dir>/key.json).
        #[arg(long)]
        key: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output path (default: <dir>/signature.json).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a signed message or a forgery record. Exit 0 accept, 1 reject.
    Verify {
        /// Input path or '-' for stdin (default: stdin when piped,
        /// otherwise <dir>/signature.json).
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Combine signed messages and aggregates into one aggregate signature.
    Aggregate {
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify an aggregate signature. Exit 0 accept, 1 reject.
    Aggverify {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Publicly re-randomize a signed message.
    Rerandomize {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Explicit re-randomization exponent (default: tape-drawn).
        #[arg(long)]
        r_prime: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Universal forgery from two signature queries. Exit 0 when the forged
    /// signature verifies.
    Forge {
        #[arg(long)]
        id: String,
        #[arg(long)]
        msg1: String,
        #[arg(long)]
        msg2: String,
        /// Message to forge a signature for.
        #[arg(long)]
        target: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Forge, then aggregate with honest cosigners. Exit 0 when the
    /// aggregate verifies.
    ForgeAgg {
        #[arg(long)]
        id: String,
        #[arg(long)]
        msg1: String,
        #[arg(long)]
        msg2: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 3)]
        cosigners: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fork-and-replay extraction experiment. Exit 0 when the adversary's
    /// expected outcome holds (keyed: all eligible forks extract the
    /// witness; universal/rerand: zero extractions, U always moves).
    ForkDemo {
        #[arg(long, value_enum)]
        adversary: AdversaryArg,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Pr[coin = 0] in the simulator's H1 answers.
        #[arg(long, default_value_t = 0.5)]
        coin_bias: f64,
        #[arg(long, env = "IBAS_WORKBENCH_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long, env = "IBAS_WORKBENCH_MODULUS", default_value_t = DEFAULT_MODULUS)]
        modulus: u64,
        /// Fixture file with a scripted fork section replays that single
        /// trial instead of a batch.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Show why patched-scheme signatures cannot be aggregated.
    BreakPatchedAgg {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<CmdOutput, CliError> {
    let dir = cli.dir.as_path();
    match cli.command {
        Command::Setup { modulus, seed, scheme, fixtures } => cmd_setup(
            dir,
            &SetupArgs { modulus, seed, scheme, fixtures },
        ),
        Command::Keygen { id, out } => cmd_keygen(dir, &id, out.as_deref()),
        Command::Sign { msg, key, seed, out } => cmd_sign(
            dir,
            &SignArgs {
                msg: &msg,
                key: key.as_deref(),
                seed,
                out: out.as_deref(),
            },
        ),
        Command::Verify { input } => cmd_verify(dir, input.as_deref()),
        Command::Aggregate { inputs, out } => cmd_aggregate(dir, &inputs, out.as_deref()),
        Command::Aggverify { input } => cmd_aggverify(dir, input.as_deref()),
        Command::Rerandomize { input, r_prime, seed, out } => cmd_rerandomize(
            dir,
            &RerandomizeArgs {
                input: input.as_deref(),
                r_prime,
                seed,
                out: out.as_deref(),
            },
        ),
        Command::Forge { id, msg1, msg2, target, seed, out } => cmd_forge(
            dir,
            &ForgeArgs {
                id: &id,
                msg1: &msg1,
                msg2: &msg2,
                target: &target,
                seed,
                out: out.as_deref(),
            },
        ),
        Command::ForgeAgg { id, msg1, msg2, target, cosigners, seed, out } => cmd_forge_agg(
            dir,
            &ForgeAggArgs {
                id: &id,
                msg1: &msg1,
                msg2: &msg2,
                target: &target,
                cosigners,
                seed,
                out: out.as_deref(),
            },
        ),
        Command::ForkDemo { adversary, trials, coin_bias, seed, modulus, fixtures, out } => {
            cmd_fork_demo(&ForkDemoArgs {
                adversary,
                trials,
                coin_bias,
                seed,
                modulus,
                fixtures,
                out,
            })
        }
        Command::BreakPatchedAgg { seed, out } => {
            cmd_break_patched_agg(dir, seed, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            println!("{}", output.json);
            if output.expected_outcome {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } })
            );
            ExitCode::from(3)
        }
    }
}
