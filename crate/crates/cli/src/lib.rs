//! Library half of the workbench CLI: file conventions, seed derivation, and
//! the command implementations. `main.rs` only parses flags and maps results
//! to exit codes, so tests can drive everything in-process.
//!
//! File conventions inside the working directory:
//!   params.json     public parameters, scheme selector, seed, tape pins
//!   master.json     master key
//!   key.json        current private key (keygen's default output)
//!   signature.json  current signed message (sign's default output)
//!
//! Exit-code contract: 0 = ran and the decision/demonstration came out as
//! expected; 1 = ran fine but the verdict was reject (or the demo missed its
//! expected outcome); 2 = malformed input; 3 = domain error.

use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use ibas_workbench::fixtures::{FixtureFile, ForkScript};
use ibas_workbench::forking::{
    run_experiment, run_scripted_fork, AdversaryKind, ExperimentReport, SimulatorConfig,
};
use ibas_workbench::ibas::{agg_verify, aggregate, AggregateSignature, IdMsgPair};
use ibas_workbench::ibs::{self, Decision};
use ibas_workbench::patched;
use ibas_workbench::tape::derive_seed;
use ibas_workbench::wire::{
    AggregateSignatureWire, ForgeryResultWire, HashConfigWire, MasterKeyWire, PrivateKeyWire,
    PublicParamsWire, SignatureWire,
};
use ibas_workbench::{
    CdhInstance, Error, GroupDescription, MasterKey, PrivateKey, PublicParams, RandomTape,
};

pub const PARAMS_FILE: &str = "params.json";
pub const MASTER_FILE: &str = "master.json";
pub const KEY_FILE: &str = "key.json";
pub const SIGNATURE_FILE: &str = "signature.json";

/// Seed-derivation roles, one per randomness-consuming command.
pub mod roles {
    pub const SETUP: u64 = 0x10;
    pub const SIGN: u64 = 0x11;
    pub const RERANDOMIZE: u64 = 0x12;
    pub const FORGE: u64 = 0x13;
    pub const FORGE_AGG: u64 = 0x14;
    pub const BREAK_PATCHED: u64 = 0x15;
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed input or I/O trouble (exit 2).
    Input(String),
    /// Domain error such as a hash collision (exit 3).
    Domain(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Encoding(_) => CliError::Input(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

/// Stable machine-readable tag for a domain error.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ModulusMismatch(..) => "modulus_mismatch",
        Error::GroupMismatch => "group_mismatch",
        Error::NonInvertible => "non_invertible",
        Error::NotPrime(_) => "not_prime",
        Error::HashCollision => "hash_collision",
        Error::Precondition(_) => "precondition",
        Error::Encoding(_) => "encoding",
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a command produced: the JSON it printed and whether the verdict was
/// the expected one (drives exit 0 vs 1).
pub struct CmdOutput {
    pub json: String,
    pub expected_outcome: bool,
}

impl CmdOutput {
    fn of<T: Serialize>(value: &T, expected_outcome: bool) -> CliResult<Self> {
        let json = serde_json::to_string_pretty(value)
            .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
        Ok(CmdOutput {
            json,
            expected_outcome,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    Original,
    Patched,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum AdversaryArg {
    Keyed,
    Universal,
    Rerand,
}

impl From<AdversaryArg> for AdversaryKind {
    fn from(a: AdversaryArg) -> Self {
        match a {
            AdversaryArg::Keyed => AdversaryKind::Keyed,
            AdversaryArg::Universal => AdversaryKind::Universal,
            AdversaryArg::Rerand => AdversaryKind::Rerand,
        }
    }
}

/// params.json: the public parameters plus the CLI's own bookkeeping.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsFile {
    pub scheme: SchemeKind,
    pub seed: u64,
    #[serde(flatten)]
    pub params: PublicParamsWire,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tape_pins: Vec<String>,
}

impl ParamsFile {
    pub fn decode(&self) -> CliResult<(PublicParams, Vec<u64>)> {
        let pp = self.params.decode()?;
        let pins = self
            .tape_pins
            .iter()
            .map(|s| {
                let v = ibas_workbench::wire::scalar_from_dec(s, &pp.desc)?;
                Ok::<u64, Error>(v.value())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((pp, pins))
    }
}

/// signature.json: a signature together with what it signs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignedMessage {
    pub id: String,
    pub msg: String,
    pub signature: SignatureWire,
}

impl SignedMessage {
    pub fn new(id: &[u8], msg: &[u8], sig: &ibas_workbench::Signature) -> Self {
        SignedMessage {
            id: hex::encode(id),
            msg: hex::encode(msg),
            signature: SignatureWire::encode(sig),
        }
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read_file(path)?)
        .map_err(|e| CliError::Input(format!("malformed JSON in {}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut json = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
    json.push('\n');
    std::fs::write(path, json)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

/// Resolves a command's primary input: an explicit path, `-` or piped data
/// for stdin, otherwise a default file in the working directory.
pub fn read_input_source(input: Option<&Path>, dir: &Path, default_name: &str) -> CliResult<String> {
    match input {
        Some(p) if p.as_os_str() == "-" => read_stdin(),
        Some(p) => read_file(p),
        None => {
            use std::io::IsTerminal;
            if !std::io::stdin().is_terminal() {
                let text = read_stdin()?;
                if !text.trim().is_empty() {
                    return Ok(text);
                }
            }
            read_file(&dir.join(default_name))
        }
    }
}

fn read_stdin() -> CliResult<String> {
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
    Ok(buf)
}

fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed {what}: {e}")))
}

/// Mixes command inputs into a role seed so different messages draw
/// different randomness while identical invocations stay byte-identical.
pub fn command_seed(base: u64, role: u64, salt: &[&[u8]]) -> u64 {
    let mut acc: u64 = 0xcbf2_9ce4_8422_2325; // FNV-1a offset basis
    let mut mix = |bytes: &[u8]| {
        for &b in bytes {
            acc ^= b as u64;
            acc = acc.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    for part in salt {
        mix(&(part.len() as u32).to_be_bytes());
        mix(part);
    }
    derive_seed(base ^ acc, role)
}

fn load_params(dir: &Path) -> CliResult<(ParamsFile, PublicParams, Vec<u64>)> {
    let file: ParamsFile = read_json(&dir.join(PARAMS_FILE))?;
    let (pp, pins) = file.decode()?;
    Ok((file, pp, pins))
}

fn load_master(dir: &Path, pp: &PublicParams) -> CliResult<MasterKey> {
    let wire: MasterKeyWire = read_json(&dir.join(MASTER_FILE))?;
    Ok(wire.decode(&pp.desc)?)
}

fn load_key(dir: &Path, key_path: Option<&Path>, pp: &PublicParams) -> CliResult<PrivateKey> {
    let path = key_path
        .map(Path::to_path_buf)
        .unwrap_or_else(|| dir.join(KEY_FILE));
    let wire: PrivateKeyWire = read_json(&path)?;
    Ok(wire.decode(&pp.desc)?)
}

fn output_path(out: Option<&Path>, dir: &Path, default_name: &str) -> PathBuf {
    out.map(Path::to_path_buf)
        .unwrap_or_else(|| dir.join(default_name))
}

// ---------------------------------------------------------------------------
// commands

pub struct SetupArgs {
    pub modulus: u64,
    pub seed: u64,
    pub scheme: SchemeKind,
    pub fixtures: Option<PathBuf>,
}

pub fn cmd_setup(dir: &Path, args: &SetupArgs) -> CliResult<CmdOutput> {
    let desc = GroupDescription::new(args.modulus)?;
    let (hash_config, master_pin, tape_pins) = match &args.fixtures {
        None => (HashConfigWire::digest(), None, Vec::new()),
        Some(path) => {
            let fixture = FixtureFile::from_json(&read_file(path)?)?;
            fixture.check_modulus(&desc)?;
            let master = fixture.decode_master(&desc)?;
            fixture.decode_tape(&desc)?; // validate eagerly
            let tables = fixture.oracles.clone();
            let config = if tables.h1.is_empty() && tables.h2.is_empty() && tables.h2_patched.is_empty() {
                HashConfigWire::digest()
            } else {
                HashConfigWire::Fixture { tables }
            };
            (config, master, fixture.tape.clone().unwrap_or_default())
        }
    };
    let oracle = hash_config.build_oracle(&desc)?;
    let (pp, mk) = match master_pin {
        Some((s1, s2)) => ibs::setup_with_master(&desc, oracle, s1, s2),
        None => {
            let mut tape = RandomTape::seeded(derive_seed(args.seed, roles::SETUP));
            ibs::setup(&desc, oracle, &mut tape)
        }
    };
    let params = ParamsFile {
        scheme: args.scheme,
        seed: args.seed,
        params: PublicParamsWire::encode(&pp, hash_config),
        tape_pins,
    };
    write_json(&dir.join(PARAMS_FILE), &params)?;
    write_json(&dir.join(MASTER_FILE), &MasterKeyWire::encode(&mk))?;
    CmdOutput::of(&params, true)
}

pub fn cmd_keygen(dir: &Path, id: &str, out: Option<&Path>) -> CliResult<CmdOutput> {
    let (_, pp, _) = load_params(dir)?;
    let mk = load_master(dir, &pp)?;
    let sk = ibs::gen_key(id.as_bytes(), &mk, &pp);
    let wire = PrivateKeyWire::encode(&sk);
    write_json(&output_path(out, dir, KEY_FILE), &wire)?;
    CmdOutput::of(&wire, true)
}

pub struct SignArgs<'a> {
    pub msg: &'a str,
    pub key: Option<&'a Path>,
    pub seed: Option<u64>,
    pub out: Option<&'a Path>,
}

pub fn cmd_sign(dir: &Path, args: &SignArgs) -> CliResult<CmdOutput> {
    let (file, pp, pins) = load_params(dir)?;
    let sk = load_key(dir, args.key, &pp)?;
    let seed = args.seed.unwrap_or(file.seed);
    let mut tape = RandomTape::with_pinned(
        &pins,
        command_seed(seed, roles::SIGN, &[&sk.id, args.msg.as_bytes()]),
    );
    let sig = match file.scheme {
        SchemeKind::Original => ibs::sign(args.msg.as_bytes(), &sk, &pp, &mut tape),
        SchemeKind::Patched => patched::patched_sign(args.msg.as_bytes(), &sk, &pp, &mut tape),
    };
    let envelope = SignedMessage::new(&sk.id, args.msg.as_bytes(), &sig);
    write_json(&output_path(args.out, dir, SIGNATURE_FILE), &envelope)?;
    CmdOutput::of(&envelope, true)
}

/// Whatever `verify` is given: a signed message or a forgery record.
fn parse_verifiable(text: &str) -> CliResult<(String, String, SignatureWire)> {
    if let Ok(env) = serde_json::from_str::<SignedMessage>(text) {
        return Ok((env.id, env.msg, env.signature));
    }
    if let Ok(fr) = serde_json::from_str::<ForgeryResultWire>(text) {
        return Ok((fr.target_id, fr.target_msg, fr.signature));
    }
    Err(CliError::Input(
        "input is neither a signed message nor a forgery record".to_string(),
    ))
}

#[derive(Serialize)]
struct VerifyReport {
    id: String,
    msg: String,
    decision: Decision,
}

pub fn cmd_verify(dir: &Path, input: Option<&Path>) -> CliResult<CmdOutput> {
    let (file, pp, _) = load_params(dir)?;
    let text = read_input_source(input, dir, SIGNATURE_FILE)?;
    let (id_hex, msg_hex, sig_wire) = parse_verifiable(&text)?;
    let id = ibas_workbench::wire::bytes_from_hex(&id_hex)?;
    let msg = ibas_workbench::wire::bytes_from_hex(&msg_hex)?;
    let sig = sig_wire.decode(&pp.desc)?;
    let decision = match file.scheme {
        SchemeKind::Original => ibs::verify(&sig, &id, &msg, &pp),
        SchemeKind::Patched => patched::patched_verify(&sig, &id, &msg, &pp),
    };
    CmdOutput::of(
        &VerifyReport {
            id: id_hex,
            msg: msg_hex,
            decision,
        },
        decision.is_accept(),
    )
}

pub struct RerandomizeArgs<'a> {
    pub input: Option<&'a Path>,
    pub r_prime: Option<u64>,
    pub seed: Option<u64>,
    pub out: Option<&'a Path>,
}

pub fn cmd_rerandomize(dir: &Path, args: &RerandomizeArgs) -> CliResult<CmdOutput> {
    let (file, pp, pins) = load_params(dir)?;
    let text = read_input_source(args.input, dir, SIGNATURE_FILE)?;
    let env: SignedMessage = parse_json(&text, "signed message")?;
    let sig = env.signature.decode(&pp.desc)?;
    let r_prime = match args.r_prime {
        Some(v) => ibas_workbench::wire::scalar_from_dec(&v.to_string(), &pp.desc)?,
        None => {
            let seed = args.seed.unwrap_or(file.seed);
            let mut tape = RandomTape::with_pinned(
                &pins,
                command_seed(seed, roles::RERANDOMIZE, &[env.id.as_bytes(), env.msg.as_bytes()]),
            );
            tape.sample_scalar(&pp.desc)
        }
    };
    let rr = ibs::rerandomize(&sig, r_prime, &pp);
    let out_env = SignedMessage {
        id: env.id,
        msg: env.msg,
        signature: SignatureWire::encode(&rr),
    };
    if let Some(path) = args.out {
        write_json(path, &out_env)?;
    }
    CmdOutput::of(&out_env, true)
}

/// Parses an aggregate or falls back to wrapping a single signed message.
fn parse_aggregate_input(text: &str, desc: &GroupDescription) -> CliResult<AggregateSignature> {
    if let Ok(wire) = serde_json::from_str::<AggregateSignatureWire>(text) {
        return Ok(wire.decode(desc)?);
    }
    if let Ok(env) = serde_json::from_str::<SignedMessage>(text) {
        let sig = env.signature.decode(desc)?;
        let id = ibas_workbench::wire::bytes_from_hex(&env.id)?;
        let msg = ibas_workbench::wire::bytes_from_hex(&env.msg)?;
        return Ok(AggregateSignature::from_signature(sig, &id, &msg));
    }
    Err(CliError::Input(
        "input is neither an aggregate nor a signed message".to_string(),
    ))
}

pub fn cmd_aggregate(dir: &Path, inputs: &[PathBuf], out: Option<&Path>) -> CliResult<CmdOutput> {
    if inputs.is_empty() {
        return Err(CliError::Input("aggregate needs at least one --in file".to_string()));
    }
    let (_, pp, _) = load_params(dir)?;
    let mut agg = AggregateSignature::empty(&pp.desc);
    for path in inputs {
        let part = parse_aggregate_input(&read_file(path)?, &pp.desc)?;
        agg = aggregate(&agg, &part, &pp)?;
    }
    let wire = AggregateSignatureWire::encode(&agg);
    if let Some(path) = out {
        write_json(path, &wire)?;
    }
    CmdOutput::of(&wire, true)
}

#[derive(Serialize)]
struct AggVerifyReport {
    entries: usize,
    decision: Decision,
}

pub fn cmd_aggverify(dir: &Path, input: Option<&Path>) -> CliResult<CmdOutput> {
    let (_, pp, _) = load_params(dir)?;
    let text = read_input_source(input, dir, "aggregate.json")?;
    let wire: AggregateSignatureWire = parse_json(&text, "aggregate signature")?;
    let agg = wire.decode(&pp.desc)?;
    let decision = agg_verify(&agg, &pp);
    CmdOutput::of(
        &AggVerifyReport {
            entries: agg.set.len(),
            decision,
        },
        decision.is_accept(),
    )
}

pub struct ForgeArgs<'a> {
    pub id: &'a str,
    pub msg1: &'a str,
    pub msg2: &'a str,
    pub target: &'a str,
    pub seed: Option<u64>,
    pub out: Option<&'a Path>,
}

/// Obtains two honest signatures (standing in for the signature oracle) and
/// runs the universal forgery against the target message.
pub fn cmd_forge(dir: &Path, args: &ForgeArgs) -> CliResult<CmdOutput> {
    let (file, pp, pins) = load_params(dir)?;
    if file.scheme != SchemeKind::Original {
        return Err(CliError::Domain(Error::precondition(
            "forge targets the original scheme; set up with --scheme original",
        )));
    }
    let mk = load_master(dir, &pp)?;
    let sk = ibs::gen_key(args.id.as_bytes(), &mk, &pp);
    let seed = args.seed.unwrap_or(file.seed);
    let mut tape = RandomTape::with_pinned(
        &pins,
        command_seed(
            seed,
            roles::FORGE,
            &[args.id.as_bytes(), args.msg1.as_bytes(), args.msg2.as_bytes()],
        ),
    );
    let sig1 = ibs::sign(args.msg1.as_bytes(), &sk, &pp, &mut tape);
    let sig2 = ibs::sign(args.msg2.as_bytes(), &sk, &pp, &mut tape);
    let forged = ibas_workbench::attacks::universal_forge(
        &sig1,
        args.msg1.as_bytes(),
        &sig2,
        args.msg2.as_bytes(),
        args.id.as_bytes(),
        args.target.as_bytes(),
        &pp,
    )?;
    let accepted = ibs::verify(&forged.sig, args.id.as_bytes(), args.target.as_bytes(), &pp);
    let wire = ForgeryResultWire::encode(&forged, args.msg1.as_bytes(), &sig1, args.msg2.as_bytes(), &sig2);
    if let Some(path) = args.out {
        write_json(path, &wire)?;
    }
    CmdOutput::of(&wire, accepted.is_accept())
}

pub struct ForgeAggArgs<'a> {
    pub id: &'a str,
    pub msg1: &'a str,
    pub msg2: &'a str,
    pub target: &'a str,
    pub cosigners: usize,
    pub seed: Option<u64>,
    pub out: Option<&'a Path>,
}

pub fn cmd_forge_agg(dir: &Path, args: &ForgeAggArgs) -> CliResult<CmdOutput> {
    let (file, pp, pins) = load_params(dir)?;
    if file.scheme != SchemeKind::Original {
        return Err(CliError::Domain(Error::precondition(
            "forge-agg targets the original scheme; set up with --scheme original",
        )));
    }
    let mk = load_master(dir, &pp)?;
    let sk = ibs::gen_key(args.id.as_bytes(), &mk, &pp);
    let seed = args.seed.unwrap_or(file.seed);
    let mut tape = RandomTape::with_pinned(
        &pins,
        command_seed(
            seed,
            roles::FORGE_AGG,
            &[args.id.as_bytes(), args.target.as_bytes()],
        ),
    );
    let sig1 = ibs::sign(args.msg1.as_bytes(), &sk, &pp, &mut tape);
    let sig2 = ibs::sign(args.msg2.as_bytes(), &sk, &pp, &mut tape);
    let cosigners: Vec<(PrivateKey, Vec<u8>)> = (0..args.cosigners)
        .map(|i| {
            let cid = format!("cosigner-{i}");
            let key = ibs::gen_key(cid.as_bytes(), &mk, &pp);
            (key, format!("cosigned-message-{i}").into_bytes())
        })
        .collect();
    let agg = ibas_workbench::attacks::aggregate_forge(
        &sig1,
        args.msg1.as_bytes(),
        &sig2,
        args.msg2.as_bytes(),
        args.id.as_bytes(),
        args.target.as_bytes(),
        &cosigners,
        &pp,
        &mut tape,
    )?;
    let accepted = agg_verify(&agg, &pp);
    let wire = AggregateSignatureWire::encode(&agg);
    if let Some(path) = args.out {
        write_json(path, &wire)?;
    }
    CmdOutput::of(&wire, accepted.is_accept())
}

pub struct ForkDemoArgs {
    pub adversary: AdversaryArg,
    pub trials: usize,
    pub coin_bias: f64,
    pub seed: u64,
    pub modulus: u64,
    pub fixtures: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

/// The outcome the demonstration is expected to reach for each adversary.
pub fn demo_expected(kind: AdversaryKind, report: &ExperimentReport) -> bool {
    let s = &report.summary;
    match kind {
        AdversaryKind::Keyed => {
            let eligible = report.eligible_for_extraction();
            s.forks_succeeded > 0
                && eligible > 0
                && s.extractions == eligible
                && report.witness_matches() == eligible
        }
        AdversaryKind::Universal | AdversaryKind::Rerand => {
            s.forks_succeeded > 0 && s.extractions == 0 && s.u_mismatches == s.forks_succeeded
        }
    }
}

pub fn cmd_fork_demo(args: &ForkDemoArgs) -> CliResult<CmdOutput> {
    let desc = GroupDescription::new(args.modulus)?;
    let cfg = SimulatorConfig {
        coin_bias: args.coin_bias,
        fork_trials: args.trials,
        seed: args.seed,
    };
    cfg.validate()?;
    let kind: AdversaryKind = args.adversary.into();

    let script: Option<ForkScript> = match &args.fixtures {
        None => None,
        Some(path) => {
            let fixture = FixtureFile::from_json(&read_file(path)?)?;
            fixture.check_modulus(&desc)?;
            match &fixture.fork {
                None => None,
                Some(f) => Some(f.decode(&desc)?),
            }
        }
    };

    let report = match script {
        None => run_experiment(kind, &cfg, &desc),
        Some(script) => {
            // Scripted single-trial replay of a worked example.
            let instance = CdhInstance::from_witness(&desc, script.a, script.b);
            let adversary = kind.instantiate();
            let transcript = run_scripted_fork(adversary.as_ref(), &cfg, &instance, Some(&script));
            let trials = vec![ibas_workbench::forking::record_trial(0, &transcript, &instance)];
            let summary = ibas_workbench::forking::summarize(&trials);
            ExperimentReport {
                adversary: kind.name().to_string(),
                modulus: desc.modulus().to_string(),
                coin_bias: cfg.coin_bias,
                seed: cfg.seed,
                trials,
                summary,
            }
        }
    };
    let expected = demo_expected(kind, &report);
    if let Some(path) = &args.out {
        write_json(path, &report)?;
    }
    CmdOutput::of(&report, expected)
}

pub fn cmd_break_patched_agg(dir: &Path, seed: Option<u64>, out: Option<&Path>) -> CliResult<CmdOutput> {
    let (file, pp, pins) = load_params(dir)?;
    let mk = load_master(dir, &pp)?;
    let seed = seed.unwrap_or(file.seed);
    let mut tape = RandomTape::with_pinned(&pins, command_seed(seed, roles::BREAK_PATCHED, &[]));
    let sk1 = ibs::gen_key(b"patched-signer-1", &mk, &pp);
    let sk2 = ibs::gen_key(b"patched-signer-2", &mk, &pp);
    let sig1 = patched::patched_sign(b"patched-message-1", &sk1, &pp, &mut tape);
    let sig2 = patched::patched_sign(b"patched-message-2", &sk2, &pp, &mut tape);
    let signed = [
        (sig1, IdMsgPair::new(b"patched-signer-1", b"patched-message-1")),
        (sig2, IdMsgPair::new(b"patched-signer-2", b"patched-message-2")),
    ];
    let report = patched::demonstrate_aggregation_break(&signed, &pp, &mk, &mut tape);
    let expected = report.naive.decision == Decision::Reject
        && report.exhibit.all_signatures_valid
        && report.exhibit.individual_u_sets_differ;
    if let Some(path) = out {
        write_json(path, &report)?;
    }
    CmdOutput::of(&report, expected)
}
