//! The security-proof simulator and the fork-and-replay experiment.
//!
//! The simulator embeds a CDH challenge into the public parameters
//! (g1 = g^a, H1 answers carry g^b on a biased coin), answers key and
//! signature queries without the master key, and replays the adversary with
//! the same random tape while resampling H2 answers from the fork point.
//! When the two runs forge on the same pair with equal U and distinct target
//! hashes — and the coin embedded the challenge — the extractor recovers
//! g^{ab} and checks it against the instance witness.
//!
//! The experiment demonstrates both directions: extraction succeeds against
//! the tape-deterministic keyed control and never against forgers whose U
//! depends on the target hash (the linear-combination forger and the
//! re-randomizing wrapper).

mod adversaries;
mod experiment;
mod sim;

pub use adversaries::{
    Adversary, AdversaryKind, ForgeryOutput, KeyedForger, ReRandomizingForger, UniversalForger,
};
pub use experiment::{
    record_trial, run_experiment, summarize, ExperimentReport, ExperimentSummary,
    ExtractionOutcome, TrialRecord,
};
pub use sim::{QueryOracle, RunWorld};

use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::cdh::CdhInstance;
use crate::error::Error;
use crate::fixtures::ForkScript;
use crate::group::GroupElement;
use crate::ibs::verify;
use crate::scalar::Scalar;
use crate::tape::{derive_seed, RandomTape};

use sim::{H1Table, H2Table};

/// Simulator parameters: coin bias Pr[c = 0], trial count, and the base
/// seed that determines every stream in the experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulatorConfig {
    pub coin_bias: f64,
    pub fork_trials: usize,
    pub seed: u64,
}

impl SimulatorConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.coin_bias > 0.0 && self.coin_bias < 1.0) {
            return Err(Error::precondition("coin bias must lie strictly in (0, 1)"));
        }
        Ok(())
    }
}

impl Default for SimulatorConfig {
    fn default() -> Self {
        SimulatorConfig {
            coin_bias: 0.5,
            fork_trials: 200,
            seed: 1,
        }
    }
}

/// H1-list row: (ID, t, coin, Q) with Q = g_b^t when the coin embedded the
/// challenge and Q = g^t otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Entry {
    pub id: Vec<u8>,
    pub t: Scalar,
    pub coin: u8,
    pub q: GroupElement,
}

/// H2-list row; `query_index` is the ordinal of the first query on this
/// (id, msg) pair and defines the fork point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H2Entry {
    pub id: Vec<u8>,
    pub msg: Vec<u8>,
    pub h: Scalar,
    pub query_index: usize,
}

/// Why a fork trial produced no usable forgery pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbortReason {
    /// A private-key query hit a challenge-embedding coin.
    KeyQueryAbort,
    FirstRunGaveUp,
    FirstRunInvalidForgery,
    SecondRunGaveUp,
    SecondRunInvalidForgery,
    /// The second run forged on a different (id, msg).
    TargetMismatch,
    /// The replayed run queried H2 in a different pre-fork order; the
    /// adversary violated the determinism contract.
    ReplayDivergence,
}

/// Why extraction failed on a completed fork.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtractionFailure {
    CoinNotZero,
    HashesEqual,
    UMismatch,
}

/// Both forgeries of a successful fork plus the H1 data extraction needs.
#[derive(Debug, Clone)]
pub struct ForkedPair {
    pub target_id: Vec<u8>,
    pub target_msg: Vec<u8>,
    pub first_sig: crate::ibs::Signature,
    pub first_h: Scalar,
    pub second_sig: crate::ibs::Signature,
    pub second_h: Scalar,
    pub t_star: Scalar,
    pub coin_star: u8,
}

impl ForkedPair {
    pub fn u_equal(&self) -> bool {
        self.first_sig.u == self.second_sig.u
    }
}

#[derive(Debug, Clone)]
pub enum ForkOutcome {
    Aborted(AbortReason),
    Forked(Box<ForkedPair>),
}

/// Record of one fork experiment.
#[derive(Debug, Clone)]
pub struct ForkTranscript {
    /// Ordinal of the first H2 query on the forged pair, once known.
    pub fork_index: Option<usize>,
    pub outcome: ForkOutcome,
}

impl ForkTranscript {
    fn aborted(fork_index: Option<usize>, reason: AbortReason) -> Self {
        ForkTranscript {
            fork_index,
            outcome: ForkOutcome::Aborted(reason),
        }
    }

    pub fn forked(&self) -> Option<&ForkedPair> {
        match &self.outcome {
            ForkOutcome::Forked(pair) => Some(pair),
            ForkOutcome::Aborted(_) => None,
        }
    }

    pub fn abort_reason(&self) -> Option<AbortReason> {
        match &self.outcome {
            ForkOutcome::Aborted(reason) => Some(*reason),
            ForkOutcome::Forked(_) => None,
        }
    }
}

/// Runs the two-pass fork experiment against one CDH instance.
///
/// Run 1 answers H2 fresh and records the query index j* of the forged
/// (id*, msg*) — backfilling the query if the adversary never made it.
/// Run 2 replays the same tape, shares the H1 table, replays H2 answers
/// below j*, and resamples from j* onward.
pub fn run_fork(
    adversary: &dyn Adversary,
    cfg: &SimulatorConfig,
    instance: &CdhInstance,
) -> ForkTranscript {
    run_scripted_fork(adversary, cfg, instance, None)
}

/// [`run_fork`] with optional pinned values (simulator coins, per-run H2
/// answers, adversary tape) for replaying worked examples.
pub fn run_scripted_fork(
    adversary: &dyn Adversary,
    cfg: &SimulatorConfig,
    instance: &CdhInstance,
    script: Option<&ForkScript>,
) -> ForkTranscript {
    let desc = *instance.desc();
    let h1_seed = derive_seed(cfg.seed, 1);
    let h2_run1_seed = derive_seed(cfg.seed, 2);
    let h2_run2_seed = derive_seed(cfg.seed, 3);
    let sign_seed = derive_seed(cfg.seed, 4);
    let tape_seed = derive_seed(cfg.seed, 5);

    let s2 = script
        .and_then(|s| s.s2)
        .unwrap_or_else(|| RandomTape::seeded(derive_seed(cfg.seed, 6)).sample_scalar(&desc));
    let pinned_h1 = script.map(|s| s.h1_entries.clone()).unwrap_or_default();
    let tape_pins = script.map(|s| s.tape.clone()).unwrap_or_default();

    let h1_table = Arc::new(Mutex::new(H1Table::new(
        &desc,
        instance.g_b(),
        cfg.coin_bias,
        h1_seed,
        &pinned_h1,
    )));

    // Run 1: fresh H2 answers.
    let scripted_run1 = script.map(|s| s.h2_run1.clone()).unwrap_or_default();
    let world1 = RunWorld::new(
        &desc,
        instance.g_a(),
        s2,
        h1_table.clone(),
        H2Table::fresh(&desc, h2_run1_seed, scripted_run1),
        sign_seed,
    );
    let mut tape1 = RandomTape::with_pinned(&tape_pins, tape_seed);
    let out1 = adversary.forge(world1.pp(), &world1, &mut tape1);
    if let Some(reason) = world1.abort_reason() {
        return ForkTranscript::aborted(None, reason);
    }
    let Some(out1) = out1 else {
        return ForkTranscript::aborted(None, AbortReason::FirstRunGaveUp);
    };
    let first_h = world1.h2_query(&out1.id, &out1.msg);
    let fork_index = world1
        .h2_index_of(&out1.id, &out1.msg)
        .expect("query above materialized the entry");
    if !verify(&out1.sig, &out1.id, &out1.msg, world1.pp()).is_accept() {
        return ForkTranscript::aborted(Some(fork_index), AbortReason::FirstRunInvalidForgery);
    }

    // Run 2: identical tape, pinned H2 prefix, fresh answers from j* on.
    let scripted_run2 = script.map(|s| s.h2_run2.clone()).unwrap_or_default();
    let world2 = RunWorld::new(
        &desc,
        instance.g_a(),
        s2,
        h1_table.clone(),
        H2Table::replay(&desc, world1.h2_prefix(fork_index), h2_run2_seed, scripted_run2),
        sign_seed,
    );
    let mut tape2 = RandomTape::with_pinned(&tape_pins, tape_seed);
    let out2 = adversary.forge(world2.pp(), &world2, &mut tape2);
    if let Some(reason) = world2.abort_reason() {
        return ForkTranscript::aborted(Some(fork_index), reason);
    }
    let Some(out2) = out2 else {
        return ForkTranscript::aborted(Some(fork_index), AbortReason::SecondRunGaveUp);
    };
    if world2.replay_violated() {
        return ForkTranscript::aborted(Some(fork_index), AbortReason::ReplayDivergence);
    }
    if out2.id != out1.id || out2.msg != out1.msg {
        return ForkTranscript::aborted(Some(fork_index), AbortReason::TargetMismatch);
    }
    let second_h = world2.h2_query(&out2.id, &out2.msg);
    if !verify(&out2.sig, &out2.id, &out2.msg, world2.pp()).is_accept() {
        return ForkTranscript::aborted(Some(fork_index), AbortReason::SecondRunInvalidForgery);
    }

    // Retrieve (t*, c*); shared table, so both runs agree on it.
    let entry = world1.h1_entry(&out1.id);
    ForkTranscript {
        fork_index: Some(fork_index),
        outcome: ForkOutcome::Forked(Box::new(ForkedPair {
            target_id: out1.id,
            target_msg: out1.msg,
            first_sig: out1.sig,
            first_h,
            second_sig: out2.sig,
            second_h,
            t_star: entry.t,
            coin_star: entry.coin,
        })),
    }
}

/// Computes (V1 * V2^{-1})^{1 / (t* (h1* - h2*))}, which equals g^{ab}
/// exactly when the fork yielded equal U components, distinct target
/// hashes, and a challenge-embedding coin.
pub fn extract_cdh(pair: &ForkedPair) -> Result<GroupElement, ExtractionFailure> {
    if pair.coin_star != 0 {
        return Err(ExtractionFailure::CoinNotZero);
    }
    if pair.first_h == pair.second_h {
        return Err(ExtractionFailure::HashesEqual);
    }
    if !pair.u_equal() {
        return Err(ExtractionFailure::UMismatch);
    }
    let ratio = pair.first_sig.v * pair.second_sig.v.invert();
    let denom = pair.t_star * (pair.first_h - pair.second_h);
    let exponent = denom.inv().expect("t* and h1* - h2* are nonzero");
    Ok(ratio.pow(exponent))
}
