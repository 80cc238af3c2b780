//! Batch fork experiments and their JSON reports.

use serde::{Deserialize, Serialize};

use crate::cdh::CdhInstance;
use crate::group::GroupDescription;
use crate::tape::{derive_seed, RandomTape};

use super::{
    extract_cdh, run_fork, AbortReason, AdversaryKind, ExtractionFailure, ForkOutcome,
    ForkTranscript, SimulatorConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtractionOutcome {
    Success,
    CoinNotZero,
    HashesEqual,
    UMismatch,
}

impl From<ExtractionFailure> for ExtractionOutcome {
    fn from(f: ExtractionFailure) -> Self {
        match f {
            ExtractionFailure::CoinNotZero => ExtractionOutcome::CoinNotZero,
            ExtractionFailure::HashesEqual => ExtractionOutcome::HashesEqual,
            ExtractionFailure::UMismatch => ExtractionOutcome::UMismatch,
        }
    }
}

/// One trial of a fork experiment; absent fields mean the trial never got
/// that far.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub fork_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abort_reason: Option<AbortReason>,
    pub h1_star: Option<String>,
    pub h2_star: Option<String>,
    pub u_equal: Option<bool>,
    pub extraction: Option<ExtractionOutcome>,
    pub witness_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extracted: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub trials: usize,
    /// Both runs forged validly on the same (id, msg).
    pub forks_succeeded: usize,
    /// Extractions that returned an element (witness checked separately).
    pub extractions: usize,
    /// Successful forks whose two U components differ.
    pub u_mismatches: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub adversary: String,
    pub modulus: String,
    pub coin_bias: f64,
    pub seed: u64,
    pub trials: Vec<TrialRecord>,
    pub summary: ExperimentSummary,
}

impl ExperimentReport {
    /// Successful forks with h1* != h2* and a challenge-embedding coin —
    /// the trials on which the original proof promises extraction.
    pub fn eligible_for_extraction(&self) -> usize {
        self.trials
            .iter()
            .filter(|t| {
                t.abort_reason.is_none()
                    && t.h1_star != t.h2_star
                    && t.extraction != Some(ExtractionOutcome::CoinNotZero)
            })
            .count()
    }

    pub fn witness_matches(&self) -> usize {
        self.trials
            .iter()
            .filter(|t| t.witness_match == Some(true))
            .count()
    }
}

/// Turns one transcript into a report row, running the extractor on
/// successful forks and checking any extracted element against the witness.
pub fn record_trial(trial: usize, tr: &ForkTranscript, instance: &CdhInstance) -> TrialRecord {
    match &tr.outcome {
        ForkOutcome::Aborted(reason) => TrialRecord {
            trial,
            fork_index: tr.fork_index,
            abort_reason: Some(*reason),
            h1_star: None,
            h2_star: None,
            u_equal: None,
            extraction: None,
            witness_match: None,
            extracted: None,
        },
        ForkOutcome::Forked(pair) => {
            let (extraction, extracted, witness_match) = match extract_cdh(pair) {
                Ok(elem) => (
                    ExtractionOutcome::Success,
                    Some(elem.to_wire_string()),
                    Some(instance.is_solution(&elem)),
                ),
                Err(f) => (f.into(), None, None),
            };
            TrialRecord {
                trial,
                fork_index: tr.fork_index,
                abort_reason: None,
                h1_star: Some(pair.first_h.to_string()),
                h2_star: Some(pair.second_h.to_string()),
                u_equal: Some(pair.u_equal()),
                extraction: Some(extraction),
                witness_match,
                extracted,
            }
        }
    }
}

pub fn summarize(trials: &[TrialRecord]) -> ExperimentSummary {
    ExperimentSummary {
        trials: trials.len(),
        forks_succeeded: trials.iter().filter(|t| t.abort_reason.is_none()).count(),
        extractions: trials
            .iter()
            .filter(|t| t.extraction == Some(ExtractionOutcome::Success))
            .count(),
        u_mismatches: trials.iter().filter(|t| t.u_equal == Some(false)).count(),
    }
}

/// Runs `cfg.fork_trials` independent fork experiments (seeds derived as
/// base seed + trial index), each against a fresh CDH instance.
pub fn run_experiment(
    kind: AdversaryKind,
    cfg: &SimulatorConfig,
    desc: &GroupDescription,
) -> ExperimentReport {
    let adversary = kind.instantiate();
    let mut trials = Vec::with_capacity(cfg.fork_trials);
    for trial in 0..cfg.fork_trials {
        let trial_seed = cfg.seed.wrapping_add(trial as u64);
        let mut instance_tape = RandomTape::seeded(derive_seed(trial_seed, 0));
        let instance = CdhInstance::generate(desc, &mut instance_tape);
        let trial_cfg = SimulatorConfig {
            seed: trial_seed,
            ..*cfg
        };
        let transcript = run_fork(adversary.as_ref(), &trial_cfg, &instance);
        trials.push(record_trial(trial, &transcript, &instance));
    }
    let summary = summarize(&trials);
    ExperimentReport {
        adversary: kind.name().to_string(),
        modulus: desc.modulus().to_string(),
        coin_bias: cfg.coin_bias,
        seed: cfg.seed,
        trials,
        summary,
    }
}
