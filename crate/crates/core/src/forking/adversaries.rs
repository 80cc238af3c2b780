//! Built-in adversaries for the fork experiments.
//!
//! All three satisfy the determinism contract: given the same tape and the
//! same oracle-answer sequence they make the same queries and return the
//! same output, which is what makes replaying "the same random tape with a
//! different choice of H2" meaningful.

use serde::{Deserialize, Serialize};

use crate::attacks::{rerandomize_forgery, universal_forge};
use crate::ibs::{gen_key, sign, MasterKey, PublicParams, Signature};
use crate::tape::RandomTape;

use super::sim::QueryOracle;

/// A forgery as the adversary reports it.
#[derive(Debug, Clone)]
pub struct ForgeryOutput {
    pub id: Vec<u8>,
    pub msg: Vec<u8>,
    pub sig: Signature,
}

/// Behavioral contract for a forger run against the simulator.
pub trait Adversary {
    fn name(&self) -> &'static str;

    /// Returns a forgery or gives up. Randomness comes exclusively from the
    /// tape; everything else the adversary learns arrives through `pp`'s
    /// hash oracles and `queries`.
    fn forge(
        &self,
        pp: &PublicParams,
        queries: &dyn QueryOracle,
        tape: &mut RandomTape,
    ) -> Option<ForgeryOutput>;
}

/// Positive control: reads the master key off the transparent backend and
/// signs honestly with tape randomness. Its forged U is fixed by the tape
/// before the fork point, so extraction works exactly as the proof expects.
pub struct KeyedForger;

impl KeyedForger {
    pub const TARGET_ID: &'static [u8] = b"keyed-target";
    pub const TARGET_MSG: &'static [u8] = b"keyed-payload";
}

impl Adversary for KeyedForger {
    fn name(&self) -> &'static str {
        "keyed"
    }

    fn forge(
        &self,
        pp: &PublicParams,
        _queries: &dyn QueryOracle,
        tape: &mut RandomTape,
    ) -> Option<ForgeryOutput> {
        let mk = MasterKey {
            s1: pp.g1.transparent_dlog(),
            s2: pp.g2.transparent_dlog(),
        };
        let sk = gen_key(Self::TARGET_ID, &mk, pp);
        let sig = sign(Self::TARGET_MSG, &sk, pp, tape);
        Some(ForgeryOutput {
            id: Self::TARGET_ID.to_vec(),
            msg: Self::TARGET_MSG.to_vec(),
            sig,
        })
    }
}

/// The two-query linear-combination forger, run against the simulator's
/// signing oracle. Its implied randomness depends on the target hash through
/// the solved coefficients, so forked runs land on different U components.
pub struct UniversalForger;

impl UniversalForger {
    pub const TARGET_ID: &'static [u8] = b"universal-target";
    pub const QUERY_MSG_1: &'static [u8] = b"queried-message-1";
    pub const QUERY_MSG_2: &'static [u8] = b"queried-message-2";
    pub const TARGET_MSG: &'static [u8] = b"forged-payload";
}

impl Adversary for UniversalForger {
    fn name(&self) -> &'static str {
        "universal"
    }

    fn forge(
        &self,
        pp: &PublicParams,
        queries: &dyn QueryOracle,
        _tape: &mut RandomTape,
    ) -> Option<ForgeryOutput> {
        let sig1 = queries.sign_query(Self::TARGET_ID, Self::QUERY_MSG_1);
        let sig2 = queries.sign_query(Self::TARGET_ID, Self::QUERY_MSG_2);
        let forged = universal_forge(
            &sig1,
            Self::QUERY_MSG_1,
            &sig2,
            Self::QUERY_MSG_2,
            Self::TARGET_ID,
            Self::TARGET_MSG,
            pp,
        )
        .ok()?;
        Some(ForgeryOutput {
            id: Self::TARGET_ID.to_vec(),
            msg: Self::TARGET_MSG.to_vec(),
            sig: forged.sig,
        })
    }
}

/// Wraps any forger and re-randomizes its output with h' = H'(U || h*),
/// defeating extraction while leaving the forgery valid.
pub struct ReRandomizingForger<A> {
    inner: A,
}

impl<A> ReRandomizingForger<A> {
    pub fn new(inner: A) -> Self {
        ReRandomizingForger { inner }
    }
}

impl<A: Adversary> Adversary for ReRandomizingForger<A> {
    fn name(&self) -> &'static str {
        "rerand"
    }

    fn forge(
        &self,
        pp: &PublicParams,
        queries: &dyn QueryOracle,
        tape: &mut RandomTape,
    ) -> Option<ForgeryOutput> {
        let raw = self.inner.forge(pp, queries, tape)?;
        let sig = rerandomize_forgery(&raw.sig, &raw.id, &raw.msg, pp).ok()?;
        Some(ForgeryOutput { sig, ..raw })
    }
}

/// Adversary selector used by experiment reports and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdversaryKind {
    Keyed,
    Universal,
    /// [`ReRandomizingForger`] wrapped around the keyed control.
    Rerand,
}

impl AdversaryKind {
    pub fn instantiate(&self) -> Box<dyn Adversary> {
        match self {
            AdversaryKind::Keyed => Box::new(KeyedForger),
            AdversaryKind::Universal => Box::new(UniversalForger),
            AdversaryKind::Rerand => Box::new(ReRandomizingForger::new(KeyedForger)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AdversaryKind::Keyed => "keyed",
            AdversaryKind::Universal => "universal",
            AdversaryKind::Rerand => "rerand",
        }
    }
}
