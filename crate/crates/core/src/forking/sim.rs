//! Simulator internals: the programmable H1/H2 tables and the per-run world
//! the adversary interacts with.
//!
//! One fork experiment shares a single lazily-materialized H1 table across
//! both runs (the simulator's own randomness is fixed by the replay; only H2
//! answers from the fork point onward are resampled). Each run gets its own
//! H2 table: run 1 answers fresh, run 2 replays the recorded prefix below
//! the fork index and draws fresh answers from a different stream above it.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::group::{GroupDescription, GroupElement};
use crate::ibs::{PrivateKey, PublicParams, Signature};
use crate::oracle::{DigestOracle, OracleHandle, SchemeOracle};
use crate::scalar::Scalar;

use super::{AbortReason, H1Entry, H2Entry};

pub(super) struct H1Table {
    desc: GroupDescription,
    g_b: GroupElement,
    coin_bias: f64,
    rng: ChaCha20Rng,
    entries: Vec<H1Entry>,
    index: HashMap<Vec<u8>, usize>,
}

impl H1Table {
    pub(super) fn new(
        desc: &GroupDescription,
        g_b: GroupElement,
        coin_bias: f64,
        seed: u64,
        pinned: &[(Vec<u8>, Scalar, u8)],
    ) -> Self {
        let mut table = H1Table {
            desc: *desc,
            g_b,
            coin_bias,
            rng: ChaCha20Rng::seed_from_u64(seed),
            entries: Vec::new(),
            index: HashMap::new(),
        };
        for (id, t, coin) in pinned {
            table.insert(id.clone(), *t, *coin);
        }
        table
    }

    fn insert(&mut self, id: Vec<u8>, t: Scalar, coin: u8) -> usize {
        let q = if coin == 0 {
            self.g_b.pow(t)
        } else {
            self.desc.generator().pow(t)
        };
        let idx = self.entries.len();
        self.entries.push(H1Entry { id: id.clone(), t, coin, q });
        self.index.insert(id, idx);
        idx
    }

    /// Memoized lookup; fresh ids draw t in Z_p* and a coin with
    /// Pr[coin = 0] = coin_bias.
    pub(super) fn entry(&mut self, id: &[u8]) -> H1Entry {
        if let Some(&i) = self.index.get(id) {
            return self.entries[i].clone();
        }
        let t = self.desc.scalar(self.rng.gen_range(1..self.desc.modulus()));
        let coin = if self.rng.gen_bool(self.coin_bias) { 0 } else { 1 };
        let i = self.insert(id.to_vec(), t, coin);
        self.entries[i].clone()
    }
}

struct AnswerSource {
    scripted: VecDeque<Scalar>,
    rng: ChaCha20Rng,
}

impl AnswerSource {
    fn new(seed: u64, scripted: Vec<Scalar>) -> Self {
        AnswerSource {
            scripted: scripted.into(),
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    fn next(&mut self, desc: &GroupDescription) -> Scalar {
        match self.scripted.pop_front() {
            Some(h) => h,
            None => desc.scalar(self.rng.gen_range(1..desc.modulus())),
        }
    }
}

enum H2Mode {
    Fresh(AnswerSource),
    Replay {
        pinned: Vec<H2Entry>,
        cursor: usize,
        source: AnswerSource,
    },
}

pub(super) struct H2Table {
    desc: GroupDescription,
    entries: Vec<H2Entry>,
    index: HashMap<(Vec<u8>, Vec<u8>), usize>,
    mode: H2Mode,
    replay_violation: bool,
}

impl H2Table {
    pub(super) fn fresh(desc: &GroupDescription, seed: u64, scripted: Vec<Scalar>) -> Self {
        H2Table {
            desc: *desc,
            entries: Vec::new(),
            index: HashMap::new(),
            mode: H2Mode::Fresh(AnswerSource::new(seed, scripted)),
            replay_violation: false,
        }
    }

    pub(super) fn replay(
        desc: &GroupDescription,
        pinned: Vec<H2Entry>,
        seed: u64,
        scripted: Vec<Scalar>,
    ) -> Self {
        H2Table {
            desc: *desc,
            entries: Vec::new(),
            index: HashMap::new(),
            mode: H2Mode::Replay {
                pinned,
                cursor: 0,
                source: AnswerSource::new(seed, scripted),
            },
            replay_violation: false,
        }
    }

    pub(super) fn query(&mut self, id: &[u8], msg: &[u8]) -> Scalar {
        let key = (id.to_vec(), msg.to_vec());
        if let Some(&i) = self.index.get(&key) {
            return self.entries[i].h;
        }
        let (h, violated) = match &mut self.mode {
            H2Mode::Fresh(source) => (source.next(&self.desc), false),
            H2Mode::Replay { pinned, cursor, source } => {
                if *cursor < pinned.len() {
                    let expected = &pinned[*cursor];
                    let violated = expected.id != id || expected.msg != msg;
                    let h = expected.h;
                    *cursor += 1;
                    (h, violated)
                } else {
                    (source.next(&self.desc), false)
                }
            }
        };
        if violated {
            self.replay_violation = true;
        }
        let query_index = self.entries.len();
        self.entries.push(H2Entry {
            id: key.0.clone(),
            msg: key.1.clone(),
            h,
            query_index,
        });
        self.index.insert(key, query_index);
        h
    }

    pub(super) fn index_of(&self, id: &[u8], msg: &[u8]) -> Option<usize> {
        self.index.get(&(id.to_vec(), msg.to_vec())).copied()
    }

    /// Entries with query index below `n`, in query order.
    pub(super) fn prefix(&self, n: usize) -> Vec<H2Entry> {
        self.entries[..n.min(self.entries.len())].to_vec()
    }

    #[cfg(test)]
    pub(super) fn entries(&self) -> &[H2Entry] {
        &self.entries
    }

    pub(super) fn replay_violated(&self) -> bool {
        self.replay_violation
    }
}

/// The oracle the adversary (and the scheme code it calls) sees during a
/// simulated run. H1 state is shared across the two runs of a fork.
pub(super) struct SimOracle {
    h1: Arc<Mutex<H1Table>>,
    h2: Mutex<H2Table>,
    patched_fallback: DigestOracle,
}

impl SchemeOracle for SimOracle {
    fn h1(&self, id: &[u8]) -> GroupElement {
        self.h1.lock().unwrap().entry(id).q
    }

    fn h2(&self, id: &[u8], msg: &[u8]) -> Scalar {
        self.h2.lock().unwrap().query(id, msg)
    }

    fn h2_patched(&self, u: &GroupElement, id: &[u8], msg: &[u8]) -> Scalar {
        // The simulation targets the original scheme; the patched hash is
        // never programmed.
        self.patched_fallback.h2_patched(u, id, msg)
    }
}

/// Query surface the simulator exposes to the adversary beyond the public
/// hash oracles.
pub trait QueryOracle {
    /// Private-key query. `None` means the simulation aborted (coin = 0);
    /// the abort is recorded on the world, not thrown.
    fn key_query(&self, id: &[u8]) -> Option<PrivateKey>;

    /// Signature query. Never aborts, whatever the coin.
    fn sign_query(&self, id: &[u8], msg: &[u8]) -> Signature;
}

/// One run's mutable world: public parameters wired to the simulator
/// oracle, the signing-query randomness, and the abort flag.
pub struct RunWorld {
    pp: PublicParams,
    oracle: Arc<SimOracle>,
    s2: Scalar,
    sign_rng: Mutex<ChaCha20Rng>,
    abort: Mutex<Option<AbortReason>>,
}

impl RunWorld {
    pub(super) fn new(
        desc: &GroupDescription,
        g_a: GroupElement,
        s2: Scalar,
        h1: Arc<Mutex<H1Table>>,
        h2: H2Table,
        sign_seed: u64,
    ) -> Self {
        let oracle = Arc::new(SimOracle {
            h1,
            h2: Mutex::new(h2),
            patched_fallback: DigestOracle::new(desc),
        });
        let g2 = desc.generator().pow(s2);
        let pp = PublicParams::new(*desc, g_a, g2, OracleHandle::new(oracle.clone()))
            .expect("simulator parameters are well-formed");
        RunWorld {
            pp,
            oracle,
            s2,
            sign_rng: Mutex::new(ChaCha20Rng::seed_from_u64(sign_seed)),
            abort: Mutex::new(None),
        }
    }

    pub fn pp(&self) -> &PublicParams {
        &self.pp
    }

    pub(super) fn abort_reason(&self) -> Option<AbortReason> {
        *self.abort.lock().unwrap()
    }

    pub(super) fn h2_query(&self, id: &[u8], msg: &[u8]) -> Scalar {
        self.oracle.h2(id, msg)
    }

    pub(super) fn h2_index_of(&self, id: &[u8], msg: &[u8]) -> Option<usize> {
        self.oracle.h2.lock().unwrap().index_of(id, msg)
    }

    pub(super) fn h2_prefix(&self, n: usize) -> Vec<H2Entry> {
        self.oracle.h2.lock().unwrap().prefix(n)
    }

    #[cfg(test)]
    pub(super) fn h2_entries(&self) -> Vec<H2Entry> {
        self.oracle.h2.lock().unwrap().entries().to_vec()
    }

    pub(super) fn replay_violated(&self) -> bool {
        self.oracle.h2.lock().unwrap().replay_violated()
    }

    pub(super) fn h1_entry(&self, id: &[u8]) -> H1Entry {
        self.oracle.h1.lock().unwrap().entry(id)
    }
}

impl QueryOracle for RunWorld {
    fn key_query(&self, id: &[u8]) -> Option<PrivateKey> {
        let entry = self.h1_entry(id);
        if entry.coin == 0 {
            let mut abort = self.abort.lock().unwrap();
            abort.get_or_insert(AbortReason::KeyQueryAbort);
            return None;
        }
        Some(PrivateKey {
            id: id.to_vec(),
            d1: self.pp.g1.pow(entry.t),
            d2: self.pp.g2.pow(entry.t),
        })
    }

    fn sign_query(&self, id: &[u8], msg: &[u8]) -> Signature {
        let r_prime = {
            let mut rng = self.sign_rng.lock().unwrap();
            self.pp.desc.scalar(rng.gen_range(1..self.pp.desc.modulus()))
        };
        self.simulated_signature(id, msg, r_prime)
    }
}

impl RunWorld {
    /// sigma = (g^{r'} * H1(ID)^{-h}, g1^{r'}, (H1(ID) * U)^{s2}); valid for
    /// either coin value, with implied randomness r = r' - h * dlog H1(ID).
    fn simulated_signature(&self, id: &[u8], msg: &[u8], r_prime: Scalar) -> Signature {
        let h = self.oracle.h2(id, msg);
        let q = self.oracle.h1(id);
        let g = self.pp.desc.generator();
        let u = g.pow(r_prime) * q.pow(h.negate());
        Signature {
            u,
            v: self.pp.g1.pow(r_prime),
            w: (q * u).pow(self.s2),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ibs::{verify, Decision};

    fn desc101() -> GroupDescription {
        GroupDescription::new(101).unwrap()
    }

    fn test_world(desc: &GroupDescription, seed: u64) -> RunWorld {
        let a = desc.scalar(7);
        let s2 = desc.scalar(11);
        let g_b = desc.generator().pow(desc.scalar(9));
        let h1 = Arc::new(Mutex::new(H1Table::new(desc, g_b, 0.5, seed, &[])));
        RunWorld::new(
            desc,
            desc.generator().pow(a),
            s2,
            h1,
            H2Table::fresh(desc, seed + 1, vec![]),
            seed + 2,
        )
    }

    #[test]
    fn h1_is_memoized_and_coin_consistent() {
        let desc = GroupDescription::default();
        let g_b = desc.generator().pow(desc.scalar(9));
        let mut table = H1Table::new(&desc, g_b, 0.5, 3, &[]);
        let first = table.entry(b"alice");
        let second = table.entry(b"alice");
        assert_eq!(first.q, second.q);
        assert_eq!(first.t, second.t);
        // coin = 0 embeds the challenge: q = g_b^t; coin = 1 gives q = g^t
        if first.coin == 0 {
            assert_eq!(first.q, g_b.pow(first.t));
        } else {
            assert_eq!(first.q, desc.generator().pow(first.t));
        }
    }

    #[test]
    fn coin_fraction_tracks_bias() {
        let desc = GroupDescription::default();
        let g_b = desc.generator().pow(desc.scalar(9));
        let mut table = H1Table::new(&desc, g_b, 0.5, 17, &[]);
        let zeros = (0..1000)
            .filter(|i| table.entry(format!("id-{i}").as_bytes()).coin == 0)
            .count();
        let fraction = zeros as f64 / 1000.0;
        assert!((0.44..=0.56).contains(&fraction), "fraction {fraction}");
    }

    #[test]
    fn key_query_aborts_at_rate_delta() {
        let desc = GroupDescription::default();
        let world = test_world(&desc, 23);
        let aborts = (0..1000)
            .filter(|i| world.key_query(format!("id-{i}").as_bytes()).is_none())
            .count();
        let rate = aborts as f64 / 1000.0;
        assert!((0.44..=0.56).contains(&rate), "abort rate {rate}");
        assert_eq!(world.abort_reason(), Some(AbortReason::KeyQueryAbort));
    }

    #[test]
    fn issued_keys_sign_and_verify() {
        let desc = GroupDescription::default();
        let world = test_world(&desc, 29);
        let mut issued = 0;
        for i in 0..50 {
            let id = format!("signer-{i}");
            if let Some(sk) = world.key_query(id.as_bytes()) {
                issued += 1;
                let mut tape = crate::tape::RandomTape::seeded(100 + i);
                let sig = crate::ibs::sign(b"m", &sk, world.pp(), &mut tape);
                assert_eq!(verify(&sig, id.as_bytes(), b"m", world.pp()), Decision::Accept);
            }
        }
        assert!(issued > 0);
    }

    #[test]
    fn simulated_signatures_always_verify() {
        let desc = GroupDescription::default();
        let world = test_world(&desc, 31);
        for i in 0..1000 {
            let id = format!("id-{}", i % 37);
            let msg = format!("msg-{i}");
            let sig = world.sign_query(id.as_bytes(), msg.as_bytes());
            assert_eq!(
                verify(&sig, id.as_bytes(), msg.as_bytes(), world.pp()),
                Decision::Accept
            );
        }
    }

    #[test]
    fn sim_sign_fixture_case() {
        // t = 13 with coin = 1, h = 4, s2 = 11, r' = 6 gives
        // U = g^(6-52) = g^55, V = g1^6, W = g^(13*11 + 55*11) = g^41.
        let desc = desc101();
        let g_b = desc.generator().pow(desc.scalar(9));
        let pinned = vec![(b"alice".to_vec(), desc.scalar(13), 1u8)];
        let h1 = Arc::new(Mutex::new(H1Table::new(&desc, g_b, 0.5, 5, &pinned)));
        let world = RunWorld::new(
            &desc,
            desc.generator().pow(desc.scalar(7)),
            desc.scalar(11),
            h1,
            H2Table::fresh(&desc, 6, vec![desc.scalar(4)]),
            7,
        );
        let sig = world.simulated_signature(b"alice", b"m", desc.scalar(6));
        assert_eq!(world.h2_query(b"alice", b"m").value(), 4);
        assert_eq!(sig.u, desc.element_from_dlog(55));
        assert_eq!(sig.v, desc.element_from_dlog(42)); // g1^6 = g^(7*6)
        assert_eq!(sig.w, desc.element_from_dlog(41));
        assert_eq!(verify(&sig, b"alice", b"m", world.pp()), Decision::Accept);
    }

    #[test]
    fn sim_sign_u_exponents_look_uniform() {
        // Honest U = g^r never lands on the identity (r in Z_p*), and the
        // simulated U = g^(r' - h t) excludes one message-dependent point per
        // query; conditioned on u != 0 both are uniform over the remaining
        // 100 cells. Chi-square with df = 99, critical value 148.230 at
        // alpha = 0.001, 10^4 samples each.
        const CHI2_DF99_P001: f64 = 148.230;
        let chi2_nonzero = |counts: &[u32; 101]| {
            let total: u32 = counts[1..].iter().sum();
            let expected = total as f64 / 100.0;
            counts[1..]
                .iter()
                .map(|&c| {
                    let d = c as f64 - expected;
                    d * d / expected
                })
                .sum::<f64>()
        };

        let desc = desc101();
        let world = test_world(&desc, 37);
        let mut sim_counts = [0u32; 101];
        for i in 0..10_000 {
            let sig = world.sign_query(b"fixed-id", format!("m{i}").as_bytes());
            sim_counts[sig.u.transparent_dlog().value() as usize] += 1;
        }
        let sim_chi2 = chi2_nonzero(&sim_counts);
        assert!(sim_chi2 < CHI2_DF99_P001, "sim chi2 = {sim_chi2}");

        let mut tape = crate::tape::RandomTape::seeded(41);
        let oracle = crate::oracle::OracleHandle::digest(&desc);
        let (pp, mk) = crate::ibs::setup(&desc, oracle, &mut tape);
        let sk = crate::ibs::gen_key(b"fixed-id", &mk, &pp);
        let mut honest_counts = [0u32; 101];
        for i in 0..10_000 {
            let sig = crate::ibs::sign(format!("m{i}").as_bytes(), &sk, &pp, &mut tape);
            honest_counts[sig.u.transparent_dlog().value() as usize] += 1;
        }
        assert_eq!(honest_counts[0], 0);
        let honest_chi2 = chi2_nonzero(&honest_counts);
        assert!(honest_chi2 < CHI2_DF99_P001, "honest chi2 = {honest_chi2}");
    }

    #[test]
    fn replay_prefix_pins_answers_then_diverges() {
        let desc = GroupDescription::default();
        let mut fresh = H2Table::fresh(&desc, 50, vec![]);
        let queries: Vec<(Vec<u8>, Vec<u8>)> = (0..5)
            .map(|i| (format!("id{i}").into_bytes(), format!("m{i}").into_bytes()))
            .collect();
        let answers: Vec<Scalar> = queries.iter().map(|(i, m)| fresh.query(i, m)).collect();

        let mut replayed = H2Table::replay(&desc, fresh.prefix(3), 51, vec![]);
        for (k, (i, m)) in queries.iter().enumerate() {
            let h = replayed.query(i, m);
            if k < 3 {
                assert_eq!(h, answers[k], "pinned prefix must replay");
            } else if k == 3 {
                assert_ne!(h, answers[k], "post-fork answer must be resampled");
            }
        }
        assert!(!replayed.replay_violated());

        // Divergent query order inside the pinned prefix is flagged.
        let mut bad = H2Table::replay(&desc, fresh.prefix(3), 52, vec![]);
        bad.query(b"unexpected", b"query");
        assert!(bad.replay_violated());
    }
}
