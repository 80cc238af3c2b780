//! The aggregate layer: component-wise products of signature triples,
//! verified against a multiset of (identity, message) pairs.
//!
//! Aggregation is full: any two (possibly already aggregated) signatures
//! combine, duplicates are retained, and verification is invariant under
//! permutation of the multiset. The empty aggregate (identity triple, empty
//! multiset) serves as the fold unit.

use crate::error::Error;
use crate::group::{checked_pair, pair, GroupDescription};
use crate::ibs::{Decision, PublicParams, Signature};

/// One covered (identity, message) pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IdMsgPair {
    pub id: Vec<u8>,
    pub msg: Vec<u8>,
}

impl IdMsgPair {
    pub fn new(id: &[u8], msg: &[u8]) -> Self {
        IdMsgPair {
            id: id.to_vec(),
            msg: msg.to_vec(),
        }
    }
}

/// Multiset of (identity, message) pairs. Entry order is a serialization
/// artifact; duplicates are meaningful and contribute multiplicatively.
#[derive(Debug, Clone, Default, Eq)]
pub struct IdMsgMultiset {
    entries: Vec<IdMsgPair>,
}

impl IdMsgMultiset {
    pub fn new() -> Self {
        IdMsgMultiset::default()
    }

    pub fn push(&mut self, pair: IdMsgPair) {
        self.entries.push(pair);
    }

    pub fn entries(&self) -> &[IdMsgPair] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn sorted(&self) -> Vec<&IdMsgPair> {
        let mut v: Vec<&IdMsgPair> = self.entries.iter().collect();
        v.sort();
        v
    }
}

impl PartialEq for IdMsgMultiset {
    /// Multiset equality: entry order does not matter.
    fn eq(&self, other: &Self) -> bool {
        self.sorted() == other.sorted()
    }
}

impl FromIterator<IdMsgPair> for IdMsgMultiset {
    fn from_iter<I: IntoIterator<Item = IdMsgPair>>(iter: I) -> Self {
        IdMsgMultiset {
            entries: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregateSignature {
    pub sig: Signature,
    pub set: IdMsgMultiset,
}

impl AggregateSignature {
    /// The fold unit: identity triple over the empty multiset.
    pub fn empty(desc: &GroupDescription) -> Self {
        let id = desc.identity();
        AggregateSignature {
            sig: Signature { u: id, v: id, w: id },
            set: IdMsgMultiset::new(),
        }
    }

    /// Wraps a single signature as a one-entry aggregate.
    pub fn from_signature(sig: Signature, id: &[u8], msg: &[u8]) -> Self {
        let mut set = IdMsgMultiset::new();
        set.push(IdMsgPair::new(id, msg));
        AggregateSignature { sig, set }
    }
}

/// Component-wise product of the triples; the multisets take their union
/// (duplicates retained).
pub fn aggregate(
    a1: &AggregateSignature,
    a2: &AggregateSignature,
    _pp: &PublicParams,
) -> Result<AggregateSignature, Error> {
    let sig = Signature {
        u: a1.sig.u.checked_mul(a2.sig.u)?,
        v: a1.sig.v.checked_mul(a2.sig.v)?,
        w: a1.sig.w.checked_mul(a2.sig.w)?,
    };
    let set = a1
        .set
        .entries()
        .iter()
        .chain(a2.set.entries())
        .cloned()
        .collect();
    Ok(AggregateSignature { sig, set })
}

/// Product-form verification:
///
///   e(V, g) = e(prod_i H1(ID_i)^{h_i} * U, g1)
///   e(W, g) = e(prod_i H1(ID_i) * U, g2)
///
/// The empty multiset accepts only the identity triple (degenerate vacuous
/// case).
pub fn agg_verify(agg: &AggregateSignature, pp: &PublicParams) -> Decision {
    let g = pp.desc.generator();
    let triple_ok = agg.sig.u.same_group(&g) && agg.sig.v.same_group(&g) && agg.sig.w.same_group(&g);
    if !triple_ok {
        return Decision::Reject;
    }
    if agg.set.is_empty() {
        let identity = agg.sig.u.is_identity() && agg.sig.v.is_identity() && agg.sig.w.is_identity();
        return Decision::from_bool(identity);
    }

    let mut keyed_product = pp.desc.identity();
    let mut plain_product = pp.desc.identity();
    for entry in agg.set.entries() {
        let q = pp.h1(&entry.id);
        let h = pp.h2(&entry.id, &entry.msg);
        keyed_product = keyed_product * q.pow(h);
        plain_product = plain_product * q;
    }

    let first = match checked_pair(keyed_product * agg.sig.u, pp.g1) {
        Ok(rhs) => pair(agg.sig.v, g) == rhs,
        Err(_) => false,
    };
    let second = match checked_pair(plain_product * agg.sig.u, pp.g2) {
        Ok(rhs) => pair(agg.sig.w, g) == rhs,
        Err(_) => false,
    };
    Decision::from_bool(first && second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ibs::{gen_key, setup, sign, verify};
    use crate::oracle::OracleHandle;
    use crate::tape::RandomTape;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn world(seed: u64) -> (PublicParams, crate::ibs::MasterKey, RandomTape) {
        let desc = GroupDescription::default();
        let mut tape = RandomTape::seeded(seed);
        let (pp, mk) = setup(&desc, OracleHandle::digest(&desc), &mut tape);
        (pp, mk, tape)
    }

    fn signed_aggregate(
        pp: &PublicParams,
        mk: &crate::ibs::MasterKey,
        tape: &mut RandomTape,
        id: &[u8],
        msg: &[u8],
    ) -> AggregateSignature {
        let sk = gen_key(id, mk, pp);
        AggregateSignature::from_signature(sign(msg, &sk, pp, tape), id, msg)
    }

    #[test]
    fn two_party_aggregate_accepts() {
        let (pp, mk, mut tape) = world(1);
        let a = signed_aggregate(&pp, &mk, &mut tape, b"id_a", b"msg_a");
        let b = signed_aggregate(&pp, &mk, &mut tape, b"id_b", b"msg_b");
        // Transparent check: the combined triple is the exponent-wise sum.
        let combined = aggregate(&a, &b, &pp).unwrap();
        assert_eq!(
            combined.sig.u.transparent_dlog(),
            a.sig.u.transparent_dlog() + b.sig.u.transparent_dlog()
        );
        assert_eq!(agg_verify(&combined, &pp), Decision::Accept);
    }

    #[test]
    fn empty_aggregate_is_fold_unit() {
        let (pp, mk, mut tape) = world(2);
        let a = signed_aggregate(&pp, &mk, &mut tape, b"id_a", b"msg_a");
        let unit = AggregateSignature::empty(&pp.desc);
        assert_eq!(agg_verify(&unit, &pp), Decision::Accept);
        let merged = aggregate(&a, &unit, &pp).unwrap();
        assert_eq!(merged, a);
        // Empty multiset with a non-identity triple is rejected.
        let bogus = AggregateSignature {
            sig: a.sig,
            set: IdMsgMultiset::new(),
        };
        assert_eq!(agg_verify(&bogus, &pp), Decision::Reject);
    }

    #[test]
    fn duplicate_entry_counts_twice() {
        let (pp, mk, mut tape) = world(3);
        let a = signed_aggregate(&pp, &mk, &mut tape, b"id_a", b"msg_a");
        let b = signed_aggregate(&pp, &mk, &mut tape, b"id_a", b"msg_a");
        let twice = aggregate(&a, &b, &pp).unwrap();
        assert_eq!(twice.set.len(), 2);
        assert_eq!(agg_verify(&twice, &pp), Decision::Accept);
        // Dropping one of the duplicate entries breaks the product.
        let mut dropped = twice.clone();
        dropped.set = IdMsgMultiset::from_iter([twice.set.entries()[0].clone()]);
        assert_eq!(agg_verify(&dropped, &pp), Decision::Reject);
    }

    #[test]
    fn singleton_agrees_with_plain_verify() {
        let (pp, mk, mut tape) = world(4);
        for k in 0..100u32 {
            let id = format!("signer-{k}");
            let msg = format!("payload-{k}");
            let agg = signed_aggregate(&pp, &mk, &mut tape, id.as_bytes(), msg.as_bytes());
            let direct = verify(&agg.sig, id.as_bytes(), msg.as_bytes(), &pp);
            assert_eq!(agg_verify(&agg, &pp), direct);
            assert_eq!(direct, Decision::Accept);
        }
    }

    #[test]
    fn k_way_folds_accept() {
        // k = 1..10 independently generated signatures, 20 trials per k.
        let desc = GroupDescription::default();
        for k in 1..=10usize {
            for trial in 0..20u64 {
                let mut tape = RandomTape::seeded(10_000 + 37 * trial + k as u64);
                let (pp, mk) = setup(&desc, OracleHandle::digest(&desc), &mut tape);
                let mut agg = AggregateSignature::empty(&desc);
                for i in 0..k {
                    let id = format!("signer-{trial}-{i}");
                    let msg = format!("payload-{trial}-{i}");
                    let single =
                        signed_aggregate(&pp, &mk, &mut tape, id.as_bytes(), msg.as_bytes());
                    agg = aggregate(&agg, &single, &pp).unwrap();
                }
                assert_eq!(agg.set.len(), k);
                assert_eq!(agg_verify(&agg, &pp), Decision::Accept);
            }
        }
    }

    #[test]
    fn permutation_invariance() {
        let (pp, mk, mut tape) = world(5);
        let mut agg = AggregateSignature::empty(&pp.desc);
        for i in 0..6 {
            let id = format!("signer-{i}");
            let msg = format!("payload-{i}");
            let single = signed_aggregate(&pp, &mk, &mut tape, id.as_bytes(), msg.as_bytes());
            agg = aggregate(&agg, &single, &pp).unwrap();
        }
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(6);
        for _ in 0..20 {
            let mut entries = agg.set.entries().to_vec();
            entries.shuffle(&mut rng);
            let shuffled = AggregateSignature {
                sig: agg.sig,
                set: IdMsgMultiset::from_iter(entries),
            };
            assert_eq!(agg_verify(&shuffled, &pp), Decision::Accept);
        }
        // A shuffled set still rejects a tampered triple.
        let tampered = AggregateSignature {
            sig: Signature {
                u: agg.sig.u * pp.desc.generator(),
                ..agg.sig
            },
            set: agg.set.clone(),
        };
        assert_eq!(agg_verify(&tampered, &pp), Decision::Reject);
    }

    #[test]
    fn associativity_and_commutativity() {
        let (pp, mk, mut tape) = world(7);
        let a = signed_aggregate(&pp, &mk, &mut tape, b"a", b"ma");
        let b = signed_aggregate(&pp, &mk, &mut tape, b"b", b"mb");
        let c = signed_aggregate(&pp, &mk, &mut tape, b"c", b"mc");
        let left = aggregate(&a, &aggregate(&b, &c, &pp).unwrap(), &pp).unwrap();
        let right = aggregate(&aggregate(&b, &a, &pp).unwrap(), &c, &pp).unwrap();
        assert_eq!(left.sig, right.sig);
        assert_eq!(left.set, right.set);
        assert_eq!(agg_verify(&left, &pp), Decision::Accept);
        assert_eq!(agg_verify(&right, &pp), Decision::Accept);
    }

    #[test]
    fn dropping_an_entry_rejects() {
        let (pp, mk, mut tape) = world(8);
        let a = signed_aggregate(&pp, &mk, &mut tape, b"id_a", b"msg_a");
        let b = signed_aggregate(&pp, &mk, &mut tape, b"id_b", b"msg_b");
        let combined = aggregate(&a, &b, &pp).unwrap();
        let truncated = AggregateSignature {
            sig: combined.sig,
            set: IdMsgMultiset::from_iter([combined.set.entries()[0].clone()]),
        };
        assert_eq!(agg_verify(&truncated, &pp), Decision::Reject);
    }

    #[test]
    fn cross_group_aggregation_errors() {
        let (pp, mk, mut tape) = world(9);
        let a = signed_aggregate(&pp, &mk, &mut tape, b"id_a", b"msg_a");
        let other = GroupDescription::new(101).unwrap();
        let alien = AggregateSignature::empty(&other);
        assert!(aggregate(&a, &alien, &pp).is_err());
    }
}
