//! The patched variant: h = H2(U || ID || M) instead of h = H2(ID || M).
//!
//! Binding the hash to U removes public re-randomizability and defeats the
//! two-query universal forgery, but it also kills aggregation: the verifier
//! needs every individual U to recompute the h_i, and an aggregate retains
//! only their product. [`demonstrate_aggregation_break`] turns that informal
//! argument into two executable exhibits.

use serde::Serialize;

use crate::error::Error;
use crate::group::GroupElement;
use crate::ibas::{IdMsgMultiset, IdMsgPair};
use crate::ibs::{verify_with_h, Decision, MasterKey, PrivateKey, PublicParams, Signature};
use crate::scalar::Scalar;
use crate::tape::RandomTape;
use crate::wire::SignatureWire;

/// Signs with U computed first so the hash can bind to it.
pub fn patched_sign(
    msg: &[u8],
    sk: &PrivateKey,
    pp: &PublicParams,
    tape: &mut RandomTape,
) -> Signature {
    patched_sign_with_r(msg, sk, pp, tape.sample_scalar(&pp.desc))
}

/// Patched signing with explicit randomness.
pub fn patched_sign_with_r(
    msg: &[u8],
    sk: &PrivateKey,
    pp: &PublicParams,
    r: Scalar,
) -> Signature {
    let g = pp.desc.generator();
    let u = g.pow(r);
    let h = pp.h2_patched(&u, &sk.id, msg);
    Signature {
        u,
        v: sk.d1.pow(h) * pp.g1.pow(r),
        w: sk.d2 * pp.g2.pow(r),
    }
}

/// Recomputes h from the received U, then checks the usual equations.
pub fn patched_verify(sig: &Signature, id: &[u8], msg: &[u8], pp: &PublicParams) -> Decision {
    if !sig.u.same_group(&pp.desc.generator()) {
        return Decision::Reject;
    }
    let h = pp.h2_patched(&sig.u, id, msg);
    verify_with_h(sig, id, h, pp)
}

/// Mounts the two-query linear-combination forgery against the patched
/// scheme, as far as it can be mounted.
///
/// The coefficient system needs h* before the forged U* exists, but the
/// patched h* is a function of U*. The attacker's best executable move is to
/// solve against a guess (here: the hash the target would have under U1) and
/// hope the recomputed hash lands on it; `patched_verify` rejects the result
/// except on that one-in-p event.
pub fn attempt_universal_forge(
    sig1: &Signature,
    msg1: &[u8],
    sig2: &Signature,
    msg2: &[u8],
    target_id: &[u8],
    target_msg: &[u8],
    pp: &PublicParams,
) -> Result<Signature, Error> {
    if msg1 == msg2 {
        return Err(Error::precondition("queried messages must differ"));
    }
    if !patched_verify(sig1, target_id, msg1, pp).is_accept()
        || !patched_verify(sig2, target_id, msg2, pp).is_accept()
    {
        return Err(Error::precondition("input signatures do not verify"));
    }
    let h1 = pp.h2_patched(&sig1.u, target_id, msg1);
    let h2 = pp.h2_patched(&sig2.u, target_id, msg2);
    let h_star_guess = pp.h2_patched(&sig1.u, target_id, target_msg);
    let c = crate::attacks::solve_delta(h1, h2, h_star_guess)?;
    Ok(Signature {
        u: sig1.u.pow(c.delta1) * sig2.u.pow(c.delta2),
        v: sig1.v.pow(c.delta1) * sig2.v.pow(c.delta2),
        w: sig1.w.pow(c.delta1) * sig2.w.pow(c.delta2),
    })
}

/// Outcome of naively aggregating patched signatures and verifying with the
/// h_i recomputed from the only U a verifier has left: the aggregate one.
#[derive(Debug, Clone, Serialize)]
pub struct NaiveAggregationCheck {
    pub aggregate_u: String,
    pub aggregate_v: String,
    pub aggregate_w: String,
    pub decision: Decision,
}

/// Two distinct lists of individually valid patched signatures whose U
/// products coincide — the information-loss exhibit.
#[derive(Debug, Clone, Serialize)]
pub struct EqualProductExhibit {
    pub list_a: Vec<SignatureWire>,
    pub list_b: Vec<SignatureWire>,
    pub aggregate_u: String,
    pub all_signatures_valid: bool,
    pub individual_u_sets_differ: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AggregationBreakReport {
    pub naive: NaiveAggregationCheck,
    pub exhibit: EqualProductExhibit,
}

/// Product-form verification for patched signatures, with each h_i
/// recomputed from the aggregate U (the only U available).
fn naive_agg_verify(triple: &Signature, set: &IdMsgMultiset, pp: &PublicParams) -> Decision {
    use crate::group::{checked_pair, pair};
    let g = pp.desc.generator();
    let mut keyed_product = pp.desc.identity();
    let mut plain_product = pp.desc.identity();
    for entry in set.entries() {
        let q = pp.h1(&entry.id);
        let h = pp.h2_patched(&triple.u, &entry.id, &entry.msg);
        keyed_product = keyed_product * q.pow(h);
        plain_product = plain_product * q;
    }
    let first = match checked_pair(keyed_product * triple.u, pp.g1) {
        Ok(rhs) => pair(triple.v, g) == rhs,
        Err(_) => false,
    };
    let second = match checked_pair(plain_product * triple.u, pp.g2) {
        Ok(rhs) => pair(triple.w, g) == rhs,
        Err(_) => false,
    };
    Decision::from_bool(first && second)
}

/// Builds the two exhibits of the aggregation break.
///
/// (a) The supplied signatures are aggregated component-wise and checked
///     with product-form verification — it rejects because the individual
///     U_i are gone.
/// (b) Two different signature lists with equal U product are constructed
///     (randomness chosen to sum equally), so no verifier function of
///     (aggregate, multiset) can recompute the individual hashes.
///
/// The master key and tape are needed to construct exhibit (b)'s fresh
/// signatures.
pub fn demonstrate_aggregation_break(
    signed: &[(Signature, IdMsgPair)],
    pp: &PublicParams,
    mk: &MasterKey,
    tape: &mut RandomTape,
) -> AggregationBreakReport {
    // (a) naive aggregation of the supplied signatures
    let mut triple = Signature {
        u: pp.desc.identity(),
        v: pp.desc.identity(),
        w: pp.desc.identity(),
    };
    let mut set = IdMsgMultiset::new();
    for (sig, pair) in signed {
        triple = Signature {
            u: triple.u * sig.u,
            v: triple.v * sig.v,
            w: triple.w * sig.w,
        };
        set.push(pair.clone());
    }
    let naive = NaiveAggregationCheck {
        aggregate_u: triple.u.to_wire_string(),
        aggregate_v: triple.v.to_wire_string(),
        aggregate_w: triple.w.to_wire_string(),
        decision: naive_agg_verify(&triple, &set, pp),
    };

    // (b) equal U product, different U_i sets
    let sk_a = crate::ibs::gen_key(b"exhibit-signer-a", mk, pp);
    let sk_b = crate::ibs::gen_key(b"exhibit-signer-b", mk, pp);
    let r1 = tape.sample_scalar(&pp.desc);
    let r2 = tape.sample_scalar(&pp.desc);
    let mut shift = tape.sample_scalar(&pp.desc);
    // keep the shifted pair distinct from the original and its swap
    while shift.is_zero() || r1 + shift == r2 {
        shift = shift + Scalar::one(pp.desc.modulus());
    }
    let (r1b, r2b) = (r1 + shift, r2 - shift);
    let list_a = [
        patched_sign_with_r(b"exhibit-msg-a", &sk_a, pp, r1),
        patched_sign_with_r(b"exhibit-msg-b", &sk_b, pp, r2),
    ];
    let list_b = [
        patched_sign_with_r(b"exhibit-msg-a", &sk_a, pp, r1b),
        patched_sign_with_r(b"exhibit-msg-b", &sk_b, pp, r2b),
    ];
    let all_valid = patched_verify(&list_a[0], b"exhibit-signer-a", b"exhibit-msg-a", pp).is_accept()
        && patched_verify(&list_a[1], b"exhibit-signer-b", b"exhibit-msg-b", pp).is_accept()
        && patched_verify(&list_b[0], b"exhibit-signer-a", b"exhibit-msg-a", pp).is_accept()
        && patched_verify(&list_b[1], b"exhibit-signer-b", b"exhibit-msg-b", pp).is_accept();
    let product_a = list_a[0].u * list_a[1].u;
    let product_b = list_b[0].u * list_b[1].u;
    debug_assert_eq!(product_a, product_b);
    let set_a: Vec<GroupElement> = list_a.iter().map(|s| s.u).collect();
    let set_b: Vec<GroupElement> = list_b.iter().map(|s| s.u).collect();
    let differ = !(set_a.contains(&list_b[0].u) && set_a.contains(&list_b[1].u)
        && set_b.contains(&list_a[0].u) && set_b.contains(&list_a[1].u));

    AggregationBreakReport {
        naive,
        exhibit: EqualProductExhibit {
            list_a: list_a.iter().map(SignatureWire::encode).collect(),
            list_b: list_b.iter().map(SignatureWire::encode).collect(),
            aggregate_u: product_a.to_wire_string(),
            all_signatures_valid: all_valid,
            individual_u_sets_differ: differ,
        },
    }
}
