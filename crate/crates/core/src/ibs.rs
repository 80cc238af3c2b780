//! The identity-based signature scheme under analysis.
//!
//! Keys are derived from an identity string by a master-key holder; a
//! signature is the triple (U, V, W) = (g^r, D1^h * g1^r, D2 * g2^r) with
//! h = H2(ID || M). Verification checks the two pairing equations
//!
//!   e(V, g) = e(H1(ID)^h * U, g1)     and     e(W, g) = e(H1(ID) * U, g2).
//!
//! Signatures are publicly re-randomizable, which is exactly the structural
//! property the rest of the workbench exploits.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::group::{checked_pair, pair, GroupDescription, GroupElement};
use crate::oracle::OracleHandle;
use crate::scalar::Scalar;
use crate::tape::RandomTape;

/// Outcome of a verification predicate. Rejection is a result, not an error,
/// so attack experiments can count it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Accept,
    Reject,
}

impl Decision {
    pub fn is_accept(self) -> bool {
        self == Decision::Accept
    }

    pub fn from_bool(accept: bool) -> Self {
        if accept {
            Decision::Accept
        } else {
            Decision::Reject
        }
    }
}

/// Public parameters: the group, g1 = g^{s1}, g2 = g^{s2}, and the hash
/// oracle handle.
#[derive(Debug, Clone)]
pub struct PublicParams {
    pub desc: GroupDescription,
    pub g1: GroupElement,
    pub g2: GroupElement,
    oracle: OracleHandle,
}

impl PublicParams {
    pub fn new(
        desc: GroupDescription,
        g1: GroupElement,
        g2: GroupElement,
        oracle: OracleHandle,
    ) -> Result<Self, Error> {
        if g1.modulus() != desc.modulus() || g2.modulus() != desc.modulus() {
            return Err(Error::GroupMismatch);
        }
        if g1.is_identity() || g2.is_identity() {
            return Err(Error::precondition("g1 and g2 must not be the identity"));
        }
        Ok(PublicParams { desc, g1, g2, oracle })
    }

    pub fn oracle(&self) -> &OracleHandle {
        &self.oracle
    }

    pub fn h1(&self, id: &[u8]) -> GroupElement {
        self.oracle.h1(id)
    }

    pub fn h2(&self, id: &[u8], msg: &[u8]) -> Scalar {
        self.oracle.h2(id, msg)
    }

    pub fn h2_patched(&self, u: &GroupElement, id: &[u8], msg: &[u8]) -> Scalar {
        self.oracle.h2_patched(u, id, msg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MasterKey {
    pub s1: Scalar,
    pub s2: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateKey {
    pub id: Vec<u8>,
    pub d1: GroupElement,
    pub d2: GroupElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub u: GroupElement,
    pub v: GroupElement,
    pub w: GroupElement,
}

impl Signature {
    fn in_group(&self, desc: &GroupDescription) -> bool {
        let g = desc.generator();
        self.u.same_group(&g) && self.v.same_group(&g) && self.w.same_group(&g)
    }
}

/// Draws the master exponents s1, s2 and publishes g1, g2.
pub fn setup(
    desc: &GroupDescription,
    oracle: OracleHandle,
    tape: &mut RandomTape,
) -> (PublicParams, MasterKey) {
    let s1 = tape.sample_scalar(desc);
    let s2 = tape.sample_scalar(desc);
    setup_with_master(desc, oracle, s1, s2)
}

/// Setup with explicit master exponents (fixture runs pin them).
pub fn setup_with_master(
    desc: &GroupDescription,
    oracle: OracleHandle,
    s1: Scalar,
    s2: Scalar,
) -> (PublicParams, MasterKey) {
    let g = desc.generator();
    let pp = PublicParams::new(*desc, g.pow(s1), g.pow(s2), oracle)
        .expect("nonzero master exponents");
    (pp, MasterKey { s1, s2 })
}

/// Derives the private key (D1, D2) = (H1(ID)^{s1}, H1(ID)^{s2}).
pub fn gen_key(id: &[u8], mk: &MasterKey, pp: &PublicParams) -> PrivateKey {
    let q = pp.h1(id);
    PrivateKey {
        id: id.to_vec(),
        d1: q.pow(mk.s1),
        d2: q.pow(mk.s2),
    }
}

/// Signs with tape randomness r: (g^r, D1^h * g1^r, D2 * g2^r).
pub fn sign(
    msg: &[u8],
    sk: &PrivateKey,
    pp: &PublicParams,
    tape: &mut RandomTape,
) -> Signature {
    sign_with_r(msg, sk, pp, tape.sample_scalar(&pp.desc))
}

/// Signing with explicit randomness, used by fixtures and exhibits.
pub fn sign_with_r(msg: &[u8], sk: &PrivateKey, pp: &PublicParams, r: Scalar) -> Signature {
    let h = pp.h2(&sk.id, msg);
    let g = pp.desc.generator();
    Signature {
        u: g.pow(r),
        v: sk.d1.pow(h) * pp.g1.pow(r),
        w: sk.d2 * pp.g2.pow(r),
    }
}

/// Checks both pairing equations. Mismatched or malformed elements reject
/// rather than raise.
pub fn verify(sig: &Signature, id: &[u8], msg: &[u8], pp: &PublicParams) -> Decision {
    if !sig.in_group(&pp.desc) {
        return Decision::Reject;
    }
    let h = pp.h2(id, msg);
    verify_with_h(sig, id, h, pp)
}

/// The pairing equations with a caller-supplied h; the patched scheme reuses
/// them with its U-bound hash.
pub(crate) fn verify_with_h(
    sig: &Signature,
    id: &[u8],
    h: Scalar,
    pp: &PublicParams,
) -> Decision {
    if !sig.in_group(&pp.desc) {
        return Decision::Reject;
    }
    let g = pp.desc.generator();
    let q = pp.h1(id);
    let first = match checked_pair(q.pow(h) * sig.u, pp.g1) {
        Ok(rhs) => pair(sig.v, g) == rhs,
        Err(_) => false,
    };
    let second = match checked_pair(q * sig.u, pp.g2) {
        Ok(rhs) => pair(sig.w, g) == rhs,
        Err(_) => false,
    };
    Decision::from_bool(first && second)
}

/// Public re-randomization: sigma' = (U * g^{r'}, V * g1^{r'}, W * g2^{r'}).
pub fn rerandomize(sig: &Signature, r_prime: Scalar, pp: &PublicParams) -> Signature {
    let g = pp.desc.generator();
    Signature {
        u: sig.u * g.pow(r_prime),
        v: sig.v * pp.g1.pow(r_prime),
        w: sig.w * pp.g2.pow(r_prime),
    }
}
