//! Forgery attacks against the scheme.
//!
//! Two valid signatures on one identity are enough to sign *any* message for
//! that identity: solve a 2x2 linear system over Z_p for exponents
//! (delta1, delta2) with
//!
//!   delta1 * h1 + delta2 * h2 = h*        delta1 + delta2 = 1
//!
//! and combine the triples component-wise. The same forgery drops into the
//! aggregate layer unchanged. A separate transformation re-randomizes any
//! forgery with h' = H'(U || h*), which makes the forged U depend on the
//! oracle answer for the target — the property that defeats fork-and-replay
//! extraction.

use crate::error::Error;
use crate::hash::hprime;
use crate::ibas::{aggregate, AggregateSignature};
use crate::ibs::{rerandomize, sign, verify, PrivateKey, PublicParams, Signature};
use crate::scalar::Scalar;
use crate::tape::RandomTape;

/// Solution of the forgery system for a given (h1, h2, h*).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForgeryCoefficients {
    pub delta1: Scalar,
    pub delta2: Scalar,
}

/// A universal forgery together with its audit data.
#[derive(Debug, Clone)]
pub struct ForgeryResult {
    pub sig: Signature,
    pub target_id: Vec<u8>,
    pub target_msg: Vec<u8>,
    pub coefficients: ForgeryCoefficients,
    /// Set when the target message equals one of the queried messages
    /// (degenerate but permitted; the output collapses to that input).
    pub degenerate_target: bool,
}

/// Solves the 2x2 system; the determinant is h1 - h2, so the only failure is
/// a hash collision between the two queried messages.
pub fn solve_delta(h1: Scalar, h2: Scalar, h_star: Scalar) -> Result<ForgeryCoefficients, Error> {
    let det = h1.checked_sub(h2)?;
    if det.is_zero() {
        return Err(Error::HashCollision);
    }
    let delta1 = h_star.checked_sub(h2)?.checked_mul(det.inv()?)?;
    let delta2 = Scalar::one(h1.modulus()) - delta1;
    Ok(ForgeryCoefficients { delta1, delta2 })
}

fn combine(sig1: &Signature, sig2: &Signature, c: &ForgeryCoefficients) -> Signature {
    Signature {
        u: sig1.u.pow(c.delta1) * sig2.u.pow(c.delta2),
        v: sig1.v.pow(c.delta1) * sig2.v.pow(c.delta2),
        w: sig1.w.pow(c.delta1) * sig2.w.pow(c.delta2),
    }
}

/// Universal forgery from two signature queries on the same identity.
///
/// Both inputs must verify for `target_id` and their respective messages,
/// which must differ. The output verifies for (target_id, target_msg)
/// whenever the two queried hash values differ.
pub fn universal_forge(
    sig1: &Signature,
    msg1: &[u8],
    sig2: &Signature,
    msg2: &[u8],
    target_id: &[u8],
    target_msg: &[u8],
    pp: &PublicParams,
) -> Result<ForgeryResult, Error> {
    if msg1 == msg2 {
        return Err(Error::precondition("queried messages must differ"));
    }
    if !verify(sig1, target_id, msg1, pp).is_accept() {
        return Err(Error::precondition("sig1 does not verify for (target_id, msg1)"));
    }
    if !verify(sig2, target_id, msg2, pp).is_accept() {
        return Err(Error::precondition("sig2 does not verify for (target_id, msg2)"));
    }
    let h1 = pp.h2(target_id, msg1);
    let h2 = pp.h2(target_id, msg2);
    let h_star = pp.h2(target_id, target_msg);
    let coefficients = solve_delta(h1, h2, h_star)?;
    Ok(ForgeryResult {
        sig: combine(sig1, sig2, &coefficients),
        target_id: target_id.to_vec(),
        target_msg: target_msg.to_vec(),
        coefficients,
        degenerate_target: target_msg == msg1 || target_msg == msg2,
    })
}

/// The aggregate corollary: a forged signature aggregated with honestly
/// signed cosignatures passes aggregate verification.
pub fn aggregate_forge(
    sig1: &Signature,
    msg1: &[u8],
    sig2: &Signature,
    msg2: &[u8],
    target_id: &[u8],
    target_msg: &[u8],
    cosigners: &[(PrivateKey, Vec<u8>)],
    pp: &PublicParams,
    tape: &mut RandomTape,
) -> Result<AggregateSignature, Error> {
    let forged = universal_forge(sig1, msg1, sig2, msg2, target_id, target_msg, pp)?;
    let mut agg = AggregateSignature::from_signature(forged.sig, target_id, target_msg);
    for (sk, msg) in cosigners {
        let honest = sign(msg, sk, pp, tape);
        let single = AggregateSignature::from_signature(honest, &sk.id, msg);
        agg = aggregate(&agg, &single, pp)?;
    }
    Ok(agg)
}

/// Re-randomizes a forgery with h' = H'(U || h*), h* = H2(ID* || M*).
///
/// The output still verifies for the same pair, is a deterministic function
/// of (U, h*), and moves whenever h* is reprogrammed — so two forked runs
/// yield different U components except on an H' collision.
pub fn rerandomize_forgery(
    raw: &Signature,
    target_id: &[u8],
    target_msg: &[u8],
    pp: &PublicParams,
) -> Result<Signature, Error> {
    if !verify(raw, target_id, target_msg, pp).is_accept() {
        return Err(Error::precondition("input forgery does not verify"));
    }
    let h_star = pp.h2(target_id, target_msg);
    let h_prime = hprime(&raw.u, h_star, &pp.desc);
    Ok(rerandomize(raw, h_prime, pp))
}

/// The implied randomness r* = r1*delta1 + r2*delta2 of a combined forgery,
/// exposed for transparent-backend assertions.
pub fn implied_randomness(r1: Scalar, r2: Scalar, c: &ForgeryCoefficients) -> Scalar {
    r1 * c.delta1 + r2 * c.delta2
}
