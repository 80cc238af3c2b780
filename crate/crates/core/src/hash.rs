//! Digest realizations of the hash functions H1 (into G), H2 (into Z_p*),
//! and H' (into Z_p*, never oracle-programmed).
//!
//! Inputs are encoded as SHA-256(len(tag) || tag || len(msg) || msg) with
//! 4-byte big-endian length prefixes; multi-part messages are themselves
//! length-prefixed part by part, so `"alice" || "bob"` and `"aliceb" || "ob"`
//! hash differently. The 256-bit digest is reduced mod (p-1) and shifted by
//! one, landing in [1, p).

use sha2::{Digest, Sha256};

use crate::group::{GroupDescription, GroupElement};
use crate::scalar::Scalar;

pub const H1_TAG: &str = "H1";
pub const H2_TAG: &str = "H2";
pub const H2_PATCHED_TAG: &str = "H2patched";
pub const HPRIME_TAG: &str = "Hprime";

/// Digest algorithm identifier recorded in serialized hash configurations.
pub const DIGEST_ALGORITHM: &str = "sha-256";

/// Concatenates parts, each preceded by its 4-byte big-endian length.
pub fn encode_parts(parts: &[&[u8]]) -> Vec<u8> {
    let total: usize = parts.iter().map(|p| 4 + p.len()).sum();
    let mut out = Vec::with_capacity(total);
    for part in parts {
        out.extend_from_slice(&(part.len() as u32).to_be_bytes());
        out.extend_from_slice(part);
    }
    out
}

fn digest(tag: &str, msg: &[u8]) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update((tag.len() as u32).to_be_bytes());
    h.update(tag.as_bytes());
    h.update((msg.len() as u32).to_be_bytes());
    h.update(msg);
    h.finalize().into()
}

fn reduce_mod(bytes: &[u8; 32], m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 0u128;
    for &b in bytes {
        acc = (acc << 8 | b as u128) % m;
    }
    acc as u64
}

/// Deterministic hash into Z_p* (the range [1, p)).
pub fn hash_to_scalar(tag: &str, msg: &[u8], desc: &GroupDescription) -> Scalar {
    let d = digest(tag, msg);
    let v = reduce_mod(&d, desc.modulus() - 1) + 1;
    desc.scalar(v)
}

/// Deterministic hash into G, realized as g^(hash_to_scalar(tag, msg)).
pub fn hash_to_group(tag: &str, msg: &[u8], desc: &GroupDescription) -> GroupElement {
    desc.generator().pow(hash_to_scalar(tag, msg, desc))
}

/// H'(U || h*): the re-randomizing forger's own collision-resistant hash.
/// U is serialized canonically and h* in decimal, each length-prefixed.
pub fn hprime(u: &GroupElement, h_star: Scalar, desc: &GroupDescription) -> Scalar {
    let msg = encode_parts(&[
        u.to_wire_string().as_bytes(),
        h_star.to_string().as_bytes(),
    ]);
    hash_to_scalar(HPRIME_TAG, &msg, desc)
}
