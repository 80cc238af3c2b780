//! Hash-oracle handles.
//!
//! Scheme code reaches H1 and H2 only through an [`OracleHandle`], so the
//! deterministic digest realization, fixture tables, and the forking
//! simulator's programmable tables are indistinguishable to it.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::fixtures::OracleFixtures;
use crate::group::{GroupDescription, GroupElement};
use crate::hash::{self, encode_parts, H1_TAG, H2_PATCHED_TAG, H2_TAG};
use crate::scalar::Scalar;
use crate::wire::{bytes_from_hex, scalar_from_dec};

/// The oracle surface the scheme sees: H1 into G, H2 into Z_p*, and the
/// patched variant's U-bound H2.
pub trait SchemeOracle: Send + Sync {
    fn h1(&self, id: &[u8]) -> GroupElement;
    fn h2(&self, id: &[u8], msg: &[u8]) -> Scalar;
    fn h2_patched(&self, u: &GroupElement, id: &[u8], msg: &[u8]) -> Scalar;
}

/// Shared handle to a hash-oracle implementation.
#[derive(Clone)]
pub struct OracleHandle(Arc<dyn SchemeOracle>);

impl OracleHandle {
    pub fn new(oracle: Arc<dyn SchemeOracle>) -> Self {
        OracleHandle(oracle)
    }

    /// The default deterministic realization.
    pub fn digest(desc: &GroupDescription) -> Self {
        OracleHandle(Arc::new(DigestOracle { desc: *desc }))
    }

    /// Fixture tables with digest fallback on misses.
    pub fn fixture(tables: &OracleFixtures, desc: &GroupDescription) -> Result<Self, Error> {
        Ok(OracleHandle(Arc::new(FixtureOracle::build(tables, desc)?)))
    }

    pub fn h1(&self, id: &[u8]) -> GroupElement {
        self.0.h1(id)
    }

    pub fn h2(&self, id: &[u8], msg: &[u8]) -> Scalar {
        self.0.h2(id, msg)
    }

    pub fn h2_patched(&self, u: &GroupElement, id: &[u8], msg: &[u8]) -> Scalar {
        self.0.h2_patched(u, id, msg)
    }
}

impl fmt::Debug for OracleHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("OracleHandle(..)")
    }
}

/// Stateless digest oracle.
pub struct DigestOracle {
    desc: GroupDescription,
}

impl DigestOracle {
    pub fn new(desc: &GroupDescription) -> Self {
        DigestOracle { desc: *desc }
    }
}

impl SchemeOracle for DigestOracle {
    fn h1(&self, id: &[u8]) -> GroupElement {
        hash::hash_to_group(H1_TAG, id, &self.desc)
    }

    fn h2(&self, id: &[u8], msg: &[u8]) -> Scalar {
        hash::hash_to_scalar(H2_TAG, &encode_parts(&[id, msg]), &self.desc)
    }

    fn h2_patched(&self, u: &GroupElement, id: &[u8], msg: &[u8]) -> Scalar {
        let encoded = encode_parts(&[u.to_wire_string().as_bytes(), id, msg]);
        hash::hash_to_scalar(H2_PATCHED_TAG, &encoded, &self.desc)
    }
}

/// Pinned oracle tables for replaying worked examples; misses fall back to
/// the digest oracle.
pub struct FixtureOracle {
    h1: HashMap<Vec<u8>, GroupElement>,
    h2: HashMap<(Vec<u8>, Vec<u8>), Scalar>,
    h2_patched: HashMap<(String, Vec<u8>, Vec<u8>), Scalar>,
    fallback: DigestOracle,
}

impl FixtureOracle {
    pub fn build(tables: &OracleFixtures, desc: &GroupDescription) -> Result<Self, Error> {
        let mut h1 = HashMap::new();
        for e in &tables.h1 {
            let d = scalar_from_dec(&e.dlog, desc)?;
            h1.insert(bytes_from_hex(&e.id)?, desc.element_from_dlog(d.value()));
        }
        let mut h2 = HashMap::new();
        for e in &tables.h2 {
            let h = scalar_from_dec(&e.h, desc)?;
            if h.is_zero() {
                return Err(Error::encoding("H2 fixture values must be nonzero".to_string()));
            }
            h2.insert((bytes_from_hex(&e.id)?, bytes_from_hex(&e.msg)?), h);
        }
        let mut h2_patched = HashMap::new();
        for e in &tables.h2_patched {
            let h = scalar_from_dec(&e.h, desc)?;
            if h.is_zero() {
                return Err(Error::encoding("H2 fixture values must be nonzero".to_string()));
            }
            // Validate the element string eagerly so bad fixtures fail at load.
            GroupElement::from_wire_string(&e.u, desc)?;
            h2_patched.insert(
                (e.u.clone(), bytes_from_hex(&e.id)?, bytes_from_hex(&e.msg)?),
                h,
            );
        }
        Ok(FixtureOracle {
            h1,
            h2,
            h2_patched,
            fallback: DigestOracle::new(desc),
        })
    }
}

impl SchemeOracle for FixtureOracle {
    fn h1(&self, id: &[u8]) -> GroupElement {
        match self.h1.get(id) {
            Some(q) => *q,
            None => self.fallback.h1(id),
        }
    }

    fn h2(&self, id: &[u8], msg: &[u8]) -> Scalar {
        match self.h2.get(&(id.to_vec(), msg.to_vec())) {
            Some(h) => *h,
            None => self.fallback.h2(id, msg),
        }
    }

    fn h2_patched(&self, u: &GroupElement, id: &[u8], msg: &[u8]) -> Scalar {
        let key = (u.to_wire_string(), id.to_vec(), msg.to_vec());
        match self.h2_patched.get(&key) {
            Some(h) => *h,
            None => self.fallback.h2_patched(u, id, msg),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{H1Fixture, H2Fixture};

    #[test]
    fn fixture_lookup_and_fallback() {
        let desc = GroupDescription::new(101).unwrap();
        let tables = OracleFixtures {
            h1: vec![H1Fixture {
                id: hex::encode(b"alice"),
                dlog: "13".into(),
            }],
            h2: vec![H2Fixture {
                id: hex::encode(b"alice"),
                msg: hex::encode(b"pay Bob"),
                h: "4".into(),
            }],
            h2_patched: vec![],
        };
        let oracle = OracleHandle::fixture(&tables, &desc).unwrap();
        assert_eq!(oracle.h1(b"alice"), desc.element_from_dlog(13));
        assert_eq!(oracle.h2(b"alice", b"pay Bob"), desc.scalar(4));
        // Misses agree with the plain digest oracle.
        let digest = OracleHandle::digest(&desc);
        assert_eq!(oracle.h1(b"bob"), digest.h1(b"bob"));
        assert_eq!(oracle.h2(b"bob", b"x"), digest.h2(b"bob", b"x"));
    }

    #[test]
    fn digest_oracle_is_deterministic() {
        let desc = GroupDescription::default();
        let o = OracleHandle::digest(&desc);
        assert_eq!(o.h1(b"id"), o.h1(b"id"));
        assert_eq!(o.h2(b"id", b"m"), o.h2(b"id", b"m"));
        let u = desc.element_from_dlog(5);
        assert_eq!(o.h2_patched(&u, b"id", b"m"), o.h2_patched(&u, b"id", b"m"));
        // The patched hash must move when U moves.
        let u2 = desc.element_from_dlog(6);
        assert_ne!(o.h2_patched(&u, b"id", b"m"), o.h2_patched(&u2, b"id", b"m"));
    }

    #[test]
    fn bad_fixture_values_rejected() {
        let desc = GroupDescription::new(101).unwrap();
        let zero_h = OracleFixtures {
            h1: vec![],
            h2: vec![H2Fixture {
                id: "00".into(),
                msg: "00".into(),
                h: "0".into(),
            }],
            h2_patched: vec![],
        };
        assert!(OracleHandle::fixture(&zero_h, &desc).is_err());
    }
}
