//! JSON wire formats.
//!
//! Scalars travel as decimal strings, group elements as `backend:exponent`
//! strings, byte-strings (identities, messages) as lowercase hex. Composite
//! types get explicit DTO structs so deserialization can validate against a
//! group description instead of trusting embedded moduli.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::group::{Backend, GroupDescription, GroupElement};
use crate::ibas::{AggregateSignature, IdMsgMultiset, IdMsgPair};
use crate::ibs::{MasterKey, PrivateKey, PublicParams, Signature};
use crate::oracle::OracleHandle;
use crate::scalar::Scalar;

pub fn scalar_from_dec(s: &str, desc: &GroupDescription) -> Result<Scalar, Error> {
    let v: u64 = s
        .parse()
        .map_err(|_| Error::encoding(format!("bad scalar {s:?}")))?;
    if v >= desc.modulus() {
        return Err(Error::encoding(format!(
            "scalar {v} not in canonical range for modulus {}",
            desc.modulus()
        )));
    }
    Ok(desc.scalar(v))
}

pub fn bytes_from_hex(s: &str) -> Result<Vec<u8>, Error> {
    hex::decode(s).map_err(|e| Error::encoding(format!("bad hex {s:?}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptionWire {
    pub backend: String,
    pub p: String,
    pub g: String,
}

impl GroupDescriptionWire {
    pub fn encode(desc: &GroupDescription) -> Self {
        GroupDescriptionWire {
            backend: desc.backend().id().to_string(),
            p: desc.modulus().to_string(),
            g: desc.generator().to_wire_string(),
        }
    }

    pub fn decode(&self) -> Result<GroupDescription, Error> {
        let backend = Backend::from_id(&self.backend)?;
        let p: u64 = self
            .p
            .parse()
            .map_err(|_| Error::encoding(format!("bad modulus {:?}", self.p)))?;
        let desc = GroupDescription::new(p)?;
        debug_assert_eq!(desc.backend(), backend);
        let g = GroupElement::from_wire_string(&self.g, &desc)?;
        if g != desc.generator() {
            return Err(Error::encoding(
                "transparent backend fixes the generator at exponent 1".to_string(),
            ));
        }
        Ok(desc)
    }
}

/// Hash configuration recorded alongside public parameters so transcripts
/// are reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HashConfigWire {
    Digest {
        algorithm: String,
    },
    Fixture {
        #[serde(flatten)]
        tables: crate::fixtures::OracleFixtures,
    },
}

impl HashConfigWire {
    pub fn digest() -> Self {
        HashConfigWire::Digest {
            algorithm: crate::hash::DIGEST_ALGORITHM.to_string(),
        }
    }

    pub fn build_oracle(&self, desc: &GroupDescription) -> Result<OracleHandle, Error> {
        match self {
            HashConfigWire::Digest { algorithm } => {
                if algorithm != crate::hash::DIGEST_ALGORITHM {
                    return Err(Error::encoding(format!(
                        "unsupported digest algorithm {algorithm:?}"
                    )));
                }
                Ok(OracleHandle::digest(desc))
            }
            HashConfigWire::Fixture { tables } => OracleHandle::fixture(tables, desc),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PublicParamsWire {
    pub desc: GroupDescriptionWire,
    pub g1: String,
    pub g2: String,
    pub hash: HashConfigWire,
}

impl PublicParamsWire {
    pub fn encode(pp: &PublicParams, hash: HashConfigWire) -> Self {
        PublicParamsWire {
            desc: GroupDescriptionWire::encode(&pp.desc),
            g1: pp.g1.to_wire_string(),
            g2: pp.g2.to_wire_string(),
            hash,
        }
    }

    pub fn decode(&self) -> Result<PublicParams, Error> {
        let desc = self.desc.decode()?;
        let g1 = GroupElement::from_wire_string(&self.g1, &desc)?;
        let g2 = GroupElement::from_wire_string(&self.g2, &desc)?;
        let oracle = self.hash.build_oracle(&desc)?;
        PublicParams::new(desc, g1, g2, oracle)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MasterKeyWire {
    pub s1: String,
    pub s2: String,
}

impl MasterKeyWire {
    pub fn encode(mk: &MasterKey) -> Self {
        MasterKeyWire {
            s1: mk.s1.to_string(),
            s2: mk.s2.to_string(),
        }
    }

    pub fn decode(&self, desc: &GroupDescription) -> Result<MasterKey, Error> {
        Ok(MasterKey {
            s1: scalar_from_dec(&self.s1, desc)?,
            s2: scalar_from_dec(&self.s2, desc)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrivateKeyWire {
    pub id: String,
    pub d1: String,
    pub d2: String,
}

impl PrivateKeyWire {
    pub fn encode(sk: &PrivateKey) -> Self {
        PrivateKeyWire {
            id: hex::encode(&sk.id),
            d1: sk.d1.to_wire_string(),
            d2: sk.d2.to_wire_string(),
        }
    }

    pub fn decode(&self, desc: &GroupDescription) -> Result<PrivateKey, Error> {
        Ok(PrivateKey {
            id: bytes_from_hex(&self.id)?,
            d1: GroupElement::from_wire_string(&self.d1, desc)?,
            d2: GroupElement::from_wire_string(&self.d2, desc)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureWire {
    pub u: String,
    pub v: String,
    pub w: String,
}

impl SignatureWire {
    pub fn encode(sig: &Signature) -> Self {
        SignatureWire {
            u: sig.u.to_wire_string(),
            v: sig.v.to_wire_string(),
            w: sig.w.to_wire_string(),
        }
    }

    pub fn decode(&self, desc: &GroupDescription) -> Result<Signature, Error> {
        Ok(Signature {
            u: GroupElement::from_wire_string(&self.u, desc)?,
            v: GroupElement::from_wire_string(&self.v, desc)?,
            w: GroupElement::from_wire_string(&self.w, desc)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdMsgPairWire {
    pub id: String,
    pub msg: String,
}

impl IdMsgPairWire {
    pub fn encode(pair: &IdMsgPair) -> Self {
        IdMsgPairWire {
            id: hex::encode(&pair.id),
            msg: hex::encode(&pair.msg),
        }
    }

    pub fn decode(&self) -> Result<IdMsgPair, Error> {
        Ok(IdMsgPair {
            id: bytes_from_hex(&self.id)?,
            msg: bytes_from_hex(&self.msg)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateSignatureWire {
    pub u: String,
    pub v: String,
    pub w: String,
    pub entries: Vec<IdMsgPairWire>,
}

impl AggregateSignatureWire {
    /// Entries are sorted lexicographically by (id, msg) bytes; verification
    /// itself never depends on order.
    pub fn encode(agg: &AggregateSignature) -> Self {
        let mut entries: Vec<&IdMsgPair> = agg.set.entries().iter().collect();
        entries.sort_by(|a, b| (&a.id, &a.msg).cmp(&(&b.id, &b.msg)));
        AggregateSignatureWire {
            u: agg.sig.u.to_wire_string(),
            v: agg.sig.v.to_wire_string(),
            w: agg.sig.w.to_wire_string(),
            entries: entries.into_iter().map(IdMsgPairWire::encode).collect(),
        }
    }

    pub fn decode(&self, desc: &GroupDescription) -> Result<AggregateSignature, Error> {
        let sig = Signature {
            u: GroupElement::from_wire_string(&self.u, desc)?,
            v: GroupElement::from_wire_string(&self.v, desc)?,
            w: GroupElement::from_wire_string(&self.w, desc)?,
        };
        let mut set = IdMsgMultiset::new();
        for e in &self.entries {
            set.push(e.decode()?);
        }
        Ok(AggregateSignature { sig, set })
    }
}

/// Audit record for a universal forgery: inputs, solved coefficients, output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForgeryResultWire {
    pub target_id: String,
    pub target_msg: String,
    pub msg1: String,
    pub msg2: String,
    pub sig1: SignatureWire,
    pub sig2: SignatureWire,
    pub delta1: String,
    pub delta2: String,
    pub degenerate_target: bool,
    pub signature: SignatureWire,
}

impl ForgeryResultWire {
    pub fn encode(
        result: &crate::attacks::ForgeryResult,
        msg1: &[u8],
        sig1: &Signature,
        msg2: &[u8],
        sig2: &Signature,
    ) -> Self {
        ForgeryResultWire {
            target_id: hex::encode(&result.target_id),
            target_msg: hex::encode(&result.target_msg),
            msg1: hex::encode(msg1),
            msg2: hex::encode(msg2),
            sig1: SignatureWire::encode(sig1),
            sig2: SignatureWire::encode(sig2),
            delta1: result.coefficients.delta1.to_string(),
            delta2: result.coefficients.delta2.to_string(),
            degenerate_target: result.degenerate_target,
            signature: SignatureWire::encode(&result.sig),
        }
    }
}
