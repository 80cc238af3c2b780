//! Fixture files: pinned oracle tables, master keys, tape prefixes, and
//! scripted fork trials. These let the CLI and tests replay worked
//! small-prime examples bit-exactly.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::group::GroupDescription;
use crate::scalar::Scalar;
use crate::wire::{bytes_from_hex, scalar_from_dec};

/// Pinned hash-oracle entries. Lookups that miss fall back to the digest
/// oracle, so fixtures only need to pin the values a worked example uses.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleFixtures {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h1: Vec<H1Fixture>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h2: Vec<H2Fixture>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h2_patched: Vec<H2PatchedFixture>,
}

/// Pins H1(id) = g^dlog. `id` is hex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Fixture {
    pub id: String,
    pub dlog: String,
}

/// Pins H2(id || msg) = h. `id` and `msg` are hex, `h` decimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2Fixture {
    pub id: String,
    pub msg: String,
    pub h: String,
}

/// Pins the patched-scheme hash H2(U || id || msg) = h. `u` is the canonical
/// element string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2PatchedFixture {
    pub u: String,
    pub id: String,
    pub msg: String,
    pub h: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MasterFixture {
    pub s1: String,
    pub s2: String,
}

/// A fixture file. Every section is optional.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct FixtureFile {
    /// Expected modulus; loading fails if it disagrees with the group in use.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    /// Pins the master key chosen by `setup`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub master: Option<MasterFixture>,
    /// Pinned prefix for the random tape (decimal scalars in [1, p)).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tape: Option<Vec<String>>,
    #[serde(flatten)]
    pub oracles: OracleFixtures,
    /// Scripted fork trial for replaying extraction examples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fork: Option<ForkScriptFile>,
}

impl FixtureFile {
    pub fn from_json(json: &str) -> Result<Self, Error> {
        serde_json::from_str(json).map_err(|e| Error::encoding(format!("bad fixture file: {e}")))
    }

    pub fn check_modulus(&self, desc: &GroupDescription) -> Result<(), Error> {
        if let Some(p) = &self.p {
            if p != &desc.modulus().to_string() {
                return Err(Error::encoding(format!(
                    "fixture file targets modulus {p}, group uses {}",
                    desc.modulus()
                )));
            }
        }
        Ok(())
    }

    pub fn decode_master(&self, desc: &GroupDescription) -> Result<Option<(Scalar, Scalar)>, Error> {
        match &self.master {
            None => Ok(None),
            Some(m) => Ok(Some((
                scalar_from_dec(&m.s1, desc)?,
                scalar_from_dec(&m.s2, desc)?,
            ))),
        }
    }

    pub fn decode_tape(&self, desc: &GroupDescription) -> Result<Vec<u64>, Error> {
        decode_tape_values(self.tape.as_deref().unwrap_or(&[]), desc)
    }
}

fn decode_tape_values(values: &[String], desc: &GroupDescription) -> Result<Vec<u64>, Error> {
    values
        .iter()
        .map(|s| {
            let v = scalar_from_dec(s, desc)?;
            if v.is_zero() {
                return Err(Error::encoding("tape values must be nonzero".to_string()));
            }
            Ok(v.value())
        })
        .collect()
}

/// Scripted fork trial: pins the CDH witness, the simulator's H1 entries,
/// the per-run H2 answer sequences, and the adversary tape prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForkScriptFile {
    pub cdh: CdhFixture,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s2: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h1_entries: Vec<H1EntryFixture>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h2_run1: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h2_run2: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tape: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdhFixture {
    pub a: String,
    pub b: String,
}

/// Pins one simulator H1 entry: the exponent t and the coin c.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1EntryFixture {
    pub id: String,
    pub t: String,
    pub coin: u8,
}

/// Decoded form of [`ForkScriptFile`].
#[derive(Debug, Clone)]
pub struct ForkScript {
    pub a: Scalar,
    pub b: Scalar,
    pub s2: Option<Scalar>,
    pub h1_entries: Vec<(Vec<u8>, Scalar, u8)>,
    pub h2_run1: Vec<Scalar>,
    pub h2_run2: Vec<Scalar>,
    pub tape: Vec<u64>,
}

impl ForkScriptFile {
    pub fn decode(&self, desc: &GroupDescription) -> Result<ForkScript, Error> {
        let nonzero = |s: &str| -> Result<Scalar, Error> {
            let v = scalar_from_dec(s, desc)?;
            if v.is_zero() {
                return Err(Error::encoding("fork script scalars must be nonzero".to_string()));
            }
            Ok(v)
        };
        let mut h1_entries = Vec::with_capacity(self.h1_entries.len());
        for e in &self.h1_entries {
            if e.coin > 1 {
                return Err(Error::encoding("coin must be 0 or 1".to_string()));
            }
            h1_entries.push((bytes_from_hex(&e.id)?, nonzero(&e.t)?, e.coin));
        }
        Ok(ForkScript {
            a: nonzero(&self.cdh.a)?,
            b: nonzero(&self.cdh.b)?,
            s2: self.s2.as_deref().map(nonzero).transpose()?,
            h1_entries,
            h2_run1: self.h2_run1.iter().map(|s| nonzero(s)).collect::<Result<_, _>>()?,
            h2_run2: self.h2_run2.iter().map(|s| nonzero(s)).collect::<Result<_, _>>()?,
            tape: decode_tape_values(&self.tape, desc)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_fixture_file() {
        let json = r#"{
            "p": "101",
            "master": { "s1": "7", "s2": "11" },
            "tape": ["9", "20"],
            "h1": [ { "id": "616c696365", "dlog": "13" } ],
            "h2": [ { "id": "616c696365", "msg": "6d31", "h": "4" } ],
            "fork": {
                "cdh": { "a": "7", "b": "9" },
                "h1_entries": [ { "id": "616c696365", "t": "13", "coin": 0 } ],
                "h2_run1": ["2"],
                "h2_run2": ["5"],
                "tape": ["3"]
            }
        }"#;
        let f = FixtureFile::from_json(json).unwrap();
        let desc = GroupDescription::new(101).unwrap();
        f.check_modulus(&desc).unwrap();
        let (s1, s2) = f.decode_master(&desc).unwrap().unwrap();
        assert_eq!((s1.value(), s2.value()), (7, 11));
        assert_eq!(f.decode_tape(&desc).unwrap(), vec![9, 20]);
        let script = f.fork.unwrap().decode(&desc).unwrap();
        assert_eq!(script.a.value(), 7);
        assert_eq!(script.h1_entries[0].1.value(), 13);
        assert_eq!(script.h2_run2[0].value(), 5);
        assert_eq!(script.tape, vec![3]);
    }

    #[test]
    fn modulus_mismatch_detected() {
        let f = FixtureFile::from_json(r#"{ "p": "101" }"#).unwrap();
        let desc = GroupDescription::new(103).unwrap();
        assert!(f.check_modulus(&desc).is_err());
    }

    #[test]
    fn out_of_range_values_rejected() {
        let desc = GroupDescription::new(101).unwrap();
        let f = FixtureFile::from_json(r#"{ "tape": ["0"] }"#).unwrap();
        assert!(f.decode_tape(&desc).is_err());
        let f = FixtureFile::from_json(r#"{ "tape": ["101"] }"#).unwrap();
        assert!(f.decode_tape(&desc).is_err());
    }
}
