//! Cryptanalysis workbench for a pairing-based identity-based (aggregate)
//! signature scheme.
//!
//! The crate implements the scheme over an abstract symmetric bilinear group
//! with a transparent exponent-tracking backend, mounts the universal
//! forgery and re-randomization attacks against it, and reproduces the
//! fork-and-replay security-proof simulator to show exactly when CDH
//! extraction works and when it cannot.
//!
//! Everything is deterministic given seeds; nothing here is fit for
//! production use — the transparent backend stores discrete logs on purpose.

pub mod attacks;
pub mod cdh;
pub mod error;
pub mod fixtures;
pub mod forking;
pub mod group;
pub mod hash;
pub mod ibas;
pub mod ibs;
pub mod oracle;
pub mod patched;
pub mod scalar;
pub mod tape;
pub mod wire;

pub use cdh::CdhInstance;
pub use error::Error;
pub use group::{pair, GroupDescription, GroupElement, TargetElement, DEFAULT_MODULUS};
pub use ibs::{Decision, MasterKey, PrivateKey, PublicParams, Signature};
pub use oracle::OracleHandle;
pub use scalar::Scalar;
pub use tape::RandomTape;
