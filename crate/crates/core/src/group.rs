//! Abstract symmetric bilinear group (G, G_T, e) with a transparent
//! exponent-tracking backend.
//!
//! The transparent backend stores the discrete log of every element with
//! respect to the canonical generator, so `pair(g^a, g^b) = e(g,g)^{ab}` is
//! literally exponent multiplication. This deliberately trivializes the CDH
//! problem: the workbench checks algebraic claims against known witnesses, it
//! does not model computational hardness.

use std::fmt;

use crate::error::Error;
use crate::scalar::{is_prime_u64, Scalar};

/// Default group order: the Mersenne prime 2^61 - 1.
pub const DEFAULT_MODULUS: u64 = 2_305_843_009_213_693_951;

/// Available group backends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Transparent,
}

impl Backend {
    pub fn id(&self) -> &'static str {
        match self {
            Backend::Transparent => "transparent",
        }
    }

    pub fn from_id(id: &str) -> Result<Self, Error> {
        match id {
            "transparent" => Ok(Backend::Transparent),
            other => Err(Error::encoding(format!("unknown backend {other:?}"))),
        }
    }
}

/// Description of a bilinear group of prime order `p`.
///
/// The transparent backend fixes the generator at discrete log 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupDescription {
    p: u64,
    backend: Backend,
}

impl GroupDescription {
    /// Builds a transparent-backend group of prime order `p`.
    pub fn new(p: u64) -> Result<Self, Error> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(GroupDescription {
            p,
            backend: Backend::Transparent,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn generator(&self) -> GroupElement {
        self.element_from_dlog(1)
    }

    pub fn identity(&self) -> GroupElement {
        self.element_from_dlog(0)
    }

    pub fn target_identity(&self) -> TargetElement {
        TargetElement {
            dlog: Scalar::zero(self.p),
            backend: self.backend,
        }
    }

    /// The element g^d. Transparent-backend constructor used by oracles,
    /// fixtures, and tests.
    pub fn element_from_dlog(&self, d: u64) -> GroupElement {
        GroupElement {
            dlog: Scalar::new(d, self.p),
            backend: self.backend,
        }
    }

    pub fn scalar(&self, v: u64) -> Scalar {
        Scalar::new(v, self.p)
    }
}

impl Default for GroupDescription {
    fn default() -> Self {
        GroupDescription::new(DEFAULT_MODULUS).expect("default modulus is prime")
    }
}

/// An element of G.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    dlog: Scalar,
    backend: Backend,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.dlog.is_zero()
    }

    pub fn modulus(&self) -> u64 {
        self.dlog.modulus()
    }

    pub fn same_group(&self, rhs: &GroupElement) -> bool {
        self.backend == rhs.backend && self.modulus() == rhs.modulus()
    }

    /// Group operation.
    pub fn checked_mul(self, rhs: GroupElement) -> Result<GroupElement, Error> {
        if !self.same_group(&rhs) {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupElement {
            dlog: self.dlog + rhs.dlog,
            backend: self.backend,
        })
    }

    /// Exponentiation by a scalar sharing the group's modulus.
    pub fn checked_pow(self, k: Scalar) -> Result<GroupElement, Error> {
        if k.modulus() != self.modulus() {
            return Err(Error::ModulusMismatch(self.modulus(), k.modulus()));
        }
        Ok(GroupElement {
            dlog: self.dlog * k,
            backend: self.backend,
        })
    }

    pub fn pow(self, k: Scalar) -> GroupElement {
        self.checked_pow(k).expect("scalar modulus mismatch")
    }

    /// Exponentiation by a plain integer, reduced mod the group order.
    pub fn pow_raw(self, k: u64) -> GroupElement {
        let k = Scalar::new(k % self.modulus(), self.modulus());
        self.pow(k)
    }

    /// The group inverse u^{-1}.
    pub fn invert(self) -> GroupElement {
        GroupElement {
            dlog: self.dlog.negate(),
            backend: self.backend,
        }
    }

    /// Discrete log with respect to the canonical generator.
    ///
    /// Transparent-backend introspection for the simulator's bookkeeping and
    /// for test assertions. Scheme code must not read it.
    pub fn transparent_dlog(&self) -> Scalar {
        self.dlog
    }

    /// Canonical string form, e.g. `transparent:13`.
    pub fn to_wire_string(&self) -> String {
        format!("{}:{}", self.backend.id(), self.dlog.value())
    }

    /// Parses the canonical string form against a group description.
    pub fn from_wire_string(s: &str, desc: &GroupDescription) -> Result<Self, Error> {
        let (backend, value) = s
            .split_once(':')
            .ok_or_else(|| Error::encoding(format!("malformed group element {s:?}")))?;
        if Backend::from_id(backend)? != desc.backend() {
            return Err(Error::encoding(format!(
                "backend {backend:?} does not match group description"
            )));
        }
        let d: u64 = value
            .parse()
            .map_err(|_| Error::encoding(format!("bad element exponent {value:?}")))?;
        if d >= desc.modulus() {
            return Err(Error::encoding(format!(
                "element exponent {d} out of range for modulus {}",
                desc.modulus()
            )));
        }
        Ok(desc.element_from_dlog(d))
    }
}

impl std::ops::Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: GroupElement) -> GroupElement {
        self.checked_mul(rhs).expect("group mismatch")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_wire_string())
    }
}

/// An element of the target group G_T; the transparent backend stores z
/// meaning e(g,g)^z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TargetElement {
    dlog: Scalar,
    backend: Backend,
}

impl TargetElement {
    pub fn is_identity(&self) -> bool {
        self.dlog.is_zero()
    }

    pub fn checked_mul(self, rhs: TargetElement) -> Result<TargetElement, Error> {
        if self.backend != rhs.backend || self.dlog.modulus() != rhs.dlog.modulus() {
            return Err(Error::GroupMismatch);
        }
        Ok(TargetElement {
            dlog: self.dlog + rhs.dlog,
            backend: self.backend,
        })
    }

    pub fn pow(self, k: Scalar) -> TargetElement {
        TargetElement {
            dlog: self.dlog * k,
            backend: self.backend,
        }
    }

    pub fn transparent_dlog(&self) -> Scalar {
        self.dlog
    }
}

impl std::ops::Mul for TargetElement {
    type Output = TargetElement;
    fn mul(self, rhs: TargetElement) -> TargetElement {
        self.checked_mul(rhs).expect("group mismatch")
    }
}

/// The bilinear map e : G x G -> G_T.
pub fn checked_pair(u: GroupElement, v: GroupElement) -> Result<TargetElement, Error> {
    if !u.same_group(&v) {
        return Err(Error::GroupMismatch);
    }
    Ok(TargetElement {
        dlog: u.dlog * v.dlog,
        backend: u.backend,
    })
}

pub fn pair(u: GroupElement, v: GroupElement) -> TargetElement {
    checked_pair(u, v).expect("group mismatch")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn g101() -> GroupDescription {
        GroupDescription::new(101).unwrap()
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(GroupDescription::new(100), Err(Error::NotPrime(100)));
        assert!(GroupDescription::new(101).is_ok());
    }

    #[test]
    fn group_law_examples() {
        let d = g101();
        let u = d.element_from_dlog(10);
        let v = d.element_from_dlog(5);
        assert_eq!(u * v, d.element_from_dlog(15));
        // order-p wraparound
        assert_eq!(
            d.element_from_dlog(100) * d.generator(),
            d.identity()
        );
        assert_eq!(d.identity() * d.element_from_dlog(42), d.element_from_dlog(42));
    }

    #[test]
    fn pow_examples() {
        let d = g101();
        assert_eq!(
            d.element_from_dlog(13).pow(d.scalar(7)),
            d.element_from_dlog(91)
        );
        assert_eq!(
            d.element_from_dlog(13).pow(d.scalar(11)),
            d.element_from_dlog(42) // 143 mod 101
        );
        assert_eq!(d.element_from_dlog(77).pow(d.scalar(0)), d.identity());
    }

    #[test]
    fn pairing_examples() {
        let d = g101();
        let lhs = pair(d.element_from_dlog(10), d.element_from_dlog(5));
        assert_eq!(lhs.transparent_dlog().value(), 50);
        assert!(pair(d.identity(), d.element_from_dlog(9)).is_identity());
        // 61 * 7 = 427 = 4*101 + 23
        let t = pair(d.element_from_dlog(61), d.element_from_dlog(7));
        assert_eq!(t.transparent_dlog().value(), 23);
    }

    #[test]
    fn bilinearity_random_pairs() {
        let d = GroupDescription::default();
        let g = d.generator();
        let e_gg = pair(g, g);
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let a = d.scalar(rng.gen_range(0..d.modulus()));
            let b = d.scalar(rng.gen_range(0..d.modulus()));
            assert_eq!(pair(g.pow(a), g.pow(b)), e_gg.pow(a * b));
        }
    }

    #[test]
    fn non_degeneracy_and_order() {
        let d = GroupDescription::default();
        assert!(!pair(d.generator(), d.generator()).is_identity());
        let mut rng = ChaCha20Rng::seed_from_u64(12);
        for _ in 0..100 {
            let u = d.element_from_dlog(rng.gen_range(0..d.modulus()));
            assert!(u.pow_raw(d.modulus()).is_identity());
        }
    }

    #[test]
    fn mismatched_groups_error() {
        let a = g101().generator();
        let b = GroupDescription::new(103).unwrap().generator();
        assert_eq!(a.checked_mul(b), Err(Error::GroupMismatch));
        assert_eq!(checked_pair(a, b), Err(Error::GroupMismatch));
        assert!(a.checked_pow(Scalar::new(5, 103)).is_err());
    }

    #[test]
    fn wire_string_round_trip() {
        let d = g101();
        let u = d.element_from_dlog(13);
        assert_eq!(u.to_wire_string(), "transparent:13");
        assert_eq!(GroupElement::from_wire_string("transparent:13", &d).unwrap(), u);
        assert!(GroupElement::from_wire_string("transparent:101", &d).is_err());
        assert!(GroupElement::from_wire_string("opaque:13", &d).is_err());
        assert!(GroupElement::from_wire_string("13", &d).is_err());
    }

    #[test]
    fn inversion_cancels() {
        let d = g101();
        let u = d.element_from_dlog(77);
        assert!((u * u.invert()).is_identity());
    }
}
