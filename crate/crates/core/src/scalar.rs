//! Exact modular arithmetic in Z_p for moduli up to 64 bits.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;

/// An element of Z_p held as its canonical representative in `[0, p)`.
///
/// Every scalar carries its modulus; mixing moduli is reported through the
/// `checked_*` methods, while the operator forms panic (a programming error
/// inside scheme code, where all values descend from one group description).
/// Intermediates use 128-bit arithmetic, so any 64-bit prime modulus is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u64,
    modulus: u64,
}

impl Scalar {
    /// Reduces `value` into canonical form.
    pub fn new(value: u64, modulus: u64) -> Self {
        debug_assert!(modulus > 1);
        Scalar {
            value: value % modulus,
            modulus,
        }
    }

    pub fn zero(modulus: u64) -> Self {
        Scalar::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Self {
        Scalar::new(1, modulus)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_modulus(&self, rhs: &Scalar) -> Result<(), Error> {
        if self.modulus == rhs.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus, rhs.modulus))
        }
    }

    pub fn checked_add(self, rhs: Scalar) -> Result<Scalar, Error> {
        self.same_modulus(&rhs)?;
        let sum = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Ok(Scalar {
            value: sum as u64,
            modulus: self.modulus,
        })
    }

    pub fn checked_sub(self, rhs: Scalar) -> Result<Scalar, Error> {
        self.same_modulus(&rhs)?;
        let m = self.modulus as u128;
        let diff = (self.value as u128 + m - rhs.value as u128) % m;
        Ok(Scalar {
            value: diff as u64,
            modulus: self.modulus,
        })
    }

    pub fn checked_mul(self, rhs: Scalar) -> Result<Scalar, Error> {
        self.same_modulus(&rhs)?;
        let prod = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Ok(Scalar {
            value: prod as u64,
            modulus: self.modulus,
        })
    }

    pub fn negate(self) -> Scalar {
        if self.value == 0 {
            self
        } else {
            Scalar {
                value: self.modulus - self.value,
                modulus: self.modulus,
            }
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self) -> Result<Scalar, Error> {
        if self.value == 0 {
            return Err(Error::NonInvertible);
        }
        let (mut r0, mut r1) = (self.modulus as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus must be prime");
        let m = self.modulus as i128;
        Ok(Scalar {
            value: ((t0 % m + m) % m) as u64,
            modulus: self.modulus,
        })
    }

    /// Square-and-multiply exponentiation with a plain integer exponent.
    pub fn pow(self, mut exp: u64) -> Scalar {
        let m = self.modulus as u128;
        let mut base = self.value as u128;
        let mut acc = 1u128;
        while exp != 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Scalar {
            value: acc as u64,
            modulus: self.modulus,
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar modulus mismatch")
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar modulus mismatch")
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar modulus mismatch")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negate()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp != 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test, exact for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This base set is a known deterministic witness set for n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P: u64 = 101;

    fn s(v: u64) -> Scalar {
        Scalar::new(v, P)
    }

    #[test]
    fn worked_small_prime_cases() {
        assert_eq!((s(7) * s(9)).value(), 63);
        // 91 * 4 = 364; long division: 364 - 3*101 = 61
        assert_eq!((s(91) * s(4)).value(), 61);
        assert_eq!(s(67).negate().value(), 34);
        // extended-Euclid oracle: 3 * 34 = 102 = 101 + 1
        assert_eq!(s(3).inv().unwrap().value(), 34);
        assert_eq!(s(1).inv().unwrap().value(), 1);
        assert_eq!(s(100).inv().unwrap().value(), 100);
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(s(0).inv(), Err(Error::NonInvertible));
    }

    #[test]
    fn modulus_mismatch_is_reported() {
        let other = Scalar::new(5, 103);
        assert_eq!(
            s(1).checked_add(other),
            Err(Error::ModulusMismatch(101, 103))
        );
        assert!(s(1).checked_sub(other).is_err());
        assert!(s(1).checked_mul(other).is_err());
    }

    #[test]
    #[should_panic(expected = "modulus mismatch")]
    fn operator_panics_on_mismatch() {
        let _ = s(1) + Scalar::new(5, 103);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let x = s(7);
        let mut acc = Scalar::one(P);
        for e in 0..20u64 {
            assert_eq!(x.pow(e), acc);
            acc = acc * x;
        }
    }

    #[test]
    fn inverse_agrees_with_fermat_exponent() {
        // Independent route: x^(p-2) mod p.
        for v in 1..P {
            assert_eq!(s(v).inv().unwrap(), s(v).pow(P - 2));
        }
    }

    #[test]
    fn primality_known_values() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(101));
        assert!(is_prime_u64(2305843009213693951)); // 2^61 - 1
        assert!(is_prime_u64(18446744073709551557)); // largest u64 prime
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(100));
        assert!(!is_prime_u64(2305843009213693953));
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }

    proptest! {
        // Field axioms at the default 61-bit modulus, 128-bit intermediates.
        #[test]
        fn field_axioms(a in 0u64..u64::MAX, b in 0u64..u64::MAX, c in 0u64..u64::MAX) {
            let p = crate::group::DEFAULT_MODULUS;
            let (x, y, z) = (Scalar::new(a, p), Scalar::new(b, p), Scalar::new(c, p));
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!(x + (-x), Scalar::zero(p));
            if !x.is_zero() {
                prop_assert_eq!(x.inv().unwrap() * x, Scalar::one(p));
            }
        }
    }

    #[test]
    fn field_axioms_bulk_small_prime() {
        // 10^4 random triples over Z_101 against plain integer arithmetic.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let (a, b, c) = (rng.gen_range(0..P), rng.gen_range(0..P), rng.gen_range(0..P));
            let (x, y, z) = (s(a), s(b), s(c));
            assert_eq!(((x + y) + z).value(), (a + b + c) % P);
            assert_eq!((x * (y + z)).value(), (a * ((b + c) % P)) % P);
            if a != 0 {
                assert_eq!((x.inv().unwrap() * x).value(), 1);
            }
        }
    }
}
