//! Scalar arithmetic in the prime field 𝔽_p.
//!
//! Moduli are small primes (the default workbench field is 𝔽_2), so trial
//! division suffices for primality and all arithmetic fits in `u64`
//! intermediates.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Raw residue arithmetic. Callers guarantee both operands are reduced
/// mod the same prime.
pub(crate) mod fp {
    pub fn add(a: u32, b: u32, p: u32) -> u32 {
        let s = a + b;
        if s >= p {
            s - p
        } else {
            s
        }
    }

    pub fn sub(a: u32, b: u32, p: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + p - b
        }
    }

    pub fn neg(a: u32, p: u32) -> u32 {
        if a == 0 {
            0
        } else {
            p - a
        }
    }

    pub fn mul(a: u32, b: u32, p: u32) -> u32 {
        ((a as u64 * b as u64) % p as u64) as u32
    }

    pub fn pow(mut base: u32, mut exp: u32, p: u32) -> u32 {
        let mut acc = 1 % p;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base, p);
            }
            base = mul(base, base, p);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat; `a` must be nonzero mod `p`.
    pub fn inv(a: u32, p: u32) -> u32 {
        debug_assert!(a % p != 0, "inverse of zero");
        pow(a, p - 2, p)
    }
}

/// An element of 𝔽_p carrying its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u32,
    modulus: u32,
}

impl Scalar {
    pub fn new(value: i64, modulus: u32) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        Ok(Self::reduced(value, modulus))
    }

    /// Like `new` but assumes the modulus was already validated.
    pub(crate) fn reduced(value: i64, modulus: u32) -> Self {
        let m = modulus as i64;
        let v = ((value % m) + m) % m;
        Scalar {
            value: v as u32,
            modulus,
        }
    }

    pub fn zero(modulus: u32) -> Result<Self> {
        Scalar::new(0, modulus)
    }

    pub fn one(modulus: u32) -> Result<Self> {
        Scalar::new(1, modulus)
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.value == 0 {
            None
        } else {
            Some(Scalar {
                value: fp::inv(self.value, self.modulus),
                modulus: self.modulus,
            })
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(
            self.modulus, other.modulus,
            "scalar arithmetic across different moduli"
        );
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.check(&rhs);
        Scalar {
            value: fp::add(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.check(&rhs);
        Scalar {
            value: fp::sub(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.check(&rhs);
        Scalar {
            value: fp::mul(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            value: fp::neg(self.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.check(&rhs);
        let inv = rhs.inv().expect("division by zero scalar");
        self * inv
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(97));
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(91));
    }

    #[test]
    fn construction_rejects_composite_modulus() {
        assert_eq!(Scalar::new(1, 6), Err(Error::NotPrime(6)));
    }

    #[test]
    fn arithmetic_mod_three() {
        let a = Scalar::new(2, 3).unwrap();
        let b = Scalar::new(2, 3).unwrap();
        assert_eq!((a + b).value(), 1);
        assert_eq!((a * b).value(), 1);
        assert_eq!((a - b).value(), 0);
        assert_eq!((-a).value(), 1);
        assert_eq!(a.inv().unwrap().value(), 2);
    }

    #[test]
    fn negative_values_reduce() {
        assert_eq!(Scalar::new(-1, 5).unwrap().value(), 4);
        assert_eq!(Scalar::new(-10, 5).unwrap().value(), 0);
    }

    #[test]
    fn every_nonzero_element_invertible() {
        for p in [2u32, 3, 5, 7] {
            for v in 1..p {
                let s = Scalar::new(v as i64, p).unwrap();
                let inv = s.inv().unwrap();
                assert_eq!((s * inv).value(), 1, "p={p} v={v}");
            }
        }
    }
}
