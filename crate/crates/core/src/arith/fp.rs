//! The prime field F_p.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> FpElem {
        FpElem::new(v, self.p)
    }

    pub fn zero(&self) -> FpElem {
        FpElem { value: 0, p: self.p }
    }

    pub fn one(&self) -> FpElem {
        FpElem { value: 1 % self.p, p: self.p }
    }

    pub fn elements(&self) -> impl Iterator<Item = FpElem> + '_ {
        (0..self.p).map(move |v| FpElem { value: v, p: self.p })
    }
}

/// An element of F_p, always reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    p: u64,
}

impl FpElem {
    pub fn new(v: i64, p: u64) -> Self {
        let m = p as i64;
        FpElem {
            value: v.rem_euclid(m) as u64,
            p,
        }
    }

    pub(crate) fn from_reduced(value: u64, p: u64) -> Self {
        debug_assert!(value < p);
        FpElem { value, p }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.value as u128;
        let m = self.p as u128;
        let mut acc = 1u128 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        FpElem {
            value: acc as u64,
            p: self.p,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing elements of F_{} and F_{}", self.p, other.p);
    }
}

impl fmt::Debug for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpElem {
    type Output = FpElem;
    fn add(self, rhs: FpElem) -> FpElem {
        self.check(&rhs);
        FpElem {
            value: ((self.value as u128 + rhs.value as u128) % self.p as u128) as u64,
            p: self.p,
        }
    }
}

impl Sub for FpElem {
    type Output = FpElem;
    fn sub(self, rhs: FpElem) -> FpElem {
        self + (-rhs)
    }
}

impl Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        FpElem {
            value: (self.p - self.value) % self.p,
            p: self.p,
        }
    }
}

impl Mul for FpElem {
    type Output = FpElem;
    fn mul(self, rhs: FpElem) -> FpElem {
        self.check(&rhs);
        FpElem {
            value: ((self.value as u128 * rhs.value as u128) % self.p as u128) as u64,
            p: self.p,
        }
    }
}

impl Div for FpElem {
    type Output = FpElem;
    fn div(self, rhs: FpElem) -> FpElem {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn field_axioms_exhaustive_small_primes() {
        for p in [2u64, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(a + f.zero(), a);
                assert_eq!(a * f.one(), a);
                assert_eq!(a + (-a), f.zero());
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), f.one());
                }
                for &b in &els {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for &c in &els {
                        assert_eq!((a + b) + c, a + (b + c));
                        assert_eq!((a * b) * c, a * (b * c));
                        assert_eq!(a * (b + c), a * b + a * c);
                    }
                }
            }
        }
    }

    #[test]
    fn fermat() {
        let f = PrimeField::new(5).unwrap();
        for a in f.elements() {
            assert_eq!(a.pow(5), a);
        }
    }
}
