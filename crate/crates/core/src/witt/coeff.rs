//! Coefficient rings for Witt vectors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{FpElem, LaurentSeries, Poly, RatFunc};

/// A commutative ring the universal Witt polynomials can be evaluated in.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Image of an integer under `Z -> A`.
    fn from_integer(&self, n: &BigInt) -> Self;
    fn add_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// True only for the exact zero.
    fn vanishes(&self) -> bool;
    /// 0 for torsion-free rings.
    fn characteristic(&self) -> u64;
    fn same_ring(&self, o: &Self) -> bool;

    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// Rings of characteristic p, where `x -> x^p` is a ring endomorphism.
pub trait CharPCoeff: Coeff {
    fn pth_power(&self) -> Self;

    /// `x^e`, routing every factor of p through [`CharPCoeff::pth_power`].
    fn pow_frob(&self, e: u64) -> Self {
        let p = self.characteristic();
        if e == 0 {
            return self.one_like();
        }
        let (q, r) = e.div_rem(&p);
        let low = self.pow_u64(r);
        if q == 0 {
            low
        } else {
            self.pow_frob(q).pth_power().mul_ref(&low)
        }
    }
}

fn reduce(n: &BigInt, p: u64) -> i64 {
    n.mod_floor(&BigInt::from(p)).to_i64().unwrap()
}

impl Coeff for FpElem {
    fn zero_like(&self) -> Self {
        FpElem::new(0, self.p())
    }
    fn one_like(&self) -> Self {
        FpElem::new(1, self.p())
    }
    fn from_integer(&self, n: &BigInt) -> Self {
        FpElem::new(reduce(n, self.p()), self.p())
    }
    fn add_ref(&self, o: &Self) -> Self {
        *self + *o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        *self * *o
    }
    fn neg_ref(&self) -> Self {
        -*self
    }
    fn vanishes(&self) -> bool {
        FpElem::is_zero(self)
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn same_ring(&self, o: &Self) -> bool {
        self.p() == o.p()
    }
}

impl CharPCoeff for FpElem {
    fn pth_power(&self) -> Self {
        *self
    }
}

impl Coeff for LaurentSeries {
    fn zero_like(&self) -> Self {
        LaurentSeries::zero(self.p())
    }
    fn one_like(&self) -> Self {
        LaurentSeries::one(self.p())
    }
    fn from_integer(&self, n: &BigInt) -> Self {
        LaurentSeries::monomial(self.p(), reduce(n, self.p()), 0)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn vanishes(&self) -> bool {
        self.is_exact_zero()
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn same_ring(&self, o: &Self) -> bool {
        self.p() == o.p()
    }
}

impl CharPCoeff for LaurentSeries {
    fn pth_power(&self) -> Self {
        self.frobenius()
    }
}

impl Coeff for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.p())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.p())
    }
    fn from_integer(&self, n: &BigInt) -> Self {
        RatFunc::constant(self.p(), reduce(n, self.p()))
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn vanishes(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn same_ring(&self, o: &Self) -> bool {
        self.p() == o.p()
    }
}

impl CharPCoeff for RatFunc {
    fn pth_power(&self) -> Self {
        // coefficients lie in F_p, so f(x)^p = f(x^p)
        let p = self.p();
        let spread = |q: &Poly| {
            let mut c = vec![0u64; q.coeffs().len().saturating_sub(1) * p as usize + 1];
            for (i, &a) in q.coeffs().iter().enumerate() {
                c[i * p as usize] = a;
            }
            Poly::new(p, c)
        };
        if self.is_zero() {
            return self.clone();
        }
        RatFunc::new(spread(self.numerator()), spread(self.denominator())).unwrap()
    }
}

impl Coeff for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::from(1)
    }
    fn from_integer(&self, n: &BigInt) -> Self {
        n.clone()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn same_ring(&self, _: &Self) -> bool {
        true
    }
}
