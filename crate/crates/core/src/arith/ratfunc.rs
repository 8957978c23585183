//! Rational functions in one variable over F_p, and places of P^1.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::Poly;
use crate::error::{Error, Result};

/// An F_p-rational place of P^1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Place {
    Finite(i64),
    Infinity,
}

impl Place {
    /// Representative of a finite place in `[0, p)`.
    pub fn residue(&self, p: u64) -> Option<u64> {
        match self {
            Place::Finite(a) => Some(a.rem_euclid(p as i64) as u64),
            Place::Infinity => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(a) => write!(f, "{a}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// `numerator / denominator` with monic denominator and trivial gcd.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        assert_eq!(num.p(), den.p());
        if num.is_zero() {
            return Ok(RatFunc::zero(num.p()));
        }
        let g = num.gcd(&den);
        let (n, _) = num.divrem(&g);
        let (d, _) = den.divrem(&g);
        let lc = d.leading();
        let inv = super::fp::FpElem::from_reduced(lc, d.p()).inv().unwrap().value();
        Ok(RatFunc {
            num: n.scale(inv),
            den: d.scale(inv),
        })
    }

    pub fn from_poly(num: Poly) -> Self {
        let p = num.p();
        RatFunc {
            num,
            den: Poly::one(p),
        }
    }

    pub fn zero(p: u64) -> Self {
        RatFunc::from_poly(Poly::zero(p))
    }

    pub fn one(p: u64) -> Self {
        RatFunc::from_poly(Poly::one(p))
    }

    pub fn constant(p: u64, c: i64) -> Self {
        RatFunc::from_poly(Poly::from_ints(p, &[c]))
    }

    pub fn x(p: u64) -> Self {
        RatFunc::from_poly(Poly::x(p))
    }

    /// `c * x^k` for any integer `k`.
    pub fn monomial(p: u64, c: i64, k: i64) -> Self {
        let c = Poly::from_ints(p, &[c]);
        if k >= 0 {
            RatFunc::from_poly(c.mul(&Poly::monomial(p, 1, k as usize)))
        } else {
            RatFunc::new(c, Poly::monomial(p, 1, (-k) as usize)).unwrap()
        }
    }

    pub fn p(&self) -> u64 {
        self.num.p()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .unwrap()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        if o.is_zero() {
            return Err(Error::Domain("division by the zero rational function".into()));
        }
        RatFunc::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Order of vanishing at `place` (negative for poles); `None` stands for +infinity.
    pub fn valuation(&self, place: Place) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        match place {
            Place::Finite(_) => {
                let a = place.residue(self.p()).unwrap();
                let vn = self.num.root_multiplicity(a).unwrap() as i64;
                let vd = self.den.root_multiplicity(a).unwrap() as i64;
                Some(vn - vd)
            }
            Place::Infinity => {
                let dn = self.num.degree().unwrap() as i64;
                let dd = self.den.degree().unwrap() as i64;
                Some(dd - dn)
            }
        }
    }

    /// Substitutes `x -> x + c`.
    pub fn translate(&self, c: i64) -> RatFunc {
        let c = c.rem_euclid(self.p() as i64) as u64;
        RatFunc::new(self.num.shift(c), self.den.shift(c)).unwrap()
    }

    /// Substitutes `x -> 1/x`.
    pub fn invert_variable(&self) -> RatFunc {
        let p = self.p();
        if self.is_zero() {
            return self.clone();
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let d = dn.max(dd);
        // num(1/x) = x^{-dn} rev(num); scale both by x^d
        let rev = |f: &Poly, deg: usize| {
            let mut c: Vec<u64> = f.coeffs().to_vec();
            c.reverse();
            Poly::new(p, c).mul(&Poly::monomial(p, 1, d - deg))
        };
        RatFunc::new(rev(&self.num, dn), rev(&self.den, dd)).unwrap()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            return write!(f, "{}", self.num);
        }
        let wrap = |q: &Poly| {
            if q.coeffs().iter().filter(|&&c| c != 0).count() > 1 {
                format!("({q})")
            } else {
                q.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc[F_{}]({})", self.p(), self)
    }
}

/// Order of vanishing of `f` at `place`; `None` means +infinity (f = 0).
pub fn valuation(f: &RatFunc, place: Place) -> Option<i64> {
    f.valuation(place)
}
