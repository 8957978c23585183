//! Truncated Laurent series over F_p in a local parameter `t`.
//!
//! A series carries an absolute precision: it is known modulo `t^N`, or
//! exactly (a Laurent polynomial). Arithmetic propagates precision
//! pessimistically, so every coefficient a series reports is correct.

use std::fmt;

use super::fp::FpElem;
use super::poly::Poly;
use super::ratfunc::{Place, RatFunc};
use crate::error::{Error, Result};

/// Absolute precision of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Exact,
    /// Known modulo `t^N`.
    Abs(i64),
}

impl Precision {
    pub fn min(self, other: Precision) -> Precision {
        match (self, other) {
            (Precision::Exact, q) | (q, Precision::Exact) => q,
            (Precision::Abs(a), Precision::Abs(b)) => Precision::Abs(a.min(b)),
        }
    }

    fn shifted(self, k: i64) -> Precision {
        match self {
            Precision::Exact => Precision::Exact,
            Precision::Abs(n) => Precision::Abs(n + k),
        }
    }

    fn bound(self) -> Option<i64> {
        match self {
            Precision::Exact => None,
            Precision::Abs(n) => Some(n),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    p: u64,
    /// Exponent of `coeffs[0]`; `coeffs[0] != 0` whenever `coeffs` is non-empty.
    start: i64,
    coeffs: Vec<u64>,
    prec: Precision,
}

impl LaurentSeries {
    fn build(p: u64, start: i64, coeffs: Vec<u64>, prec: Precision) -> Self {
        let mut s = LaurentSeries {
            p,
            start,
            coeffs,
            prec,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Precision::Abs(n) = self.prec {
            let keep = (n - self.start).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
        if self.prec == Precision::Exact {
            while self.coeffs.last() == Some(&0) {
                self.coeffs.pop();
            }
        }
        if self.coeffs.is_empty() {
            self.start = self.prec.bound().unwrap_or(0);
        }
    }

    pub fn zero(p: u64) -> Self {
        LaurentSeries::build(p, 0, vec![], Precision::Exact)
    }

    /// `O(t^n)`: a zero known only modulo `t^n`.
    pub fn big_o(p: u64, n: i64) -> Self {
        LaurentSeries::build(p, n, vec![], Precision::Abs(n))
    }

    pub fn one(p: u64) -> Self {
        LaurentSeries::monomial(p, 1, 0)
    }

    /// Exact `c * t^k`.
    pub fn monomial(p: u64, c: i64, k: i64) -> Self {
        let c = c.rem_euclid(p as i64) as u64;
        LaurentSeries::build(p, k, vec![c], Precision::Exact)
    }

    /// Exact Laurent polynomial from `(exponent, coefficient)` terms.
    pub fn from_terms(p: u64, terms: &[(i64, i64)]) -> Self {
        terms.iter().fold(LaurentSeries::zero(p), |acc, &(k, c)| {
            acc.add(&LaurentSeries::monomial(p, c, k))
        })
    }

    /// Exact series `t^shift * f(t)`.
    pub fn from_poly(f: &Poly, shift: i64) -> Self {
        LaurentSeries::build(f.p(), shift, f.coeffs().to_vec(), Precision::Exact)
    }

    /// Forgets every coefficient at or above `t^n`.
    pub fn truncate(&self, n: i64) -> Self {
        LaurentSeries::build(
            self.p,
            self.start,
            self.coeffs.clone(),
            self.prec.min(Precision::Abs(n)),
        )
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == Precision::Exact
    }

    /// True when no nonzero coefficient is known (exact zero or `O(t^n)`).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.is_zero() && self.is_exact()
    }

    /// Order of the lowest known nonzero term; `None` for (possibly inexact) zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.start)
        }
    }

    /// Lower bound for the true valuation: the valuation itself, or the precision of a zero.
    /// `None` for the exact zero.
    pub fn order_bound(&self) -> Option<i64> {
        match (self.valuation(), self.prec) {
            (Some(v), _) => Some(v),
            (None, Precision::Abs(n)) => Some(n),
            (None, Precision::Exact) => None,
        }
    }

    /// Number of known terms past the valuation; `None` if exact or zero.
    pub fn relative_precision(&self) -> Option<i64> {
        match (self.valuation(), self.prec) {
            (Some(v), Precision::Abs(n)) => Some(n - v),
            _ => None,
        }
    }

    pub fn leading_coeff(&self) -> Option<FpElem> {
        self.coeffs
            .first()
            .map(|&c| FpElem::from_reduced(c, self.p))
    }

    /// Coefficient of `t^k`, or `None` if it lies beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<u64> {
        if let Precision::Abs(n) = self.prec {
            if k >= n {
                return None;
            }
        }
        if k < self.start {
            return Some(0);
        }
        Some(self.coeffs.get((k - self.start) as usize).copied().unwrap_or(0))
    }

    /// Known nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.start + i as i64, c))
    }

    fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub fn add(&self, o: &LaurentSeries) -> LaurentSeries {
        assert_eq!(self.p, o.p);
        let prec = self.prec.min(o.prec);
        let mut lo = self.start.min(o.start);
        if self.is_zero() {
            lo = o.start;
        } else if o.is_zero() {
            lo = self.start;
        }
        let mut hi = self.end().max(o.end());
        if let Some(n) = prec.bound() {
            hi = hi.min(n);
        }
        if hi <= lo {
            return LaurentSeries::build(self.p, lo, vec![], prec);
        }
        let mut c = vec![0u64; (hi - lo) as usize];
        for s in [self, o] {
            for (k, v) in s.terms() {
                if k >= lo && k < hi {
                    let slot = &mut c[(k - lo) as usize];
                    *slot = (*slot + v) % self.p;
                }
            }
        }
        LaurentSeries::build(self.p, lo, c, prec)
    }

    pub fn neg(&self) -> LaurentSeries {
        LaurentSeries {
            p: self.p,
            start: self.start,
            coeffs: self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &LaurentSeries) -> LaurentSeries {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: FpElem) -> LaurentSeries {
        let c = c.value();
        if c == 0 {
            return match self.order_bound() {
                Some(n) if !self.is_exact() => {
                    // c * O(t^n) is still only known to the old precision
                    LaurentSeries::big_o(self.p, self.prec.bound().unwrap().max(n))
                }
                _ => LaurentSeries::zero(self.p),
            };
        }
        LaurentSeries::build(
            self.p,
            self.start,
            self.coeffs
                .iter()
                .map(|&a| ((a as u128 * c as u128) % self.p as u128) as u64)
                .collect(),
            self.prec,
        )
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        LaurentSeries {
            p: self.p,
            start: self.start + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec.shifted(k),
        }
    }

    pub fn mul(&self, o: &LaurentSeries) -> LaurentSeries {
        assert_eq!(self.p, o.p);
        if self.is_exact_zero() || o.is_exact_zero() {
            return LaurentSeries::zero(self.p);
        }
        let va = self.order_bound().unwrap();
        let vb = o.order_bound().unwrap();
        let prec = o.prec.shifted(va).min(self.prec.shifted(vb));
        if self.is_zero() || o.is_zero() {
            return LaurentSeries::build(self.p, va + vb, vec![], prec);
        }
        let lo = self.start + o.start;
        let mut len = self.coeffs.len() + o.coeffs.len() - 1;
        if let Some(n) = prec.bound() {
            len = len.min((n - lo).max(0) as usize);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 || i >= len {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        LaurentSeries::build(
            self.p,
            lo,
            acc.into_iter().map(|c| c as u64).collect(),
            prec,
        )
    }

    pub fn pow(&self, mut e: u64) -> LaurentSeries {
        let mut base = self.clone();
        let mut acc = LaurentSeries::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The p-th power map, `sum c_k t^k -> sum c_k t^{pk}` (coefficients lie in F_p).
    pub fn frobenius(&self) -> LaurentSeries {
        let p = self.p as i64;
        let mut c = vec![];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                c.extend(std::iter::repeat(0).take(self.p as usize - 1));
            }
            c.push(a);
        }
        LaurentSeries::build(
            self.p,
            self.start * p,
            c,
            match self.prec {
                Precision::Exact => Precision::Exact,
                Precision::Abs(n) => Precision::Abs(n * p),
            },
        )
    }

    /// Multiplicative inverse carrying `rel` significant terms (exact for monomials).
    pub fn inverse(&self, rel: i64) -> Result<LaurentSeries> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::Domain("inverse of a zero series".into()))?;
        let avail = match self.relative_precision() {
            Some(r) => r.min(rel),
            None => rel,
        };
        if self.is_exact() && self.coeffs.len() == 1 {
            let inv = self.leading_coeff().unwrap().inv().unwrap();
            return Ok(LaurentSeries::build(
                self.p,
                -v,
                vec![inv.value()],
                Precision::Exact,
            ));
        }
        if avail < 1 {
            return Err(Error::InternalPrecision(format!(
                "inverse needs at least one significant term, have {avail}"
            )));
        }
        let p = self.p;
        let a0inv = self.leading_coeff().unwrap().inv().unwrap();
        let a: Vec<FpElem> = (0..avail as usize)
            .map(|i| FpElem::from_reduced(self.coeffs.get(i).copied().unwrap_or(0), p))
            .collect();
        let mut b: Vec<FpElem> = Vec::with_capacity(avail as usize);
        b.push(a0inv);
        for k in 1..avail as usize {
            let mut s = FpElem::from_reduced(0, p);
            for j in 1..=k {
                s = s + a[j] * b[k - j];
            }
            b.push(-(s * a0inv));
        }
        Ok(LaurentSeries::build(
            p,
            -v,
            b.into_iter().map(|c| c.value()).collect(),
            Precision::Abs(-v + avail),
        ))
    }

    /// Lifts coefficients to integers in `[0, p)`; used by the integer-lift oracles.
    pub fn coefficient_vec(&self) -> (i64, Vec<u64>) {
        (self.start, self.coeffs.clone())
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, c) => write!(f, "{c}t^{k}")?,
            }
        }
        match self.prec {
            Precision::Exact if first => write!(f, "0"),
            Precision::Exact => Ok(()),
            Precision::Abs(n) => {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "O(t^{n})")
            }
        }
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent[F_{}]({})", self.p, self)
    }
}

/// Expansion of `f` in the local parameter at `place` (`x = a + t`, or `x = 1/t` at
/// infinity), carrying `prec` significant terms. Exact when the local denominator is a
/// monomial in `t`.
pub fn laurent_expand(f: &RatFunc, place: Place, prec: i64) -> Result<LaurentSeries> {
    if prec < 1 {
        return Err(Error::Domain(format!("expansion precision must be >= 1, got {prec}")));
    }
    let p = f.p();
    if f.is_zero() {
        return Ok(LaurentSeries::zero(p));
    }
    let (num_t, den_t, shift) = match place {
        Place::Finite(_) => {
            let a = place.residue(p).unwrap();
            (f.numerator().shift(a), f.denominator().shift(a), 0i64)
        }
        Place::Infinity => {
            let rev = |q: &Poly| {
                let mut c = q.coeffs().to_vec();
                c.reverse();
                Poly::new(p, c)
            };
            let dn = f.numerator().degree().unwrap() as i64;
            let dd = f.denominator().degree().unwrap() as i64;
            (rev(f.numerator()), rev(f.denominator()), dd - dn)
        }
    };
    let num = LaurentSeries::from_poly(&num_t, shift);
    let den = LaurentSeries::from_poly(&den_t, 0);
    Ok(num.mul(&den.inverse(prec)?))
}
