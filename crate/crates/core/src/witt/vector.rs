//! Truncated p-typical Witt vectors and their operations.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use super::coeff::{CharPCoeff, Coeff};
use super::polys::{gen_witt_polys, Kind, WittPolySet};
use crate::arith::FpElem;
use crate::error::{Error, Result};

/// An element `(a_0, ..., a_{n-1})` of `W_n(A)`.
#[derive(Clone, PartialEq, Eq)]
pub struct WittVector<A> {
    p: u64,
    comps: Vec<A>,
}

impl<A: Coeff> WittVector<A> {
    pub fn new(p: u64, comps: Vec<A>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::InvalidInput("a Witt vector needs at least one component".into()));
        }
        if comps.iter().any(|c| !c.same_ring(&comps[0])) {
            return Err(Error::MismatchedRing("components live in different rings".into()));
        }
        let ch = comps[0].characteristic();
        if ch != 0 && ch != p {
            return Err(Error::MismatchedRing(format!(
                "coefficients have characteristic {ch}, vector has p = {p}"
            )));
        }
        Ok(WittVector { p, comps })
    }

    pub fn zero(p: u64, n: usize, proto: &A) -> Self {
        WittVector {
            p,
            comps: vec![proto.zero_like(); n],
        }
    }

    pub fn one(p: u64, n: usize, proto: &A) -> Self {
        let mut v = WittVector::zero(p, n, proto);
        v.comps[0] = proto.one_like();
        v
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> &[A] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<A> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.vanishes())
    }

    fn check_pair(&self, o: &Self) -> Result<()> {
        if self.p != o.p || self.len() != o.len() || !self.comps[0].same_ring(&o.comps[0]) {
            return Err(Error::MismatchedRing(format!(
                "W_{}(p={}) vs W_{}(p={})",
                self.len(),
                self.p,
                o.len(),
                o.p
            )));
        }
        Ok(())
    }
}

impl<A: fmt::Debug> fmt::Debug for WittVector<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("W").field(&self.comps).finish()
    }
}

impl<A: fmt::Display> fmt::Display for WittVector<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Evaluates a polynomial set, computing each needed power of each input once.
fn apply<A: CharPCoeff>(set: &WittPolySet, vals: &[A]) -> Vec<A> {
    let mut powers: HashMap<(usize, u32), A> = HashMap::new();
    let mut pow = |i: usize, k: u32| -> A {
        powers
            .entry((i, k))
            .or_insert_with(|| vals[i].pow_frob(k as u64))
            .clone()
    };
    set.polys_mod_p
        .iter()
        .map(|q| {
            if q.is_empty() {
                vals[0].zero_like()
            } else {
                q.eval(vals, &mut pow)
            }
        })
        .collect()
}

fn binary<A: CharPCoeff>(x: &WittVector<A>, y: &WittVector<A>, kind: Kind) -> Result<WittVector<A>> {
    x.check_pair(y)?;
    let set = gen_witt_polys(x.p, x.len(), kind)?;
    let vals: Vec<A> = x.comps.iter().chain(y.comps.iter()).cloned().collect();
    Ok(WittVector {
        p: x.p,
        comps: apply(&set, &vals),
    })
}

pub fn witt_add<A: CharPCoeff>(x: &WittVector<A>, y: &WittVector<A>) -> Result<WittVector<A>> {
    binary(x, y, Kind::Add)
}

pub fn witt_mul<A: CharPCoeff>(x: &WittVector<A>, y: &WittVector<A>) -> Result<WittVector<A>> {
    binary(x, y, Kind::Mul)
}

pub fn witt_neg<A: CharPCoeff>(x: &WittVector<A>) -> Result<WittVector<A>> {
    let set = gen_witt_polys(x.p, x.len(), Kind::Neg)?;
    Ok(WittVector {
        p: x.p,
        comps: apply(&set, &x.comps),
    })
}

pub fn witt_sub<A: CharPCoeff>(x: &WittVector<A>, y: &WittVector<A>) -> Result<WittVector<A>> {
    witt_add(x, &witt_neg(y)?)
}

/// Componentwise p-th power.
pub fn frobenius<A: CharPCoeff>(x: &WittVector<A>) -> WittVector<A> {
    WittVector {
        p: x.p,
        comps: x.comps.iter().map(|c| c.pth_power()).collect(),
    }
}

/// `(a_0, ..., a_{n-1}) -> (0, a_0, ..., a_{n-2})`.
pub fn verschiebung<A: Coeff>(x: &WittVector<A>) -> WittVector<A> {
    let mut comps = vec![x.comps[0].zero_like()];
    comps.extend(x.comps[..x.len() - 1].iter().cloned());
    WittVector { p: x.p, comps }
}

pub fn truncate<A: Coeff>(x: &WittVector<A>, m: usize) -> Result<WittVector<A>> {
    if m < 1 || m > x.len() {
        return Err(Error::BadLength { m, n: x.len() });
    }
    Ok(WittVector {
        p: x.p,
        comps: x.comps[..m].to_vec(),
    })
}

/// `F(x) - x`.
pub fn wp<A: CharPCoeff>(x: &WittVector<A>) -> Result<WittVector<A>> {
    witt_add(&frobenius(x), &witt_neg(x)?)
}

/// Integer evaluation of the universal polynomials (oracle path).
pub fn witt_op_int(
    p: u64,
    kind: Kind,
    x: &WittVector<BigInt>,
    y: Option<&WittVector<BigInt>>,
) -> Result<WittVector<BigInt>> {
    let set = gen_witt_polys(p, x.len(), kind)?;
    let ys = match (kind, y) {
        (Kind::Neg, _) => vec![],
        (_, Some(y)) => {
            x.check_pair(y)?;
            y.comps.clone()
        }
        (_, None) => return Err(Error::InvalidInput("binary operation needs two vectors".into())),
    };
    Ok(WittVector {
        p,
        comps: set.eval_int(&x.comps, &ys),
    })
}

/// Ghost components `w_k = sum_{i<=k} p^i x_i^{p^{k-i}}`.
pub fn ghost_map(x: &WittVector<BigInt>) -> Vec<BigInt> {
    let p = BigInt::from(x.p);
    (0..x.len())
        .map(|k| {
            (0..=k)
                .map(|i| p.pow(i as u32) * x.comps[i].pow(x.p.pow((k - i) as u32) as u32))
                .sum()
        })
        .collect()
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn modulus(p: u64, n: usize) -> Result<u128> {
    (p as u128)
        .checked_pow(n as u32)
        .filter(|&m| m <= u64::MAX as u128)
        .ok_or_else(|| Error::InvalidInput(format!("{p}^{n} does not fit in 64 bits")))
}

/// Teichmuller lift of `c` to `Z/p^n`.
fn teich(c: u64, p: u64, n: usize, m: u128) -> u128 {
    pow_mod(c as u128, (p as u128).pow(n as u32 - 1), m)
}

/// The isomorphism `W_n(F_p) -> Z/p^n`, `x -> sum_i tau(x_i) p^i`.
pub fn to_zpn(x: &WittVector<FpElem>) -> Result<u64> {
    let (p, n) = (x.p, x.len());
    let m = modulus(p, n)?;
    let mut acc = 0u128;
    let mut pi = 1u128;
    for c in &x.comps {
        acc = (acc + teich(c.value(), p, n, m) * pi) % m;
        pi *= p as u128;
    }
    Ok(acc as u64)
}

/// Inverse of [`to_zpn`]: peels Teichmuller digits off a residue mod `p^n`.
pub fn from_zpn(p: u64, n: usize, r: u64) -> Result<WittVector<FpElem>> {
    if n < 1 {
        return Err(Error::BadLength { m: n, n: 1 });
    }
    let m = modulus(p, n)?;
    let mut rest = r as u128 % m;
    let mut comps = Vec::with_capacity(n);
    for _ in 0..n {
        let digit = (rest % p as u128) as u64;
        comps.push(FpElem::new(digit as i64, p));
        // tau(digit) = digit mod p, so the difference is divisible by p
        rest = ((rest + m - teich(digit, p, n, m)) % m) / p as u128;
    }
    WittVector::new(p, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::LaurentSeries;

    fn fp(p: u64, v: &[i64]) -> WittVector<FpElem> {
        WittVector::new(p, v.iter().map(|&a| FpElem::new(a, p)).collect()).unwrap()
    }

    #[test]
    fn small_f2_examples() {
        let one = fp(2, &[1, 0]);
        assert_eq!(witt_add(&one, &one).unwrap(), fp(2, &[0, 1]));
        assert_eq!(witt_mul(&one, &one).unwrap(), one);
        let x = fp(2, &[1, 1]);
        assert_eq!(witt_add(&WittVector::zero(2, 2, &FpElem::new(0, 2)), &x).unwrap(), x);
    }

    #[test]
    fn frobenius_examples() {
        let x = fp(5, &[3, 4]);
        assert_eq!(frobenius(&x), x);
        let l = WittVector::new(
            3,
            vec![LaurentSeries::monomial(3, 1, -1), LaurentSeries::zero(3)],
        )
        .unwrap();
        assert_eq!(frobenius(&l).components()[0], LaurentSeries::monomial(3, 1, -3));
        let a = WittVector::new(
            2,
            vec![
                LaurentSeries::from_terms(2, &[(0, 1), (1, 1)]),
                LaurentSeries::monomial(2, 1, 1),
            ],
        )
        .unwrap();
        let fa = frobenius(&a);
        assert_eq!(fa.components()[0], LaurentSeries::from_terms(2, &[(0, 1), (2, 1)]));
        assert_eq!(fa.components()[1], LaurentSeries::monomial(2, 1, 2));
    }

    #[test]
    fn verschiebung_and_truncation() {
        let x = fp(3, &[1, 2]);
        assert_eq!(verschiebung(&x), fp(3, &[0, 1]));
        assert!(verschiebung(&verschiebung(&x)).is_zero());
        assert_eq!(truncate(&x, 2).unwrap(), x);
        assert_eq!(truncate(&x, 1).unwrap(), fp(3, &[1]));
        assert!(matches!(truncate(&x, 3), Err(Error::BadLength { m: 3, n: 2 })));
        assert!(truncate(&x, 0).is_err());
    }

    #[test]
    fn wp_examples() {
        for v in [[0, 0], [1, 2], [2, 1]] {
            assert!(wp(&fp(3, &v)).unwrap().is_zero());
        }
        let x = WittVector::new(5, vec![LaurentSeries::monomial(5, 1, -1)]).unwrap();
        let expect = LaurentSeries::from_terms(5, &[(-5, 1), (-1, -1)]);
        assert_eq!(wp(&x).unwrap().components()[0], expect);
    }

    #[test]
    fn ghost_examples() {
        let v = |a: i64, b: i64| WittVector::new(2, vec![BigInt::from(a), BigInt::from(b)]).unwrap();
        assert_eq!(ghost_map(&v(1, 0)), vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(ghost_map(&v(0, 1)), vec![BigInt::from(0), BigInt::from(2)]);
    }

    #[test]
    fn zpn_examples() {
        assert_eq!(to_zpn(&fp(2, &[0, 0])).unwrap(), 0);
        assert_eq!(to_zpn(&fp(2, &[0, 1])).unwrap(), 2);
        for r in 0..27 {
            assert_eq!(to_zpn(&from_zpn(3, 3, r).unwrap()).unwrap(), r);
        }
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = fp(3, &[1, 0]);
        let b = fp(3, &[1, 0, 0]);
        assert!(matches!(witt_add(&a, &b), Err(Error::MismatchedRing(_))));
        assert!(WittVector::new(5, vec![FpElem::new(1, 3)]).is_err());
    }
}
