//! Section spaces on a genus-0 coarse curve and minimal generators of the graded ring.
//!
//! The generic coarse point is moved to infinity. A divisor `E = sum e_a [a] + e_inf [inf]`
//! has `L(E) = { w x^k / v }` with `v = prod_{e_a > 0} (x - a)^{e_a}`,
//! `w = prod_{e_a < 0} (x - a)^{-e_a}` and `0 <= k <= deg v + e_inf - deg w`.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};

use super::{floor_divisor, ring_divisor, StackyCurveData};
use crate::arith::{BigRat, FpElem, Place};
use crate::error::{Error, Result};

trait Scalar: Clone + PartialEq {
    fn konst(&self, v: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
    fn nil(&self) -> bool;
}

impl Scalar for FpElem {
    fn konst(&self, v: i64) -> Self {
        FpElem::new(v, self.p())
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn inv(&self) -> Self {
        FpElem::inv(self).expect("inverse of zero")
    }
    fn nil(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for BigRat {
    fn konst(&self, v: i64) -> Self {
        BigRat::from_integer(v.into())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn nil(&self) -> bool {
        self.is_zero()
    }
}

/// Dense polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq)]
struct P<S>(Vec<S>);

impl<S: Scalar> P<S> {
    fn one(k: &S) -> Self {
        P(vec![k.konst(1)])
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.nil()) {
            self.0.pop();
        }
        self
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.0.is_empty() || o.0.is_empty() {
            return P(vec![]);
        }
        let z = self.0[0].konst(0);
        let mut out = vec![z; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        P(out).trim()
    }

    fn shift(&self, k: usize) -> Self {
        let z = self.0[0].konst(0);
        let mut v = vec![z; k];
        v.extend(self.0.iter().cloned());
        P(v)
    }

    fn div_exact(&self, d: &Self) -> Self {
        let mut r = self.0.clone();
        let dl = d.0.len();
        let lead_inv = d.0[dl - 1].inv();
        if r.len() < dl {
            assert!(r.iter().all(|c| c.nil()), "non-exact polynomial division");
            return P(vec![]);
        }
        let z = d.0[0].konst(0);
        let mut q = vec![z; r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let c = r[i + dl - 1].mul(&lead_inv);
            for (j, dj) in d.0.iter().enumerate() {
                r[i + j] = r[i + j].sub(&c.mul(dj));
            }
            q[i] = c;
        }
        assert!(r.iter().all(|c| c.nil()), "non-exact polynomial division");
        P(q).trim()
    }
}

struct Space<S> {
    den: P<S>,
    basis: Vec<P<S>>,
    /// Upper bound on numerator degrees.
    width: usize,
}

fn space<S: Scalar>(k: &S, generic: i64, at: &[(Place, i64)], p: u64) -> Space<S> {
    let mut v = P::one(k);
    let mut w = P::one(k);
    let mut e_inf = generic;
    for &(place, e) in at {
        match place {
            Place::Infinity => e_inf += e,
            Place::Finite(a) => {
                let a = if p > 0 { a.rem_euclid(p as i64) } else { a };
                let lin = P(vec![k.konst(-a), k.konst(1)]);
                for _ in 0..e.unsigned_abs() {
                    if e > 0 {
                        v = v.mul(&lin);
                    } else {
                        w = w.mul(&lin);
                    }
                }
            }
        }
    }
    let top = v.deg() as i64 + e_inf;
    let kmax = top - w.deg() as i64;
    let basis = (0..=kmax).map(|j| w.shift(j as usize)).collect();
    Space {
        den: v,
        basis,
        width: top.max(0) as usize + 1,
    }
}

/// Row-echelon span over a field.
struct Span<S> {
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> Span<S> {
    fn insert(&mut self, mut v: Vec<S>) -> bool {
        for (piv, row) in &self.rows {
            if !v[*piv].nil() {
                let c = v[*piv].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = x.sub(&c.mul(r));
                }
            }
        }
        let Some(piv) = v.iter().position(|c| !c.nil()) else {
            return false;
        };
        let inv = v[piv].inv();
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[piv].nil() {
                let c = row[piv].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = x.sub(&c.mul(r));
                }
            }
        }
        self.rows.push((piv, v));
        true
    }
}

fn spaces<S: Scalar>(k: &S, c: &StackyCurveData, max_n: usize, log: bool) -> Result<Vec<Space<S>>> {
    if c.coarse_genus() != 0 {
        return Err(Error::UnsupportedBase(format!(
            "section spaces need a genus-0 coarse curve, got genus {}",
            c.coarse_genus()
        )));
    }
    let d = ring_divisor(c, log);
    let small = |x: &num_bigint::BigInt| {
        x.to_i64()
            .ok_or_else(|| Error::InvalidInput("divisor coefficient out of range".into()))
    };
    (0..=max_n)
        .map(|n| {
            let f = floor_divisor(&d, n as i64);
            let at = f
                .at
                .values()
                .map(|(pl, e)| Ok((*pl, small(e)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(space(k, small(&f.generic)?, &at, c.p()))
        })
        .collect()
}

fn generators<S: Scalar>(k: &S, c: &StackyCurveData, max_n: usize, log: bool) -> Result<BTreeMap<usize, usize>> {
    let sp = spaces(k, c, max_n, log)?;
    let mut out = BTreeMap::new();
    for n in 1..=max_n {
        let target = &sp[n];
        let dim = target.basis.len();
        if dim == 0 {
            continue;
        }
        let mut span = Span { rows: vec![] };
        'outer: for a in 1..=n / 2 {
            let (la, lb) = (&sp[a], &sp[n - a]);
            let denom = la.den.mul(&lb.den);
            for (i, u) in la.basis.iter().enumerate() {
                let start = if a == n - a { i } else { 0 };
                for w in &lb.basis[start..] {
                    let num = u.mul(w).mul(&target.den).div_exact(&denom);
                    debug_assert!(num.0.len() <= target.width);
                    let mut v = num.0;
                    v.resize(target.width, k.konst(0));
                    span.insert(v);
                    if span.rows.len() == dim {
                        break 'outer;
                    }
                }
            }
        }
        let fresh = dim - span.rows.len();
        if fresh > 0 {
            out.insert(n, fresh);
        }
    }
    Ok(out)
}

/// Dimensions of the concrete section spaces `L(floor(n D))` for `n = 0..=max_n`.
pub fn section_dimensions(c: &StackyCurveData, max_n: usize, log: bool) -> Result<Vec<usize>> {
    if c.p() == 0 {
        Ok(spaces(&BigRat::one(), c, max_n, log)?.iter().map(|s| s.basis.len()).collect())
    } else {
        Ok(spaces(&FpElem::new(1, c.p()), c, max_n, log)?.iter().map(|s| s.basis.len()).collect())
    }
}

/// Number of minimal generators of the canonical (or log canonical) ring in each degree up to `max_n`.
///
/// Degrees with no new generator are omitted.
pub fn canring_generators(c: &StackyCurveData, max_n: usize, log: bool) -> Result<BTreeMap<usize, usize>> {
    if c.p() == 0 {
        generators(&BigRat::one(), c, max_n, log)
    } else {
        generators(&FpElem::new(1, c.p()), c, max_n, log)
    }
}

#[cfg(test)]
mod tests {
    use super::super::models;
    use super::*;

    #[test]
    fn weighted_projective_line() {
        for p in [0u64, 5, 7] {
            let c = models::weighted_p23(p, true).unwrap();
            let g = canring_generators(&c, 24, true).unwrap();
            assert_eq!(g, BTreeMap::from([(2, 1), (3, 1)]), "p = {p}");
            assert_eq!(section_dimensions(&c, 6, true).unwrap(), vec![1, 0, 1, 1, 1, 1, 2]);
        }
    }

    #[test]
    fn projective_line_with_three_points() {
        // K + Delta has degree 1, so the ring is generated in degree 1.
        let c = models::log_p1(5).unwrap();
        let g = canring_generators(&c, 6, true).unwrap();
        assert_eq!(g, BTreeMap::from([(1, 2)]));
    }

    #[test]
    fn positive_genus_rejected() {
        let c = StackyCurveData::new(5, 1, vec![], vec![]).unwrap();
        assert!(matches!(canring_generators(&c, 3, false), Err(Error::UnsupportedBase(_))));
    }

    #[test]
    fn products_land_in_target() {
        let k = FpElem::new(1, 7);
        let s = space(&k, -2, &[(Place::Finite(0), 3), (Place::Finite(2), -1)], 7);
        assert_eq!(s.basis.len(), 1);
        assert_eq!(s.den.deg(), 3);
        let poly = P(vec![k.konst(-2), k.konst(1)]).mul(&P(vec![k.konst(1), k.konst(1)]));
        assert!(poly.div_exact(&P(vec![k.konst(1), k.konst(1)])) == P(vec![k.konst(-2), k.konst(1)]));
    }
}
