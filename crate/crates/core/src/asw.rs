//! Artin-Schreier-Witt theory over the local field F_p((t)).
//!
//! A Witt vector `x` over `F_p((t))` defines a cyclic extension of degree dividing
//! `p^n`; changing `x` by `F(b) - b` does not change the extension. Reduction picks
//! a representative whose components have pole orders prime to p, from which the
//! upper ramification jumps are read off.

use std::fmt;

use crate::arith::fp::is_prime;
use crate::arith::{laurent_expand, FpElem, LaurentSeries, Place, Precision};
use crate::arith::parse::{parse_ratfunc, split_components};
use crate::error::{Error, Result};
use crate::witt::{verschiebung, witt_sub, wp, WittVector};

/// A Witt vector with Laurent-series components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalWitt {
    witt: WittVector<LaurentSeries>,
}

impl LocalWitt {
    pub fn new(p: u64, comps: Vec<LaurentSeries>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        for (i, c) in comps.iter().enumerate() {
            if c.p() != p {
                return Err(Error::MismatchedRing(format!(
                    "component {i} lives over F_{}, expected F_{p}",
                    c.p()
                )));
            }
            if c.is_zero() && !c.is_exact() && c.order_bound().unwrap() <= 0 {
                return Err(Error::PrecisionExhausted(format!(
                    "component {i} has no significant terms"
                )));
            }
        }
        Ok(LocalWitt {
            witt: WittVector::new(p, comps)?,
        })
    }

    pub fn from_witt(witt: WittVector<LaurentSeries>) -> Result<Self> {
        LocalWitt::new(witt.p(), witt.into_components())
    }

    /// `(t^{-k_0} c_0, ...)` style input: one exact monomial per component, `None` for zero.
    pub fn monomials(p: u64, comps: &[Option<(i64, i64)>]) -> Result<Self> {
        let series = comps
            .iter()
            .map(|c| match c {
                Some((coef, k)) => LaurentSeries::monomial(p, *coef, *k),
                None => LaurentSeries::zero(p),
            })
            .collect();
        LocalWitt::new(p, series)
    }

    /// Parses comma-separated expressions in `t`, expanded at `t = 0` with `prec` terms.
    pub fn parse(p: u64, src: &str, prec: i64) -> Result<Self> {
        let comps = split_components(src)?
            .iter()
            .map(|c| laurent_expand(&parse_ratfunc(p, c)?, Place::Finite(0), prec))
            .collect::<Result<Vec<_>>>()?;
        LocalWitt::new(p, comps)
    }

    pub fn p(&self) -> u64 {
        self.witt.p()
    }

    pub fn n(&self) -> usize {
        self.witt.len()
    }

    pub fn witt(&self) -> &WittVector<LaurentSeries> {
        &self.witt
    }

    pub fn components(&self) -> &[LaurentSeries] {
        self.witt.components()
    }
}

impl fmt::Display for LocalWitt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.witt)
    }
}

/// One subtraction of `F(b) - b` with `b = V^i(c t^{-m/p})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub component: usize,
    pub pole_order: u64,
    /// `m / p`, the pole order of the subtracted seed.
    pub root_order: u64,
    pub coeff: u64,
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "component {}: pole {}*t^-{} removed with wp(V^{}({}*t^-{}))",
            self.component,
            self.coeff,
            self.pole_order,
            self.component,
            self.coeff,
            self.root_order
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedForm {
    pub witt: LocalWitt,
    /// `m_i`, zero for trivial components.
    pub pole_orders: Vec<u64>,
    pub trivial_mask: Vec<bool>,
    pub steps: Vec<ReductionStep>,
}

enum Status {
    Trivial,
    Reduced(u64),
    Reducible(u64, FpElem),
}

fn classify(s: &LaurentSeries, i: usize) -> Result<Status> {
    if s.is_exact_zero() {
        return Ok(Status::Trivial);
    }
    match s.valuation() {
        None => {
            let n = s.order_bound().unwrap();
            if n >= 0 {
                Ok(Status::Trivial)
            } else {
                Err(Error::PrecisionExhausted(format!(
                    "component {i} is O(t^{n}); its pole order is undetermined"
                )))
            }
        }
        Some(v) if v >= 0 => Ok(Status::Trivial),
        Some(v) => {
            let m = (-v) as u64;
            if m % s.p() != 0 {
                Ok(Status::Reduced(m))
            } else {
                Ok(Status::Reducible(m, s.leading_coeff().unwrap()))
            }
        }
    }
}

/// Reduces `x` modulo `F(b) - b` until each component is regular or has pole order prime to p.
pub fn asw_reduce(x: &LocalWitt) -> Result<ReducedForm> {
    let (p, n) = (x.p(), x.n());
    let max_pole = x
        .components()
        .iter()
        .filter_map(|c| c.valuation())
        .map(|v| (-v).max(0) as usize)
        .max()
        .unwrap_or(0);
    // component k of a reduction stays isobaric of weight p^k, so pole orders never
    // exceed p^k times the initial maximum and each step lowers one of them
    let guard = n * (max_pole + 1) * (p as usize).pow(n as u32) + n;
    let mut y = x.witt.clone();
    let mut steps = vec![];
    let mut i = 0;
    while i < n {
        match classify(&y.components()[i], i)? {
            Status::Trivial | Status::Reduced(_) => i += 1,
            Status::Reducible(m, c) => {
                if steps.len() >= guard {
                    return Err(Error::NonTerminating(steps.len()));
                }
                let q = (m / p) as i64;
                let mut comps = vec![LaurentSeries::zero(p); n];
                comps[0] = LaurentSeries::monomial(p, c.value() as i64, -q);
                let mut b = WittVector::new(p, comps)?;
                for _ in 0..i {
                    b = verschiebung(&b);
                }
                y = witt_sub(&y, &wp(&b)?)?;
                steps.push(ReductionStep {
                    component: i,
                    pole_order: m,
                    root_order: m / p,
                    coeff: c.value(),
                });
            }
        }
    }
    let mut pole_orders = vec![];
    let mut trivial_mask = vec![];
    for (i, s) in y.components().iter().enumerate() {
        match classify(s, i)? {
            Status::Trivial => {
                pole_orders.push(0);
                trivial_mask.push(true);
            }
            Status::Reduced(m) => {
                pole_orders.push(m);
                trivial_mask.push(false);
            }
            Status::Reducible(..) => unreachable!("scan leaves no reducible component"),
        }
    }
    Ok(ReducedForm {
        witt: LocalWitt { witt: y },
        pole_orders,
        trivial_mask,
        steps,
    })
}

/// `u_k = max{ p^{k-i} m_i : i <= k, m_i > 0 }` (1-indexed), 0 when no level contributes.
pub fn jumps_from_pole_orders(p: u64, m: &[u64]) -> Vec<u64> {
    (0..m.len())
        .map(|k| {
            (0..=k)
                .filter(|&i| m[i] > 0)
                .map(|i| p.pow((k - i) as u32) * m[i])
                .max()
                .unwrap_or(0)
        })
        .collect()
}

pub fn upper_jumps(x: &LocalWitt) -> Result<Vec<u64>> {
    let r = asw_reduce(x)?;
    Ok(jumps_from_pole_orders(x.p(), &r.pole_orders))
}

/// Whether `u` is the upper-jump sequence of some cyclic extension of degree `p^n`.
pub fn is_admissible(u: &[u64], p: u64) -> bool {
    let Some(&first) = u.first() else {
        return false;
    };
    if first == 0 || first % p == 0 {
        return false;
    }
    u.windows(2).all(|w| {
        let (a, b) = (w[0], w[1]);
        b >= p * a && (b == p * a || b % p != 0)
    })
}

/// `sum_k c_k y^k` in `F_p((t))[y] / (y^p - y - t^{-m})`.
#[derive(Clone, Debug)]
struct AsElem {
    c: Vec<LaurentSeries>,
}

struct AsField {
    p: u64,
    m: i64,
    prec: i64,
}

impl AsField {
    fn elem(&self, c: Vec<LaurentSeries>) -> AsElem {
        AsElem {
            c: c.into_iter().map(|s| s.truncate(self.prec)).collect(),
        }
    }

    fn mul(&self, a: &AsElem, b: &AsElem) -> AsElem {
        let p = self.p as usize;
        let mut prod = vec![LaurentSeries::zero(self.p); 2 * p - 1];
        for (i, x) in a.c.iter().enumerate() {
            for (j, y) in b.c.iter().enumerate() {
                prod[i + j] = prod[i + j].add(&x.mul(y));
            }
        }
        // y^{p+j} = y^{j+1} + t^{-m} y^j, highest degree first
        let tm = LaurentSeries::monomial(self.p, 1, -self.m);
        for d in (p..2 * p - 1).rev() {
            let top = std::mem::replace(&mut prod[d], LaurentSeries::zero(self.p));
            let j = d - p;
            prod[j + 1] = prod[j + 1].add(&top);
            prod[j] = prod[j].add(&top.mul(&tm));
        }
        prod.truncate(p);
        self.elem(prod)
    }

    fn sub(&self, a: &AsElem, b: &AsElem) -> AsElem {
        self.elem(a.c.iter().zip(&b.c).map(|(x, y)| x.sub(y)).collect())
    }

    /// `v_L(sum c_k y^k) = min_k (p v(c_k) - m k)`; the terms have distinct residues mod p.
    fn valuation(&self, a: &AsElem) -> Result<i64> {
        let p = self.p as i64;
        let mut best: Option<i64> = None;
        let mut floor_unknown: Option<i64> = None;
        for (k, c) in a.c.iter().enumerate() {
            let shift = self.m * k as i64;
            match (c.valuation(), c.precision()) {
                (Some(v), _) => {
                    let val = p * v - shift;
                    best = Some(best.map_or(val, |b| b.min(val)));
                }
                (None, Precision::Abs(nn)) => {
                    let lb = p * nn - shift;
                    floor_unknown = Some(floor_unknown.map_or(lb, |b| b.min(lb)));
                }
                (None, Precision::Exact) => {}
            }
        }
        match (best, floor_unknown) {
            (Some(b), Some(f)) if f <= b => Err(Error::PrecisionExhausted(format!(
                "valuation in the Artin-Schreier extension needs more than {} terms",
                self.prec
            ))),
            (Some(b), _) => Ok(b),
            (None, _) => Err(Error::PrecisionExhausted(
                "element vanishes to the working precision".into(),
            )),
        }
    }
}

/// Lower ramification jump of `y^p - y = t^{-m}` from the Galois action `y -> y + 1`.
///
/// Builds the uniformizer `pi = t^a y^b` (`pa - mb = 1`) and returns
/// `min_j v_L(sigma(pi^j) - pi^j) - 1` over `j = 1..=p`.
pub fn as_lower_jump_oracle(p: u64, m: u64, prec: i64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 || m % p == 0 {
        return Err(Error::InvalidInput(format!("pole order {m} must be positive and prime to {p}")));
    }
    let mi = m as i64;
    let pi_ = p as i64;
    let b = (1..pi_).find(|&b| (1 + mi * b) % pi_ == 0).unwrap();
    let a = (1 + mi * b) / pi_;
    let field = AsField { p, m: mi, prec };
    let zero = LaurentSeries::zero(p);
    let mut y = vec![zero.clone(); p as usize];
    let mut y1 = vec![zero.clone(); p as usize];
    y[1] = LaurentSeries::one(p);
    y1[0] = LaurentSeries::one(p);
    y1[1] = LaurentSeries::one(p);
    let y = field.elem(y);
    let sy = field.elem(y1);
    let mut ta = vec![zero.clone(); p as usize];
    ta[0] = LaurentSeries::monomial(p, 1, a);
    let ta = field.elem(ta);
    let mut pi = ta.clone();
    let mut spi = ta;
    for _ in 0..b {
        pi = field.mul(&pi, &y);
        spi = field.mul(&spi, &sy);
    }
    let vpi = field.valuation(&pi)?;
    assert_eq!(vpi, 1, "t^{a} y^{b} is not a uniformizer");
    let mut best: Option<i64> = None;
    let mut pj = pi.clone();
    let mut spj = spi.clone();
    for j in 1..=p {
        if j > 1 {
            pj = field.mul(&pj, &pi);
            spj = field.mul(&spj, &spi);
        }
        let v = field.valuation(&field.sub(&spj, &pj))?;
        best = Some(best.map_or(v, |b| b.min(v)));
    }
    Ok((best.unwrap() - 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn already_reduced_vectors_are_unchanged() {
        let x = LocalWitt::monomials(3, &[Some((1, -1))]).unwrap();
        let r = asw_reduce(&x).unwrap();
        assert_eq!(r.witt, x);
        assert_eq!(r.pole_orders, vec![1]);
        let x = LocalWitt::monomials(5, &[Some((1, -7)), None]).unwrap();
        let r = asw_reduce(&x).unwrap();
        assert_eq!(r.pole_orders, vec![7, 0]);
        assert_eq!(r.trivial_mask, vec![false, true]);
        assert!(r.steps.is_empty());
    }

    #[test]
    fn single_step_in_characteristic_two() {
        let x = LocalWitt::monomials(2, &[Some((1, -2))]).unwrap();
        let r = asw_reduce(&x).unwrap();
        assert_eq!(r.pole_orders, vec![1]);
        assert_eq!(r.witt.components()[0], LaurentSeries::monomial(2, 1, -1));
        assert_eq!(r.steps.len(), 1);
        assert_eq!(upper_jumps(&LocalWitt::monomials(2, &[Some((1, -2)), None]).unwrap()).unwrap(), vec![1, 2]);
    }

    #[test]
    fn key_example_jumps() {
        for p in [2u64, 3, 5] {
            for j in [1i64, 2, 3, 7] {
                if j as u64 % p == 0 {
                    continue;
                }
                let x = LocalWitt::monomials(p, &[Some((1, -j)), None]).unwrap();
                assert_eq!(upper_jumps(&x).unwrap(), vec![j as u64, p * j as u64]);
            }
        }
    }

    #[test]
    fn admissibility() {
        for p in [2u64, 3, 5] {
            assert!(is_admissible(&[1, p], p));
            assert!(!is_admissible(&[p, p * p], p));
            // p + 1 exceeds p * 1 and is prime to p; (t^-1, t^-(p+1)) realizes it
            assert!(is_admissible(&[1, p + 1], p));
            let x = LocalWitt::monomials(p, &[Some((1, -1)), Some((1, -(p as i64) - 1))]).unwrap();
            assert_eq!(upper_jumps(&x).unwrap(), vec![1, p + 1]);
            assert!(!is_admissible(&[2, 2 * p - 1], p));
        }
        assert!(is_admissible(&[1, 4], 3));
        assert!(!is_admissible(&[1, 6], 3));
        assert!(!is_admissible(&[], 3));
    }

    #[test]
    fn galois_oracle_small_cases() {
        assert_eq!(as_lower_jump_oracle(2, 1, 32).unwrap(), 1);
        assert_eq!(as_lower_jump_oracle(3, 2, 32).unwrap(), 2);
        assert_eq!(as_lower_jump_oracle(2, 5, 64).unwrap(), 5);
        assert!(as_lower_jump_oracle(3, 3, 32).is_err());
    }

    #[test]
    fn oracle_reports_insufficient_precision() {
        assert!(matches!(
            as_lower_jump_oracle(3, 7, 1),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn undetermined_poles_are_reported() {
        let s = LaurentSeries::big_o(3, -2);
        assert!(LocalWitt::new(3, vec![s]).is_err());
    }
}
