//! Higher ramification filtrations stored by group orders, and Herbrand translation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::fp::is_prime;
use crate::arith::rational::{fmt_rat, int};
use crate::arith::{pl_eval, BigRat, PLFunction};
use crate::error::{Error, Result};

/// Orders `|G_0|, |G_1|, ...` of the lower-numbering filtration, ending in 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Filtration {
    orders: Vec<u64>,
    r: u64,
    p: u64,
}

impl Filtration {
    /// Checks only the shape (positive, non-increasing, ending in 1); the group-theoretic
    /// clauses are reported by [`validate_filtration`].
    ///
    /// `p = 0` stands for characteristic zero, where only tame filtrations exist.
    pub fn new(orders: Vec<u64>, r: u64, p: u64) -> Result<Self> {
        if p == 0 {
            if orders.len() > 2 || orders.last() != Some(&1) || r != orders[0] {
                return Err(Error::InvalidInput(
                    "characteristic zero admits only tame filtrations (e, 1) with r = e".into(),
                ));
            }
            return Ok(Filtration { orders, r, p });
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 || r % p == 0 {
            return Err(Error::InvalidInput(format!("tame order {r} must be positive and prime to {p}")));
        }
        if orders.is_empty() || orders.contains(&0) {
            return Err(Error::InvalidInput("group orders must be positive".into()));
        }
        if orders.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidInput(format!("group orders must not increase: {orders:?}")));
        }
        if *orders.last().unwrap() != 1 {
            return Err(Error::InvalidInput(format!("filtration must end at the trivial group: {orders:?}")));
        }
        let mut orders = orders;
        while orders.len() > 1 && orders[orders.len() - 2] == 1 {
            orders.pop();
        }
        Ok(Filtration { orders, r, p })
    }

    /// A tame point with stabilizer of order `e` prime to p.
    pub fn tame(e: u64, p: u64) -> Result<Self> {
        if p != 0 && e % p == 0 {
            return Err(Error::InvalidInput(format!("tame order {e} is divisible by {p}")));
        }
        if e <= 1 {
            Filtration::new(vec![1], 1, p)
        } else {
            Filtration::new(vec![e, 1], e, p)
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `|G_i|`, 1 past the end.
    pub fn order(&self, i: usize) -> u64 {
        self.orders.get(i).copied().unwrap_or(1)
    }

    pub fn stab_order(&self) -> u64 {
        self.orders[0]
    }

    pub fn is_tame(&self) -> bool {
        self.order(1) == 1
    }

    /// Indices `i >= 1` with `G_i != G_{i+1}`, repeated once per factor of p in the drop.
    pub fn lower_jumps(&self) -> Vec<u64> {
        let mut out = vec![];
        for i in 1..self.orders.len() {
            let (a, b) = (self.order(i), self.order(i + 1));
            if a != b {
                let mut q = a / b;
                loop {
                    out.push(i as u64);
                    if self.p == 0 || q % self.p != 0 {
                        break;
                    }
                    q /= self.p;
                    if q == 1 {
                        break;
                    }
                }
            }
        }
        out
    }

    /// Distinct lower jumps.
    pub fn distinct_lower_jumps(&self) -> Vec<u64> {
        let mut j = self.lower_jumps();
        j.dedup();
        j
    }

    /// `phi` evaluated at every lower jump.
    pub fn upper_jumps(&self) -> Vec<BigRat> {
        let phi = phi_from_filtration(self);
        self.lower_jumps()
            .iter()
            .map(|&l| pl_eval(&phi, &int(l as i64)).unwrap())
            .collect()
    }

    /// `sum_{i >= 0} (|G_i| - 1)`, the local Riemann-Hurwitz contribution.
    pub fn ramification_sum(&self) -> u64 {
        self.orders.iter().map(|&g| g - 1).sum()
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o: Vec<String> = self.orders.iter().map(|g| g.to_string()).collect();
        write!(f, "({}) r={} p={}", o.join(", "), self.r, self.p)
    }
}

/// Herbrand's function of the filtration: slope `|G_{m+1}| / |G_0|` on `(m, m+1)`.
pub fn phi_from_filtration(f: &Filtration) -> PLFunction {
    let g0 = f.order(0) as i64;
    let len = f.orders.len();
    let breakpoints = (0..=len).map(|k| int(k as i64)).collect();
    let slopes = (0..=len)
        .map(|k| BigRat::new(BigInt::from(f.order(k + 1)), BigInt::from(g0)))
        .collect();
    PLFunction::new(breakpoints, slopes, BigRat::zero()).expect("orders are positive")
}

fn check_increasing(v: &[BigRat], what: &str) -> Result<()> {
    if v.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidJumps(format!("{what} jumps must be positive")));
    }
    if v.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidJumps(format!("{what} jumps must strictly increase")));
    }
    Ok(())
}

fn level_denominator(k: usize, r: u64, p: u64) -> BigRat {
    int(r as i64) * BigRat::from_integer(BigInt::from(p).pow(k as u32))
}

/// `u_k = u_{k-1} + (l_k - l_{k-1}) / (p^{k-1} r)`.
pub fn lower_to_upper(lower: &[BigRat], r: u64, p: u64) -> Result<Vec<BigRat>> {
    check_increasing(lower, "lower")?;
    let mut out = Vec::with_capacity(lower.len());
    let (mut u, mut l) = (BigRat::zero(), BigRat::zero());
    for (k, lk) in lower.iter().enumerate() {
        u += (lk - &l) / level_denominator(k, r, p);
        l = lk.clone();
        out.push(u.clone());
    }
    Ok(out)
}

/// `l_k = l_{k-1} + p^{k-1} r (u_k - u_{k-1})`.
pub fn upper_to_lower(upper: &[BigRat], r: u64, p: u64) -> Result<Vec<BigRat>> {
    check_increasing(upper, "upper")?;
    let mut out = Vec::with_capacity(upper.len());
    let (mut u, mut l) = (BigRat::zero(), BigRat::zero());
    for (k, uk) in upper.iter().enumerate() {
        l += (uk - &u) * level_denominator(k, r, p);
        u = uk.clone();
        out.push(l.clone());
    }
    Ok(out)
}

/// Assembles the filtration of a `Z/p^n` (times tame `Z/r`) extension from its upper jumps.
///
/// Leading zero entries are levels without ramification and are dropped.
pub fn filtration_from_upper(upper: &[BigRat], r: u64, p: u64) -> Result<Filtration> {
    let lead = upper.iter().take_while(|u| u.is_zero()).count();
    let upper = &upper[lead..];
    if upper.iter().any(|u| u.is_zero()) {
        return Err(Error::InvalidJumps(
            "a zero jump may only precede the ramified levels".into(),
        ));
    }
    let lower = upper_to_lower(upper, r, p)?;
    let mut lj = Vec::with_capacity(lower.len());
    for l in &lower {
        if !l.is_integer() {
            return Err(Error::NonIntegralLowerJump(fmt_rat(l)));
        }
        lj.push(u64::try_from(l.numer()).map_err(|_| Error::InvalidJumps("jump too large".into()))?);
    }
    filtration_from_lower(&lj, r, p)
}

/// Filtration with `|G_0| = r p^n` and `|G_i| = p^{n-k}` once `i` exceeds `k` of the
/// non-decreasing lower jumps `l_1 <= ... <= l_n`.
pub fn filtration_from_lower(lower: &[u64], r: u64, p: u64) -> Result<Filtration> {
    if lower.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidJumps(format!("lower jumps must not decrease: {lower:?}")));
    }
    let n = lower.len() as u32;
    if n == 0 {
        return Filtration::tame(r, p);
    }
    if p == 0 {
        return Err(Error::InvalidInput("characteristic zero has no wild jumps".into()));
    }
    let mut orders = vec![r * p.pow(n)];
    let mut level = 0usize;
    let last = *lower.last().unwrap();
    for i in 1..=last {
        while level < lower.len() && lower[level] < i {
            level += 1;
        }
        orders.push(p.pow(n - level as u32));
    }
    orders.push(1);
    Filtration::new(orders, r, p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.clause, self.detail)
    }
}

fn p_part(mut g: u64, p: u64) -> u64 {
    let mut out = 1;
    while p != 0 && g % p == 0 {
        g /= p;
        out *= p;
    }
    out
}

fn is_p_power(mut q: u64, p: u64) -> bool {
    while p != 0 && q % p == 0 {
        q /= p;
    }
    q == 1
}

/// True when `q / r` lies in `Z[1/p]`, i.e. `q` is divisible by `r` in that ring.
fn divisible_in_z_inv_p(q: &BigRat, r: u64, p: u64) -> bool {
    let x = q / int(r as i64);
    let mut d = x.denom().clone();
    let bp = BigInt::from(p);
    while p != 0 && (&d % &bp).is_zero() {
        d /= &bp;
    }
    d.is_one()
}

/// Order-level checks of the structure of a ramification filtration; empty when all pass.
///
/// Clauses: (a/c) `|G_1|` is the p-part of `|G_0|`; (b) `|G_0|/|G_1| = r`;
/// (d) every later quotient has p-power order; (e) lower jumps agree mod r;
/// (f) upper jumps agree mod r in `Z[1/p]`.
pub fn validate_filtration(f: &Filtration) -> Vec<Violation> {
    let (p, r) = (f.p, f.r);
    let mut out = vec![];
    let (g0, g1) = (f.order(0), f.order(1));
    if g1 != p_part(g0, p) {
        out.push(Violation {
            clause: "a/c",
            detail: format!("|G_1| = {g1} is not the p-part of |G_0| = {g0}"),
        });
    }
    if g0 % g1 != 0 || g0 / g1 != r {
        out.push(Violation {
            clause: "b",
            detail: format!("|G_0|/|G_1| = {g0}/{g1}, expected r = {r}"),
        });
    }
    for i in 1..f.orders.len() {
        let (a, b) = (f.order(i), f.order(i + 1));
        if a % b != 0 || !is_p_power(a / b, p) {
            out.push(Violation {
                clause: "d",
                detail: format!("|G_{i}|/|G_{}| = {a}/{b} is not a power of {p}", i + 1),
            });
        }
    }
    let lower = f.distinct_lower_jumps();
    if lower.iter().any(|&l| (l as i64 - lower[0] as i64).rem_euclid(r as i64) != 0) {
        out.push(Violation {
            clause: "e",
            detail: format!("lower jumps {lower:?} are not congruent mod {r}"),
        });
    }
    let phi = phi_from_filtration(f);
    let upper: Vec<BigRat> = lower
        .iter()
        .map(|&l| pl_eval(&phi, &int(l as i64)).unwrap())
        .collect();
    if upper.iter().any(|u| !divisible_in_z_inv_p(&(u - &upper[0]), r, p)) {
        let shown: Vec<String> = upper.iter().map(fmt_rat).collect();
        out.push(Violation {
            clause: "f",
            detail: format!("upper jumps [{}] are not congruent mod {r}", shown.join(", ")),
        });
    }
    out
}

/// Exact sum of `(|G_i| - 1)` for the filtration assembled from lower jumps `l_1 <= ... <= l_n`.
pub fn ramification_sum_closed_form(lower: &[u64], r: u64, p: u64) -> BigInt {
    let n = lower.len() as u32;
    if n == 0 {
        return BigInt::from(r) - 1;
    }
    let g1 = BigInt::from(p).pow(n);
    let g0 = &g1 * r;
    let mut s = (&g0 - 1) + BigInt::from(lower[0]) * (&g1 - 1);
    for k in 1..lower.len() {
        let width = BigInt::from(lower[k] - lower[k - 1]);
        s += width * (BigInt::from(p).pow(n - k as u32) - 1);
    }
    s
}
