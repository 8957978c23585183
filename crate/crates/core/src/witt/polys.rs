//! Universal Witt polynomials, solved from the ghost identity over the integers.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use crate::arith::fp::is_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Add,
    Mul,
    Neg,
}

/// Sparse integer polynomial; keys are exponent vectors.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut m = MPoly::zero(nvars);
        if !c.is_zero() {
            m.terms.insert(vec![0; nvars], c);
        }
        m
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut m = MPoly::zero(nvars);
        m.terms.insert(e, BigInt::one());
        m
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        MPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::constant(self.nvars, BigInt::one());
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

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<MPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(e.clone(), q);
        }
        Some(MPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Coefficients reduced into `[0, p)`, zero terms dropped.
    pub fn reduce_mod(&self, p: u64) -> MPoly {
        let m = BigInt::from(p);
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.mod_floor(&m)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Evaluates at `vals` (one entry per variable).
    pub fn eval<A: Coeff>(&self, vals: &[A], pow: &mut dyn FnMut(usize, u32) -> A) -> A {
        let proto = &vals[0];
        let mut acc = proto.zero_like();
        for (e, c) in &self.terms {
            let mut term = proto.from_integer(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul_ref(&pow(i, k));
                }
            }
            acc = acc.add_ref(&term);
        }
        acc
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let half = self.nvars / 2;
        let name = |i: usize| {
            if self.nvars % 2 == 0 && i >= half {
                format!("Y{}", i - half)
            } else {
                format!("X{i}")
            }
        };
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let mag = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { name(i) } else { format!("{}^{k}", name(i)) })
                .collect();
            match (mag.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// The `n` universal polynomials of one operation, over Z and reduced mod p.
///
/// Variables are `X_0..X_{n-1}` followed by `Y_0..Y_{n-1}` (only `X` for negation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittPolySet {
    pub p: u64,
    pub n: usize,
    pub kind: Kind,
    pub polys: Vec<MPoly>,
    pub polys_mod_p: Vec<MPoly>,
}

/// `w_k = sum_{i<=k} p^i Z_i^{p^{k-i}}` for the given component polynomials.
fn ghost_of(p: u64, comps: &[MPoly], k: usize) -> MPoly {
    let nvars = comps[0].nvars;
    let mut acc = MPoly::zero(nvars);
    for (i, z) in comps.iter().enumerate().take(k + 1) {
        let w = z.pow(p.pow((k - i) as u32)).scale(&BigInt::from(p).pow(i as u32));
        acc = acc.add(&w);
    }
    acc
}

fn generate(p: u64, n: usize, kind: Kind) -> WittPolySet {
    let nvars = if kind == Kind::Neg { n } else { 2 * n };
    let xs: Vec<MPoly> = (0..n).map(|i| MPoly::var(nvars, i)).collect();
    let ys: Vec<MPoly> = if kind == Kind::Neg {
        vec![]
    } else {
        (0..n).map(|i| MPoly::var(nvars, n + i)).collect()
    };
    let mut s: Vec<MPoly> = Vec::with_capacity(n);
    for k in 0..n {
        let target = match kind {
            Kind::Add => ghost_of(p, &xs, k).add(&ghost_of(p, &ys, k)),
            Kind::Mul => ghost_of(p, &xs, k).mul(&ghost_of(p, &ys, k)),
            Kind::Neg => ghost_of(p, &xs, k).scale(&BigInt::from(-1)),
        };
        let mut rest = target;
        for (i, si) in s.iter().enumerate() {
            let w = si.pow(p.pow((k - i) as u32)).scale(&BigInt::from(p).pow(i as u32));
            rest = rest.sub(&w);
        }
        let pk = BigInt::from(p).pow(k as u32);
        let sk = rest
            .div_exact(&pk)
            .unwrap_or_else(|| panic!("ghost recursion is not integral at p={p}, k={k}"));
        s.push(sk);
    }
    let polys_mod_p = s.iter().map(|q| q.reduce_mod(p)).collect();
    let set = WittPolySet {
        p,
        n,
        kind,
        polys: s,
        polys_mod_p,
    };
    set.assert_ghost_identity();
    set
}

impl WittPolySet {
    fn assert_ghost_identity(&self) {
        let (p, n) = (self.p, self.n);
        let nvars = self.polys[0].nvars;
        let xs: Vec<MPoly> = (0..n).map(|i| MPoly::var(nvars, i)).collect();
        for k in 0..n {
            let lhs = ghost_of(p, &self.polys, k);
            let rhs = match self.kind {
                Kind::Add | Kind::Mul => {
                    let ys: Vec<MPoly> = (0..n).map(|i| MPoly::var(nvars, n + i)).collect();
                    if self.kind == Kind::Add {
                        ghost_of(p, &xs, k).add(&ghost_of(p, &ys, k))
                    } else {
                        ghost_of(p, &xs, k).mul(&ghost_of(p, &ys, k))
                    }
                }
                Kind::Neg => ghost_of(p, &xs, k).scale(&BigInt::from(-1)),
            };
            assert_eq!(lhs, rhs, "ghost identity fails at p={p}, k={k}");
        }
    }

    /// Evaluates the integer polynomials (the oracle path).
    pub fn eval_int(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let vals: Vec<BigInt> = x.iter().chain(y.iter()).cloned().collect();
        let mut pow = |i: usize, k: u32| vals[i].pow(k);
        self.polys.iter().map(|q| q.eval(&vals, &mut pow)).collect()
    }
}

struct Caps {
    max_p: u64,
    max_n: usize,
}

fn caps() -> &'static RwLock<Caps> {
    static CAPS: OnceLock<RwLock<Caps>> = OnceLock::new();
    CAPS.get_or_init(|| {
        let env = |k: &str| std::env::var(k).ok().and_then(|v| v.parse::<u64>().ok());
        RwLock::new(Caps {
            max_p: env("WITTSTACK_MAX_P").unwrap_or(7),
            max_n: env("WITTSTACK_MAX_N").map(|v| v as usize).unwrap_or(4),
        })
    })
}

/// Current `(max_p, max_n)`.
pub fn get_caps() -> (u64, usize) {
    let c = caps().read().unwrap();
    (c.max_p, c.max_n)
}

/// Overrides the generation caps for the whole process.
pub fn set_caps(max_p: u64, max_n: usize) -> Result<()> {
    if max_p < 2 || max_n < 1 {
        return Err(Error::InvalidInput("caps must be positive".into()));
    }
    let mut c = caps().write().unwrap();
    c.max_p = max_p;
    c.max_n = max_n;
    Ok(())
}

pub fn check_caps(p: u64, n: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (max_p, max_n) = get_caps();
    if n < 1 || n > max_n || p > max_p {
        return Err(Error::CapExceeded { p, n, max_p, max_n });
    }
    Ok(())
}

type Cache = RwLock<HashMap<(u64, usize, Kind), Arc<WittPolySet>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Universal polynomials for `(p, n, kind)`, generated once per process.
pub fn gen_witt_polys(p: u64, n: usize, kind: Kind) -> Result<Arc<WittPolySet>> {
    check_caps(p, n)?;
    if let Some(s) = cache().read().unwrap().get(&(p, n, kind)) {
        return Ok(s.clone());
    }
    // computed outside the lock; a racing duplicate is identical and discarded
    let fresh = Arc::new(generate(p, n, kind));
    let mut w = cache().write().unwrap();
    Ok(w.entry((p, n, kind)).or_insert(fresh).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(nvars: usize, exps: &[(usize, u32)]) -> Vec<u32> {
        let mut e = vec![0; nvars];
        for &(i, k) in exps {
            e[i] = k;
        }
        e
    }

    #[test]
    fn p2_n2_addition() {
        let s = gen_witt_polys(2, 2, Kind::Add).unwrap();
        let s0 = MPoly::var(4, 0).add(&MPoly::var(4, 2));
        assert_eq!(s.polys_mod_p[0], s0);
        let t = s.polys_mod_p[1].terms();
        assert_eq!(t.len(), 3);
        for e in [mono(4, &[(1, 1)]), mono(4, &[(3, 1)]), mono(4, &[(0, 1), (2, 1)])] {
            assert_eq!(t.get(&e), Some(&BigInt::one()), "{e:?}");
        }
    }

    #[test]
    fn length_one_is_the_base_ring() {
        for p in [2, 3, 5, 7] {
            let a = gen_witt_polys(p, 1, Kind::Add).unwrap();
            assert_eq!(a.polys[0], MPoly::var(2, 0).add(&MPoly::var(2, 1)));
        }
        let neg = gen_witt_polys(3, 1, Kind::Neg).unwrap();
        assert_eq!(neg.polys[0], MPoly::var(1, 0).scale(&BigInt::from(-1)));
    }

    #[test]
    fn odd_negation_is_componentwise() {
        let neg = gen_witt_polys(3, 3, Kind::Neg).unwrap();
        for i in 0..3 {
            assert_eq!(neg.polys[i], MPoly::var(3, i).scale(&BigInt::from(-1)));
        }
        let neg2 = gen_witt_polys(2, 2, Kind::Neg).unwrap();
        assert_ne!(neg2.polys[1], MPoly::var(2, 1).scale(&BigInt::from(-1)));
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            gen_witt_polys(11, 2, Kind::Add),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(gen_witt_polys(4, 2, Kind::Add), Err(Error::NotPrime(4))));
        assert!(gen_witt_polys(2, 0, Kind::Add).is_err());
    }

    #[test]
    fn cache_returns_identical_sets() {
        let a = gen_witt_polys(3, 2, Kind::Mul).unwrap();
        let b = gen_witt_polys(3, 2, Kind::Mul).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
