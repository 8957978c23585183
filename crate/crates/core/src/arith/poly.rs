//! Dense univariate polynomials over F_p.

use std::fmt;

use super::fp::FpElem;

/// Polynomial over F_p, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u64,
    coeffs: Vec<u64>,
}

fn addm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn negm(a: u64, p: u64) -> u64 {
    (p - a) % p
}

impl Poly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut q = Poly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        q.trim();
        q
    }

    pub fn from_elems(p: u64, coeffs: &[FpElem]) -> Self {
        Poly::new(p, coeffs.iter().map(|c| c.value()).collect())
    }

    /// Coefficients given as signed integers, reduced mod p.
    pub fn from_ints(p: u64, coeffs: &[i64]) -> Self {
        Poly::new(
            p,
            coeffs
                .iter()
                .map(|&c| c.rem_euclid(p as i64) as u64)
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        Poly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Poly::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Poly::new(p, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(p: u64) -> Self {
        Poly::new(p, vec![0, 1])
    }

    /// `c * x^k`.
    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly::new(p, v)
    }

    /// `x - a`.
    pub fn linear_root(p: u64, a: u64) -> Self {
        Poly::new(p, vec![negm(a % p, p), 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| addm(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Poly::new(self.p, c)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(
            self.p,
            self.coeffs.iter().map(|&c| negm(c, self.p)).collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = addm(out[i + j], mulm(a, b, self.p), self.p);
            }
        }
        Poly::new(self.p, out)
    }

    pub fn scale(&self, c: u64) -> Poly {
        Poly::new(
            self.p,
            self.coeffs.iter().map(|&a| mulm(a, c % self.p, self.p)).collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p;
        let dd = d.degree().unwrap();
        let inv = FpElem::from_reduced(d.leading(), p).inv().unwrap().value();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mulm(r[k + dd], inv, p);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[k + j] = addm(r[k + j], negm(mulm(c, dc, p), p), p);
            }
        }
        (Poly::new(p, q), Poly::new(p, r))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = FpElem::from_reduced(self.leading(), self.p).inv().unwrap();
        self.scale(inv.value())
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| addm(mulm(acc, x, self.p), c, self.p))
    }

    /// The polynomial `f(a + t)` in the variable `t`.
    pub fn shift(&self, a: u64) -> Poly {
        let lin = Poly::new(self.p, vec![a % self.p, 1]);
        self.coeffs.iter().rev().fold(Poly::zero(self.p), |acc, &c| {
            acc.mul(&lin).add(&Poly::constant(self.p, c))
        })
    }

    /// Multiplicity of `x - a` as a factor; `None` for the zero polynomial.
    pub fn root_multiplicity(&self, a: u64) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let shifted = self.shift(a);
        Some(shifted.coeffs.iter().take_while(|&&c| c == 0).count())
    }

    /// Number of leading zero coefficients (the `t`-adic order).
    pub fn low_order(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.iter().take_while(|&&c| c == 0).count())
        }
    }

    /// Splits off every F_p-rational root; returns the roots with multiplicity and the cofactor.
    pub fn rational_roots(&self) -> (Vec<(u64, usize)>, Poly) {
        let mut rest = self.clone();
        let mut roots = vec![];
        for a in 0..self.p {
            let mut mult = 0;
            loop {
                if rest.degree().map_or(true, |d| d == 0) {
                    break;
                }
                let (q, r) = rest.divrem(&Poly::linear_root(self.p, a));
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((a, mult));
            }
        }
        (roots, rest)
    }

    fn fmt_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "{var}")?,
                (1, c) => write!(f, "{c}{var}")?,
                (k, 1) => write!(f, "{var}^{k}")?,
                (k, c) => write!(f, "{c}{var}^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_var(f, "x")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[F_{}](", self.p)?;
        self.fmt_var(f, "x")?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let a = Poly::from_ints(5, &[1, 2, 3, 4, 1]);
        let b = Poly::from_ints(5, &[2, 0, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = Poly::linear_root(3, 1);
        let a = f.mul(&Poly::from_ints(3, &[1, 0, 1]));
        let b = f.mul(&Poly::x(3)).scale(2);
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn double_root_over_f2() {
        // x^2 + 1 = (x + 1)^2 over F_2
        let f = Poly::from_ints(2, &[1, 0, 1]);
        assert_eq!(f.root_multiplicity(1), Some(2));
        assert_eq!(f.root_multiplicity(0), Some(0));
    }

    #[test]
    fn shift_matches_evaluation() {
        let f = Poly::from_ints(7, &[3, 1, 4, 1, 5]);
        let g = f.shift(2);
        for x in 0..7 {
            assert_eq!(g.eval(x), f.eval(x + 2));
        }
    }

    #[test]
    fn irreducible_quadratic_has_no_roots() {
        // x^2 + 1 over F_3
        let (roots, rest) = Poly::from_ints(3, &[1, 0, 1]).rational_roots();
        assert!(roots.is_empty());
        assert_eq!(rest.degree(), Some(2));
    }
}
