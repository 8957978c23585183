//! Boundary divisors on the compactified Witt tower, in the basis of the infinity sections.
//!
//! On level `n`, generator `i` stands for the total transform of `Sigma_i` pulled back
//! along the projections from level `i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TowerDivisor {
    level: usize,
    coeffs: BTreeMap<usize, BigInt>,
}

impl TowerDivisor {
    pub fn zero(level: usize) -> Self {
        TowerDivisor {
            level,
            coeffs: BTreeMap::new(),
        }
    }

    /// `Sigma_i` on level `level`.
    pub fn sigma(level: usize, i: usize) -> Result<Self> {
        TowerDivisor::from_coeffs(level, [(i, BigInt::one())])
    }

    pub fn from_coeffs(level: usize, coeffs: impl IntoIterator<Item = (usize, BigInt)>) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidInput("tower levels start at 1".into()));
        }
        let mut d = TowerDivisor::zero(level);
        for (i, c) in coeffs {
            if i == 0 || i > level {
                return Err(Error::InvalidInput(format!(
                    "Sigma_{i} does not exist on level {level}"
                )));
            }
            *d.coeffs.entry(i).or_insert_with(BigInt::zero) += c;
        }
        d.coeffs.retain(|_, c| !c.is_zero());
        Ok(d)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, BigInt> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &TowerDivisor) -> Result<TowerDivisor> {
        if self.level != o.level {
            return Err(Error::InvalidInput(format!(
                "divisors on levels {} and {}",
                self.level, o.level
            )));
        }
        TowerDivisor::from_coeffs(
            self.level,
            self.coeffs.iter().chain(&o.coeffs).map(|(&i, c)| (i, c.clone())),
        )
    }

    pub fn scale(&self, k: &BigInt) -> TowerDivisor {
        let mut d = TowerDivisor {
            level: self.level,
            coeffs: self.coeffs.iter().map(|(&i, c)| (i, c * k)).collect(),
        };
        d.coeffs.retain(|_, c| !c.is_zero());
        d
    }
}

impl fmt::Display for TowerDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().rev() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if mag.is_one() {
                write!(f, "Σ_{i}")?;
            } else {
                write!(f, "{mag}·Σ_{i}")?;
            }
        }
        Ok(())
    }
}

/// Pullback along the projection from level `n` to level `n - 1`.
pub fn pull_r(d: &TowerDivisor) -> TowerDivisor {
    TowerDivisor {
        level: d.level + 1,
        coeffs: d.coeffs.clone(),
    }
}

/// Pullback along the lift of Frobenius minus identity; every `Sigma_i` pulls back to `p Sigma_i`.
pub fn pull_psi(d: &TowerDivisor, p: u64) -> TowerDivisor {
    d.scale(&BigInt::from(p))
}

/// `B_1 = Sigma_1`, `B_n = Sigma_n + p r^* B_{n-1}`.
pub fn boundary(n: usize, p: u64) -> Result<TowerDivisor> {
    if n == 0 {
        return Err(Error::InvalidInput("tower levels start at 1".into()));
    }
    let mut b = TowerDivisor::sigma(1, 1)?;
    for k in 2..=n {
        b = TowerDivisor::sigma(k, k)?.add(&pull_r(&b).scale(&BigInt::from(p)))?;
    }
    Ok(b)
}

/// `B_n = sum_i p^{n-i} Sigma_i`.
pub fn boundary_closed_form(n: usize, p: u64) -> Result<TowerDivisor> {
    TowerDivisor::from_coeffs(n, (1..=n).map(|i| (i, BigInt::from(p).pow((n - i) as u32))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn small_boundaries() {
        assert_eq!(boundary(1, 5).unwrap().to_string(), "Σ_1");
        assert_eq!(boundary(2, 2).unwrap().to_string(), "Σ_2 + 2·Σ_1");
        assert_eq!(
            boundary(3, 2).unwrap(),
            TowerDivisor::from_coeffs(3, [(3, b(1)), (2, b(2)), (1, b(4))]).unwrap()
        );
        assert_eq!(
            boundary_closed_form(4, 3).unwrap(),
            TowerDivisor::from_coeffs(4, [(1, b(27)), (2, b(9)), (3, b(3)), (4, b(1))]).unwrap()
        );
        assert!(boundary(0, 2).is_err());
    }

    #[test]
    fn generator_rules() {
        let s1 = TowerDivisor::sigma(1, 1).unwrap();
        assert_eq!(pull_r(&s1), TowerDivisor::sigma(2, 1).unwrap());
        assert!(pull_r(&TowerDivisor::zero(1)).is_zero());
        assert!(pull_psi(&TowerDivisor::zero(3), 3).is_zero());
        let s2 = TowerDivisor::sigma(2, 2).unwrap();
        assert_eq!(pull_psi(&s2, 3), s2.scale(&b(3)));
        assert!(TowerDivisor::sigma(2, 3).is_err());
    }

    #[test]
    fn display_signs() {
        let d = TowerDivisor::from_coeffs(2, [(2, b(-1)), (1, b(3))]).unwrap();
        assert_eq!(d.to_string(), "-Σ_2 + 3·Σ_1");
        assert_eq!(TowerDivisor::zero(2).to_string(), "0");
    }
}
