//! Continuous, strictly increasing piecewise-linear functions with exact rational breakpoints.

use std::fmt;

use num_traits::{Signed, Zero};

use super::rational::{fmt_rat, BigRat};
use crate::error::{Error, Result};

/// `breakpoints[k]` starts segment `k`, which has slope `slopes[k]`; the last
/// segment extends to +infinity. `breakpoints[0]` is the left end of the domain.
#[derive(Clone, PartialEq, Eq)]
pub struct PLFunction {
    breakpoints: Vec<BigRat>,
    slopes: Vec<BigRat>,
    value0: BigRat,
}

impl PLFunction {
    pub fn new(breakpoints: Vec<BigRat>, slopes: Vec<BigRat>, value0: BigRat) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != slopes.len() {
            return Err(Error::InvalidInput(
                "need one slope per breakpoint and at least one segment".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("breakpoints must strictly increase".into()));
        }
        if slopes.iter().any(|s| !s.is_positive()) {
            return Err(Error::InvalidInput("slopes must be positive".into()));
        }
        let mut f = PLFunction {
            breakpoints,
            slopes,
            value0,
        };
        f.merge();
        Ok(f)
    }

    pub fn identity() -> Self {
        PLFunction {
            breakpoints: vec![BigRat::zero()],
            slopes: vec![BigRat::from_integer(1.into())],
            value0: BigRat::zero(),
        }
    }

    fn merge(&mut self) {
        let mut b = vec![self.breakpoints[0].clone()];
        let mut s = vec![self.slopes[0].clone()];
        for (x, m) in self.breakpoints.iter().zip(&self.slopes).skip(1) {
            if s.last() != Some(m) {
                b.push(x.clone());
                s.push(m.clone());
            }
        }
        self.breakpoints = b;
        self.slopes = s;
    }

    pub fn breakpoints(&self) -> &[BigRat] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[BigRat] {
        &self.slopes
    }

    pub fn domain_start(&self) -> &BigRat {
        &self.breakpoints[0]
    }

    pub fn value_at_start(&self) -> &BigRat {
        &self.value0
    }

    /// Values at every breakpoint.
    fn knot_values(&self) -> Vec<BigRat> {
        let mut out = vec![self.value0.clone()];
        for k in 1..self.breakpoints.len() {
            let prev = out[k - 1].clone();
            let dx = &self.breakpoints[k] - &self.breakpoints[k - 1];
            out.push(prev + dx * &self.slopes[k - 1]);
        }
        out
    }
}

impl fmt::Debug for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PL(f({}) = {}", fmt_rat(&self.breakpoints[0]), fmt_rat(&self.value0))?;
        for (b, s) in self.breakpoints.iter().zip(&self.slopes) {
            write!(f, "; from {} slope {}", fmt_rat(b), fmt_rat(s))?;
        }
        write!(f, ")")
    }
}

pub fn pl_eval(phi: &PLFunction, x: &BigRat) -> Result<BigRat> {
    if x < phi.domain_start() {
        return Err(Error::Domain(format!(
            "{} lies left of the domain start {}",
            fmt_rat(x),
            fmt_rat(phi.domain_start())
        )));
    }
    let k = phi.breakpoints.partition_point(|b| b <= x) - 1;
    let vals = phi.knot_values();
    Ok(&vals[k] + (x - &phi.breakpoints[k]) * &phi.slopes[k])
}

pub fn pl_invert(phi: &PLFunction) -> PLFunction {
    let vals = phi.knot_values();
    let slopes = phi.slopes.iter().map(|s| s.recip()).collect();
    PLFunction {
        breakpoints: vals,
        slopes,
        value0: phi.breakpoints[0].clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn shape(m: i64, p: i64) -> PLFunction {
        PLFunction::new(vec![int(0), int(m)], vec![int(1), rat(1, p)], int(0)).unwrap()
    }

    #[test]
    fn identity_eval() {
        assert_eq!(pl_eval(&PLFunction::identity(), &rat(7, 2)).unwrap(), rat(7, 2));
        assert!(pl_eval(&PLFunction::identity(), &rat(-1, 2)).is_err());
    }

    #[test]
    fn breakpoint_is_fixed_and_inverse_undoes_segment() {
        let phi = shape(5, 3);
        assert_eq!(pl_eval(&phi, &int(5)).unwrap(), int(5));
        let psi = pl_invert(&phi);
        assert_eq!(pl_eval(&psi, &(int(5) + rat(1, 3))).unwrap(), int(6));
    }

    #[test]
    fn double_inverse_is_exact() {
        let phi = PLFunction::new(
            vec![int(0), int(2), rat(9, 2)],
            vec![int(1), rat(1, 3), rat(1, 9)],
            int(0),
        )
        .unwrap();
        assert_eq!(pl_invert(&pl_invert(&phi)), phi);
        for x in [int(0), int(1), int(3), int(100), rat(17, 7)] {
            let y = pl_eval(&phi, &x).unwrap();
            assert_eq!(pl_eval(&pl_invert(&phi), &y).unwrap(), x);
        }
    }

    #[test]
    fn equal_slopes_merge() {
        let phi = PLFunction::new(vec![int(0), int(3)], vec![int(1), int(1)], int(0)).unwrap();
        assert_eq!(phi, PLFunction::identity());
    }
}
