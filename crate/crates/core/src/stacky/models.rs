//! Reference curves used throughout the examples and tests.

use num_bigint::BigInt;
use num_integer::Integer;

use super::{StackyCurveData, StackyPoint};
use crate::arith::rational::{floor, rat};
use crate::arith::{BigRat, Place};
use crate::error::{Error, Result};
use crate::ramification::{filtration_from_lower, Filtration};

/// The weighted projective line P(2,3): points of order 3 at 0 and 2 at 1, a plain point `C` at infinity.
///
/// With `log`, `C` is the log point. `p = 0`, or any prime other than 2 and 3.
pub fn weighted_p23(p: u64, log: bool) -> Result<StackyCurveData> {
    if p == 2 || p == 3 {
        return Err(Error::InvalidInput("P(2,3) is tame only away from 2 and 3".into()));
    }
    StackyCurveData::new(
        p,
        0,
        vec![
            StackyPoint::new("P", Place::Finite(0), Filtration::tame(3, p)?),
            StackyPoint::new("Q", Place::Finite(1), Filtration::tame(2, p)?),
            StackyPoint::new("C", Place::Infinity, Filtration::tame(1, p)?),
        ],
        if log { vec!["C".into()] } else { vec![] },
    )
}

/// P^1 with log points at 0, 1 and infinity.
pub fn log_p1(p: u64) -> Result<StackyCurveData> {
    let t = Filtration::tame(1, p)?;
    StackyCurveData::new(
        p,
        0,
        vec![
            StackyPoint::new("A", Place::Finite(0), t.clone()),
            StackyPoint::new("B", Place::Finite(1), t.clone()),
            StackyPoint::new("C", Place::Infinity, t),
        ],
        vec!["A".into(), "B".into(), "C".into()],
    )
}

/// Quotient of an Artin-Schreier-Witt cover of length 2 of P^1 branched over infinity,
/// as a stacky P^1 with one `Z/p^2` point with the given lower jumps.
pub fn asw_quotient(p: u64, m: u64, lower: [u64; 2]) -> Result<StackyCurveData> {
    if m == 0 || m % p == 0 {
        return Err(Error::InvalidInput(format!("pole order {m} must be positive and prime to {p}")));
    }
    StackyCurveData::new(
        p,
        0,
        vec![StackyPoint::new("Q", Place::Infinity, filtration_from_lower(&lower, 1, p)?)],
        vec![],
    )
}

/// Lower jumps `(m, m(p^2 + 1))` used for the reference quotient.
pub fn asw_reference_jumps(p: u64, m: u64) -> [u64; 2] {
    [m, m * (p * p + 1)]
}

/// `(m p^3 + p^2 - m - 1) / (2 p^2)`.
pub fn asw_quotient_genus(p: u64, m: u64) -> BigRat {
    let (p, m) = (p as i64, m as i64);
    rat(m * p * p * p + p * p - m - 1, 2 * p * p)
}

/// `-2n + floor(n (m p^3 + p^2 - m - 1) / p^2) + 1`, valid for `n >= 2`.
pub fn asw_quotient_h0(p: u64, m: u64, n: u64) -> BigInt {
    let (p, m, n) = (p as i64, m as i64, n as i64);
    floor(&rat(n * (m * p * p * p + p * p - m - 1), p * p)) - 2 * n + 1
}

/// `n (m p - 1) + floor(-n (m + 1) / p^2)`, the shortened form of [`asw_quotient_h0`].
pub fn asw_quotient_h0_shortened(p: u64, m: u64, n: u64) -> BigInt {
    let (p, m, n) = (p as i64, m as i64, n as i64);
    BigInt::from(n * (m * p - 1)) + BigInt::from(Integer::div_floor(&(-n * (m + 1)), &(p * p)))
}

/// Stacky P^1 of the modular curve of level `level` modulo PSL_2 in characteristic 3:
/// a tame point of order `level` at 0 and a point with filtration `(6, 3, 1)` at infinity.
pub fn xp_psl2_char3(level: u64) -> Result<StackyCurveData> {
    if level < 5 || level % 3 == 0 {
        return Err(Error::InvalidInput(format!("level {level} must be at least 5 and prime to 3")));
    }
    StackyCurveData::new(
        3,
        0,
        vec![
            StackyPoint::new("P", Place::Finite(0), Filtration::tame(level, 3)?),
            StackyPoint::new("Q", Place::Infinity, Filtration::new(vec![6, 3, 1], 2, 3)?),
        ],
        vec![],
    )
}
