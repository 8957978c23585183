//! Stacky curves over a coarse curve: canonical divisors, genus, Riemann-Roch and canonical rings.

mod canring;
pub mod models;
mod spec;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::fp::is_prime;
use crate::arith::rational::{floor, fmt_rat, from_big, int};
use crate::arith::{BigRat, Place};
use crate::error::{Error, Result};
use crate::ramification::Filtration;

pub use canring::{canring_generators, section_dimensions};
pub use spec::{parse_curve_spec, CurveSpec, FiltrationSpec, PointSpec};

/// Label of the generic coarse point carrying the pullback of the coarse canonical class.
pub const COARSE_LABEL: &str = "H";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyPoint {
    pub label: String,
    pub place: Place,
    pub filtration: Filtration,
}

impl StackyPoint {
    pub fn new(label: impl Into<String>, place: Place, filtration: Filtration) -> Self {
        StackyPoint {
            label: label.into(),
            place,
            filtration,
        }
    }

    pub fn stab_order(&self) -> u64 {
        self.filtration.stab_order()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyCurveData {
    p: u64,
    coarse_genus: u64,
    points: Vec<StackyPoint>,
    log_points: Vec<String>,
}

fn place_key(place: Place, p: u64) -> Place {
    match place {
        Place::Finite(a) if p > 0 => Place::Finite(a.rem_euclid(p as i64)),
        other => other,
    }
}

impl StackyCurveData {
    /// `p = 0` describes a tame curve in characteristic zero.
    pub fn new(
        p: u64,
        coarse_genus: u64,
        points: Vec<StackyPoint>,
        log_points: Vec<String>,
    ) -> Result<Self> {
        if p != 0 && !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut labels = HashSet::new();
        let mut places = HashSet::new();
        for pt in &points {
            if pt.label == COARSE_LABEL {
                return Err(Error::InvalidInput(format!(
                    "label {COARSE_LABEL:?} is reserved for the generic coarse point"
                )));
            }
            if !labels.insert(pt.label.clone()) {
                return Err(Error::InvalidInput(format!("duplicate label {:?}", pt.label)));
            }
            if !places.insert(place_key(pt.place, p)) {
                return Err(Error::InvalidInput(format!("two points at place {}", pt.place)));
            }
            if pt.filtration.p() != p {
                return Err(Error::InvalidInput(format!(
                    "point {:?} has a filtration for p = {}, curve has p = {p}",
                    pt.label,
                    pt.filtration.p()
                )));
            }
        }
        for l in &log_points {
            if !labels.contains(l) {
                return Err(Error::InvalidInput(format!("log point {l:?} is not a listed point")));
            }
        }
        let mut points = points;
        points.sort_by_key(|pt| place_key(pt.place, p));
        Ok(StackyCurveData {
            p,
            coarse_genus,
            points,
            log_points,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coarse_genus(&self) -> u64 {
        self.coarse_genus
    }

    pub fn points(&self) -> &[StackyPoint] {
        &self.points
    }

    pub fn log_points(&self) -> &[String] {
        &self.log_points
    }

    pub fn point(&self, label: &str) -> Option<&StackyPoint> {
        self.points.iter().find(|pt| pt.label == label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QEntry {
    pub label: String,
    pub place: Place,
    pub stab_order: u64,
    #[serde(with = "crate::arith::rational::serde_rat")]
    pub coeff: BigRat,
}

/// A divisor with rational coefficients: a coarse part on the generic point, plus
/// coefficients at stacky points measured in units of the stacky point (degree `1/e`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QDivisor {
    #[serde(with = "crate::arith::rational::serde_rat")]
    pub coarse: BigRat,
    pub points: Vec<QEntry>,
}

impl QDivisor {
    pub fn zero(c: &StackyCurveData) -> Self {
        QDivisor {
            coarse: BigRat::zero(),
            points: c
                .points
                .iter()
                .map(|pt| QEntry {
                    label: pt.label.clone(),
                    place: pt.place,
                    stab_order: pt.stab_order(),
                    coeff: BigRat::zero(),
                })
                .collect(),
        }
    }

    pub fn coeff(&self, label: &str) -> Option<&BigRat> {
        if label == COARSE_LABEL {
            return Some(&self.coarse);
        }
        self.points.iter().find(|e| e.label == label).map(|e| &e.coeff)
    }

    fn zip_with(&self, o: &QDivisor, f: impl Fn(&BigRat, &BigRat) -> BigRat) -> QDivisor {
        assert_eq!(self.points.len(), o.points.len(), "divisors on different curves");
        QDivisor {
            coarse: f(&self.coarse, &o.coarse),
            points: self
                .points
                .iter()
                .zip(&o.points)
                .map(|(a, b)| {
                    assert_eq!(a.label, b.label, "divisors on different curves");
                    QEntry {
                        coeff: f(&a.coeff, &b.coeff),
                        ..a.clone()
                    }
                })
                .collect(),
        }
    }

    pub fn add(&self, o: &QDivisor) -> QDivisor {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &QDivisor) -> QDivisor {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn scale(&self, k: &BigRat) -> QDivisor {
        self.zip_with(self, |a, _| a * k)
    }

    pub fn is_zero(&self) -> bool {
        self.coarse.is_zero() && self.points.iter().all(|e| e.coeff.is_zero())
    }
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![(self.coarse.clone(), COARSE_LABEL.to_string())];
        parts.extend(self.points.iter().map(|e| (e.coeff.clone(), e.label.clone())));
        let mut first = true;
        for (c, l) in parts {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if mag.is_one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "{}{l}", fmt_rat(&mag))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An integral divisor on the coarse curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseDivisor {
    /// Coefficient on the generic coarse point.
    pub generic: BigInt,
    pub at: BTreeMap<String, (Place, BigInt)>,
}

impl CoarseDivisor {
    pub fn degree(&self) -> BigInt {
        self.at.values().fold(self.generic.clone(), |acc, (_, c)| acc + c)
    }

    pub fn is_zero(&self) -> bool {
        self.generic.is_zero() && self.at.values().all(|(_, c)| c.is_zero())
    }
}

/// `pi^* K_coarse + sum_x sum_i (|G_{x,i}| - 1) x`.
pub fn canonical_divisor(c: &StackyCurveData) -> QDivisor {
    let mut k = QDivisor::zero(c);
    k.coarse = int(2 * c.coarse_genus as i64 - 2);
    for (e, pt) in k.points.iter_mut().zip(&c.points) {
        e.coeff = from_big(BigInt::from(pt.filtration.ramification_sum()));
    }
    k
}

/// The log boundary: every log point with coefficient 1.
pub fn log_divisor(c: &StackyCurveData) -> QDivisor {
    let mut d = QDivisor::zero(c);
    for e in d.points.iter_mut() {
        if c.log_points.contains(&e.label) {
            e.coeff = BigRat::one();
        }
    }
    d
}

/// Coarse coefficients count fully; a coefficient at a point with stabilizer order `e` counts `1/e`.
pub fn divisor_degree(d: &QDivisor) -> BigRat {
    d.points.iter().fold(d.coarse.clone(), |acc, e| {
        acc + &e.coeff / int(e.stab_order as i64)
    })
}

/// `g` with `2g - 2 = deg K`.
pub fn genus(c: &StackyCurveData) -> BigRat {
    (divisor_degree(&canonical_divisor(c)) + int(2)) / int(2)
}

/// `floor(n D)` on the coarse curve.
pub fn floor_divisor(d: &QDivisor, n: i64) -> CoarseDivisor {
    let nr = int(n);
    CoarseDivisor {
        generic: floor(&(&d.coarse * &nr)),
        at: d
            .points
            .iter()
            .map(|e| {
                let c = floor(&(&e.coeff * &nr / int(e.stab_order as i64)));
                (e.label.clone(), (e.place, c))
            })
            .collect(),
    }
}

/// The divisor whose multiples are graded pieces: `K`, or `K + Delta` in the log case.
pub fn ring_divisor(c: &StackyCurveData, log: bool) -> QDivisor {
    let k = canonical_divisor(c);
    if log {
        k.add(&log_divisor(c))
    } else {
        k
    }
}

/// `h^0(n K)` (or `h^0(n(K + Delta))`) by Riemann-Roch with the Serre-dual correction term.
pub fn h0(c: &StackyCurveData, n: i64, log: bool) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::one());
    }
    let k = canonical_divisor(c);
    let dn = ring_divisor(c, log).scale(&int(n));
    let e = floor_divisor(&dn, 1);
    let deg = e.degree();
    if deg.is_negative() {
        return Ok(BigInt::zero());
    }
    let dual = floor_divisor(&k.sub(&dn), 1);
    let g0 = BigInt::from(c.coarse_genus);
    let dual_deg = dual.degree();
    let correction = if c.coarse_genus == 0 {
        (dual_deg + 1i32).max(BigInt::zero())
    } else if dual_deg.is_negative() {
        BigInt::zero()
    } else if dual.is_zero() {
        BigInt::one()
    } else {
        return Err(Error::UnsupportedBase(format!(
            "h0 of a degree-{dual_deg} divisor on a coarse curve of genus {}",
            c.coarse_genus
        )));
    };
    Ok(deg - g0 + 1 + correction)
}

/// `[h^0(0), h^0(D), ..., h^0(N D)]`.
pub fn hilbert_table(c: &StackyCurveData, max_n: usize, log: bool) -> Result<Vec<BigInt>> {
    (0..=max_n as i64).map(|n| h0(c, n, log)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn p23_canonical_data() {
        let c = models::weighted_p23(0, false).unwrap();
        let k = canonical_divisor(&c);
        assert_eq!(k.to_string(), "-2H + 2P + Q");
        assert_eq!(divisor_degree(&k), rat(-5, 6));
        assert_eq!(genus(&c), rat(7, 12));
        let f6 = floor_divisor(&k, 6);
        assert_eq!(f6.degree(), BigInt::from(-5));
        assert_eq!(f6.at["P"].1, BigInt::from(4));
        assert_eq!(f6.at["Q"].1, BigInt::from(3));
        assert!(floor_divisor(&k, 0).is_zero());
    }

    #[test]
    fn no_stacky_points() {
        for g in 0..4u64 {
            let c = StackyCurveData::new(5, g, vec![], vec![]).unwrap();
            assert_eq!(divisor_degree(&canonical_divisor(&c)), int(2 * g as i64 - 2));
            assert_eq!(genus(&c), int(g as i64));
        }
        let c = StackyCurveData::new(5, 0, vec![], vec![]).unwrap();
        assert_eq!(hilbert_table(&c, 2, false).unwrap(), vec![BigInt::from(1), BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn log_p23_table() {
        let c = models::weighted_p23(0, true).unwrap();
        let t: Vec<i64> = hilbert_table(&c, 6, true)
            .unwrap()
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect();
        assert_eq!(t, vec![1, 0, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn asw_quotient_numbers() {
        let c = models::asw_quotient(3, 1, [1, 10]).unwrap();
        assert_eq!(genus(&c), rat(17, 9));
        let t = hilbert_table(&c, 2, false).unwrap();
        assert_eq!(t, vec![BigInt::from(1), BigInt::from(3), BigInt::from(4)]);
        let fk = floor_divisor(&canonical_divisor(&c), 1);
        assert_eq!(fk.generic, BigInt::from(-2));
        assert_eq!(fk.degree(), BigInt::from(1));
    }

    #[test]
    fn xp_char3_canonical_divisor() {
        let c = models::xp_psl2_char3(7).unwrap();
        assert_eq!(canonical_divisor(&c).to_string(), "-2H + 6P + 7Q");
    }

    #[test]
    fn positive_genus_guards() {
        let c = StackyCurveData::new(
            3,
            2,
            vec![StackyPoint::new("P", Place::Finite(0), Filtration::tame(2, 3).unwrap())],
            vec![],
        )
        .unwrap();
        // deg floor(K) = 2 >= 0 and floor(K - K) = 0
        assert_eq!(h0(&c, 1, false).unwrap(), BigInt::from(2));
        assert!(matches!(h0(&c, 2, false), Ok(_)));
        let big = StackyCurveData::new(3, 1, vec![], vec![]).unwrap();
        assert_eq!(h0(&big, 3, false).unwrap(), BigInt::one());
    }

    #[test]
    fn validation() {
        let t = Filtration::tame(2, 3).unwrap();
        let dup = StackyCurveData::new(
            3,
            0,
            vec![
                StackyPoint::new("A", Place::Finite(0), t.clone()),
                StackyPoint::new("B", Place::Finite(3), t.clone()),
            ],
            vec![],
        );
        assert!(dup.is_err());
        let reserved = StackyCurveData::new(3, 0, vec![StackyPoint::new("H", Place::Infinity, t.clone())], vec![]);
        assert!(reserved.is_err());
        let bad_log = StackyCurveData::new(3, 0, vec![], vec!["X".into()]);
        assert!(bad_log.is_err());
    }
}
