//! JSON description of a stacky curve.
//!
//! ```json
//! {"p": 3, "coarse_genus": 0,
//!  "points": [{"label": "Q", "place": "infinity", "filtration": {"orders": [6, 3, 1], "r": 2}}],
//!  "log_points": []}
//! ```
//!
//! A filtration is `{"orders": [...], "r": r}`, `{"upper_jumps": [...], "r": r}`,
//! `{"lower_jumps": [...], "r": r}` or `{"tame": e}`. Upper jumps may be integers or
//! strings such as `"1/2"`; `r` defaults to 1.

use serde::{Deserialize, Serialize};

use super::{StackyCurveData, StackyPoint};
use crate::arith::{BigRat, Place};
use crate::error::{Error, Result};
use crate::ramification::{filtration_from_lower, filtration_from_upper, Filtration};

fn one() -> u64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ByOrders {
    pub orders: Vec<u64>,
    #[serde(default = "one")]
    pub r: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ByUpper {
    #[serde(with = "crate::arith::rational::serde_rat_vec")]
    pub upper_jumps: Vec<BigRat>,
    #[serde(default = "one")]
    pub r: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ByLower {
    pub lower_jumps: Vec<u64>,
    #[serde(default = "one")]
    pub r: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tame {
    pub tame: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FiltrationSpec {
    Orders(ByOrders),
    Upper(ByUpper),
    Lower(ByLower),
    Tame(Tame),
}

impl FiltrationSpec {
    pub fn build(&self, p: u64) -> Result<Filtration> {
        match self {
            FiltrationSpec::Orders(o) => Filtration::new(o.orders.clone(), o.r, p),
            FiltrationSpec::Upper(u) => filtration_from_upper(&u.upper_jumps, u.r, p),
            FiltrationSpec::Lower(l) => filtration_from_lower(&l.lower_jumps, l.r, p),
            FiltrationSpec::Tame(t) => Filtration::tame(t.tame, p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub label: String,
    pub place: Place,
    pub filtration: FiltrationSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub p: u64,
    #[serde(default)]
    pub coarse_genus: u64,
    #[serde(default)]
    pub points: Vec<PointSpec>,
    #[serde(default)]
    pub log_points: Vec<String>,
}

impl CurveSpec {
    pub fn build(&self) -> Result<StackyCurveData> {
        let points = self
            .points
            .iter()
            .map(|pt| Ok(StackyPoint::new(pt.label.clone(), pt.place, pt.filtration.build(self.p)?)))
            .collect::<Result<Vec<_>>>()?;
        StackyCurveData::new(self.p, self.coarse_genus, points, self.log_points.clone())
    }

    /// The description of `c`, with every filtration given by its orders.
    pub fn from_curve(c: &StackyCurveData) -> Self {
        CurveSpec {
            p: c.p(),
            coarse_genus: c.coarse_genus(),
            points: c
                .points()
                .iter()
                .map(|pt| PointSpec {
                    label: pt.label.clone(),
                    place: pt.place,
                    filtration: FiltrationSpec::Orders(ByOrders {
                        orders: pt.filtration.orders().to_vec(),
                        r: pt.filtration.r(),
                    }),
                })
                .collect(),
            log_points: c.log_points().to_vec(),
        }
    }
}

pub fn parse_curve_spec(json: &str) -> Result<StackyCurveData> {
    let spec: CurveSpec = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    spec.build()
}
