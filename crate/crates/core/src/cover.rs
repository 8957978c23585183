//! Global `Z/p^n` covers of P^1 given by Witt vectors of rational functions.
//!
//! Ramification can only happen at poles of the components. Each pole is expanded
//! locally, reduced, and its upper jumps turned into a filtration; the quotient is a
//! stacky P^1 with one stacky point per branch place.

use serde::{Deserialize, Serialize};

use crate::arith::parse::{parse_ratfunc, split_components};
use crate::arith::rational::{from_big, int};
use crate::arith::{laurent_expand, BigRat, Place, Poly, RatFunc};
use crate::asw::{asw_reduce, jumps_from_pole_orders, LocalWitt};
use crate::error::{Error, Result};
use crate::ramification::{filtration_from_upper, Filtration};
use crate::stacky::{
    canonical_divisor, divisor_degree, genus, hilbert_table, QDivisor, StackyCurveData, StackyPoint,
};
use crate::witt::check_caps;

pub const DEFAULT_PRECISION: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    p: u64,
    components: Vec<RatFunc>,
    precision_hint: Option<i64>,
}

impl CoverSpec {
    pub fn new(p: u64, components: Vec<RatFunc>, precision_hint: Option<i64>) -> Result<Self> {
        check_caps(p, components.len())?;
        if components.iter().any(|f| f.p() != p) {
            return Err(Error::InvalidInput(format!("components must live over F_{p}")));
        }
        if components.iter().all(|f| f.is_zero()) {
            return Err(Error::InvalidInput("the zero Witt vector defines no cover".into()));
        }
        if let Some(h) = precision_hint {
            if h < 1 {
                return Err(Error::InvalidInput(format!("precision {h} must be positive")));
            }
        }
        Ok(CoverSpec {
            p,
            components,
            precision_hint,
        })
    }

    /// Comma-separated rational functions in `x`; the count must be `n`.
    pub fn parse(p: u64, n: usize, src: &str, precision_hint: Option<i64>) -> Result<Self> {
        let comps = split_components(src)?
            .iter()
            .map(|c| parse_ratfunc(p, c))
            .collect::<Result<Vec<_>>>()?;
        if comps.len() != n {
            return Err(Error::InvalidInput(format!(
                "expected {n} components, got {}",
                comps.len()
            )));
        }
        CoverSpec::new(p, comps, precision_hint)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.components
    }

    pub fn precision_hint(&self) -> Option<i64> {
        self.precision_hint
    }

    /// Applies a coordinate change to every component.
    pub fn map_components(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Result<Self> {
        CoverSpec::new(self.p, self.components.iter().map(f).collect(), self.precision_hint)
    }
}

/// Degree of the smallest irreducible factor of a nonconstant `f` without rational roots.
fn smallest_factor_degree(f: &Poly) -> usize {
    let p = f.p();
    let x = Poly::x(p);
    // h = x^(p^d) mod f
    let mut h = x.clone();
    let mut d = 0;
    loop {
        d += 1;
        h = h.pow(p as u32).divrem(f).1;
        if f.gcd(&h.sub(&x)).degree().unwrap_or(0) > 0 {
            return d;
        }
    }
}

/// Poles of the components over F_p-rational places and infinity, finite places first.
pub fn branch_places(spec: &CoverSpec) -> Result<Vec<Place>> {
    let mut out = vec![];
    for f in &spec.components {
        if f.is_zero() {
            continue;
        }
        let (roots, rest) = f.denominator().rational_roots();
        if rest.degree().unwrap_or(0) > 0 {
            return Err(Error::IrrationalBranchPoint(smallest_factor_degree(&rest)));
        }
        out.extend(roots.into_iter().map(|(a, _)| Place::Finite(a as i64)));
        if f.valuation(Place::Infinity).unwrap() < 0 {
            out.push(Place::Infinity);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchData {
    pub place: Place,
    pub label: String,
    /// Pole orders of the reduced local components.
    pub pole_orders: Vec<u64>,
    pub upper_jumps: Vec<u64>,
    pub filtration: Filtration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverAnalysis {
    pub p: u64,
    pub n: usize,
    pub branch: Vec<BranchData>,
    pub curve: StackyCurveData,
    pub notes: Vec<String>,
}

fn label(place: Place) -> String {
    format!("P_{place}")
}

pub fn analyze_cover(spec: &CoverSpec) -> Result<CoverAnalysis> {
    let p = spec.p;
    let n = spec.n();
    let mut branch = vec![];
    let mut notes = vec![];
    for place in branch_places(spec)? {
        let max_pole = spec
            .components
            .iter()
            .filter_map(|f| f.valuation(place))
            .map(|v| (-v).max(0))
            .max()
            .unwrap_or(0);
        let prec = spec.precision_hint.unwrap_or_else(|| {
            let heuristic = n as i64 * (p as i64).pow(n as u32 - 1) * max_pole + 8;
            heuristic.max(DEFAULT_PRECISION)
        });
        let local = spec
            .components
            .iter()
            .map(|f| laurent_expand(f, place, prec))
            .collect::<Result<Vec<_>>>()?;
        let reduced = asw_reduce(&LocalWitt::new(p, local)?)?;
        for s in &reduced.steps {
            notes.push(format!("place {place}: {s}"));
        }
        let upper = jumps_from_pole_orders(p, &reduced.pole_orders);
        if upper.iter().all(|&u| u == 0) {
            notes.push(format!("place {place}: pole removed by reduction, unramified"));
            continue;
        }
        let up: Vec<BigRat> = upper.iter().map(|&u| int(u as i64)).collect();
        let filtration = filtration_from_upper(&up, 1, p)?;
        let levels = upper.iter().filter(|&&u| u > 0).count() as u32;
        debug_assert_eq!(filtration.stab_order(), p.pow(levels));
        branch.push(BranchData {
            place,
            label: label(place),
            pole_orders: reduced.pole_orders,
            upper_jumps: upper,
            filtration,
        });
    }
    if branch.is_empty() {
        return Err(Error::InvalidInput(
            "the cover is unramified: every pole reduces away".into(),
        ));
    }
    notes.push("local sections are taken in reduced form".into());
    let points = branch
        .iter()
        .map(|b| StackyPoint::new(b.label.clone(), b.place, b.filtration.clone()))
        .collect();
    let curve = StackyCurveData::new(p, 0, points, vec![])?;
    Ok(CoverAnalysis {
        p,
        n,
        branch,
        curve,
        notes,
    })
}

/// Side-by-side comparison of the reference lower jumps `(m, m(p^2 + 1))` for the
/// quotient of `(x^{-m}, 0)`, against those obtained through the Herbrand function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceComparison {
    pub m: u64,
    pub reference_lower_jumps: Vec<u64>,
    pub derived_lower_jumps: Vec<u64>,
    pub reference_coefficient: u64,
    pub derived_coefficient: u64,
    #[serde(with = "crate::arith::rational::serde_rat")]
    pub reference_genus: BigRat,
    #[serde(with = "crate::arith::rational::serde_rat")]
    pub derived_genus: BigRat,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchReport {
    pub label: String,
    pub place: Place,
    pub pole_orders: Vec<u64>,
    pub upper_jumps: Vec<u64>,
    pub lower_jumps: Vec<u64>,
    pub orders: Vec<u64>,
    pub stab_order: u64,
}

impl BranchReport {
    pub fn new(b: &BranchData) -> Self {
        BranchReport {
            label: b.label.clone(),
            place: b.place,
            pole_orders: b.pole_orders.clone(),
            upper_jumps: b.upper_jumps.clone(),
            lower_jumps: b.filtration.lower_jumps(),
            orders: b.filtration.orders().to_vec(),
            stab_order: b.filtration.stab_order(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub p: u64,
    pub n: usize,
    pub branch: Vec<BranchReport>,
    pub canonical: QDivisor,
    #[serde(with = "crate::arith::rational::serde_rat")]
    pub degree: BigRat,
    #[serde(with = "crate::arith::rational::serde_rat")]
    pub genus: BigRat,
    #[serde(with = "crate::arith::rational::serde_int_vec")]
    pub hilbert: Vec<num_bigint::BigInt>,
    pub reference: Option<ReferenceComparison>,
    pub notes: Vec<String>,
}

fn reference_comparison(a: &CoverAnalysis) -> Option<ReferenceComparison> {
    if a.n != 2 || a.branch.len() != 1 {
        return None;
    }
    let b = &a.branch[0];
    let p = a.p;
    let m = b.pole_orders[0];
    if m == 0 || b.pole_orders[1] != 0 {
        return None;
    }
    let reference = vec![m, m * (p * p + 1)];
    let reference_filtration = crate::ramification::filtration_from_lower(&reference, 1, p).ok()?;
    let reference_coefficient = reference_filtration.ramification_sum();
    let derived_coefficient = b.filtration.ramification_sum();
    // deg K = -2 + c / p^2
    let g = |c: u64| from_big(c.into()) / int(2 * (p * p) as i64);
    let reference_genus = g(reference_coefficient);
    let derived_genus = g(derived_coefficient);
    let derived = b.filtration.lower_jumps();
    Some(ReferenceComparison {
        m,
        agree: reference == derived,
        reference_lower_jumps: reference,
        derived_lower_jumps: derived,
        reference_coefficient,
        derived_coefficient,
        reference_genus,
        derived_genus,
    })
}

/// Canonical divisor, genus and `h^0(nK)` for `n = 0..=max_degree` of the quotient stacky curve.
pub fn quotient_report(spec: &CoverSpec, max_degree: usize) -> Result<QuotientReport> {
    let a = analyze_cover(spec)?;
    let k = canonical_divisor(&a.curve);
    let degree = divisor_degree(&k);
    let genus = genus(&a.curve);
    debug_assert_eq!(&degree, &(&genus * int(2) - int(2)));
    let hilbert = hilbert_table(&a.curve, max_degree, false)?;
    let reference = reference_comparison(&a);
    let mut notes = a.notes.clone();
    if let Some(r) = &reference {
        notes.push(format!(
            "reference lower jumps {:?} vs Herbrand lower jumps {:?}: {}",
            r.reference_lower_jumps,
            r.derived_lower_jumps,
            if r.agree { "agree" } else { "disagree" }
        ));
    }
    Ok(QuotientReport {
        p: a.p,
        n: a.n,
        branch: a.branch.iter().map(BranchReport::new).collect(),
        canonical: k,
        degree,
        genus,
        hilbert,
        reference,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn spec(p: u64, src: &str) -> CoverSpec {
        let n = split_components(src).unwrap().len();
        CoverSpec::parse(p, n, src, None).unwrap()
    }

    #[test]
    fn branch_place_examples() {
        assert_eq!(branch_places(&spec(5, "x^-3, 0")).unwrap(), vec![Place::Finite(0)]);
        assert_eq!(
            branch_places(&spec(3, "1/(x*(x-1)), 0")).unwrap(),
            vec![Place::Finite(0), Place::Finite(1)]
        );
        assert_eq!(branch_places(&spec(3, "x, 0")).unwrap(), vec![Place::Infinity]);
        assert_eq!(
            branch_places(&spec(3, "1/(x^2+1)")),
            Err(Error::IrrationalBranchPoint(2))
        );
    }

    #[test]
    fn key_example_jumps() {
        for (p, j) in [(2u64, 3i64), (3, 2), (5, 7)] {
            let a = analyze_cover(&spec(p, &format!("x^-{j}, 0"))).unwrap();
            assert_eq!(a.branch.len(), 1);
            assert_eq!(a.branch[0].upper_jumps, vec![j as u64, p * j as u64]);
            assert_eq!(a.branch[0].filtration.stab_order(), p * p);
        }
    }

    #[test]
    fn reducible_pole() {
        let a = analyze_cover(&spec(3, "x^-3, 0")).unwrap();
        assert_eq!(a.branch[0].upper_jumps, vec![1, 3]);
        assert!(a.notes.iter().any(|s| s.contains("removed")));
    }

    #[test]
    fn pole_at_infinity_matches_flip() {
        let a = analyze_cover(&spec(5, "x^3 + 2*x")).unwrap();
        assert_eq!(a.branch[0].place, Place::Infinity);
        assert_eq!(a.branch[0].upper_jumps, vec![3]);
        let flipped = spec(5, "x^3 + 2*x").map_components(RatFunc::invert_variable).unwrap();
        let b = analyze_cover(&flipped).unwrap();
        assert_eq!(b.branch[0].place, Place::Finite(0));
        assert_eq!(b.branch[0].upper_jumps, vec![3]);
    }

    #[test]
    fn unramified_rejected() {
        assert!(CoverSpec::parse(3, 2, "0, 0", None).is_err());
        // x^-3 - x^-1 = wp(x^-1) when p = 3
        assert!(analyze_cover(&spec(3, "x^-3 - x^-1")).is_err());
    }

    #[test]
    fn report_for_artin_schreier() {
        let (p, m) = (3u64, 2u64);
        let r = quotient_report(&spec(p, "x^-2"), 3).unwrap();
        assert_eq!(r.canonical.coeff("P_0"), Some(&int(((m + 1) * (p - 1)) as i64)));
        assert_eq!(r.reference, None);
    }

    #[test]
    fn report_flags_reference_jumps() {
        let (p, m) = (3i64, 1i64);
        let r = quotient_report(&spec(3, "x^-1, 0"), 2).unwrap();
        let cmp = r.reference.unwrap();
        assert_eq!(cmp.derived_lower_jumps, vec![1, 7]);
        assert_eq!(cmp.reference_lower_jumps, vec![1, 10]);
        assert!(!cmp.agree);
        let want = int(-2) + rat((m + 1) * (p * p - 1) + m * p * (p - 1) * (p - 1), p * p);
        assert_eq!(r.degree, want);
        assert_eq!(r.degree, &r.genus * int(2) - int(2));
        assert_eq!(cmp.reference_genus, rat(17, 9));
    }
}
