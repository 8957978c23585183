//! Acceptance checks, one line per criterion. Each check recomputes its expectation
//! without going through the code path under test where it can.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use wittstack::arith::{FpElem, LaurentSeries};
use wittstack::asw::{as_lower_jump_oracle, upper_jumps, LocalWitt};
use wittstack::cover::{quotient_report, CoverSpec};
use wittstack::garuti::{boundary, boundary_closed_form, pull_psi};
use wittstack::ramification::{filtration_from_upper, lower_to_upper, phi_from_filtration, upper_to_lower};
use wittstack::stacky::{canonical_divisor, canring_generators, genus, hilbert_table, models};
use wittstack::witt::{frobenius, ghost_map, to_zpn, witt_add, witt_mul, witt_op_int, witt_sub, Kind, WittVector};

type Check = Result<String, String>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn z(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

/// Herbrand's function at integer `l`, summed directly from the group orders
/// `|G_i| = p^(n-k)` for `l_k < i <= l_(k+1)` and `|G_0| = r p^n`.
fn phi_sum(lower: &[u64], r: u64, p: u64, l: u64) -> BigRational {
    let n = lower.len() as u32;
    let g0 = (r * p.pow(n)) as i64;
    let mut acc = BigRational::zero();
    let mut prev = 0u64;
    // |G_i| is constant on each stretch (l_k, l_(k+1)]
    for (k, &j) in lower.iter().chain(std::iter::once(&u64::MAX)).enumerate() {
        let end = j.min(l);
        if end > prev {
            acc += q(((end - prev) * p.pow(n - k as u32)) as i64, g0);
            prev = end;
        }
    }
    acc
}

/// `sum_(i >= 0) (|G_i| - 1)` for the same filtration.
fn different(lower: &[u64], r: u64, p: u64) -> u64 {
    let n = lower.len() as u32;
    let mut s = r * p.pow(n) - 1;
    for i in 1..=*lower.last().unwrap_or(&0) {
        let k = lower.iter().filter(|&&j| j < i).count() as u32;
        s += p.pow(n - k) - 1;
    }
    s
}

fn c1() -> Check {
    let start = Instant::now();
    let mut pairs = 0u64;
    for (p, n) in [(2u64, 2usize), (2, 3), (3, 2), (5, 2)] {
        let pn = p.pow(n as u32);
        let all: Vec<WittVector<FpElem>> = (0..pn)
            .map(|c| {
                let digits = (0..n).map(|i| FpElem::new(((c / p.pow(i as u32)) % p) as i64, p)).collect();
                WittVector::new(p, digits).unwrap()
            })
            .collect();
        let img: Vec<u64> = all.iter().map(|x| to_zpn(x).unwrap()).collect();
        let mut seen = vec![false; pn as usize];
        for &v in &img {
            if v >= pn || seen[v as usize] {
                return Err(format!("p={p} n={n}: not a bijection"));
            }
            seen[v as usize] = true;
        }
        if img[1] != 1 {
            return Err(format!("p={p} n={n}: one maps to {}", img[1]));
        }
        for (a, &ia) in all.iter().zip(&img) {
            for (b, &ib) in all.iter().zip(&img) {
                let s = to_zpn(&witt_add(a, b).map_err(e)?).map_err(e)?;
                let m = to_zpn(&witt_mul(a, b).map_err(e)?).map_err(e)?;
                if s != (ia + ib) % pn || m != (ia * ib) % pn {
                    return Err(format!("p={p} n={n}: {ia}, {ib}"));
                }
                pairs += 1;
            }
        }
    }
    let ms = start.elapsed().as_millis();
    if ms >= 10_000 {
        return Err(format!("{pairs} pairs took {ms} ms"));
    }
    Ok(format!("{pairs} pairs, {ms} ms"))
}

fn ghost(p: u64, x: &[BigInt]) -> Vec<BigInt> {
    let pb = BigInt::from(p);
    (0..x.len())
        .map(|k| (0..=k).map(|i| pb.pow(i as u32) * x[i].pow(p.pow((k - i) as u32) as u32)).sum())
        .collect()
}

fn c2() -> Check {
    let mut rng = StdRng::seed_from_u64(2);
    for (p, n) in [(2u64, 3usize), (3, 2)] {
        for _ in 0..500 {
            let x: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.random_range(-50i64..=50))).collect();
            let y: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.random_range(-50i64..=50))).collect();
            let wx = WittVector::new(p, x.clone()).unwrap();
            let wy = WittVector::new(p, y.clone()).unwrap();
            let s = witt_op_int(p, Kind::Add, &wx, Some(&wy)).map_err(e)?;
            let m = witt_op_int(p, Kind::Mul, &wx, Some(&wy)).map_err(e)?;
            let (gx, gy) = (ghost(p, &x), ghost(p, &y));
            let want_s: Vec<BigInt> = gx.iter().zip(&gy).map(|(a, b)| a + b).collect();
            let want_m: Vec<BigInt> = gx.iter().zip(&gy).map(|(a, b)| a * b).collect();
            if ghost_map(&wx) != gx || ghost(p, s.components()) != want_s || ghost(p, m.components()) != want_m {
                return Err(format!("p={p} n={n}: x={x:?} y={y:?}"));
            }
        }
    }
    Ok("1000 pairs".into())
}

fn c3() -> Check {
    let mut cases = 0;
    for p in [2u64, 3, 5] {
        for j in (1..=20u64).filter(|j| j % p != 0) {
            let x = LocalWitt::monomials(p, &[Some((1, -(j as i64))), None]).map_err(e)?;
            let u = upper_jumps(&x).map_err(e)?;
            if u != [j, p * j] {
                return Err(format!("p={p} j={j}: {u:?}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn c4() -> Check {
    let mut cases = 0;
    for p in [2u64, 3] {
        for m in [1u64, 2, 4, 5, 7].into_iter().filter(|m| m % p != 0) {
            let lj = as_lower_jump_oracle(p, m, 8 * m as i64 + 16).map_err(e)?;
            let u = upper_jumps(&LocalWitt::monomials(p, &[Some((1, -(m as i64)))]).map_err(e)?).map_err(e)?;
            if lj != m || u != [m] {
                return Err(format!("p={p} m={m}: oracle {lj}, jumps {u:?}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn random_series(rng: &mut StdRng, p: u64, lo: i64, hi: i64) -> LaurentSeries {
    let terms: Vec<(i64, i64)> = (lo..=hi).map(|k| (k, rng.random_range(0..p as i64))).collect();
    LaurentSeries::from_terms(p, &terms)
}

fn c5() -> Check {
    let mut rng = StdRng::seed_from_u64(5);
    for trial in 0..200 {
        let p = [2u64, 3][trial % 2];
        let n = 1 + (trial / 2) % 3;
        let x = WittVector::new(p, (0..n).map(|_| random_series(&mut rng, p, -8, 3)).collect()).unwrap();
        let b = WittVector::new(p, (0..n).map(|_| random_series(&mut rng, p, -4, 2)).collect()).unwrap();
        // F(b) - b assembled from Frobenius and subtraction
        let gauge = witt_sub(&frobenius(&b), &b).map_err(e)?;
        let y = witt_add(&x, &gauge).map_err(e)?;
        let ux = upper_jumps(&LocalWitt::from_witt(x).map_err(e)?).map_err(e)?;
        let uy = upper_jumps(&LocalWitt::from_witt(y).map_err(e)?).map_err(e)?;
        if ux != uy {
            return Err(format!("trial {trial}: {ux:?} vs {uy:?}"));
        }
    }
    Ok("200 trials".into())
}

fn admissible(rng: &mut StdRng, p: u64, n: usize) -> Vec<u64> {
    let mut u: Vec<u64> = vec![];
    for _ in 0..n {
        let next = match u.last() {
            Some(&prev) if rng.random_ratio(1, 4) => p * prev,
            prev => {
                let lo = prev.map_or(1, |v| p * v + 1);
                (lo..).find(|c| c % p != 0 && rng.random_ratio(1, 3)).unwrap()
            }
        };
        u.push(next);
    }
    u
}

fn c6() -> Check {
    let mut rng = StdRng::seed_from_u64(6);
    for trial in 0..200 {
        let p = [2u64, 3, 5][trial % 3];
        let n = rng.random_range(1..=4usize);
        let rs: Vec<u64> = [1u64, 2, 3].into_iter().filter(|r| r % p != 0).collect();
        let r = rs[rng.random_range(0..rs.len())];
        let up_int = admissible(&mut rng, p, n);
        let up: Vec<BigRational> = up_int.iter().map(|&u| z(u)).collect();
        let low = upper_to_lower(&up, r, p).map_err(e)?;
        if lower_to_upper(&low, r, p).map_err(e)? != up {
            return Err(format!("round trip fails: {up_int:?} r={r} p={p}"));
        }
        let low_int: Vec<u64> = low
            .iter()
            .map(|l| if l.is_integer() { u64::try_from(l.to_integer()).ok() } else { None })
            .collect::<Option<_>>()
            .ok_or_else(|| format!("non-integral lower jumps for {up_int:?} r={r} p={p}"))?;
        let phi = phi_from_filtration(&filtration_from_upper(&up, r, p).map_err(e)?);
        for (&l, u) in low_int.iter().zip(&up) {
            let want = phi_sum(&low_int, r, p, l);
            let got = wittstack::arith::pl_eval(&phi, &z(l)).map_err(e)?;
            if got != want || want != *u {
                return Err(format!("phi({l}) = {got}, sum {want}, jump {u}; {up_int:?} r={r} p={p}"));
            }
        }
    }
    Ok("200 sequences".into())
}

fn c7() -> Check {
    for p in [2u64, 3, 5] {
        for n in 1..=6usize {
            let b = boundary(n, p).map_err(e)?;
            let closed = boundary_closed_form(n, p).map_err(e)?;
            let psi = pull_psi(&b, p);
            for i in 1..=n {
                let want = BigInt::from(p).pow((n - i) as u32);
                if b.coeff(i) != want || closed.coeff(i) != want || psi.coeff(i) != want * p {
                    return Err(format!("p={p} n={n} at Sigma_{i}"));
                }
            }
        }
    }
    Ok("n <= 6, p in {2, 3, 5}".into())
}

fn c8() -> Check {
    let k = canonical_divisor(&models::weighted_p23(0, false).map_err(e)?).to_string();
    if k != "-2H + 2P + Q" {
        return Err(format!("K = {k}"));
    }
    let log = models::weighted_p23(0, true).map_err(e)?;
    let table = hilbert_table(&log, 24, true).map_err(e)?;
    // coefficients of 1 / ((1 - t^2)(1 - t^3))
    let mut series = vec![0i64; 25];
    series[0] = 1;
    for w in [2usize, 3] {
        for d in w..=24 {
            series[d] += series[d - w];
        }
    }
    let want: Vec<BigInt> = series.iter().map(|&v| BigInt::from(v)).collect();
    if table != want {
        return Err(format!("log table {table:?}"));
    }
    let g = canring_generators(&log, 24, true).map_err(e)?;
    if g != BTreeMap::from([(2, 1), (3, 1)]) {
        return Err(format!("generators {g:?}"));
    }
    Ok(format!("K = {k}, generators {g:?}"))
}

fn c9() -> Check {
    let (mut cases, mut off_by_one) = (0, 0);
    for p in [2u64, 3, 5] {
        for m in (1..p * p).filter(|m| m % p != 0) {
            let lower = [m, m * (p * p + 1)];
            let c = models::asw_quotient(p, m, lower).map_err(e)?;
            let d = different(&lower, 1, p);
            let (pi, mi) = (p as i64, m as i64);
            // Riemann-Hurwitz on P^1 with one point of order p^2
            let g_rh = BigRational::one() + (q(-2, 1) + q(d as i64, (p * p) as i64)) / q(2, 1);
            let g_closed = q(mi * pi.pow(3) + pi * pi - mi - 1, 2 * pi * pi);
            if genus(&c) != g_rh || g_rh != g_closed {
                return Err(format!("genus for p={p} m={m}: {}", genus(&c)));
            }
            let t = hilbert_table(&c, 10, false).map_err(e)?;
            if t[1] != BigInt::from(m * p) {
                return Err(format!("h0(K) = {} for p={p} m={m}", t[1]));
            }
            for n in 2..=10i64 {
                let num = n * (mi * pi.pow(3) + pi * pi - mi - 1);
                let want = -2 * n + num.div_euclid(pi * pi) + 1;
                if t[n as usize] != BigInt::from(want) {
                    return Err(format!("h0({n}K) = {} vs {want} for p={p} m={m}", t[n as usize]));
                }
                let shortened = n * (mi * pi - 1) + (-n * (mi + 1)).div_euclid(pi * pi);
                if shortened + 1 == want {
                    off_by_one += 1;
                }
            }
            cases += 1;
        }
    }
    Ok(format!(
        "{cases} (p, m) pairs; note: the simplified form n(mp-1) + floor(-n(m+1)/p^2) is one less in {off_by_one} of {} entries",
        cases * 9
    ))
}

fn c10() -> Check {
    let start = Instant::now();
    let mut detail = vec![];
    let mut ok = true;
    for level in [7u64, 11] {
        let c = models::xp_psl2_char3(level).map_err(e)?;
        let k = canonical_divisor(&c).to_string();
        let g = canring_generators(&c, level as usize, false).map_err(e)?;
        let want = BTreeMap::from([(level as usize, (level / 6) as usize)]);
        ok &= k == format!("-2H + {}P + 7Q", level - 1) && g == want;
        detail.push(format!("level {level}: K = {k}, generators by degree {g:?}"));
    }
    let ms = start.elapsed().as_millis();
    ok &= ms < 60_000;
    detail.push(format!("{ms} ms"));
    if ok {
        Ok(detail.join("; "))
    } else {
        Err(detail.join("; "))
    }
}

fn c11() -> Check {
    let (mut covers, mut disagree) = (0, 0);
    for p in [2u64, 3, 5] {
        for m in (1..=6u64).filter(|m| m % p != 0) {
            let spec = CoverSpec::parse(p, 2, &format!("x^-{m}, 0"), None).map_err(e)?;
            let r = quotient_report(&spec, 4).map_err(e)?;
            if r.degree != &r.genus * z(2) - z(2) {
                return Err(format!("deg K != 2g - 2 for p={p} m={m}"));
            }
            let b = &r.branch[0];
            for (&l, &u) in b.lower_jumps.iter().zip(&b.upper_jumps) {
                if phi_sum(&b.lower_jumps, 1, p, l) != z(u) {
                    return Err(format!("jumps {:?} / {:?} for p={p} m={m}", b.lower_jumps, b.upper_jumps));
                }
            }
            let again = quotient_report(&spec, 4).map_err(e)?;
            let (j1, j2) = (serde_json::to_string(&r).map_err(e)?, serde_json::to_string(&again).map_err(e)?);
            let cmp = r.reference.as_ref().ok_or_else(|| format!("no comparison for p={p} m={m}"))?;
            if j1 != j2 || cmp.agree != (cmp.reference_lower_jumps == b.lower_jumps) {
                return Err(format!("comparison for p={p} m={m}"));
            }
            covers += 1;
            disagree += usize::from(!cmp.agree);
        }
    }
    Ok(format!("{covers} covers; reference jumps disagree in {disagree}"))
}

fn float_free(dir: &std::path::Path, hits: &mut Vec<String>) {
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            float_free(&path, hits);
        } else if path.extension().is_some_and(|x| x == "rs") {
            let src = std::fs::read_to_string(&path).unwrap();
            for (i, line) in src.lines().enumerate() {
                let code = line.split("//").next().unwrap_or("");
                if ["f32", "f64", "as_secs_f"].iter().any(|t| code.contains(t)) {
                    hits.push(format!("{}:{}", path.display(), i + 1));
                }
            }
        }
    }
}

fn c12() -> Check {
    let start = Instant::now();
    let outcomes = wittstack::selftest::run_all(wittstack::selftest::DEFAULT_SEED);
    let ms = start.elapsed().as_millis();
    let ids: Vec<u32> = outcomes.iter().map(|o| o.id).collect();
    if ids != (1..=11).collect::<Vec<_>>() {
        return Err(format!("selftest ran {ids:?}"));
    }
    let mut hits = vec![];
    float_free(&std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("src"), &mut hits);
    if !hits.is_empty() {
        return Err(format!("floating point in {hits:?}"));
    }
    if ms >= 300_000 {
        return Err(format!("selftest took {ms} ms"));
    }
    let red: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    Ok(format!("11 criteria in {ms} ms, no floating point in src; failing inside selftest: {red:?}"))
}

fn main() {
    let checks: [(u32, &str, fn() -> Check); 12] = [
        (1, "Witt ring vs Z/p^n, exhaustive", c1),
        (2, "ghost components", c2),
        (3, "upper jumps of (t^-j, 0)", c3),
        (4, "Galois action, n = 1", c4),
        (5, "gauge invariance", c5),
        (6, "Herbrand round trip", c6),
        (7, "boundary divisor identities", c7),
        (8, "P(2,3) canonical ring", c8),
        (9, "Artin-Schreier-Witt quotient", c9),
        (10, "X(p)/PSL_2 in characteristic 3", c10),
        (11, "cover pipeline consistency", c11),
        (12, "selftest end to end", c12),
    ];
    let mut failed = 0;
    for (id, name, f) in checks {
        let start = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match out {
            Ok(d) => println!("criterion {id:>2} PASS  {name} ({ms} ms): {d}"),
            Err(d) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} ({ms} ms): {d}");
            }
        }
    }
    println!("{} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
