//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error (or a failing self-test), 2 on a usage error.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::parse::{parse_int_list, parse_ratfunc, split_components};
use crate::arith::rational::{fmt_rat, parse_rat};
use crate::arith::{laurent_expand, BigRat, FpElem, LaurentSeries, Place};
use crate::asw::{asw_reduce, is_admissible, jumps_from_pole_orders, LocalWitt};
use crate::cover::{analyze_cover, quotient_report, BranchReport, CoverSpec, QuotientReport, DEFAULT_PRECISION};
use crate::error::{Error, Result};
use crate::garuti::{boundary, boundary_closed_form, pull_psi};
use crate::ramification::{
    lower_to_upper, phi_from_filtration, upper_to_lower, validate_filtration, Filtration,
};
use crate::selftest;
use crate::stacky::{
    canonical_divisor, canring_generators, divisor_degree, floor_divisor, genus, hilbert_table,
    parse_curve_spec, ring_divisor, CurveSpec, QDivisor, StackyCurveData,
};
use crate::witt::{
    frobenius, set_caps, to_zpn, verschiebung, witt_add, witt_mul, witt_neg, witt_sub, wp, CharPCoeff,
    WittVector,
};

const SCHEMA_HELP: &str = r#"curve spec schema:
  {"p": int, "coarse_genus": int,
   "points": [{"label": str, "place": {"finite": int} | "infinity",
               "filtration": {"orders": [int...], "r": int}
                           | {"upper_jumps": [int | "num/den"...], "r": int}
                           | {"lower_jumps": [int...], "r": int}
                           | {"tame": int}}],
   "log_points": [str...]}"#;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct Config {
    /// Largest prime for which Witt polynomials are generated (default from WITTSTACK_MAX_P, else 7).
    #[arg(long, global = true)]
    pub max_p: Option<u64>,
    /// Largest Witt length for which Witt polynomials are generated (default from WITTSTACK_MAX_N, else 4).
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Parser)]
#[command(name = "wittstack", version, about = "Witt vectors, ramification jumps and stacky curves")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Witt vector arithmetic over F_p or F_p((t)).
    Witt {
        #[command(subcommand)]
        cmd: WittCmd,
    },
    /// Local Artin-Schreier-Witt reduction and jumps.
    Asw {
        #[command(subcommand)]
        cmd: AswCmd,
    },
    /// Ramification filtrations and Herbrand's function.
    Ram {
        #[command(subcommand)]
        cmd: RamCmd,
    },
    /// Boundary divisors on the compactified Witt tower.
    Garuti {
        #[command(subcommand)]
        cmd: GarutiCmd,
    },
    /// Stacky curves given by a JSON spec.
    Stacky {
        #[command(subcommand)]
        cmd: StackyCmd,
    },
    /// Global Z/p^n covers of P^1.
    Cover {
        #[command(subcommand)]
        cmd: CoverCmd,
    },
    /// Runs the oracle suite.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Op {
    Add,
    Sub,
    Mul,
    Neg,
    Frob,
    Versch,
    Wp,
}

#[derive(Debug, Subcommand)]
enum WittCmd {
    /// Integers are read in F_p; anything else as a Laurent polynomial in t.
    Eval {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: Option<String>,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: i64,
    },
}

#[derive(Debug, Args)]
struct LocalArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: usize,
    /// Comma-separated expressions in t, expanded at t = 0.
    #[arg(long, allow_hyphen_values = true)]
    components: String,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: i64,
}

#[derive(Debug, Subcommand)]
enum AswCmd {
    Jumps(LocalArgs),
    Reduce(LocalArgs),
    Admissible {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        jumps: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Direction {
    Up,
    Down,
}

#[derive(Debug, Subcommand)]
enum RamCmd {
    /// Lower to upper (`up`) or upper to lower (`down`) numbering.
    Convert {
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long)]
        jumps: String,
        #[arg(long, default_value_t = 1)]
        r: u64,
        #[arg(long)]
        p: u64,
    },
    /// Herbrand's function of a filtration given by its orders.
    Phi {
        #[arg(long)]
        orders: String,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Debug, Subcommand)]
enum GarutiCmd {
    Boundary {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        closed_form: bool,
        /// Print the pullback along the Frobenius lift instead.
        #[arg(long)]
        psi: bool,
    },
}

#[derive(Debug, Args)]
struct StackyArgs {
    spec: std::path::PathBuf,
    #[arg(long, default_value_t = 10)]
    max_degree: usize,
    #[arg(long)]
    log: bool,
}

#[derive(Debug, Subcommand)]
enum StackyCmd {
    Canonical(StackyArgs),
    Genus(StackyArgs),
    Hilbert(StackyArgs),
    Generators(StackyArgs),
}

#[derive(Debug, Args)]
struct CoverArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: usize,
    /// Comma-separated rational functions in x.
    #[arg(long, allow_hyphen_values = true)]
    components: String,
    #[arg(long)]
    precision: Option<i64>,
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
}

#[derive(Debug, Subcommand)]
enum CoverCmd {
    Analyze(CoverArgs),
    Report(CoverArgs),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittReport {
    pub p: u64,
    pub n: usize,
    pub op: String,
    pub ring: String,
    pub result: Vec<String>,
    pub zpn: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AswReport {
    pub p: u64,
    pub n: usize,
    pub reduced_components: Vec<String>,
    pub pole_orders: Vec<u64>,
    pub upper_jumps: Vec<u64>,
    pub steps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleReport {
    pub p: u64,
    pub jumps: Vec<u64>,
    pub admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvertReport {
    pub direction: String,
    pub p: u64,
    pub r: u64,
    #[serde(with = "crate::arith::rational::serde_rat_vec")]
    pub input: Vec<BigRat>,
    #[serde(with = "crate::arith::rational::serde_rat_vec")]
    pub output: Vec<BigRat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    pub p: u64,
    pub r: u64,
    pub orders: Vec<u64>,
    #[serde(with = "crate::arith::rational::serde_rat_vec")]
    pub breakpoints: Vec<BigRat>,
    #[serde(with = "crate::arith::rational::serde_rat_vec")]
    pub slopes: Vec<BigRat>,
    pub lower_jumps: Vec<u64>,
    #[serde(with = "crate::arith::rational::serde_rat_vec")]
    pub upper_jumps: Vec<BigRat>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GarutiReport {
    pub n: usize,
    pub p: u64,
    pub divisor: String,
    /// Coefficients of `Sigma_1, ..., Sigma_n`.
    #[serde(with = "crate::arith::rational::serde_int_vec")]
    pub coefficients: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalReport {
    pub log: bool,
    pub divisor: QDivisor,
    pub display: String,
    #[serde(with = "crate::arith::rational::serde_rat")]
    pub degree: BigRat,
    /// `floor(D)` on the coarse curve: the generic coefficient, then one entry per point.
    #[serde(with = "crate::arith::rational::serde_int_vec")]
    pub floor: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    #[serde(with = "crate::arith::rational::serde_rat")]
    pub genus: BigRat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub log: bool,
    #[serde(with = "crate::arith::rational::serde_int_vec")]
    pub h0: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsReport {
    pub log: bool,
    pub max_degree: usize,
    pub generators: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub p: u64,
    pub n: usize,
    pub branch: Vec<BranchReport>,
    pub curve: CurveSpec,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestRow {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u64,
}

enum Failure {
    Usage(String),
    Domain(Error),
    /// The report was printed but signals failure.
    Reported,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            other => Failure::Domain(other),
        }
    }
}

type Out<'a> = &'a mut dyn Write;

fn join<T: Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn join_rat(v: &[BigRat]) -> String {
    v.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
}

fn emit<T: Serialize>(out: Out, fmt: Format, report: &T, table: impl FnOnce(Out) -> std::io::Result<()>) -> std::io::Result<()> {
    match fmt {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(report).expect("reports serialize")),
        Format::Table => table(out),
    }
}

fn parse_u64_list(src: &str) -> Result<Vec<u64>> {
    parse_int_list(src)?
        .into_iter()
        .map(|v| u64::try_from(v).map_err(|_| Error::Parse(format!("{v} is negative"))))
        .collect()
}

fn parse_rat_list(src: &str) -> Result<Vec<BigRat>> {
    split_components(src)?.iter().map(|s| parse_rat(s)).collect()
}

fn witt_op<A: CharPCoeff + Display>(op: Op, x: &WittVector<A>, y: Option<&WittVector<A>>) -> Result<WittVector<A>> {
    let need = || y.ok_or_else(|| Error::Parse("this operation needs --rhs".into()));
    match op {
        Op::Add => witt_add(x, need()?),
        Op::Sub => witt_sub(x, need()?),
        Op::Mul => witt_mul(x, need()?),
        Op::Neg => witt_neg(x),
        Op::Frob => Ok(frobenius(x)),
        Op::Versch => Ok(verschiebung(x)),
        Op::Wp => wp(x),
    }
}

fn op_name(op: Op) -> String {
    op.to_possible_value().unwrap().get_name().to_string()
}

fn witt_eval(p: u64, n: usize, op: Op, lhs: &str, rhs: Option<&str>, prec: i64) -> Result<WittReport> {
    let l = split_components(lhs)?;
    let r = rhs.map(split_components).transpose()?;
    for v in std::iter::once(&l).chain(r.iter()) {
        if v.len() != n {
            return Err(Error::InvalidInput(format!("expected {n} components, got {}", v.len())));
        }
    }
    let ints = |v: &[String]| v.iter().map(|c| c.parse::<i64>().ok()).collect::<Option<Vec<_>>>();
    let all_int = ints(&l).is_some() && r.as_ref().is_none_or(|r| ints(r).is_some());
    if all_int {
        let vec = |v: &[String]| WittVector::new(p, ints(v).unwrap().into_iter().map(|c| FpElem::new(c, p)).collect());
        crate::witt::check_caps(p, n)?;
        let x = vec(&l)?;
        let y = r.as_deref().map(vec).transpose()?;
        let z = witt_op(op, &x, y.as_ref())?;
        Ok(WittReport {
            p,
            n,
            op: op_name(op),
            ring: "fp".into(),
            result: z.components().iter().map(|c| c.to_string()).collect(),
            zpn: Some(to_zpn(&z)?),
        })
    } else {
        let vec = |v: &[String]| -> Result<WittVector<LaurentSeries>> {
            let comps = v
                .iter()
                .map(|c| laurent_expand(&parse_ratfunc(p, c)?, Place::Finite(0), prec))
                .collect::<Result<Vec<_>>>()?;
            WittVector::new(p, comps)
        };
        let x = vec(&l)?;
        let y = r.as_deref().map(vec).transpose()?;
        let z = witt_op(op, &x, y.as_ref())?;
        Ok(WittReport {
            p,
            n,
            op: op_name(op),
            ring: "laurent".into(),
            result: z.components().iter().map(|c| c.to_string()).collect(),
            zpn: None,
        })
    }
}

fn asw_report(a: &LocalArgs) -> Result<AswReport> {
    let x = LocalWitt::parse(a.p, &a.components, a.precision)?;
    if x.n() != a.n {
        return Err(Error::InvalidInput(format!("expected {} components, got {}", a.n, x.n())));
    }
    crate::witt::check_caps(a.p, a.n)?;
    let red = asw_reduce(&x)?;
    Ok(AswReport {
        p: a.p,
        n: a.n,
        reduced_components: red.witt.components().iter().map(|c| c.to_string()).collect(),
        upper_jumps: jumps_from_pole_orders(a.p, &red.pole_orders),
        pole_orders: red.pole_orders,
        steps: red.steps.iter().map(|s| s.to_string()).collect(),
    })
}

fn load_curve(path: &std::path::Path) -> std::result::Result<StackyCurveData, Failure> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_curve_spec(&src).map_err(|e| match e {
        Error::Parse(m) => Failure::Usage(format!("{m}\n{SCHEMA_HELP}")),
        other => Failure::Domain(other),
    })
}

fn dispatch(cli: Cli, out: Out) -> std::result::Result<(), Failure> {
    let fmt = cli.config.format;
    if cli.config.max_p.is_some() || cli.config.max_n.is_some() {
        let (p0, n0) = crate::witt::get_caps();
        set_caps(cli.config.max_p.unwrap_or(p0), cli.config.max_n.unwrap_or(n0))?;
    }
    let io = |r: std::io::Result<()>| r.map_err(|e| Failure::Usage(format!("write failed: {e}")));
    match cli.cmd {
        Cmd::Witt {
            cmd: WittCmd::Eval { p, n, op, lhs, rhs, precision },
        } => {
            let r = witt_eval(p, n, op, &lhs, rhs.as_deref(), precision)?;
            io(emit(out, fmt, &r, |o| {
                writeln!(o, "result = ({})", r.result.join(", "))?;
                if let Some(z) = r.zpn {
                    writeln!(o, "in Z/{}^{} = {z}", r.p, r.n)?;
                }
                Ok(())
            }))
        }
        Cmd::Asw { cmd } => match cmd {
            AswCmd::Jumps(a) | AswCmd::Reduce(a) => {
                let r = asw_report(&a)?;
                io(emit(out, fmt, &r, |o| {
                    writeln!(o, "reduced_components = ({})", r.reduced_components.join(", "))?;
                    writeln!(o, "pole_orders = {}", join(&r.pole_orders))?;
                    writeln!(o, "upper_jumps = {}", join(&r.upper_jumps))?;
                    for s in &r.steps {
                        writeln!(o, "step: {s}")?;
                    }
                    Ok(())
                }))
            }
            AswCmd::Admissible { p, jumps } => {
                let u = parse_u64_list(&jumps)?;
                let r = AdmissibleReport {
                    p,
                    admissible: is_admissible(&u, p),
                    jumps: u,
                };
                io(emit(out, fmt, &r, |o| writeln!(o, "admissible = {}", r.admissible)))
            }
        },
        Cmd::Ram { cmd } => match cmd {
            RamCmd::Convert { direction, jumps, r, p } => {
                let input = parse_rat_list(&jumps)?;
                let output = match direction {
                    Direction::Up => lower_to_upper(&input, r, p)?,
                    Direction::Down => upper_to_lower(&input, r, p)?,
                };
                let rep = ConvertReport {
                    direction: direction.to_possible_value().unwrap().get_name().into(),
                    p,
                    r,
                    input,
                    output,
                };
                io(emit(out, fmt, &rep, |o| {
                    let (a, b) = match direction {
                        Direction::Up => ("lower", "upper"),
                        Direction::Down => ("upper", "lower"),
                    };
                    writeln!(o, "{a} = {}", join_rat(&rep.input))?;
                    writeln!(o, "{b} = {}", join_rat(&rep.output))
                }))
            }
            RamCmd::Phi { orders, r, p } => {
                let orders = parse_u64_list(&orders)?;
                let r = r.unwrap_or_else(|| {
                    let g0 = orders.first().copied().unwrap_or(1);
                    let mut t = g0;
                    while p > 1 && t % p == 0 {
                        t /= p;
                    }
                    t
                });
                let f = Filtration::new(orders, r, p)?;
                let phi = phi_from_filtration(&f);
                let rep = PhiReport {
                    p,
                    r,
                    orders: f.orders().to_vec(),
                    breakpoints: phi.breakpoints().to_vec(),
                    slopes: phi.slopes().to_vec(),
                    lower_jumps: f.lower_jumps(),
                    upper_jumps: f.upper_jumps(),
                    violations: validate_filtration(&f).iter().map(|v| v.to_string()).collect(),
                };
                io(emit(out, fmt, &rep, |o| {
                    writeln!(o, "orders = {}", join(&rep.orders))?;
                    writeln!(o, "breakpoints = {}", join_rat(&rep.breakpoints))?;
                    writeln!(o, "slopes = {}", join_rat(&rep.slopes))?;
                    writeln!(o, "lower_jumps = {}", join(&rep.lower_jumps))?;
                    writeln!(o, "upper_jumps = {}", join_rat(&rep.upper_jumps))?;
                    for v in &rep.violations {
                        writeln!(o, "violation {v}")?;
                    }
                    Ok(())
                }))
            }
        },
        Cmd::Garuti {
            cmd: GarutiCmd::Boundary { n, p, closed_form, psi },
        } => {
            crate::arith::PrimeField::new(p)?;
            let mut b = if closed_form { boundary_closed_form(n, p)? } else { boundary(n, p)? };
            if psi {
                b = pull_psi(&b, p);
            }
            let rep = GarutiReport {
                n,
                p,
                divisor: b.to_string(),
                coefficients: (1..=n).map(|i| b.coeff(i)).collect(),
            };
            io(emit(out, fmt, &rep, |o| writeln!(o, "{}", rep.divisor)))
        }
        Cmd::Stacky { cmd } => {
            let (StackyCmd::Canonical(a) | StackyCmd::Genus(a) | StackyCmd::Hilbert(a) | StackyCmd::Generators(a)) = &cmd;
            let c = load_curve(&a.spec)?;
            match cmd {
                StackyCmd::Canonical(a) => {
                    let d = if a.log { ring_divisor(&c, true) } else { canonical_divisor(&c) };
                    let fl = floor_divisor(&d, 1);
                    let rep = CanonicalReport {
                        log: a.log,
                        display: d.to_string(),
                        degree: divisor_degree(&d),
                        floor: std::iter::once(fl.generic.clone())
                            .chain(d.points.iter().map(|e| fl.at[&e.label].1.clone()))
                            .collect(),
                        divisor: d,
                    };
                    io(emit(out, fmt, &rep, |o| {
                        writeln!(o, "{} = {}", if rep.log { "K + Delta" } else { "K" }, rep.display)?;
                        writeln!(o, "degree = {}", fmt_rat(&rep.degree))
                    }))
                }
                StackyCmd::Genus(_) => {
                    let rep = GenusReport { genus: genus(&c) };
                    io(emit(out, fmt, &rep, |o| writeln!(o, "{}", fmt_rat(&rep.genus))))
                }
                StackyCmd::Hilbert(a) => {
                    let rep = HilbertReport {
                        log: a.log,
                        h0: hilbert_table(&c, a.max_degree, a.log)?,
                    };
                    io(emit(out, fmt, &rep, |o| {
                        writeln!(o, "n\th0")?;
                        for (n, v) in rep.h0.iter().enumerate() {
                            writeln!(o, "{n}\t{v}")?;
                        }
                        Ok(())
                    }))
                }
                StackyCmd::Generators(a) => {
                    let rep = GeneratorsReport {
                        log: a.log,
                        max_degree: a.max_degree,
                        generators: canring_generators(&c, a.max_degree, a.log)?,
                    };
                    io(emit(out, fmt, &rep, |o| {
                        writeln!(o, "degree\tgenerators")?;
                        for (d, k) in &rep.generators {
                            writeln!(o, "{d}\t{k}")?;
                        }
                        Ok(())
                    }))
                }
            }
        }
        Cmd::Cover { cmd } => match cmd {
            CoverCmd::Analyze(a) => {
                let spec = CoverSpec::parse(a.p, a.n, &a.components, a.precision)?;
                let an = analyze_cover(&spec)?;
                let rep = AnalysisReport {
                    p: an.p,
                    n: an.n,
                    branch: an.branch.iter().map(BranchReport::new).collect(),
                    curve: CurveSpec::from_curve(&an.curve),
                    notes: an.notes,
                };
                io(emit(out, fmt, &rep, |o| {
                    for b in &rep.branch {
                        writeln!(
                            o,
                            "{} at {}: upper_jumps = {}; lower_jumps = {}; stab_order = {}",
                            b.label,
                            b.place,
                            join(&b.upper_jumps),
                            join(&b.lower_jumps),
                            b.stab_order
                        )?;
                    }
                    for n in &rep.notes {
                        writeln!(o, "note: {n}")?;
                    }
                    Ok(())
                }))
            }
            CoverCmd::Report(a) => {
                let spec = CoverSpec::parse(a.p, a.n, &a.components, a.precision)?;
                let rep: QuotientReport = quotient_report(&spec, a.max_degree)?;
                io(emit(out, fmt, &rep, |o| {
                    for b in &rep.branch {
                        writeln!(o, "{} at {}: upper_jumps = {}; lower_jumps = {}", b.label, b.place, join(&b.upper_jumps), join(&b.lower_jumps))?;
                    }
                    writeln!(o, "K = {}", rep.canonical)?;
                    writeln!(o, "degree = {}", fmt_rat(&rep.degree))?;
                    writeln!(o, "genus = {}", fmt_rat(&rep.genus))?;
                    writeln!(o, "h0 = {}", join(&rep.hilbert))?;
                    if let Some(c) = &rep.reference {
                        writeln!(
                            o,
                            "reference lower jumps {} (K coefficient {}, genus {}) vs Herbrand {} (K coefficient {}, genus {}): {}",
                            join(&c.reference_lower_jumps),
                            c.reference_coefficient,
                            fmt_rat(&c.reference_genus),
                            join(&c.derived_lower_jumps),
                            c.derived_coefficient,
                            fmt_rat(&c.derived_genus),
                            if c.agree { "agree" } else { "disagree" }
                        )?;
                    }
                    for n in &rep.notes {
                        writeln!(o, "note: {n}")?;
                    }
                    Ok(())
                }))
            }
        },
        Cmd::Selftest { seed, only } => {
            let outcomes = match only {
                Some(id) if selftest::CRITERIA.iter().any(|c| c.0 == id) => vec![selftest::run_one(id, seed)],
                Some(id) => return Err(Failure::Usage(format!("no criterion {id}"))),
                None => selftest::run_all(seed),
            };
            let rows: Vec<SelftestRow> = outcomes
                .iter()
                .map(|o| SelftestRow {
                    id: o.id,
                    name: o.name.into(),
                    passed: o.passed,
                    detail: o.detail.clone(),
                    millis: o.millis as u64,
                })
                .collect();
            io(emit(out, fmt, &rows, |o| {
                for r in &rows {
                    writeln!(
                        o,
                        "{:>2} {} {:<52} {:>6} ms  {}",
                        r.id,
                        if r.passed { "PASS" } else { "FAIL" },
                        r.name,
                        r.millis,
                        r.detail
                    )?;
                }
                let passed = rows.iter().filter(|r| r.passed).count();
                writeln!(o, "{passed}/{} passed", rows.len())
            }))?;
            if rows.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(Failure::Reported)
            }
        }
    }
}

/// Runs the command line `args` (program name first), writing results to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(Failure::Reported) => 1,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "usage error: {m}");
            2
        }
    }
}
