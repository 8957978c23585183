//! Witt vectors of length 2 over F_3 and over F_3((t)).

use num_bigint::BigInt;
use wittstack::arith::{FpElem, LaurentSeries};
use wittstack::witt::{from_zpn, ghost_map, to_zpn, witt_add, witt_mul, witt_op_int, wp, Kind, WittVector};

fn main() -> wittstack::Result<()> {
    let p = 3;
    let x = WittVector::new(p, vec![FpElem::new(1, p), FpElem::new(2, p)])?;
    let y = from_zpn(p, 2, 5)?;
    let s = witt_add(&x, &y)?;
    let m = witt_mul(&x, &y)?;
    println!("x = {:?} ~ {}", x.components(), to_zpn(&x)?);
    println!("y = {:?} ~ {}", y.components(), to_zpn(&y)?);
    println!("x + y = {:?} ~ {}", s.components(), to_zpn(&s)?);
    println!("x * y = {:?} ~ {}", m.components(), to_zpn(&m)?);

    // integer lifts: addition is additive on ghost components
    let a = WittVector::new(p, vec![BigInt::from(4), BigInt::from(-7)])?;
    let b = WittVector::new(p, vec![BigInt::from(2), BigInt::from(10)])?;
    let c = witt_op_int(p, Kind::Add, &a, Some(&b))?;
    println!("ghost(a) + ghost(b) = {:?}", ghost_map(&a).iter().zip(ghost_map(&b)).map(|(u, v)| u + v).collect::<Vec<_>>());
    println!("ghost(a + b)        = {:?}", ghost_map(&c));

    let f = WittVector::new(p, vec![LaurentSeries::monomial(p, 1, -2), LaurentSeries::zero(p)])?;
    let g = wp(&f)?;
    println!("F(f) - f = ({})", g.components().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
    Ok(())
}
