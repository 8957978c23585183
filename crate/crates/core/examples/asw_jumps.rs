//! Reduction of local Artin-Schreier-Witt vectors and their upper ramification jumps.

use wittstack::asw::{asw_reduce, is_admissible, upper_jumps, LocalWitt};

fn main() -> wittstack::Result<()> {
    for (p, j) in [(2u64, 3i64), (3, 2), (5, 4)] {
        let x = LocalWitt::monomials(p, &[Some((1, -j)), None])?;
        println!("p = {p}: (t^-{j}, 0) has upper jumps {:?}", upper_jumps(&x)?);
    }

    // a pole of order divisible by p is removed first
    let x = LocalWitt::parse(3, "t^-9 + t^-2, t^-1", 64)?;
    let r = asw_reduce(&x)?;
    for s in &r.steps {
        println!("  {s}");
    }
    println!("reduced pole orders {:?}", r.pole_orders);
    println!("upper jumps {:?}", upper_jumps(&x)?);

    for u in [[1u64, 3], [1, 4], [2, 5]] {
        println!("{u:?} admissible for p = 3: {}", is_admissible(&u, 3));
    }
    Ok(())
}
