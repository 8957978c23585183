//! Upper and lower numbering, Herbrand's function, and filtrations with a tame part.

use wittstack::arith::rational::{fmt_rat, int, rat};
use wittstack::ramification::{
    filtration_from_upper, lower_to_upper, phi_from_filtration, upper_to_lower, validate_filtration, Filtration,
};

fn show(v: &[wittstack::arith::BigRat]) -> String {
    v.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
}

fn main() -> wittstack::Result<()> {
    let up = [int(2), int(6)];
    let low = upper_to_lower(&up, 1, 3)?;
    println!("upper ({}) -> lower ({})", show(&up), show(&low));
    println!("back: ({})", show(&lower_to_upper(&low, 1, 3)?));

    let f = filtration_from_upper(&up, 1, 3)?;
    println!("filtration {f}");
    println!("ramification sum {}", f.ramification_sum());

    let s3 = filtration_from_upper(&[rat(1, 2)], 2, 3)?;
    let phi = phi_from_filtration(&s3);
    println!("S_3 point: {s3}, breakpoints ({}), slopes ({})", show(phi.breakpoints()), show(phi.slopes()));

    let bad = Filtration::new(vec![12, 4, 2, 1], 3, 2)?;
    for v in validate_filtration(&bad) {
        println!("{bad}: {v}");
    }
    Ok(())
}
