//! Lower jump of y^p - y = t^-m read off the Galois action on a uniformizer.

use wittstack::asw::{as_lower_jump_oracle, upper_jumps, LocalWitt};

fn main() -> wittstack::Result<()> {
    for p in [2u64, 3, 5] {
        for m in (1..=7u64).filter(|m| m % p != 0) {
            let lower = as_lower_jump_oracle(p, m, 8 * m as i64 + 16)?;
            let x = LocalWitt::monomials(p, &[Some((1, -(m as i64)))])?;
            println!("p = {p}, m = {m}: lower jump {lower}, upper jump {:?}", upper_jumps(&x)?);
        }
    }
    Ok(())
}
