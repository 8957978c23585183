//! Boundary divisors of the compactified Witt tower in the basis Sigma_1, ..., Sigma_n.

use wittstack::garuti::{boundary, boundary_closed_form, pull_psi};

fn main() -> wittstack::Result<()> {
    for p in [2u64, 3] {
        for n in 1..=4 {
            let b = boundary(n, p)?;
            assert_eq!(b, boundary_closed_form(n, p)?);
            println!("p = {p}, B_{n} = {b}   Psi^* B_{n} = {}", pull_psi(&b, p));
        }
    }
    Ok(())
}
