//! Quotients of Z/p^n covers of P^1: branch data, canonical divisor, genus.

use wittstack::arith::rational::fmt_rat;
use wittstack::cover::{analyze_cover, branch_places, quotient_report, CoverSpec};

fn main() -> wittstack::Result<()> {
    let spec = CoverSpec::parse(3, 2, "1/(x*(x-1)), x^2", None)?;
    println!("branch places {:?}", branch_places(&spec)?);
    for b in analyze_cover(&spec)?.branch {
        println!("  {} upper {:?} lower {:?}", b.label, b.upper_jumps, b.filtration.lower_jumps());
    }

    for m in [1u64, 2, 4] {
        let r = quotient_report(&CoverSpec::parse(3, 2, &format!("x^-{m}, 0"), None)?, 4)?;
        println!("(x^-{m}, 0): K = {}, genus {}", r.canonical, fmt_rat(&r.genus));
        if let Some(c) = r.reference {
            println!(
                "  reference jumps {:?} vs {:?}: {}",
                c.reference_lower_jumps,
                c.derived_lower_jumps,
                if c.agree { "agree" } else { "disagree" }
            );
        }
    }
    Ok(())
}
