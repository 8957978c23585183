//! Minimal generators of canonical rings of stacky P^1s.

use wittstack::stacky::{canring_generators, models, section_dimensions};

fn main() -> wittstack::Result<()> {
    let p23 = models::weighted_p23(0, true)?;
    println!("P(2,3), log: {:?}", canring_generators(&p23, 24, true)?);
    println!("  dims {:?}", section_dimensions(&p23, 12, true)?);

    for level in [7u64, 11, 13] {
        let c = models::xp_psl2_char3(level)?;
        println!("level {level}, char 3: {:?}", canring_generators(&c, level as usize + 6, false)?);
    }
    Ok(())
}
