//! Canonical divisor, genus and h^0(nK) of stacky curves read from JSON.

use wittstack::arith::rational::fmt_rat;
use wittstack::stacky::{canonical_divisor, divisor_degree, genus, hilbert_table, parse_curve_spec};

fn main() -> wittstack::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    for (name, log) in [("asw_p3_m1.json", false), ("p23_log.json", true), ("xp7_char3.json", false)] {
        let src = std::fs::read_to_string(format!("{dir}/{name}")).expect("example data");
        let c = parse_curve_spec(&src)?;
        let k = canonical_divisor(&c);
        let table: Vec<String> = hilbert_table(&c, 8, log)?.iter().map(|v| v.to_string()).collect();
        println!("{name}");
        println!("  K = {k}, deg K = {}", fmt_rat(&divisor_degree(&k)));
        println!("  genus {}", fmt_rat(&genus(&c)));
        println!("  h0 {}: {}", if log { "(log)" } else { "" }, table.join(" "));
    }
    Ok(())
}
