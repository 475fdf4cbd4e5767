//! Betti numbers of Ω^(i,•). Exact over a point, truncated when a base is
//! present.

use weighted_algebroids::cohomology::{betti, build_complex};
use weighted_algebroids::families;

fn main() -> weighted_algebroids::Result<()> {
    let cases = [
        (families::abelian(2), 0, 0),
        (families::aff1(), 0, 0),
        (families::sl2(), 0, 0),
        (families::aff1_core(), 0, 0),
        (families::aff1_core(), 1, 0),
        (families::tangent_algebroid(1), 0, 4),
    ];
    for (spec, i, cap) in cases {
        let report = betti(&build_complex(&spec, i, cap)?);
        println!(
            "{:<10} i={i}  dims {:?}  betti {:?}{}",
            spec.name(),
            report.dims,
            report.betti,
            if report.truncated { format!("  (truncated at degree {cap})") } else { String::new() }
        );
    }

    match build_complex(&families::e7(), 1, 2) {
        Err(e) => println!("e7: {e}"),
        Ok(_) => unreachable!("a quadratic coordinate change cannot close at cap 2"),
    }
    Ok(())
}
