//! Split d_E on a weight module into ∂ = D_0, the connection D_1 and the
//! higher homotopies, then verify the flatness cascade.

use weighted_algebroids::families;
use weighted_algebroids::superconnection::extract_components;

fn main() -> weighted_algebroids::Result<()> {
    for (spec, i) in [(families::adjoint(), 1), (families::e7(), 1), (families::e7(), 2)] {
        let c = extract_components(&spec, i)?;
        println!("== {} weight {i}", spec.name());
        for p in c.levels() {
            for w in c.basis() {
                let v = c.get(p, w);
                if !v.is_zero() {
                    println!("  D_{p}({}) = {v}", w.render(spec.table()));
                }
            }
        }
        let cascade = c.flatness_cascade();
        println!(
            "  cascade over {} levels: {}, reassembles: {}",
            cascade.levels,
            if cascade.passed() { "flat" } else { "NOT flat" },
            c.reassembles(&spec)
        );
    }
    Ok(())
}
