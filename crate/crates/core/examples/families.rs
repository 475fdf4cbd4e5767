//! The constructors for the standard families of weighted Lie algebroids.

use weighted_algebroids::families::{
    aff1_action, algebroid_prolongation, cotangent_prolongation, e3_graded_bundle,
    tangent_graded_bundle,
};
use weighted_algebroids::{AlgebroidSpec, BlockDecl};

fn show(spec: &AlgebroidSpec) {
    println!(
        "== {} (degree {}, {} generators, d² = 0: {})",
        spec.name(),
        spec.degree(),
        spec.table().len(),
        spec.is_homological().passed()
    );
    for (g, e) in spec.ce_differential().images() {
        if !e.is_zero() {
            println!("  d {} = {e}", spec.table().generator(g).label());
        }
    }
}

fn main() -> weighted_algebroids::Result<()> {
    let a = aff1_action();
    show(&a);
    // the adjoint VB-algebroid T*A
    show(&cotangent_prolongation(&a)?);
    show(&tangent_graded_bundle("tf", &e3_graded_bundle())?);
    show(&algebroid_prolongation(
        &a,
        &[BlockDecl::base("x", 2), BlockDecl::even("z", 1, 1), BlockDecl::even("u", 2, 1)],
    )?);
    Ok(())
}
