//! Graded derivations: define one on generators, apply it, and test d² = 0.

use weighted_algebroids::{BlockDecl, Derivation, Element, GeneratorTable};

fn main() -> weighted_algebroids::Result<()> {
    // de Rham differential on the plane
    let t = GeneratorTable::new(&[BlockDecl::base("x", 2), BlockDecl::odd("dx", 0, 2)])?;
    let x = |i| t.lookup("x", i).unwrap();
    let d = Derivation::new(
        &t,
        (0, 1),
        [
            (x(1), Element::var(&t, "dx", 1)),
            (x(2), Element::var(&t, "dx", 2)),
        ],
    )?;

    let f = Element::parse(&t, "x[1]^2*x[2] + 3*x[2]")?;
    let df = d.apply(&f)?;
    println!("f    = {f}");
    println!("df   = {df}");
    println!("ddf  = {}", d.apply(&df)?);
    println!("d homological: {}", d.is_homological()?.passed());

    // [d, d] = 2 d², so it vanishes here
    println!("[d,d] zero: {}", d.graded_commutator(&d)?.is_zero());
    Ok(())
}
