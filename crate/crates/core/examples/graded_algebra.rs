//! Bi-graded polynomial algebra: parsing, signs, weights and the h-pullback.
//!
//! ```text
//! cargo run --example graded_algebra
//! ```

use weighted_algebroids::algebra::q;
use weighted_algebroids::{BlockDecl, Element, GeneratorTable};

fn main() -> weighted_algebroids::Result<()> {
    let table = GeneratorTable::new(&[
        BlockDecl::base("x", 2),
        BlockDecl::even("z", 1, 2),
        BlockDecl::odd("y", 0, 2),
        BlockDecl::odd("w", 1, 1),
    ])?;

    let a = Element::parse(&table, "x[1]*y[1] + z[2]*w[1]")?;
    let b = Element::parse(&table, "y[2] - 1/2*x[2]*w[1]")?;
    println!("a      = {a}");
    println!("b      = {b}");
    println!("a*b    = {}", &a * &b);
    println!("b*a    = {}", &b * &a);

    let w1 = Element::var(&table, "w", 1);
    println!("w1*w1  = {}", &w1 * &w1);

    for bw in (&a * &b).bi_weights() {
        println!("bi-weight present: {bw}");
    }

    // h_t scales each monomial by t^weight
    let e = Element::parse(&table, "z[1]^2 + x[1]*z[2] + y[1]")?;
    println!("h_2(e) = {}", e.h_pullback(&q(2, 1)));
    println!("P_1(e) = {}", e.weight_component(1));
    Ok(())
}
