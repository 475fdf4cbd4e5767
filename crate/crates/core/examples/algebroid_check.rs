//! Build algebroids from structure tables, then check them both ways:
//! the structure equations directly, and d_E² = 0.

use weighted_algebroids::algebroid::{AnchorEntry, BracketEntry};
use weighted_algebroids::families;
use weighted_algebroids::{AlgebroidSpec, BlockDecl, Element, GeneratorTable};

fn report(spec: &AlgebroidSpec) {
    let structure = spec.check_structure_equations();
    println!(
        "{:<14} structure equations: {:<5} d² = 0: {}",
        spec.name(),
        structure.passed(),
        spec.is_homological().passed()
    );
    for r in &structure.residuals {
        println!("    {} = {}", r.label(spec.table()), r.value);
    }
}

fn main() -> weighted_algebroids::Result<()> {
    // aff(1) acting on the line by ∂ and x∂
    let t = GeneratorTable::new(&[BlockDecl::base("x", 1), BlockDecl::odd("y", 0, 2)])?;
    let id = |s: &str| t.lookup_label(s).unwrap();
    let el = |s: &str| Element::parse(&t, s).unwrap();
    let anchors = [
        AnchorEntry { odd: id("y[1]"), even: id("x[1]"), value: el("1") },
        AnchorEntry { odd: id("y[2]"), even: id("x[1]"), value: el("x[1]") },
    ];
    let bracket = |v: &str| BracketEntry {
        left: id("y[1]"),
        right: id("y[2]"),
        target: id("y[1]"),
        value: el(v),
    };
    report(&AlgebroidSpec::from_tables("aff1_line", &t, &anchors, &[bracket("1")])?);
    // wrong bracket constant: the anchor is no longer a morphism
    report(&AlgebroidSpec::from_tables("aff1_line_bad", &t, &anchors, &[bracket("2")])?);

    report(&families::sl2());
    report(&families::broken());

    let e7 = families::e7();
    report(&e7);
    println!("\nunderlying algebroid of e7:");
    for (g, image) in e7.degree_zero_restriction().ce_differential().images() {
        println!("  d {} = {image}", e7.degree_zero_restriction().table().generator(g).label());
    }
    Ok(())
}
