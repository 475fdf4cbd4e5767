//! The `.spec` format: parse, print, convert to tables and back, and the
//! diagnostics for bad input.

use weighted_algebroids::dsl::SpecDocument;

const SOURCE: &str = "
# aff(1) acting on the plane
algebroid aff1_action degree 0
base x weight 0 dim 2
odd  y weight 0 dim 2

d x[1] = x[1]*y[1]
d x[2] = y[2] + x[2]*y[1]
d y[2] = y[1]*y[2]
";

fn main() {
    let doc = SpecDocument::parse(SOURCE).expect("valid document");
    let spec = doc.to_spec().expect("weights are consistent");
    print!("{}", doc.print());

    let tables = SpecDocument::tables_from_spec(&spec);
    println!("\n-- as tables --");
    print!("{}", tables.print());
    let back = tables.to_spec().unwrap();
    println!("same differential: {}", back.ce_differential() == spec.ce_differential());

    println!("\n-- diagnostics --");
    for bad in [
        "",
        "algebroid t degree 0\nodd y weight 0 dim 1\nd q[1] = y[1]",
        "algebroid t degree 0\nbase x weight 0 dim 1\nodd y weight 0 dim 1\nd x[1] = y[1] +",
        "algebroid t degree 0\nbase x weight 0 dim 1\nodd y weight 0 dim 1\nd y[1] = x[1]",
    ] {
        let err = SpecDocument::parse(bad).and_then(|d| d.to_spec()).unwrap_err();
        println!("{err}");
    }
}
