//! The modules W^(i,j) and the A-modules Ω^(i,•) of the degree-2 example.

use weighted_algebroids::families;
use weighted_algebroids::weight_modules::{dim_w, module_differential, subcomplex_check, w_basis};

fn main() {
    let e7 = families::e7();
    for i in 1..=e7.degree() {
        for j in 0..=i {
            let basis = w_basis(&e7, i, j);
            println!("W^({i},{j})  dim {:>2}  {}", dim_w(&e7, i, j), basis.labels().join(" "));
        }
    }

    let md = module_differential(&e7, 1);
    println!("\nd_E on the weight-1 basis:");
    for w in md.basis() {
        println!("  d {} = {}", w.render(e7.table()), md.images[w]);
    }

    for i in 0..=2 {
        let cert = subcomplex_check(&e7, i, 2);
        println!(
            "Ω^({i},•) closed under d_E: {} ({} monomials)",
            cert.passed(),
            cert.monomials_checked
        );
    }
}
