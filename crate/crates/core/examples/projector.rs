//! Homogenisation projectors, computed by extraction and by the derivative
//! formula P_k = (1/k!) d^k/dt^k h_t |_{t=0}.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weighted_algebroids::families;
use weighted_algebroids::weight_modules::{
    homogenization_projector, homogenization_projector_by_derivative,
};
use weighted_algebroids::Element;

fn main() {
    let e7 = families::e7();
    let table = e7.table();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let gens: Vec<_> = table.ids().collect();
    let mut e = Element::zero(table);
    for _ in 0..4 {
        let a = Element::generator(table, gens[rng.gen_range(0..gens.len())]);
        let b = Element::generator(table, gens[rng.gen_range(0..gens.len())]);
        e += &(&a * &b);
    }
    println!("e = {e}");
    for k in 0..=e.max_weight().unwrap_or(0) {
        let p = homogenization_projector(&e, k);
        let q = homogenization_projector_by_derivative(&e, k);
        println!("P_{k}(e) = {p}   (routes agree: {})", p == q);
    }
    let d = e7.ce_differential();
    let lhs = homogenization_projector(&d.apply(&e).unwrap(), 2);
    let rhs = d.apply(&homogenization_projector(&e, 2)).unwrap();
    println!("P_2 d = d P_2: {}", lhs == rhs);
}
