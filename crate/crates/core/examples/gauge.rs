//! A unipotent gauge transformation changes the higher components of the
//! superconnection but leaves ∂ = D_0 and flatness alone.

use std::collections::BTreeMap;

use weighted_algebroids::families;
use weighted_algebroids::superconnection::{apply_gauge, extract_components, GaugeTransformation};
use weighted_algebroids::weight_modules::{w_basis, ModuleElement};
use weighted_algebroids::Element;

fn main() -> weighted_algebroids::Result<()> {
    let e7 = families::e7();
    let t = e7.table().clone();
    let c = extract_components(&e7, 2)?;

    // φ_1(v) = x1 y2 · z1², φ_2(w1 w2) = y1 y2 · u
    let v = w_basis(&e7, 2, 1).basis.iter().find(|m| m.render(&t) == "v[1]").unwrap().clone();
    let ww = w_basis(&e7, 2, 2).basis[0].clone();
    let z1sq = w_basis(&e7, 2, 0).basis.iter().find(|m| m.render(&t) == "z[1]^2").unwrap().clone();
    let u = w_basis(&e7, 2, 0).basis.iter().find(|m| m.render(&t) == "u[1]").unwrap().clone();

    let mut phi1 = ModuleElement::zero(&t);
    phi1.add_term(z1sq, &Element::parse(&t, "x[1]*y[2]")?);
    let mut phi2 = ModuleElement::zero(&t);
    phi2.add_term(u, &Element::parse(&t, "y[1]*y[2]")?);
    let blocks = BTreeMap::from([
        (1, BTreeMap::from([(v.clone(), phi1)])),
        (2, BTreeMap::from([(ww, phi2)])),
    ]);
    let phi = GaugeTransformation::new(&t, 2, blocks)?;

    let moved = apply_gauge(&c, &phi)?;
    println!("D_1(v) before: {}", c.get(1, &v));
    println!("D_1(v) after:  {}", moved.get(1, &v));
    println!("D_0 unchanged: {}", moved.block(0) == c.block(0));
    println!("still flat:    {}", moved.flatness_cascade().passed());
    println!("φ∘φ⁻¹ = id:    {}", phi.compose(&phi.inverse()).is_identity());
    Ok(())
}
