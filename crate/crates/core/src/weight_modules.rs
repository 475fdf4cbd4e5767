//! Weight decomposition of the Chevalley–Eilenberg complex.
//!
//! `Ω^(i,•)(E)` is the span of monomials of h-weight `i`. Every monomial
//! factors uniquely (and sign-free, since weight-zero odd generators come first
//! in the canonical order) as a weight-zero part in `x, y` times a monomial in
//! positive-weight generators. The latter span `W^(i,j)(E)`, the quotient of
//! `Ω^(i,j)` by the ideal generated by the weight-zero odd generators.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{BiWeight, Element, GenId, GeneratorKind, GeneratorTable, Monomial, Rational};
use crate::algebroid::AlgebroidSpec;
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;

/// Default cap on the polynomial degree in base coordinates.
pub const DEFAULT_CAP: u32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightModuleBasis {
    pub i: u32,
    pub j: u32,
    pub basis: Vec<Monomial>,
    table: Arc<GeneratorTable>,
}

impl WeightModuleBasis {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.basis.iter().position(|b| b == m)
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(|m| m.render(&self.table)).collect()
    }
}

fn positive_generators(table: &GeneratorTable) -> Vec<GenId> {
    table.ids_where(|g| g.weight > 0)
}

pub(crate) fn is_weight_zero(table: &GeneratorTable, g: GenId) -> bool {
    table.generator(g).weight == 0
}

fn graded_lex(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| a.cmp(b))
}

/// Monomials in positive-weight generators of bi-weight `(i, j)`.
pub fn w_basis_of_table(table: &Arc<GeneratorTable>, i: u32, j: u32) -> WeightModuleBasis {
    let gens = positive_generators(table);
    let mut out = Vec::new();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    enumerate(table, &gens, 0, i, j, &mut even, &mut odd, &mut out);
    out.sort_by(graded_lex);
    WeightModuleBasis {
        i,
        j,
        basis: out,
        table: table.clone(),
    }
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    table: &GeneratorTable,
    gens: &[GenId],
    at: usize,
    weight: u32,
    odd_left: u32,
    even: &mut Vec<(GenId, u32)>,
    odd: &mut Vec<GenId>,
    out: &mut Vec<Monomial>,
) {
    if weight == 0 && odd_left == 0 {
        let (negative, m) = Monomial::from_factors(even, odd).expect("distinct odd factors");
        debug_assert!(!negative);
        out.push(m);
        return;
    }
    if at == gens.len() {
        return;
    }
    let g = gens[at];
    let gen = table.generator(g);
    let u = gen.weight;
    if gen.is_odd() {
        enumerate(table, gens, at + 1, weight, odd_left, even, odd, out);
        if odd_left > 0 && u <= weight {
            odd.push(g);
            enumerate(table, gens, at + 1, weight - u, odd_left - 1, even, odd, out);
            odd.pop();
        }
    } else {
        enumerate(table, gens, at + 1, weight, odd_left, even, odd, out);
        for e in 1..=weight / u {
            even.push((g, e));
            enumerate(table, gens, at + 1, weight - e * u, odd_left, even, odd, out);
            even.pop();
        }
    }
}

pub fn w_basis(spec: &AlgebroidSpec, i: u32, j: u32) -> WeightModuleBasis {
    w_basis_of_table(spec.table(), i, j)
}

fn choose(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

fn multichoose(n: u128, k: u128) -> u128 {
    if n == 0 {
        return (k == 0) as u128;
    }
    choose(n + k - 1, k)
}

/// Closed-form `dim W^(i,j)`: sum over `(l_u, m_u)` with `Σ u(l_u+m_u) = i` and
/// `Σ m_u = j` of `Π multichoose(dim B̄_u, l_u) · choose(dim C_u, m_u)`.
pub fn dim_w_of_table(table: &GeneratorTable, i: u32, j: u32) -> u128 {
    let k = table.degree().max(1);
    let mut b = vec![0u128; k as usize + 1];
    let mut c = vec![0u128; k as usize + 1];
    for block in table.blocks() {
        let d = &block.decl;
        if d.weight == 0 {
            continue;
        }
        match d.kind {
            GeneratorKind::EvenFiber => b[d.weight as usize] += d.dim as u128,
            GeneratorKind::OddFiber => c[d.weight as usize] += d.dim as u128,
            GeneratorKind::Base => {}
        }
    }
    fn go(u: usize, weight: u32, odd: u32, b: &[u128], c: &[u128]) -> u128 {
        if weight == 0 && odd == 0 {
            return 1;
        }
        if u >= b.len() {
            return 0;
        }
        let mut total = 0;
        let w = u as u32;
        for l in 0..=weight / w {
            for m in 0..=odd.min((weight - l * w) / w) {
                let factor = multichoose(b[u], l as u128) * choose(c[u], m as u128);
                if factor == 0 {
                    continue;
                }
                total += factor * go(u + 1, weight - (l + m) * w, odd - m, b, c);
            }
        }
        total
    }
    if i == 0 {
        return (j == 0) as u128;
    }
    go(1, i, j, &b, &c)
}

pub fn dim_w(spec: &AlgebroidSpec, i: u32, j: u32) -> u128 {
    dim_w_of_table(spec.table(), i, j)
}

/// An element of `Ω^(i,•)` written as `Σ c_w · w` with `w` a W-monomial and
/// `c_w` a form in `x, y` only.
#[derive(Clone, PartialEq)]
pub struct ModuleElement {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, Element>,
}

impl ModuleElement {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        ModuleElement {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(table: &Arc<GeneratorTable>, w: &Monomial) -> Self {
        let mut out = Self::zero(table);
        out.add_term(w.clone(), &Element::one(table));
        out
    }

    pub fn from_element(e: &Element) -> Self {
        let table = e.table().clone();
        let mut out = Self::zero(&table);
        for (m, c) in e.terms() {
            let (negative, left, right) = m.split(|g| is_weight_zero(&table, g));
            let c = if negative { -c.clone() } else { c.clone() };
            out.add_term(right, &Element::monomial(&table, left, c));
        }
        out
    }

    pub fn to_element(&self) -> Element {
        let mut out = Element::zero(&self.table);
        for (w, c) in &self.terms {
            out += &(c * &Element::monomial(&self.table, w.clone(), Rational::one()));
        }
        out
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Element)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Monomial) -> Element {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| Element::zero(&self.table))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Monomial, c: &Element) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(w)
            .or_insert_with(|| Element::zero(&self.table));
        *entry += c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn add(&mut self, other: &ModuleElement) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c);
        }
    }

    pub fn scale(&self, r: &Rational) -> ModuleElement {
        let mut out = Self::zero(&self.table);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.scale(r));
        }
        out
    }

    /// `c · self`, with `c` a form in `x, y`.
    pub fn left_multiply(&self, c: &Element) -> ModuleElement {
        let mut out = Self::zero(&self.table);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), &(c * a));
        }
        out
    }

    /// Keep the coefficient parts with exactly `p` odd factors.
    pub fn form_part(&self, p: u32) -> ModuleElement {
        let mut out = Self::zero(&self.table);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.form_component(p));
        }
        out
    }

    /// Largest number of odd factors in a coefficient.
    pub fn max_form_degree(&self) -> Option<u32> {
        self.terms
            .values()
            .flat_map(|c| c.terms().map(|(m, _)| m.form_degree()))
            .max()
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({c})·{}", w.render(&self.table)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleElement({self})")
    }
}

/// `d_E` on the W-basis of weight `i`, with `Ω(A)`-valued coefficients.
#[derive(Debug, Clone)]
pub struct ModuleDifferential {
    pub i: u32,
    pub sectors: Vec<WeightModuleBasis>,
    pub images: BTreeMap<Monomial, ModuleElement>,
}

impl ModuleDifferential {
    pub fn basis(&self) -> impl Iterator<Item = &Monomial> {
        self.sectors.iter().flat_map(|s| s.basis.iter())
    }
}

pub fn module_differential(spec: &AlgebroidSpec, i: u32) -> ModuleDifferential {
    let sectors: Vec<_> = (0..=i).map(|j| w_basis(spec, i, j)).collect();
    let d = spec.ce_differential();
    let table = spec.table();
    let mut images = BTreeMap::new();
    for w in sectors.iter().flat_map(|s| s.basis.iter()) {
        let e = Element::monomial(table, w.clone(), Rational::one());
        images.insert(w.clone(), ModuleElement::from_element(&d.act(&e)));
    }
    ModuleDifferential { i, sectors, images }
}

/// All monomials in base generators of total degree at most `cap`.
fn base_monomials(table: &GeneratorTable, cap: u32) -> Vec<Monomial> {
    let base = table.ids_where(|g| g.kind == GeneratorKind::Base);
    let mut out = vec![Vec::new()];
    for &g in &base {
        let mut next = Vec::new();
        for partial in &out {
            let used: u32 = partial.iter().map(|(_, e): &(GenId, u32)| *e).sum();
            next.push(partial.clone());
            for e in 1..=cap - used {
                let mut p = partial.clone();
                p.push((g, e));
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|even| Monomial::from_factors(&even, &[]).unwrap().1)
        .collect()
}

fn subsets(items: &[GenId], size: usize) -> Vec<Vec<GenId>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if items.len() < size {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (n, &g) in items.iter().enumerate() {
        for mut rest in subsets(&items[n + 1..], size - 1) {
            rest.insert(0, g);
            out.push(rest);
        }
    }
    out
}

/// Basis of `Ω^(i,j)` truncated to base-polynomial degree `cap`.
pub fn omega_basis(table: &Arc<GeneratorTable>, i: u32, j: u32, cap: u32) -> Vec<Monomial> {
    let ys = table.ids_where(|g| g.is_odd() && g.weight == 0);
    let xs = base_monomials(table, cap);
    let mut out = Vec::new();
    for jw in 0..=j.min(i) {
        let w = w_basis_of_table(table, i, jw);
        if w.is_empty() {
            continue;
        }
        for s in subsets(&ys, (j - jw) as usize) {
            let (_, ym) = Monomial::from_factors(&[], &s).unwrap();
            for wm in &w.basis {
                for xm in &xs {
                    let (_, a) = xm.mul(&ym).unwrap();
                    let (_, m) = a.mul(wm).unwrap();
                    out.push(m);
                }
            }
        }
    }
    out.sort_by(graded_lex);
    out
}

/// Highest form degree that can occur in weight `i`.
pub fn max_form_degree(table: &GeneratorTable, i: u32) -> u32 {
    let rank = table.ids_where(|g| g.is_odd() && g.weight == 0).len() as u32;
    let positive_odd = table.ids_where(|g| g.is_odd() && g.weight > 0).len() as u32;
    rank + i.min(positive_odd)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubcomplexCertificate {
    pub i: u32,
    pub cap: u32,
    pub monomials_checked: usize,
    /// Labels of monomials whose image left weight `i`.
    pub violations: Vec<String>,
}

impl SubcomplexCertificate {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Re-verifies that `d_E` keeps `Ω^(i,•)` inside weight `i` on every spanning
/// monomial up to the cap.
pub fn subcomplex_check(spec: &AlgebroidSpec, i: u32, cap: u32) -> SubcomplexCertificate {
    let table = spec.table();
    let d = spec.ce_differential();
    let mut checked = 0;
    let mut violations = Vec::new();
    for j in 0..=max_form_degree(table, i) {
        for m in omega_basis(table, i, j, cap) {
            checked += 1;
            let image = d.act(&Element::monomial(table, m.clone(), Rational::one()));
            if !image.is_homogeneous_of_weight(i) || !image.is_bi_homogeneous_of(BiWeight::new(i, j + 1))
            {
                violations.push(m.render(table));
            }
        }
    }
    SubcomplexCertificate {
        i,
        cap,
        monomials_checked: checked,
        violations,
    }
}

/// `d_E : Ω^(i,j) → Ω^(i,j+1)` on the capped monomial bases.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedMatrix {
    pub i: u32,
    pub j: u32,
    pub cap: u32,
    pub source: Vec<Monomial>,
    pub target: Vec<Monomial>,
    pub matrix: SparseMatrix,
}

pub fn induced_differential_matrix(
    spec: &AlgebroidSpec,
    i: u32,
    j: u32,
    cap: u32,
) -> Result<InducedMatrix> {
    let table = spec.table();
    let source = omega_basis(table, i, j, cap);
    let target = omega_basis(table, i, j + 1, cap);
    let index: BTreeMap<&Monomial, usize> = target.iter().enumerate().map(|(n, m)| (m, n)).collect();
    let d = spec.ce_differential();
    let mut columns = Vec::with_capacity(source.len());
    for m in &source {
        let image = d.act(&Element::monomial(table, m.clone(), Rational::one()));
        let mut col = BTreeMap::new();
        for (t, c) in image.terms() {
            match index.get(t) {
                Some(&r) => {
                    col.insert(r, c.clone());
                }
                None => {
                    return Err(Error::CapTooSmall {
                        cap,
                        witness: format!(
                            "d({}) contains {} outside the capped span",
                            m.render(table),
                            t.render(table)
                        ),
                    })
                }
            }
        }
        columns.push(col);
    }
    Ok(InducedMatrix {
        i,
        j,
        cap,
        matrix: SparseMatrix::from_columns(target.len(), columns),
        source,
        target,
    })
}

/// `P_k`: the weight-`k` homogeneous part.
pub fn homogenization_projector(e: &Element, k: u32) -> Element {
    e.weight_component(k)
}

/// `P_k(e) = (1/k!) d^k/dt^k|_{t=0} h_t^* e`, computed by sampling `h_t^* e`
/// at `t = 0..=N` and reading the `t^k` coefficient of the interpolating
/// polynomial exactly.
pub fn homogenization_projector_by_derivative(e: &Element, k: u32) -> Element {
    let n = e.max_weight().unwrap_or(0);
    if k > n {
        return Element::zero(e.table());
    }
    let nodes: Vec<Rational> = (0..=n).map(|t| Rational::from_integer(t.into())).collect();
    let mut out = Element::zero(e.table());
    for (m, tm) in nodes.iter().enumerate() {
        // coefficients of Π_{l≠m} (t − t_l) / (t_m − t_l), lowest degree first
        let mut poly = vec![Rational::one()];
        let mut denom = Rational::one();
        for (l, tl) in nodes.iter().enumerate() {
            if l == m {
                continue;
            }
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * tl;
            }
            poly = next;
            denom *= tm - tl;
        }
        let weight = &poly[k as usize] / &denom;
        if !weight.is_zero() {
            out += &e.h_pullback(tm).scale(&weight);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BlockDecl;

    fn e3() -> Arc<GeneratorTable> {
        GeneratorTable::new(&[
            BlockDecl::base("x", 2),
            BlockDecl::even("z", 1, 3),
            BlockDecl::even("u", 2, 1),
            BlockDecl::odd("y", 0, 2),
            BlockDecl::odd("w", 1, 2),
            BlockDecl::odd("v", 2, 1),
        ])
        .unwrap()
    }

    #[test]
    fn e3_bases() {
        let t = e3();
        assert_eq!(w_basis_of_table(&t, 1, 0).labels(), ["z[1]", "z[2]", "z[3]"]);
        assert_eq!(w_basis_of_table(&t, 2, 2).labels(), ["w[1]*w[2]"]);
        let dims: Vec<usize> = [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]
            .iter()
            .map(|&(i, j)| w_basis_of_table(&t, i, j).len())
            .collect();
        assert_eq!(dims, [3, 2, 7, 7, 1]);
        assert!(w_basis_of_table(&t, 2, 3).is_empty());
    }

    #[test]
    fn closed_form_matches_enumeration() {
        let t = e3();
        for i in 0..=5 {
            for j in 0..=6 {
                assert_eq!(
                    dim_w_of_table(&t, i, j),
                    w_basis_of_table(&t, i, j).len() as u128,
                    "({i},{j})"
                );
            }
        }
    }

    #[test]
    fn module_split_round_trips() {
        let t = e3();
        let e = Element::parse(&t, "x[1]*w[1]*y[2]*z[1] - 3*y[1]*v[1] + u[1]").unwrap();
        let m = ModuleElement::from_element(&e);
        assert_eq!(m.to_element(), e);
        let w1 = Monomial::generator(&t, t.lookup("w", 1).unwrap());
        let z1 = Monomial::generator(&t, t.lookup("z", 1).unwrap());
        let (_, zw) = z1.mul(&w1).unwrap();
        assert_eq!(m.coefficient(&zw), Element::parse(&t, "-x[1]*y[2]").unwrap());
    }

    #[test]
    fn projector_routes_agree() {
        let t = e3();
        let e = Element::parse(&t, "x[1] + z[1]*y[1] + u[1]*v[1] + z[2]^3 - 1/2*w[1]*w[2]").unwrap();
        for k in 0..=7 {
            assert_eq!(
                homogenization_projector(&e, k),
                homogenization_projector_by_derivative(&e, k),
                "k = {k}"
            );
        }
        assert_eq!(
            homogenization_projector(&Element::parse(&t, "z[1] + u[1]").unwrap(), 1),
            Element::var(&t, "z", 1)
        );
    }

    #[test]
    fn capped_bases_count() {
        let t = GeneratorTable::new(&[BlockDecl::base("x", 1), BlockDecl::odd("y", 0, 1)]).unwrap();
        assert_eq!(omega_basis(&t, 0, 0, 3).len(), 4);
        assert_eq!(omega_basis(&t, 0, 1, 3).len(), 4);
        assert!(omega_basis(&t, 0, 2, 3).is_empty());
    }
}
