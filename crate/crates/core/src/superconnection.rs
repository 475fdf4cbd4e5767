//! Representation-up-to-homotopy data of a weight module.
//!
//! On the W-basis of weight `i`, `d_E(w) = Σ_p D_p(w)` where `D_p(w)` collects
//! the terms whose `Ω(A)` coefficient has form degree `p`. Extended to
//! `Ω(A) ⊗ W` by
//!
//! ```text
//! D_p(c·w) = [p = 1] d_A(c)·w + (−1)^|c| c·D_p(w)
//! ```
//!
//! so `D_0` is the differential `∂`, `D_1` the connection and the rest are the
//! higher homotopies. Gauge transformations are unipotent `Ω(A)`-linear
//! automorphisms `φ = id + Σ_{p≥1} φ_p` with `φ_p(W^(i,j)) ⊂ Ω^p(A) ⊗ W^(i,j−p)`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::One;

use crate::algebra::{Element, GeneratorTable, Monomial, Rational};
use crate::algebroid::AlgebroidSpec;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::weight_modules::{module_differential, ModuleElement};

type Blocks = BTreeMap<u32, BTreeMap<Monomial, ModuleElement>>;

#[derive(Debug, Clone)]
pub struct SuperconnectionComponents {
    pub i: u32,
    table: Arc<GeneratorTable>,
    d_a: Derivation,
    basis: Vec<Monomial>,
    components: Blocks,
}

#[derive(Debug, Clone)]
pub struct CascadeReport {
    /// `(p, basis label, Σ_{a+b=p} D_a D_b (w))` for every nonzero residual.
    pub residuals: Vec<(u32, String, ModuleElement)>,
    pub levels: u32,
}

impl CascadeReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }

    pub fn failing_levels(&self) -> BTreeSet<u32> {
        self.residuals.iter().map(|r| r.0).collect()
    }
}

fn sign_split(c: &Element) -> BTreeMap<u32, Element> {
    let mut out: BTreeMap<u32, Element> = BTreeMap::new();
    for (m, r) in c.terms() {
        out.entry(m.form_degree())
            .or_insert_with(|| Element::zero(c.table()))
            .add_term(m.clone(), r.clone());
    }
    out
}

pub fn extract_components(spec: &AlgebroidSpec, i: u32) -> Result<SuperconnectionComponents> {
    if i < 1 || i > spec.degree() {
        return Err(Error::WeightRange {
            weight: i,
            degree: spec.degree(),
        });
    }
    let md = module_differential(spec, i);
    let basis: Vec<Monomial> = md.basis().cloned().collect();
    let mut components: Blocks = BTreeMap::new();
    for (w, image) in &md.images {
        let top = image.max_form_degree().unwrap_or(0);
        for p in 0..=top {
            let part = image.form_part(p);
            if !part.is_zero() {
                components.entry(p).or_default().insert(w.clone(), part);
            }
        }
    }
    Ok(SuperconnectionComponents {
        i,
        table: spec.table().clone(),
        d_a: spec.ce_differential().clone(),
        basis,
        components,
    })
}

impl SuperconnectionComponents {
    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Levels `p` with a nonzero block.
    pub fn levels(&self) -> Vec<u32> {
        self.components.keys().copied().collect()
    }

    /// `D_p(w)` for a basis monomial.
    pub fn get(&self, p: u32, w: &Monomial) -> ModuleElement {
        self.components
            .get(&p)
            .and_then(|b| b.get(w))
            .cloned()
            .unwrap_or_else(|| ModuleElement::zero(&self.table))
    }

    pub fn block(&self, p: u32) -> Option<&BTreeMap<Monomial, ModuleElement>> {
        self.components.get(&p)
    }

    /// `Σ_p D_p(w)`.
    pub fn total(&self, w: &Monomial) -> ModuleElement {
        let mut out = ModuleElement::zero(&self.table);
        for block in self.components.values() {
            if let Some(v) = block.get(w) {
                out.add(v);
            }
        }
        out
    }

    /// True iff `Σ_p D_p(w) = d_E(w)` for every basis monomial.
    pub fn reassembles(&self, spec: &AlgebroidSpec) -> bool {
        let d = spec.ce_differential();
        self.basis.iter().all(|w| {
            let e = Element::monomial(&self.table, w.clone(), Rational::one());
            self.total(w).to_element() == d.act(&e)
        })
    }

    fn extend(&self, level: Option<u32>, v: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero(&self.table);
        for (w, c) in v.terms() {
            if level.is_none_or(|a| a == 1) {
                out.add_term(w.clone(), &self.d_a.act(c));
            }
            let image = match level {
                Some(a) => self.get(a, w),
                None => self.total(w),
            };
            if image.is_zero() {
                continue;
            }
            for (q, cq) in sign_split(c) {
                let cq = if q % 2 == 1 { -&cq } else { cq };
                out.add(&image.left_multiply(&cq));
            }
        }
        out
    }

    /// `D_a` extended to `Ω(A) ⊗ W`.
    pub fn apply_level(&self, a: u32, v: &ModuleElement) -> ModuleElement {
        self.extend(Some(a), v)
    }

    /// `D = Σ_p D_p` extended to `Ω(A) ⊗ W`.
    pub fn apply(&self, v: &ModuleElement) -> ModuleElement {
        self.extend(None, v)
    }

    pub fn max_level(&self) -> u32 {
        self.components.keys().next_back().copied().unwrap_or(0)
    }

    /// `Σ_{a+b=p} D_a D_b = 0` for every `p`, on every basis monomial.
    pub fn flatness_cascade(&self) -> CascadeReport {
        // D_1 always carries d_A, so level 1 participates even with an empty block.
        let top = self.max_level().max(1);
        let mut residuals = Vec::new();
        for p in 0..=2 * top {
            for w in &self.basis {
                let mut r = ModuleElement::zero(&self.table);
                for b in 0..=p.min(top) {
                    let a = p - b;
                    if a > top {
                        continue;
                    }
                    let inner = self.get(b, w);
                    if inner.is_zero() {
                        continue;
                    }
                    r.add(&self.apply_level(a, &inner));
                }
                if !r.is_zero() {
                    residuals.push((p, w.render(&self.table), r));
                }
            }
        }
        CascadeReport {
            residuals,
            levels: 2 * top + 1,
        }
    }
}

/// Unipotent gauge transformation on the weight-`i` module.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeTransformation {
    pub i: u32,
    table: Arc<GeneratorTable>,
    blocks: Blocks,
}

impl GaugeTransformation {
    pub fn identity(table: &Arc<GeneratorTable>, i: u32) -> Self {
        GaugeTransformation {
            i,
            table: table.clone(),
            blocks: BTreeMap::new(),
        }
    }

    /// `blocks[p][w] = φ_p(w)`; checks that each block raises the `Ω(A)` degree
    /// by exactly `p ≥ 1` and lowers the module degree by `p`.
    pub fn new(table: &Arc<GeneratorTable>, i: u32, blocks: Blocks) -> Result<Self> {
        for (&p, block) in &blocks {
            if p == 0 {
                return Err(Error::GaugeDegree {
                    block: 0,
                    detail: "the degree-0 block is the identity".into(),
                });
            }
            for (w, image) in block {
                let wj = w.form_degree();
                if w.h_weight(table) != i {
                    return Err(Error::GaugeDegree {
                        block: p as usize,
                        detail: format!("{} is not of weight {i}", w.render(table)),
                    });
                }
                for (target, c) in image.terms() {
                    let ok = target.h_weight(table) == i
                        && target.form_degree() + p == wj
                        && c.terms().all(|(m, _)| m.form_degree() == p);
                    if !ok {
                        return Err(Error::GaugeDegree {
                            block: p as usize,
                            detail: format!(
                                "{} ↦ ({c})·{}",
                                w.render(table),
                                target.render(table)
                            ),
                        });
                    }
                }
            }
        }
        let mut blocks = blocks;
        for block in blocks.values_mut() {
            block.retain(|_, v| !v.is_zero());
        }
        blocks.retain(|_, b| !b.is_empty());
        Ok(GaugeTransformation {
            i,
            table: table.clone(),
            blocks,
        })
    }

    pub fn blocks(&self) -> &Blocks {
        &self.blocks
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.is_empty()
    }

    fn support(&self) -> BTreeSet<Monomial> {
        self.blocks.values().flat_map(|b| b.keys().cloned()).collect()
    }

    /// `Σ_p φ_p(w)`.
    fn nilpotent_on_basis(&self, w: &Monomial) -> ModuleElement {
        let mut out = ModuleElement::zero(&self.table);
        for block in self.blocks.values() {
            if let Some(v) = block.get(w) {
                out.add(v);
            }
        }
        out
    }

    fn nilpotent(&self, v: &ModuleElement) -> ModuleElement {
        let mut out = ModuleElement::zero(&self.table);
        for (w, c) in v.terms() {
            out.add(&self.nilpotent_on_basis(w).left_multiply(c));
        }
        out
    }

    pub fn apply(&self, v: &ModuleElement) -> ModuleElement {
        let mut out = v.clone();
        out.add(&self.nilpotent(v));
        out
    }

    fn from_images(
        table: &Arc<GeneratorTable>,
        i: u32,
        images: impl IntoIterator<Item = (Monomial, ModuleElement)>,
    ) -> Self {
        let mut blocks: Blocks = BTreeMap::new();
        for (w, mut image) in images {
            image.add_term(w.clone(), &-&Element::one(table));
            let top = image.max_form_degree().unwrap_or(0);
            for p in 1..=top {
                let part = image.form_part(p);
                if !part.is_zero() {
                    blocks.entry(p).or_default().insert(w.clone(), part);
                }
            }
        }
        GaugeTransformation {
            i,
            table: table.clone(),
            blocks,
        }
    }

    /// `φ⁻¹ = Σ_n (−N)^n`, finite since `N` strictly raises the `Ω(A)` degree.
    pub fn inverse(&self) -> GaugeTransformation {
        let images = self.support().into_iter().map(|w| {
            let mut term = ModuleElement::basis(&self.table, &w);
            let mut sum = term.clone();
            loop {
                term = self.nilpotent(&term).scale(&-Rational::one());
                if term.is_zero() {
                    break;
                }
                sum.add(&term);
            }
            (w, sum)
        });
        Self::from_images(&self.table, self.i, images)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GaugeTransformation) -> GaugeTransformation {
        let mut support = self.support();
        support.extend(other.support());
        let images = support.into_iter().map(|w| {
            let v = other.apply(&ModuleElement::basis(&self.table, &w));
            (w, self.apply(&v))
        });
        Self::from_images(&self.table, self.i, images)
    }
}

/// Components of `φ⁻¹ ∘ D ∘ φ`.
pub fn apply_gauge(
    c: &SuperconnectionComponents,
    phi: &GaugeTransformation,
) -> Result<SuperconnectionComponents> {
    if c.i != phi.i {
        return Err(Error::GaugeDegree {
            block: 0,
            detail: format!("gauge acts on weight {}, module has weight {}", phi.i, c.i),
        });
    }
    let inverse = phi.inverse();
    let mut components: Blocks = BTreeMap::new();
    for w in &c.basis {
        let v = phi.apply(&ModuleElement::basis(&c.table, w));
        let image = inverse.apply(&c.apply(&v));
        let top = image.max_form_degree().unwrap_or(0);
        for p in 0..=top {
            let part = image.form_part(p);
            if !part.is_zero() {
                components.entry(p).or_default().insert(w.clone(), part);
            }
        }
    }
    Ok(SuperconnectionComponents {
        components,
        ..c.clone()
    })
}

impl PartialEq for SuperconnectionComponents {
    fn eq(&self, other: &Self) -> bool {
        self.i == other.i && self.basis == other.basis && self.components == other.components
    }
}
