//! Exact graded-commutative algebra over ℚ on a bi-weighted chart.
//!
//! Even generators (base coordinates and even fibre coordinates) commute with
//! everything; odd generators anticommute and square to zero. Odd factors are
//! kept in the table's canonical order and every reordering contributes its
//! Koszul sign at insertion time.

mod element;
mod monomial;
pub mod syntax;
mod table;

use std::sync::Arc;

use num_bigint::BigInt;

pub use element::Element;
pub(crate) use element::same_table;
pub use monomial::Monomial;
pub use table::{BiWeight, Block, BlockDecl, GenId, Generator, GeneratorKind, GeneratorTable, RESERVED};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Shorthand for the rational n/d.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer n as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// An algebra endomorphism fixed by the images of the generators. Images must
/// keep each generator's bi-weight, so products of images carry the same
/// Koszul signs as the original factors.
#[derive(Debug, Clone, PartialEq)]
pub struct Substitution {
    table: Arc<GeneratorTable>,
    images: Vec<Element>,
}

impl Substitution {
    pub fn identity(table: &Arc<GeneratorTable>) -> Self {
        Substitution {
            table: table.clone(),
            images: table.ids().map(|g| Element::generator(table, g)).collect(),
        }
    }

    /// Identity except on the listed generators.
    pub fn new(table: &Arc<GeneratorTable>, images: Vec<(GenId, Element)>) -> Result<Self> {
        let mut s = Substitution::identity(table);
        for (g, image) in images {
            if !same_table(image.table(), table) {
                return Err(Error::TableMismatch);
            }
            let gen = table.generator(g);
            if !image.is_bi_homogeneous_of(gen.bi_weight()) {
                return Err(Error::SubstitutionWeight {
                    generator: gen.label(),
                });
            }
            s.images[g.0] = image;
        }
        Ok(s)
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn image(&self, g: GenId) -> &Element {
        &self.images[g.0]
    }

    pub fn apply(&self, e: &Element) -> Element {
        let mut out = Element::zero(&self.table);
        for (m, c) in e.terms() {
            let mut prod = Element::constant(&self.table, c.clone());
            for &(g, exp) in m.even() {
                prod = &prod * &self.images[g.0].pow(exp);
            }
            for &g in m.odd() {
                prod = &prod * &self.images[g.0];
            }
            out += &prod;
        }
        out
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Substitution) -> Substitution {
        Substitution {
            table: self.table.clone(),
            images: other.images.iter().map(|e| self.apply(e)).collect(),
        }
    }

    /// Inverse of a triangular substitution `g ↦ g + N(g)` where each `N(g)`
    /// involves only generators earlier in `order`. Generators missing from
    /// `order` must be fixed by the substitution.
    pub fn triangular_inverse(&self, order: &[GenId]) -> Result<Substitution> {
        let mut inverse = Substitution::identity(&self.table);
        let mut done = vec![false; self.table.len()];
        for g in self.table.ids() {
            if !order.contains(&g) {
                if self.images[g.0] != Element::generator(&self.table, g) {
                    return Err(Error::NotTriangular(self.table.generator(g).label()));
                }
                done[g.0] = true;
            }
        }
        for &g in order {
            let tail = &self.images[g.0] - &Element::generator(&self.table, g);
            if tail.generators_used().iter().any(|h| !done[h.0]) {
                return Err(Error::NotTriangular(self.table.generator(g).label()));
            }
            // g = φ⁻¹(φ(g)) = φ⁻¹(g) + φ⁻¹(N(g))  ⇒  φ⁻¹(g) = g − φ⁻¹(N(g))
            let image = &Element::generator(&self.table, g) - &inverse.apply(&tail);
            inverse.images[g.0] = image;
            done[g.0] = true;
        }
        Ok(inverse)
    }

    pub fn is_identity(&self) -> bool {
        self.table
            .ids()
            .all(|g| self.images[g.0] == Element::generator(&self.table, g))
    }
}
