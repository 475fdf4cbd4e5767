//! Derivations of the graded algebra, fixed by their values on generators and
//! extended by the graded Leibniz rule.

use std::fmt;
use std::sync::Arc;


use crate::algebra::{same_table, BiWeight, Element, GenId, GeneratorTable, Monomial, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Derivation {
    table: Arc<GeneratorTable>,
    bi_degree: (i32, i32),
    action: Vec<Element>,
}

/// Per-generator values of `D∘D` that failed to vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct HomologicalReport {
    pub residuals: Vec<(GenId, Element)>,
}

impl HomologicalReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

impl Derivation {
    /// Unassigned generators are sent to zero. Every image must be bi-homogeneous
    /// of the generator's bi-weight shifted by `bi_degree`.
    pub fn new(
        table: &Arc<GeneratorTable>,
        bi_degree: (i32, i32),
        action: impl IntoIterator<Item = (GenId, Element)>,
    ) -> Result<Self> {
        let mut images: Vec<Element> = table.ids().map(|_| Element::zero(table)).collect();
        for (g, image) in action {
            if !same_table(image.table(), table) {
                return Err(Error::TableMismatch);
            }
            images[g.0] = image;
        }
        for (g, gen) in table.generators() {
            let image = &images[g.0];
            if image.is_zero() {
                continue;
            }
            let ok = match gen.bi_weight().shifted(bi_degree) {
                Some(target) => image.is_bi_homogeneous_of(target),
                None => false,
            };
            if !ok {
                let h = gen.weight as i64 + bi_degree.0 as i64;
                let f = gen.bi_weight().form_degree as i64 + bi_degree.1 as i64;
                return Err(Error::WeightMismatch {
                    generator: gen.label(),
                    expected: BiWeight::new(h.max(0) as u32, f.max(0) as u32),
                    found: image.bi_weights().into_iter().collect(),
                });
            }
        }
        Ok(Derivation {
            table: table.clone(),
            bi_degree,
            action: images,
        })
    }

    pub fn zero(table: &Arc<GeneratorTable>, bi_degree: (i32, i32)) -> Self {
        Derivation {
            table: table.clone(),
            bi_degree,
            action: table.ids().map(|_| Element::zero(table)).collect(),
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn bi_degree(&self) -> (i32, i32) {
        self.bi_degree
    }

    /// Parity of the form-degree shift.
    pub fn is_odd(&self) -> bool {
        self.bi_degree.1.rem_euclid(2) == 1
    }

    pub fn image(&self, g: GenId) -> &Element {
        &self.action[g.0]
    }

    pub fn images(&self) -> impl Iterator<Item = (GenId, &Element)> {
        self.action.iter().enumerate().map(|(n, e)| (GenId(n), e))
    }

    pub fn is_zero(&self) -> bool {
        self.action.iter().all(Element::is_zero)
    }

    pub fn apply(&self, e: &Element) -> Result<Element> {
        if !same_table(e.table(), &self.table) {
            return Err(Error::TableMismatch);
        }
        Ok(self.act(e))
    }

    /// `apply` for callers that already share the table.
    pub(crate) fn act(&self, e: &Element) -> Element {
        let mut out = Element::zero(&self.table);
        for (m, c) in e.terms() {
            self.act_on_term(m, c, &mut out);
        }
        out
    }

    fn act_on_term(&self, m: &Monomial, c: &Rational, out: &mut Element) {
        let table = &self.table;
        let odd_shift = self.is_odd();
        let odd_word = Element::monomial(
            table,
            Monomial::from_factors(&[], m.odd()).expect("canonical word").1,
            Rational::from_integer(1.into()),
        );
        let even_factors = m.even();
        // even factors: D(g^e · R) contributes e · g^(e-1) · D(g) · R
        for (pos, &(g, e)) in even_factors.iter().enumerate() {
            let image = &self.action[g.0];
            if image.is_zero() {
                continue;
            }
            let mut rest: Vec<(GenId, u32)> = even_factors.to_vec();
            rest[pos].1 -= 1;
            let (_, rest) = Monomial::from_factors(&rest, &[]).expect("even part");
            let coeff = c * Rational::from_integer(e.into());
            let lead = Element::monomial(table, rest, coeff);
            *out += &(&(&lead * image) * &odd_word);
        }
        // odd factors: sign (-1)^(|D|·k) for k odd factors passed
        let evens = Monomial::from_factors(even_factors, &[]).expect("even part").1;
        let word = m.odd();
        for k in 0..word.len() {
            let image = &self.action[word[k].0];
            if image.is_zero() {
                continue;
            }
            let before = Monomial::from_factors(&[], &word[..k]).expect("sorted").1;
            let after = Monomial::from_factors(&[], &word[k + 1..]).expect("sorted").1;
            let sign = if odd_shift && k % 2 == 1 { -c.clone() } else { c.clone() };
            let (_, head) = evens.mul(&before).expect("disjoint");
            let head = Element::monomial(table, head, sign);
            let tail = Element::monomial(table, after, Rational::from_integer(1.into()));
            *out += &(&(&head * image) * &tail);
        }
    }

    /// `D1∘D2 − (−1)^{b1·b2} D2∘D1`, with b the form-degree shifts.
    pub fn graded_commutator(&self, other: &Derivation) -> Result<Derivation> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        let both_odd = self.is_odd() && other.is_odd();
        let action = self.table.ids().map(|g| {
            let a = self.act(other.image(g));
            let b = other.act(self.image(g));
            let value = if both_odd { &a + &b } else { &a - &b };
            (g, value)
        });
        let bi_degree = (
            self.bi_degree.0 + other.bi_degree.0,
            self.bi_degree.1 + other.bi_degree.1,
        );
        let action: Vec<_> = action.collect();
        Derivation::new(&self.table, bi_degree, action)
    }

    /// Checks `D∘D = 0` on every generator; enough because `D∘D = ½[D,D]` is
    /// itself a derivation.
    pub fn is_homological(&self) -> Result<HomologicalReport> {
        if !self.is_odd() {
            return Err(Error::EvenShift(self.bi_degree.1));
        }
        let residuals = self
            .table
            .ids()
            .filter_map(|g| {
                let r = self.act(self.image(g));
                (!r.is_zero()).then_some((g, r))
            })
            .collect();
        Ok(HomologicalReport { residuals })
    }

    /// Sum of two derivations of the same bi-degree.
    pub fn try_add(&self, other: &Derivation) -> Result<Derivation> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        let action: Vec<_> = self
            .table
            .ids()
            .map(|g| (g, self.image(g) + other.image(g)))
            .collect();
        Derivation::new(&self.table, self.bi_degree, action)
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            table: self.table.clone(),
            bi_degree: self.bi_degree,
            action: self.action.iter().map(|e| e.scale(c)).collect(),
        }
    }

    /// Move onto a sub-chart; generators without an image are dropped, and so are
    /// terms that reference them.
    pub fn remap(&self, table: &Arc<GeneratorTable>, map: &[Option<GenId>]) -> Derivation {
        let mut action: Vec<Element> = table.ids().map(|_| Element::zero(table)).collect();
        for (g, image) in self.images() {
            if let Some(h) = map[g.0] {
                action[h.0] = image.remap(table, map);
            }
        }
        Derivation {
            table: table.clone(),
            bi_degree: self.bi_degree,
            action,
        }
    }

    /// Number of nonzero coefficient entries across all images.
    pub fn support(&self) -> usize {
        self.action.iter().map(|e| e.len()).sum()
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Derivation {:?} {{", self.bi_degree)?;
        for (g, image) in self.images() {
            if !image.is_zero() {
                writeln!(f, "  {} -> {}", self.table.generator(g).label(), image)?;
            }
        }
        write!(f, "}}")
    }
}
