use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::syntax::{self, Cursor, Resolver, Span, SyntaxError};
use super::table::{BiWeight, GenId, GeneratorTable};
use super::Rational;
use crate::error::{Error, Result};

/// A polynomial form over ℚ in canonical form: distinct monomials, no zero
/// coefficients, terms sorted.
#[derive(Clone)]
pub struct Element {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, Rational>,
}

pub(crate) fn same_table(a: &Arc<GeneratorTable>, b: &Arc<GeneratorTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        Element {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn constant(table: &Arc<GeneratorTable>, c: Rational) -> Self {
        Self::monomial(table, Monomial::one(), c)
    }

    pub fn generator(table: &Arc<GeneratorTable>, id: GenId) -> Self {
        Self::monomial(table, Monomial::generator(table, id), Rational::one())
    }

    /// `name[index]`; panics if the label is not in the table.
    pub fn var(table: &Arc<GeneratorTable>, name: &str, index: u32) -> Self {
        let id = table
            .lookup(name, index)
            .unwrap_or_else(|| panic!("unknown generator {name}[{index}]"));
        Self::generator(table, id)
    }

    pub fn monomial(table: &Arc<GeneratorTable>, m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element {
            table: table.clone(),
            terms,
        }
    }

    pub fn from_terms(
        table: &Arc<GeneratorTable>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut e = Element::zero(table);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn parse(table: &Arc<GeneratorTable>, text: &str) -> Result<Self> {
        let tokens = syntax::lex(text).map_err(|e| Error::Expr(e.to_string()))?;
        let mut cur = Cursor::new(&tokens);
        let resolver = TableResolver(table);
        let e = syntax::parse_expr(&mut cur, &resolver).map_err(|e| Error::Expr(e.to_string()))?;
        if !cur.at_eof() {
            let t = cur.peek();
            return Err(Error::Expr(format!("{}: unexpected {}", t.span, t.kind)));
        }
        Ok(e)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero(&self.table);
        }
        Element {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Graded product with Koszul signs; errors if the tables differ.
    pub fn multiply(&self, other: &Element) -> Result<Element> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        let mut out = Element::zero(&self.table);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((negative, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut acc = Element::one(&self.table);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Distinct bi-weights occurring among the terms.
    pub fn bi_weights(&self) -> BTreeSet<BiWeight> {
        self.terms.keys().map(|m| m.bi_weight(&self.table)).collect()
    }

    /// Distinct h-weights occurring among the terms.
    pub fn weights(&self) -> BTreeSet<u32> {
        self.terms.keys().map(|m| m.h_weight(&self.table)).collect()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.weights().into_iter().next_back()
    }

    /// `Some(w)` if every term has bi-weight `w`; zero is homogeneous of any weight
    /// and reports `None`.
    pub fn bi_homogeneous(&self) -> Option<BiWeight> {
        let ws = self.bi_weights();
        (ws.len() == 1).then(|| *ws.iter().next().unwrap())
    }

    pub fn is_bi_homogeneous_of(&self, w: BiWeight) -> bool {
        self.terms.keys().all(|m| m.bi_weight(&self.table) == w)
    }

    pub fn is_homogeneous_of_weight(&self, i: u32) -> bool {
        self.terms.keys().all(|m| m.h_weight(&self.table) == i)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of the terms of h-weight exactly `i`.
    pub fn weight_component(&self, i: u32) -> Element {
        let t = self.table.clone();
        self.filter(|m| m.h_weight(&t) == i)
    }

    /// Sum of the terms with exactly `j` odd factors.
    pub fn form_component(&self, j: u32) -> Element {
        self.filter(|m| m.form_degree() == j)
    }

    /// Pullback along the homogeneity action: a term of weight w is scaled by t^w.
    pub fn h_pullback(&self, t: &Rational) -> Element {
        let mut out = Element::zero(&self.table);
        for (m, c) in &self.terms {
            let w = m.h_weight(&self.table);
            let factor = num_traits::pow(t.clone(), w as usize);
            out.add_term(m.clone(), c * factor);
        }
        out
    }

    /// Graded left partial derivative. Removing an odd generator preceded by k
    /// odd factors contributes (-1)^k.
    pub fn partial_derivative(&self, g: GenId) -> Element {
        let odd = self.table.generator(g).is_odd();
        let mut out = Element::zero(&self.table);
        for (m, c) in &self.terms {
            if odd {
                if let Some((before, rest)) = m.remove_odd(g) {
                    let c = c.clone();
                    out.add_term(rest, if before % 2 == 1 { -c } else { c });
                }
            } else if let Some((e, rest)) = m.lower_even(g) {
                out.add_term(rest, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Move onto another table through a generator map; terms with an unmapped
    /// factor are dropped.
    pub fn remap(&self, table: &Arc<GeneratorTable>, map: &[Option<GenId>]) -> Element {
        let mut out = Element::zero(table);
        for (m, c) in &self.terms {
            if let Some(m) = m.remap(map) {
                out.add_term(m, c.clone());
            }
        }
        out
    }

    /// True if no term involves the generator.
    pub fn avoids(&self, g: GenId) -> bool {
        self.terms.keys().all(|m| m.exponent(g) == 0)
    }

    pub fn generators_used(&self) -> BTreeSet<GenId> {
        self.terms.keys().flat_map(|m| m.generators()).collect()
    }
}

struct TableResolver<'a>(&'a Arc<GeneratorTable>);

impl Resolver for TableResolver<'_> {
    fn resolve(&self, name: &str, index: u32, span: Span) -> std::result::Result<Element, SyntaxError> {
        self.0
            .lookup(name, index)
            .map(|id| Element::generator(self.0, id))
            .ok_or_else(|| SyntaxError::new(span, format!("undeclared generator `{name}[{index}]`")))
    }

    fn constant(&self, value: Rational) -> Element {
        Element::constant(self.0, value)
    }
}

fn render_coefficient(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                f.write_str(&render_coefficient(&magnitude))?;
            } else if magnitude.is_one() {
                f.write_str(&m.render(&self.table))?;
            } else {
                write!(f, "{}*{}", render_coefficient(&magnitude), m.render(&self.table))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("adding elements over different tables")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_add(&-rhs).expect("subtracting elements over different tables")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.multiply(rhs)
            .expect("multiplying elements over different tables")
    }
}

impl std::ops::AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        assert!(
            same_table(&self.table, &rhs.table),
            "adding elements over different tables"
        );
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        assert!(
            same_table(&self.table, &rhs.table),
            "subtracting elements over different tables"
        );
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}
