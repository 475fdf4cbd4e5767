//! Weighted Lie algebroids in a homogeneous chart.
//!
//! A spec is either given by structure-function tables (anchor `Q_I^A`, bracket
//! `Q^K_{JI}`) or directly by the values of `d_E` on generators. Internally the
//! differential is canonical and the tables are read back from it:
//!
//! ```text
//! d_E X^A = Σ_I  Y^I · Q_I^A(X)
//! d_E Y^K = Σ_{I<J} Y^I Y^J · Q^K_{JI}(X)      (= ½ Σ_{I,J} Y^I Y^J Q^K_{JI})
//! ```
//!
//! where `Q^K_{JI}` is the `s_K` coefficient of `[s_J, s_I]`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{same_table, Element, GenId, GeneratorKind, GeneratorTable, Substitution};
use crate::derivation::{Derivation, HomologicalReport};
use crate::error::{Error, Result};

/// `ρ(s_odd) ∋ value · ∂/∂X^even`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchorEntry {
    pub odd: GenId,
    pub even: GenId,
    pub value: Element,
}

/// `[s_left, s_right] ∋ value · s_target`.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketEntry {
    pub left: GenId,
    pub right: GenId,
    pub target: GenId,
    pub value: Element,
}

#[derive(Clone, PartialEq)]
pub struct AlgebroidSpec {
    name: String,
    table: Arc<GeneratorTable>,
    differential: Derivation,
    lints: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StructureFamily {
    Antisymmetry,
    Anchor,
    Jacobi,
}

impl fmt::Display for StructureFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureFamily::Antisymmetry => "antisymmetry",
            StructureFamily::Anchor => "anchor",
            StructureFamily::Jacobi => "jacobi",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureResidual {
    pub family: StructureFamily,
    pub indices: Vec<GenId>,
    pub target: GenId,
    pub value: Element,
}

impl StructureResidual {
    pub fn label(&self, table: &GeneratorTable) -> String {
        let idx: Vec<String> = self
            .indices
            .iter()
            .map(|g| table.generator(*g).label())
            .collect();
        format!(
            "{} ({}) -> {}",
            self.family,
            idx.join(","),
            table.generator(self.target).label()
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureReport {
    pub residuals: Vec<StructureResidual>,
    /// Number of identities evaluated.
    pub checked: usize,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

fn slot_weight(table: &GeneratorTable, plus: GenId, minus: &[GenId]) -> i64 {
    table.generator(plus).weight as i64
        - minus
            .iter()
            .map(|g| table.generator(*g).weight as i64)
            .sum::<i64>()
}

/// Validate a table entry against the weight its slot demands. Returns `None`
/// (and a lint) when the slot would need a negative weight.
fn check_entry(
    slot: String,
    expected: i64,
    value: &Element,
    lints: &mut Vec<String>,
) -> Result<Option<Element>> {
    if value.is_zero() {
        return Ok(None);
    }
    if value.terms().any(|(m, _)| m.form_degree() != 0) {
        return Err(Error::OddCoefficient { slot });
    }
    if expected < 0 {
        lints.push(format!(
            "{slot}: slot has weight {expected}; entry `{value}` set to zero"
        ));
        return Ok(None);
    }
    let weights = value.weights();
    if weights.iter().any(|w| *w as i64 != expected) {
        return Err(Error::CoefficientWeight {
            slot,
            expected,
            found: weights.into_iter().collect(),
        });
    }
    Ok(Some(value.clone()))
}

impl AlgebroidSpec {
    /// From `d_E` values on generators.
    pub fn from_differential(
        name: impl Into<String>,
        table: &Arc<GeneratorTable>,
        assignments: impl IntoIterator<Item = (GenId, Element)>,
    ) -> Result<Self> {
        let d = Derivation::new(table, (0, 1), assignments)?;
        Self::from_derivation(name, d)
    }

    pub fn from_derivation(name: impl Into<String>, d: Derivation) -> Result<Self> {
        if d.bi_degree() != (0, 1) {
            return Err(Error::NotCeDegree(d.bi_degree().0, d.bi_degree().1));
        }
        Ok(AlgebroidSpec {
            name: name.into(),
            table: d.table().clone(),
            differential: d,
            lints: Vec::new(),
        })
    }

    /// From structure-function tables. Bracket entries may come from either
    /// triangle; the other is filled by antisymmetry. Entries in slots of
    /// negative weight are dropped with a lint.
    pub fn from_tables(
        name: impl Into<String>,
        table: &Arc<GeneratorTable>,
        anchors: &[AnchorEntry],
        brackets: &[BracketEntry],
    ) -> Result<Self> {
        let odd = table.odd_ids();
        let even = table.even_ids();
        let n_odd = table.len();
        let label = |g: GenId| table.generator(g).label();
        let mut lints = Vec::new();

        // anchor[odd][even]
        let mut anchor: Vec<Vec<Option<Element>>> = vec![vec![None; n_odd]; n_odd];
        for entry in anchors {
            if !same_table(entry.value.table(), table) {
                return Err(Error::TableMismatch);
            }
            if !table.generator(entry.odd).is_odd() || table.generator(entry.even).is_odd() {
                return Err(Error::Expr(format!(
                    "anchor ({}, {}) needs an odd then an even generator",
                    label(entry.odd),
                    label(entry.even)
                )));
            }
            let slot = format!("anchor ({}, {})", label(entry.odd), label(entry.even));
            let w = slot_weight(table, entry.even, &[entry.odd]);
            if let Some(v) = check_entry(slot, w, &entry.value, &mut lints)? {
                let cell = &mut anchor[entry.odd.0][entry.even.0];
                *cell = Some(match cell.take() {
                    Some(old) => &old + &v,
                    None => v,
                });
            }
        }

        // bracket[(left, right, target)]
        let mut bracket: std::collections::BTreeMap<(GenId, GenId, GenId), Element> =
            Default::default();
        for entry in brackets {
            if !same_table(entry.value.table(), table) {
                return Err(Error::TableMismatch);
            }
            if [entry.left, entry.right, entry.target]
                .iter()
                .any(|g| !table.generator(*g).is_odd())
            {
                return Err(Error::Expr(format!(
                    "bracket ({}, {}) -> {} must use odd generators",
                    label(entry.left),
                    label(entry.right),
                    label(entry.target)
                )));
            }
            let slot = format!(
                "bracket ({}, {}) -> {}",
                label(entry.left),
                label(entry.right),
                label(entry.target)
            );
            let w = slot_weight(table, entry.target, &[entry.left, entry.right]);
            let Some(v) = check_entry(slot, w, &entry.value, &mut lints)? else {
                continue;
            };
            let not_antisymmetric = || Error::NotAntisymmetric {
                first: label(entry.left),
                second: label(entry.right),
                target: label(entry.target),
            };
            if entry.left == entry.right {
                return Err(not_antisymmetric());
            }
            let key = (entry.left, entry.right, entry.target);
            let mirror = (entry.right, entry.left, entry.target);
            if let Some(existing) = bracket.get(&key) {
                if existing != &v {
                    return Err(not_antisymmetric());
                }
                continue;
            }
            if let Some(other) = bracket.get(&mirror) {
                if !(other + &v).is_zero() {
                    return Err(not_antisymmetric());
                }
            }
            bracket.insert(mirror, -&v);
            bracket.insert(key, v);
        }

        let mut assignments = Vec::new();
        for &a in &even {
            let mut image = Element::zero(table);
            for &i in &odd {
                if let Some(q) = &anchor[i.0][a.0] {
                    image += &(&Element::generator(table, i) * q);
                }
            }
            assignments.push((a, image));
        }
        for &k in &odd {
            let mut image = Element::zero(table);
            for (x, &i) in odd.iter().enumerate() {
                for &j in &odd[x + 1..] {
                    if let Some(q) = bracket.get(&(j, i, k)) {
                        let yy = &Element::generator(table, i) * &Element::generator(table, j);
                        image += &(&yy * q);
                    }
                }
            }
            assignments.push((k, image));
        }
        let mut spec = Self::from_differential(name, table, assignments)?;
        spec.lints = lints;
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    /// Highest h-weight of the chart.
    pub fn degree(&self) -> u32 {
        self.table.degree()
    }

    /// Rank of the underlying degree-zero algebroid.
    pub fn rank(&self) -> usize {
        self.table
            .generators()
            .filter(|(_, g)| g.is_odd() && g.weight == 0)
            .count()
    }

    /// Notes about entries dropped by the out-of-range weight convention.
    pub fn lints(&self) -> &[String] {
        &self.lints
    }

    /// The Chevalley–Eilenberg–de Rham differential `d_E`, bi-degree (0,1).
    pub fn ce_differential(&self) -> &Derivation {
        &self.differential
    }

    pub fn is_homological(&self) -> HomologicalReport {
        self.differential
            .is_homological()
            .expect("d_E has odd form-degree shift")
    }

    /// `Q_I^A`, read off as `∂/∂Y^I (d_E X^A)`.
    pub fn anchor(&self, odd: GenId, even: GenId) -> Element {
        self.differential.image(even).partial_derivative(odd)
    }

    /// `Q^K_{JI}`, the `s_K` coefficient of `[s_J, s_I]`, read off as
    /// `∂/∂Y^J ∂/∂Y^I (d_E Y^K)`.
    pub fn bracket(&self, left: GenId, right: GenId, target: GenId) -> Element {
        self.differential
            .image(target)
            .partial_derivative(right)
            .partial_derivative(left)
    }

    pub fn anchor_table(&self) -> Vec<AnchorEntry> {
        let mut out = Vec::new();
        for i in self.table.odd_ids() {
            for a in self.table.even_ids() {
                let value = self.anchor(i, a);
                if !value.is_zero() {
                    out.push(AnchorEntry { odd: i, even: a, value });
                }
            }
        }
        out
    }

    /// Nonzero bracket coefficients with `left > right` in the canonical order.
    pub fn bracket_table(&self) -> Vec<BracketEntry> {
        let odd = self.table.odd_ids();
        let mut out = Vec::new();
        for &k in &odd {
            for (x, &i) in odd.iter().enumerate() {
                for &j in &odd[x + 1..] {
                    let value = self.bracket(j, i, k);
                    if !value.is_zero() {
                        out.push(BracketEntry {
                            left: j,
                            right: i,
                            target: k,
                            value,
                        });
                    }
                }
            }
        }
        out
    }

    /// Evaluates antisymmetry, anchor–bracket compatibility and Jacobi directly
    /// on the structure functions (not through `d_E∘d_E`).
    pub fn check_structure_equations(&self) -> StructureReport {
        let table = &self.table;
        let odd = table.odd_ids();
        let even = table.even_ids();
        let n = odd.len();
        let anchor: Vec<Vec<Element>> = odd
            .iter()
            .map(|&i| even.iter().map(|&a| self.anchor(i, a)).collect())
            .collect();
        let bracket: Vec<Vec<Vec<Element>>> = odd
            .iter()
            .map(|&j| {
                odd.iter()
                    .map(|&i| odd.iter().map(|&k| self.bracket(j, i, k)).collect())
                    .collect()
            })
            .collect();
        // ρ(s_i) f = Σ_a Q_i^a ∂f/∂X^a
        let rho = |i: usize, f: &Element| -> Element {
            let mut out = Element::zero(table);
            for (x, &a) in even.iter().enumerate() {
                if !anchor[i][x].is_zero() {
                    out += &(&anchor[i][x] * &f.partial_derivative(a));
                }
            }
            out
        };

        let mut residuals = Vec::new();
        let mut checked = 0;

        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    checked += 1;
                    let r = &bracket[i][j][k] + &bracket[j][i][k];
                    if !r.is_zero() {
                        residuals.push(StructureResidual {
                            family: StructureFamily::Antisymmetry,
                            indices: vec![odd[i], odd[j]],
                            target: odd[k],
                            value: r,
                        });
                    }
                }
            }
        }

        // ρ(s_i) Q_j^b − ρ(s_j) Q_i^b − Σ_m Q_{ij}^m Q_m^b
        for i in 0..n {
            for j in i + 1..n {
                for (b, &target) in even.iter().enumerate() {
                    checked += 1;
                    let mut r = &rho(i, &anchor[j][b]) - &rho(j, &anchor[i][b]);
                    for m in 0..n {
                        if !bracket[i][j][m].is_zero() && !anchor[m][b].is_zero() {
                            r -= &(&bracket[i][j][m] * &anchor[m][b]);
                        }
                    }
                    if !r.is_zero() {
                        residuals.push(StructureResidual {
                            family: StructureFamily::Anchor,
                            indices: vec![odd[i], odd[j]],
                            target,
                            value: r,
                        });
                    }
                }
            }
        }

        // Σ_cyc ( Q_{ab}^m Q_{mc}^l − ρ(s_c) Q_{ab}^l )
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for l in 0..n {
                        checked += 1;
                        let mut r = Element::zero(table);
                        for (p, q, s) in [(a, b, c), (b, c, a), (c, a, b)] {
                            for m in 0..n {
                                if !bracket[p][q][m].is_zero() && !bracket[m][s][l].is_zero() {
                                    r += &(&bracket[p][q][m] * &bracket[m][s][l]);
                                }
                            }
                            r -= &rho(s, &bracket[p][q][l]);
                        }
                        if !r.is_zero() {
                            residuals.push(StructureResidual {
                                family: StructureFamily::Jacobi,
                                indices: vec![odd[a], odd[b], odd[c]],
                                target: odd[l],
                                value: r,
                            });
                        }
                    }
                }
            }
        }

        StructureReport { residuals, checked }
    }

    fn restrict(&self, max_weight: u32, name: String) -> AlgebroidSpec {
        let (table, map) = self.table.restrict(max_weight);
        AlgebroidSpec {
            name,
            differential: self.differential.remap(&table, &map),
            table,
            lints: Vec::new(),
        }
    }

    /// The underlying degree-zero algebroid `A → M`.
    pub fn degree_zero_restriction(&self) -> AlgebroidSpec {
        self.restrict(0, format!("{}_0", self.name))
    }

    /// `E_i`: keep generators of h-weight at most `i`. The generated subalgebra
    /// is `d_E`-stable since `d_E` preserves h-weight.
    pub fn tower_truncation(&self, i: u32) -> Result<AlgebroidSpec> {
        if i < 1 || i > self.degree() {
            return Err(Error::TruncationRange {
                weight: i,
                degree: self.degree(),
            });
        }
        if i == self.degree() {
            return Ok(self.clone());
        }
        Ok(self.restrict(i, format!("{}_{}", self.name, i)))
    }

    /// Degree 1 is exactly the regular (vector bundle) case in a polynomial chart.
    pub fn is_regular_degree_one(&self) -> bool {
        self.degree() == 1
    }

    /// `Φ∘d_E∘Φ⁻¹` for a triangular weight-preserving substitution `Φ`; `order`
    /// lists the generators `Φ` moves, each depending only on earlier ones.
    pub fn conjugate(&self, phi: &Substitution, order: &[GenId]) -> Result<AlgebroidSpec> {
        if !same_table(phi.table(), &self.table) {
            return Err(Error::TableMismatch);
        }
        let inverse = phi.triangular_inverse(order)?;
        let images: Vec<(GenId, Element)> = self
            .table
            .ids()
            .map(|g| {
                let back = inverse.image(g);
                (g, phi.apply(&self.differential.act(back)))
            })
            .collect();
        let mut out = Self::from_differential(self.name.clone(), &self.table, images)?;
        out.lints = self.lints.clone();
        Ok(out)
    }

    pub fn base_ids(&self) -> Vec<GenId> {
        self.table.ids_where(|g| g.kind == GeneratorKind::Base)
    }
}

impl fmt::Debug for AlgebroidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebroidSpec {} {:?}", self.name, self.differential)
    }
}
