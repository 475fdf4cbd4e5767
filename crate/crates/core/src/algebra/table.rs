use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Words the spec-file grammar reserves; they cannot name a block.
pub const RESERVED: &[&str] = &[
    "algebroid", "degree", "base", "even", "odd", "weight", "dim", "d", "anchor", "bracket",
];

/// Pair (h-weight, form degree), ordered with the homogeneity weight first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BiWeight {
    pub h_weight: u32,
    pub form_degree: u32,
}

impl BiWeight {
    pub const fn new(h_weight: u32, form_degree: u32) -> Self {
        Self {
            h_weight,
            form_degree,
        }
    }

    /// Shift by a (possibly negative) bi-degree; `None` if a component goes negative.
    pub fn shifted(self, by: (i32, i32)) -> Option<BiWeight> {
        let h = self.h_weight as i64 + by.0 as i64;
        let f = self.form_degree as i64 + by.1 as i64;
        (h >= 0 && f >= 0).then(|| BiWeight::new(h as u32, f as u32))
    }
}

impl std::ops::Add for BiWeight {
    type Output = BiWeight;
    fn add(self, rhs: BiWeight) -> BiWeight {
        BiWeight::new(self.h_weight + rhs.h_weight, self.form_degree + rhs.form_degree)
    }
}

impl fmt::Display for BiWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.h_weight, self.form_degree)
    }
}

/// Generator kinds, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    Base,
    EvenFiber,
    OddFiber,
}

impl GeneratorKind {
    pub fn is_odd(self) -> bool {
        self == GeneratorKind::OddFiber
    }

    pub fn keyword(self) -> &'static str {
        match self {
            GeneratorKind::Base => "base",
            GeneratorKind::EvenFiber => "even",
            GeneratorKind::OddFiber => "odd",
        }
    }
}

/// Position of a generator in the canonical order of its table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    /// 1-based index within the block.
    pub index: u32,
    pub weight: u32,
    pub kind: GeneratorKind,
}

impl Generator {
    pub fn bi_weight(&self) -> BiWeight {
        BiWeight::new(self.weight, self.kind.is_odd() as u32)
    }

    pub fn is_odd(&self) -> bool {
        self.kind.is_odd()
    }

    pub fn label(&self) -> String {
        format!("{}[{}]", self.name, self.index)
    }
}

/// A block declaration: `dim` generators sharing a name, kind and weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockDecl {
    pub name: String,
    pub kind: GeneratorKind,
    pub weight: u32,
    pub dim: u32,
}

impl BlockDecl {
    pub fn new(name: impl Into<String>, kind: GeneratorKind, weight: u32, dim: u32) -> Self {
        Self {
            name: name.into(),
            kind,
            weight,
            dim,
        }
    }

    pub fn base(name: impl Into<String>, dim: u32) -> Self {
        Self::new(name, GeneratorKind::Base, 0, dim)
    }

    pub fn even(name: impl Into<String>, weight: u32, dim: u32) -> Self {
        Self::new(name, GeneratorKind::EvenFiber, weight, dim)
    }

    pub fn odd(name: impl Into<String>, weight: u32, dim: u32) -> Self {
        Self::new(name, GeneratorKind::OddFiber, weight, dim)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub decl: BlockDecl,
    pub first: GenId,
}

impl Block {
    pub fn ids(&self) -> impl Iterator<Item = GenId> + '_ {
        (self.first.0..self.first.0 + self.decl.dim as usize).map(GenId)
    }
}

/// The homogeneous chart: generators in the fixed canonical order
/// (kind, h-weight, name, index). All signs are computed against this order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorTable {
    blocks: Vec<Block>,
    gens: Vec<Generator>,
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl GeneratorTable {
    pub fn new(decls: &[BlockDecl]) -> Result<Arc<GeneratorTable>> {
        for (n, decl) in decls.iter().enumerate() {
            if decls[..n].iter().any(|d| d.name == decl.name) {
                return Err(Error::DuplicateName(decl.name.clone()));
            }
            if RESERVED.contains(&decl.name.as_str()) || !valid_identifier(&decl.name) {
                return Err(Error::ReservedName(decl.name.clone()));
            }
            if decl.dim == 0 {
                return Err(Error::EmptyBlock(decl.name.clone()));
            }
            match decl.kind {
                GeneratorKind::Base if decl.weight != 0 => {
                    return Err(Error::BaseWeight {
                        name: decl.name.clone(),
                        weight: decl.weight,
                    })
                }
                GeneratorKind::EvenFiber if decl.weight == 0 => {
                    return Err(Error::EvenFiberWeightZero(decl.name.clone()))
                }
                _ => {}
            }
        }
        let mut sorted: Vec<BlockDecl> = decls.to_vec();
        sorted.sort_by(|a, b| (a.kind, a.weight, &a.name).cmp(&(b.kind, b.weight, &b.name)));

        let mut blocks = Vec::with_capacity(sorted.len());
        let mut gens = Vec::new();
        for decl in sorted {
            let first = GenId(gens.len());
            for index in 1..=decl.dim {
                gens.push(Generator {
                    name: decl.name.clone(),
                    index,
                    weight: decl.weight,
                    kind: decl.kind,
                });
            }
            blocks.push(Block { decl, first });
        }
        Ok(Arc::new(GeneratorTable { blocks, gens }))
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Highest h-weight among the generators.
    pub fn degree(&self) -> u32 {
        self.gens.iter().map(|g| g.weight).max().unwrap_or(0)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn decls(&self) -> Vec<BlockDecl> {
        self.blocks.iter().map(|b| b.decl.clone()).collect()
    }

    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.decl.name == name)
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.gens[id.0]
    }

    pub fn generators(&self) -> impl Iterator<Item = (GenId, &Generator)> {
        self.gens.iter().enumerate().map(|(n, g)| (GenId(n), g))
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> {
        (0..self.gens.len()).map(GenId)
    }

    pub fn lookup(&self, name: &str, index: u32) -> Option<GenId> {
        let block = self.block(name)?;
        (index >= 1 && index <= block.decl.dim).then(|| GenId(block.first.0 + index as usize - 1))
    }

    pub fn lookup_label(&self, label: &str) -> Option<GenId> {
        let (name, rest) = label.split_once('[')?;
        let index = rest.strip_suffix(']')?.parse().ok()?;
        self.lookup(name, index)
    }

    pub fn ids_where(&self, pred: impl Fn(&Generator) -> bool) -> Vec<GenId> {
        self.generators().filter(|(_, g)| pred(g)).map(|(id, _)| id).collect()
    }

    /// Even generators (base and even fiber), the coordinates X of the chart.
    pub fn even_ids(&self) -> Vec<GenId> {
        self.ids_where(|g| !g.is_odd())
    }

    /// Odd generators, the fibre-linear coordinates Y.
    pub fn odd_ids(&self) -> Vec<GenId> {
        self.ids_where(|g| g.is_odd())
    }

    pub fn has_base(&self) -> bool {
        self.gens.iter().any(|g| g.kind == GeneratorKind::Base)
    }

    /// Sub-chart of all generators with h-weight at most `max_weight`, with the
    /// map from old ids to new ids.
    pub fn restrict(&self, max_weight: u32) -> (Arc<GeneratorTable>, Vec<Option<GenId>>) {
        let decls: Vec<BlockDecl> = self
            .blocks
            .iter()
            .filter(|b| b.decl.weight <= max_weight)
            .map(|b| b.decl.clone())
            .collect();
        let table = GeneratorTable::new(&decls).expect("sub-chart of a valid chart is valid");
        let map = self
            .gens
            .iter()
            .map(|g| table.lookup(&g.name, g.index))
            .collect();
        (table, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_chart_counts() {
        let t = GeneratorTable::new(&[
            BlockDecl::base("x", 2),
            BlockDecl::odd("y", 0, 2),
            BlockDecl::even("z", 1, 3),
        ])
        .unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.degree(), 1);
        let names: Vec<_> = t.generators().map(|(_, g)| g.label()).collect();
        assert_eq!(
            names,
            ["x[1]", "x[2]", "z[1]", "z[2]", "z[3]", "y[1]", "y[2]"]
        );
    }

    #[test]
    fn single_base_generator() {
        let t = GeneratorTable::new(&[BlockDecl::base("x", 1)]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.degree(), 0);
    }

    #[test]
    fn e3_chart_is_degree_two() {
        let t = GeneratorTable::new(&[
            BlockDecl::base("x", 2),
            BlockDecl::even("z", 1, 3),
            BlockDecl::even("u", 2, 1),
            BlockDecl::odd("y", 0, 2),
            BlockDecl::odd("w", 1, 2),
            BlockDecl::odd("v", 2, 1),
        ])
        .unwrap();
        assert_eq!(t.degree(), 2);
        assert_eq!(t.len(), 11);
        assert_eq!(t.generator(t.lookup("v", 1).unwrap()).bi_weight(), BiWeight::new(2, 1));
    }

    #[test]
    fn rejects_bad_declarations() {
        assert_eq!(
            GeneratorTable::new(&[BlockDecl::base("x", 1), BlockDecl::odd("x", 0, 1)]),
            Err(Error::DuplicateName("x".into()))
        );
        assert!(matches!(
            GeneratorTable::new(&[BlockDecl::new("x", GeneratorKind::Base, 1, 1)]),
            Err(Error::BaseWeight { .. })
        ));
        assert_eq!(
            GeneratorTable::new(&[BlockDecl::even("z", 0, 1)]),
            Err(Error::EvenFiberWeightZero("z".into()))
        );
        assert!(GeneratorTable::new(&[BlockDecl::base("d", 1)]).is_err());
    }

    #[test]
    fn restriction_keeps_low_weights() {
        let t = GeneratorTable::new(&[
            BlockDecl::base("x", 1),
            BlockDecl::even("z", 1, 1),
            BlockDecl::even("u", 2, 1),
            BlockDecl::odd("y", 0, 1),
        ])
        .unwrap();
        let (r, map) = t.restrict(1);
        assert_eq!(r.len(), 3);
        assert_eq!(map.iter().filter(|m| m.is_none()).count(), 1);
    }
}
