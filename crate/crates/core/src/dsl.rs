//! The `.spec` text format.
//!
//! ```text
//! document := header stmt*
//! header   := "algebroid" IDENT "degree" INT
//! stmt     := ("base" | "even" | "odd") IDENT "weight" INT "dim" INT
//!           | "d" IDENT "[" INT "]" "=" expr
//!           | "anchor" gen gen "=" expr          # ρ(s_odd) ∋ expr · ∂/∂even
//!           | "bracket" gen gen gen "=" expr     # [s_left, s_right] ∋ expr · s_target
//! gen      := IDENT "[" INT "]"
//! ```
//!
//! A document uses either `d` assignments or `anchor`/`bracket` tables, not
//! both. Blocks may appear anywhere; expressions are resolved once all blocks
//! are known.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::syntax::{self, Cursor, Resolver, Span, SyntaxError, Token, TokenKind};
use crate::algebra::{BlockDecl, Element, GenId, GeneratorKind, GeneratorTable, Rational};
use crate::algebroid::{AlgebroidSpec, AnchorEntry, BracketEntry};
use crate::error::Error;

const STATEMENT_KEYWORDS: &[&str] = &["algebroid", "base", "even", "odd", "d", "anchor", "bracket"];

#[derive(Debug, Clone)]
pub struct Header {
    pub name: String,
    pub degree: u32,
    pub span: Span,
}

#[derive(Debug, Clone)]
pub struct BlockNode {
    pub decl: BlockDecl,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EntryKind {
    Assign { target: GenId },
    Anchor { odd: GenId, even: GenId },
    Bracket { left: GenId, right: GenId, target: GenId },
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub kind: EntryKind,
    pub value: Element,
    pub span: Span,
}

#[derive(Debug, Clone)]
pub struct SpecDocument {
    pub header: Header,
    pub blocks: Vec<BlockNode>,
    pub entries: Vec<Entry>,
    table: Arc<GeneratorTable>,
}

/// Content equality; spans are ignored.
impl PartialEq for SpecDocument {
    fn eq(&self, other: &Self) -> bool {
        self.header.name == other.header.name
            && self.header.degree == other.header.degree
            && self.blocks.len() == other.blocks.len()
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.decl == b.decl)
            && self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.kind == b.kind && a.value == b.value)
    }
}

struct DocResolver<'a>(&'a Arc<GeneratorTable>);

impl Resolver for DocResolver<'_> {
    fn resolve(&self, name: &str, index: u32, span: Span) -> Result<Element, SyntaxError> {
        self.0
            .lookup(name, index)
            .map(|g| Element::generator(self.0, g))
            .ok_or_else(|| SyntaxError::new(span, format!("undeclared generator `{name}[{index}]`")))
    }

    fn constant(&self, value: Rational) -> Element {
        Element::constant(self.0, value)
    }
}

type Target<'a> = (&'a str, u32, Span);

enum RawEntry<'a> {
    Assign(Target<'a>),
    Anchor(Target<'a>, Target<'a>),
    Bracket(Target<'a>, Target<'a>, Target<'a>),
}

struct RawStatement<'a> {
    entry: RawEntry<'a>,
    span: Span,
    expr: std::ops::Range<usize>,
}

fn is_keyword(kind: &TokenKind) -> bool {
    matches!(kind, TokenKind::Ident(s) if STATEMENT_KEYWORDS.contains(&s.as_str()))
}

fn block_span_error(blocks: &[BlockNode], header: &Header, e: Error) -> SyntaxError {
    let name = match &e {
        Error::DuplicateName(n)
        | Error::EvenFiberWeightZero(n)
        | Error::EmptyBlock(n)
        | Error::ReservedName(n) => Some(n.clone()),
        Error::BaseWeight { name, .. } => Some(name.clone()),
        _ => None,
    };
    let span = name
        .and_then(|n| blocks.iter().rev().find(|b| b.decl.name == n).map(|b| b.span))
        .unwrap_or(header.span);
    SyntaxError::new(span, e.to_string())
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<SpecDocument, SyntaxError> {
        let tokens = syntax::lex(text)?;
        let mut cur = Cursor::new(&tokens);
        if cur.at_eof() {
            return Err(SyntaxError::new(
                cur.peek().span,
                "missing header `algebroid NAME degree INT`",
            ));
        }
        let span = cur.keyword("algebroid")?;
        let (name, _) = cur.ident()?;
        cur.keyword("degree")?;
        let (degree, degree_span) = cur.small_int()?;
        let header = Header {
            name: name.to_string(),
            degree,
            span,
        };

        let mut blocks = Vec::new();
        let mut raw = Vec::new();
        while !cur.at_eof() {
            let t = cur.peek();
            let word = match &t.kind {
                TokenKind::Ident(s) => s.as_str(),
                other => {
                    return Err(SyntaxError::new(
                        t.span,
                        format!("expected a declaration or an entry, found {other}"),
                    ))
                }
            };
            match word {
                "base" | "even" | "odd" => {
                    cur.next();
                    let kind = match word {
                        "base" => GeneratorKind::Base,
                        "even" => GeneratorKind::EvenFiber,
                        _ => GeneratorKind::OddFiber,
                    };
                    let (name, name_span) = cur.ident()?;
                    cur.keyword("weight")?;
                    let (weight, _) = cur.small_int()?;
                    cur.keyword("dim")?;
                    let (dim, _) = cur.small_int()?;
                    blocks.push(BlockNode {
                        decl: BlockDecl::new(name, kind, weight, dim),
                        span: name_span,
                    });
                }
                "d" | "anchor" | "bracket" => {
                    cur.next();
                    let entry = match word {
                        "d" => RawEntry::Assign(cur.indexed()?),
                        "anchor" => RawEntry::Anchor(cur.indexed()?, cur.indexed()?),
                        _ => RawEntry::Bracket(cur.indexed()?, cur.indexed()?, cur.indexed()?),
                    };
                    cur.expect(&TokenKind::Equals)?;
                    let start = cur.pos();
                    while !cur.at_eof() && !is_keyword(cur.peek_kind()) {
                        cur.next();
                    }
                    if start == cur.pos() {
                        return Err(SyntaxError::new(cur.peek().span, "expected expression"));
                    }
                    raw.push(RawStatement {
                        entry,
                        span: t.span,
                        expr: start..cur.pos(),
                    });
                }
                other => {
                    return Err(SyntaxError::new(
                        t.span,
                        format!("expected a declaration or an entry, found `{other}`"),
                    ))
                }
            }
        }

        if blocks.is_empty() {
            return Err(SyntaxError::new(header.span, "no generator blocks declared"));
        }
        let decls: Vec<BlockDecl> = blocks.iter().map(|b| b.decl.clone()).collect();
        let table = GeneratorTable::new(&decls).map_err(|e| block_span_error(&blocks, &header, e))?;
        if table.degree() != degree {
            return Err(SyntaxError::new(
                degree_span,
                format!(
                    "header declares degree {degree} but the blocks have degree {}",
                    table.degree()
                ),
            ));
        }

        let resolve = |(name, index, span): Target<'_>| -> Result<GenId, SyntaxError> {
            table
                .lookup(name, index)
                .ok_or_else(|| SyntaxError::new(span, format!("undeclared generator `{name}[{index}]`")))
        };
        let mut entries = Vec::new();
        let mut targets = BTreeSet::new();
        for stmt in raw {
            let kind = match stmt.entry {
                RawEntry::Assign(g) => {
                    let target = resolve(g)?;
                    if !targets.insert(target) {
                        return Err(SyntaxError::new(
                            g.2,
                            format!("`{}[{}]` is assigned twice", g.0, g.1),
                        ));
                    }
                    EntryKind::Assign { target }
                }
                RawEntry::Anchor(o, e) => EntryKind::Anchor {
                    odd: resolve(o)?,
                    even: resolve(e)?,
                },
                RawEntry::Bracket(l, r, k) => EntryKind::Bracket {
                    left: resolve(l)?,
                    right: resolve(r)?,
                    target: resolve(k)?,
                },
            };
            let end_span = tokens[stmt.expr.end].span;
            let mut slice: Vec<Token> = tokens[stmt.expr.clone()].to_vec();
            slice.push(Token {
                kind: TokenKind::Eof,
                span: end_span,
            });
            let mut sub = Cursor::new(&slice);
            let value = syntax::parse_expr(&mut sub, &DocResolver(&table))?;
            if !sub.at_eof() {
                let t = sub.peek();
                return Err(SyntaxError::new(t.span, format!("unexpected {}", t.kind)));
            }
            entries.push(Entry {
                kind,
                value,
                span: stmt.span,
            });
        }
        let assigns = entries
            .iter()
            .filter(|e| matches!(e.kind, EntryKind::Assign { .. }))
            .count();
        if assigns != 0 && assigns != entries.len() {
            let odd_one = entries
                .iter()
                .find(|e| !matches!(e.kind, EntryKind::Assign { .. }))
                .unwrap();
            return Err(SyntaxError::new(
                odd_one.span,
                "a document uses either `d` assignments or `anchor`/`bracket` tables, not both",
            ));
        }
        Ok(SpecDocument {
            header,
            blocks,
            entries,
            table,
        })
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn uses_tables(&self) -> bool {
        self.entries
            .iter()
            .any(|e| !matches!(e.kind, EntryKind::Assign { .. }))
    }

    /// Build the spec. Weight errors point at the offending entry.
    pub fn to_spec(&self) -> Result<AlgebroidSpec, SyntaxError> {
        let name = self.header.name.clone();
        if !self.uses_tables() {
            let assignments = self.entries.iter().map(|e| match e.kind {
                EntryKind::Assign { target } => (target, e.value.clone()),
                _ => unreachable!(),
            });
            return AlgebroidSpec::from_differential(name, &self.table, assignments).map_err(|err| {
                let span = match &err {
                    Error::WeightMismatch { generator, .. } => self
                        .entries
                        .iter()
                        .find(|e| match e.kind {
                            EntryKind::Assign { target } => {
                                &self.table.generator(target).label() == generator
                            }
                            _ => false,
                        })
                        .map(|e| e.span),
                    _ => None,
                };
                SyntaxError::new(span.unwrap_or(self.header.span), err.to_string())
            });
        }
        let (anchors, brackets) = self.tables();
        AlgebroidSpec::from_tables(name, &self.table, &anchors, &brackets).map_err(|err| {
            // locate the first entry that fails on its own, else the last entry
            let span = self
                .entries
                .iter()
                .find(|e| {
                    let (a, b) = Self::split_entry(e);
                    AlgebroidSpec::from_tables("probe", &self.table, &a, &b).is_err()
                })
                .or(self.entries.last())
                .map(|e| e.span)
                .unwrap_or(self.header.span);
            SyntaxError::new(span, err.to_string())
        })
    }

    fn split_entry(e: &Entry) -> (Vec<AnchorEntry>, Vec<BracketEntry>) {
        match e.kind {
            EntryKind::Anchor { odd, even } => (
                vec![AnchorEntry {
                    odd,
                    even,
                    value: e.value.clone(),
                }],
                vec![],
            ),
            EntryKind::Bracket {
                left,
                right,
                target,
            } => (
                vec![],
                vec![BracketEntry {
                    left,
                    right,
                    target,
                    value: e.value.clone(),
                }],
            ),
            EntryKind::Assign { .. } => (vec![], vec![]),
        }
    }

    fn tables(&self) -> (Vec<AnchorEntry>, Vec<BracketEntry>) {
        let mut anchors = Vec::new();
        let mut brackets = Vec::new();
        for e in &self.entries {
            let (a, b) = Self::split_entry(e);
            anchors.extend(a);
            brackets.extend(b);
        }
        (anchors, brackets)
    }

    fn skeleton(spec: &AlgebroidSpec) -> SpecDocument {
        SpecDocument {
            header: Header {
                name: spec.name().to_string(),
                degree: spec.degree(),
                span: Span::default(),
            },
            blocks: spec
                .table()
                .blocks()
                .iter()
                .map(|b| BlockNode {
                    decl: b.decl.clone(),
                    span: Span::default(),
                })
                .collect(),
            entries: Vec::new(),
            table: spec.table().clone(),
        }
    }

    /// Document with one `d` assignment per generator with nonzero image.
    pub fn from_spec(spec: &AlgebroidSpec) -> SpecDocument {
        let mut doc = Self::skeleton(spec);
        doc.entries = spec
            .ce_differential()
            .images()
            .filter(|(_, e)| !e.is_zero())
            .map(|(g, e)| Entry {
                kind: EntryKind::Assign { target: g },
                value: e.clone(),
                span: Span::default(),
            })
            .collect();
        doc
    }

    /// Document in table form, read back from the differential.
    pub fn tables_from_spec(spec: &AlgebroidSpec) -> SpecDocument {
        let mut doc = Self::skeleton(spec);
        for a in spec.anchor_table() {
            doc.entries.push(Entry {
                kind: EntryKind::Anchor {
                    odd: a.odd,
                    even: a.even,
                },
                value: a.value,
                span: Span::default(),
            });
        }
        for b in spec.bracket_table() {
            doc.entries.push(Entry {
                kind: EntryKind::Bracket {
                    left: b.left,
                    right: b.right,
                    target: b.target,
                },
                value: b.value,
                span: Span::default(),
            });
        }
        doc
    }

    pub fn print(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algebroid {} degree {}", self.header.name, self.header.degree);
        out.push('\n');
        for b in &self.blocks {
            let d = &b.decl;
            let _ = writeln!(
                out,
                "{} {} weight {} dim {}",
                d.kind.keyword(),
                d.name,
                d.weight,
                d.dim
            );
        }
        if !self.entries.is_empty() {
            out.push('\n');
        }
        let label = |g: GenId| self.table.generator(g).label();
        for e in &self.entries {
            let lhs = match e.kind {
                EntryKind::Assign { target } => format!("d {}", label(target)),
                EntryKind::Anchor { odd, even } => format!("anchor {} {}", label(odd), label(even)),
                EntryKind::Bracket {
                    left,
                    right,
                    target,
                } => format!("bracket {} {} {}", label(left), label(right), label(target)),
            };
            let _ = writeln!(out, "{lhs} = {}", e.value);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AFF1: &str = "
        # aff(1) over a point
        algebroid aff1 degree 0
        odd xi weight 0 dim 2
        d xi[2] = xi[1]*xi[2]
    ";

    #[test]
    fn parses_and_round_trips() {
        let doc = SpecDocument::parse(AFF1).unwrap();
        assert_eq!(doc.entries.len(), 1);
        assert_eq!((doc.entries[0].span.line, doc.entries[0].span.col), (5, 9));
        let again = SpecDocument::parse(&doc.print()).unwrap();
        assert_eq!(again, doc);
        assert!(doc.to_spec().unwrap().is_homological().passed());
    }

    #[test]
    fn undeclared_generator_points_at_token() {
        let err = SpecDocument::parse(
            "algebroid t degree 0\nbase x weight 0 dim 1\nodd y weight 0 dim 1\nd z[1] = y[1]*x[1]",
        )
        .unwrap_err();
        assert_eq!((err.span.line, err.span.col), (4, 3));
        assert!(err.message.contains("z[1]"));
    }

    #[test]
    fn empty_document_needs_header() {
        let err = SpecDocument::parse("  # nothing\n").unwrap_err();
        assert!(err.message.contains("missing header"));
    }

    #[test]
    fn weight_errors_carry_the_entry_span() {
        let doc = SpecDocument::parse(
            "algebroid t degree 0\nbase x weight 0 dim 1\nodd y weight 0 dim 1\nd x[1] = y[1]\nd y[1] = x[1]",
        )
        .unwrap();
        let err = doc.to_spec().unwrap_err();
        assert_eq!(err.span.line, 5);
    }

    #[test]
    fn tables_and_assignments_do_not_mix() {
        let err = SpecDocument::parse(
            "algebroid t degree 0\nodd y weight 0 dim 2\nd y[2] = y[1]*y[2]\nbracket y[2] y[1] y[2] = 1",
        )
        .unwrap_err();
        assert_eq!(err.span.line, 4);
    }

    #[test]
    fn table_form_matches_assignment_form() {
        let doc = SpecDocument::parse(
            "algebroid aff1 degree 0\nodd xi weight 0 dim 2\nbracket xi[1] xi[2] xi[2] = -1",
        )
        .unwrap();
        let a = doc.to_spec().unwrap();
        let b = SpecDocument::parse(AFF1).unwrap().to_spec().unwrap();
        assert_eq!(a.ce_differential(), b.ce_differential());
        let t = SpecDocument::tables_from_spec(&a);
        assert_eq!(SpecDocument::parse(&t.print()).unwrap(), t);
    }

    #[test]
    fn header_degree_must_match() {
        let err = SpecDocument::parse("algebroid t degree 1\nodd y weight 0 dim 1").unwrap_err();
        assert_eq!((err.span.line, err.span.col), (1, 20));
    }
}
