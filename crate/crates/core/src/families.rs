//! Constructors for standard families of weighted Lie algebroids, plus the
//! fixtures shipped under `specs/`.
//!
//! Constructors emit `d_E` on generators directly.

use std::sync::Arc;

use crate::algebra::{q, BlockDecl, Element, GenId, GeneratorKind, GeneratorTable, Substitution};
use crate::algebroid::{AlgebroidSpec, AnchorEntry, BracketEntry};
use crate::error::{Error, Result};

fn check_fresh(decls: &[BlockDecl], name: &str) -> Result<()> {
    if decls.iter().any(|d| d.name == name) {
        return Err(Error::NameClash(name.to_string()));
    }
    Ok(())
}

/// Generator map from `from` into `to` by label.
fn label_map(from: &GeneratorTable, to: &GeneratorTable) -> Vec<Option<GenId>> {
    from.generators()
        .map(|(_, g)| to.lookup(&g.name, g.index))
        .collect()
}

fn ensure_degree_zero(a: &AlgebroidSpec) -> Result<()> {
    if a.degree() != 0 {
        return Err(Error::NotDegreeZero(a.degree()));
    }
    Ok(())
}

/// The cotangent prolongation `T*A` of a degree-zero algebroid, a
/// 𝒱ℬ-algebroid with chart `(x, y; z wt 1, p wt 1 odd)`:
///
/// ```text
/// d z_i = Q_i^a p_a + y^j Q_{ji}^k z_k
/// d p_a = −y^i ∂_a Q_i^b p_b − ½ y^i y^j ∂_a Q_{ji}^k z_k
/// ```
pub fn cotangent_prolongation(a: &AlgebroidSpec) -> Result<AlgebroidSpec> {
    ensure_degree_zero(a)?;
    let old = a.table();
    let mut decls = old.decls();
    check_fresh(&decls, "z")?;
    check_fresh(&decls, "p")?;
    let ys_old = old.odd_ids();
    let xs_old = a.base_ids();
    decls.push(BlockDecl::even("z", 1, ys_old.len() as u32));
    if !xs_old.is_empty() {
        decls.push(BlockDecl::odd("p", 1, xs_old.len() as u32));
    }
    let t = GeneratorTable::new(&decls)?;
    let map = label_map(old, &t);
    let new = |g: GenId| map[g.0].expect("old generators survive");
    let ys: Vec<GenId> = ys_old.iter().map(|&g| new(g)).collect();
    let xs: Vec<GenId> = xs_old.iter().map(|&g| new(g)).collect();
    let var = |g: GenId| Element::generator(&t, g);
    let z = |k: usize| Element::var(&t, "z", k as u32 + 1);
    let p = |b: usize| Element::var(&t, "p", b as u32 + 1);

    let anchor = |i: usize, b: usize| a.anchor(ys_old[i], xs_old[b]).remap(&t, &map);
    let bracket =
        |j: usize, i: usize, k: usize| a.bracket(ys_old[j], ys_old[i], ys_old[k]).remap(&t, &map);
    let n = ys.len();
    let m = xs.len();
    let half = Element::constant(&t, q(1, 2));

    let mut assignments: Vec<(GenId, Element)> = a
        .ce_differential()
        .images()
        .map(|(g, e)| (new(g), e.remap(&t, &map)))
        .collect();
    for i in 0..n {
        let mut dz = Element::zero(&t);
        for b in 0..m {
            dz += &(&anchor(i, b) * &p(b));
        }
        for j in 0..n {
            for k in 0..n {
                dz += &(&(&var(ys[j]) * &bracket(j, i, k)) * &z(k));
            }
        }
        assignments.push((t.lookup("z", i as u32 + 1).unwrap(), dz));
    }
    for c in 0..m {
        let mut dp = Element::zero(&t);
        for i in 0..n {
            for b in 0..m {
                let d = anchor(i, b).partial_derivative(xs[c]);
                dp -= &(&(&var(ys[i]) * &d) * &p(b));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let yy = &var(ys[i]) * &var(ys[j]);
                for k in 0..n {
                    let d = bracket(j, i, k).partial_derivative(xs[c]);
                    dp -= &(&(&(&half * &yy) * &d) * &z(k));
                }
            }
        }
        assignments.push((t.lookup("p", c as u32 + 1).unwrap(), dp));
    }
    AlgebroidSpec::from_differential(format!("{}_cotangent", a.name()), &t, assignments)
}

fn partner(name: &str) -> String {
    format!("d{name}")
}

/// `T F` for a graded bundle `F` given by base and even blocks: every block
/// gets an odd partner `d<name>` of the same weight, `d g = dg`, `d dg = 0`.
pub fn tangent_graded_bundle(name: &str, f: &[BlockDecl]) -> Result<AlgebroidSpec> {
    let mut decls = f.to_vec();
    for d in f {
        if d.kind == GeneratorKind::OddFiber {
            return Err(Error::OddInGradedBundle(d.name.clone()));
        }
        let p = partner(&d.name);
        check_fresh(&decls, &p)?;
        decls.push(BlockDecl::odd(p, d.weight, d.dim));
    }
    let t = GeneratorTable::new(&decls)?;
    let assignments: Vec<(GenId, Element)> = f
        .iter()
        .flat_map(|d| {
            let t = &t;
            (1..=d.dim).map(move |k| {
                (
                    t.lookup(&d.name, k).unwrap(),
                    Element::var(t, &partner(&d.name), k),
                )
            })
        })
        .collect();
    AlgebroidSpec::from_differential(name, &t, assignments)
}

/// Prolongation of the graded bundle `f` along the degree-zero algebroid `a`
/// sharing its base: chart `(x, z_w; y, dz_w)` with `d z = dz` and `a`'s
/// differential on `x, y`.
pub fn algebroid_prolongation(a: &AlgebroidSpec, f: &[BlockDecl]) -> Result<AlgebroidSpec> {
    ensure_degree_zero(a)?;
    let old = a.table();
    let mut a_base: Vec<BlockDecl> = old
        .decls()
        .into_iter()
        .filter(|d| d.kind == GeneratorKind::Base)
        .collect();
    let mut f_base: Vec<BlockDecl> = f
        .iter()
        .filter(|d| d.kind == GeneratorKind::Base)
        .cloned()
        .collect();
    a_base.sort_by(|l, r| l.name.cmp(&r.name));
    f_base.sort_by(|l, r| l.name.cmp(&r.name));
    if a_base != f_base {
        let show = |v: &[BlockDecl]| {
            v.iter()
                .map(|d| format!("{}:{}", d.name, d.dim))
                .collect::<Vec<_>>()
                .join(" ")
        };
        return Err(Error::BaseMismatch(format!(
            "algebroid has [{}], bundle has [{}]",
            show(&a_base),
            show(&f_base)
        )));
    }
    let mut decls = old.decls();
    let fibres: Vec<&BlockDecl> = f.iter().filter(|d| d.kind != GeneratorKind::Base).collect();
    for d in &fibres {
        if d.kind == GeneratorKind::OddFiber {
            return Err(Error::OddInGradedBundle(d.name.clone()));
        }
        check_fresh(&decls, &d.name)?;
        decls.push((*d).clone());
    }
    for d in &fibres {
        let p = partner(&d.name);
        check_fresh(&decls, &p)?;
        decls.push(BlockDecl::odd(p, d.weight, d.dim));
    }
    let t = GeneratorTable::new(&decls)?;
    let map = label_map(old, &t);
    let mut assignments: Vec<(GenId, Element)> = a
        .ce_differential()
        .images()
        .map(|(g, e)| (map[g.0].unwrap(), e.remap(&t, &map)))
        .collect();
    for d in &fibres {
        for k in 1..=d.dim {
            assignments.push((
                t.lookup(&d.name, k).unwrap(),
                Element::var(&t, &partner(&d.name), k),
            ));
        }
    }
    AlgebroidSpec::from_differential(format!("{}_prolongation", a.name()), &t, assignments)
}

/// A weighted Lie algebroid over a point, from structure tables.
pub fn weighted_lie_algebra(
    name: &str,
    table: &Arc<GeneratorTable>,
    anchors: &[AnchorEntry],
    brackets: &[BracketEntry],
) -> Result<AlgebroidSpec> {
    if let Some(b) = table.blocks().iter().find(|b| b.decl.kind == GeneratorKind::Base) {
        return Err(Error::HasBase(b.decl.name.clone()));
    }
    AlgebroidSpec::from_tables(name, table, anchors, brackets)
}

fn el(t: &Arc<GeneratorTable>, s: &str) -> Element {
    Element::parse(t, s).expect("fixture expression")
}

fn id(t: &GeneratorTable, label: &str) -> GenId {
    t.lookup_label(label).expect("fixture label")
}

fn lie_algebra(name: &str, dim: u32, brackets: &[(u32, u32, u32, i64)]) -> AlgebroidSpec {
    let t = GeneratorTable::new(&[BlockDecl::odd("xi", 0, dim)]).unwrap();
    let g = |i| t.lookup("xi", i).unwrap();
    let entries: Vec<BracketEntry> = brackets
        .iter()
        .map(|&(l, r, k, c)| BracketEntry {
            left: g(l),
            right: g(r),
            target: g(k),
            value: Element::constant(&t, q(c, 1)),
        })
        .collect();
    AlgebroidSpec::from_tables(name, &t, &[], &entries).unwrap()
}

/// The abelian Lie algebra `ℝ^n`.
pub fn abelian(n: u32) -> AlgebroidSpec {
    lie_algebra(&format!("abelian{n}"), n, &[])
}

/// `aff(1)` with `[ξ_2, ξ_1] = ξ_2`, so `d ξ^2 = ξ^1 ξ^2`.
pub fn aff1() -> AlgebroidSpec {
    lie_algebra("aff1", 2, &[(2, 1, 2, 1)])
}

/// `sl(2)` in the basis `(e, f, h)`.
pub fn sl2() -> AlgebroidSpec {
    lie_algebra("sl2", 3, &[(1, 2, 3, 1), (3, 1, 1, 2), (3, 2, 2, -2)])
}

/// `[s1,s2] = s3 + s1`, `[s2,s3] = s1`, `[s3,s1] = s2`: fails Jacobi.
pub fn broken() -> AlgebroidSpec {
    lie_algebra("broken", 3, &[(1, 2, 3, 1), (2, 3, 1, 1), (3, 1, 2, 1), (1, 2, 1, 1)])
}

/// `T ℝ^n` with coordinates `x` and `y = dx`.
pub fn tangent_algebroid(n: u32) -> AlgebroidSpec {
    let t = GeneratorTable::new(&[BlockDecl::base("x", n), BlockDecl::odd("y", 0, n)]).unwrap();
    let anchors: Vec<AnchorEntry> = (1..=n)
        .map(|k| AnchorEntry {
            odd: t.lookup("y", k).unwrap(),
            even: t.lookup("x", k).unwrap(),
            value: Element::one(&t),
        })
        .collect();
    AlgebroidSpec::from_tables(format!("tangent{n}"), &t, &anchors, &[]).unwrap()
}

/// Action algebroid of `aff(1)` on `ℝ²`: `ρ(s_1) = x^1∂_1 + x^2∂_2`,
/// `ρ(s_2) = ∂_2`, `[s_2, s_1] = s_2`.
pub fn aff1_action() -> AlgebroidSpec {
    let t = GeneratorTable::new(&[BlockDecl::base("x", 2), BlockDecl::odd("y", 0, 2)]).unwrap();
    let anchor = |o: &str, e: &str, v: &str| AnchorEntry {
        odd: id(&t, o),
        even: id(&t, e),
        value: el(&t, v),
    };
    AlgebroidSpec::from_tables(
        "aff1_action",
        &t,
        &[
            anchor("y[1]", "x[1]", "x[1]"),
            anchor("y[1]", "x[2]", "x[2]"),
            anchor("y[2]", "x[2]", "1"),
        ],
        &[BracketEntry {
            left: id(&t, "y[2]"),
            right: id(&t, "y[1]"),
            target: id(&t, "y[2]"),
            value: Element::one(&t),
        }],
    )
    .unwrap()
}

/// The adjoint 𝒱ℬ-algebroid: cotangent prolongation of [`aff1_action`].
pub fn adjoint() -> AlgebroidSpec {
    cotangent_prolongation(&aff1_action())
        .unwrap()
        .with_name("adjoint")
}

/// Chart of a degree-2 weighted algebroid over a rank-2 algebroid on ℝ².
pub fn e3_chart() -> Vec<BlockDecl> {
    vec![
        BlockDecl::base("x", 2),
        BlockDecl::even("z", 1, 3),
        BlockDecl::even("u", 2, 1),
        BlockDecl::odd("y", 0, 2),
        BlockDecl::odd("w", 1, 2),
        BlockDecl::odd("v", 2, 1),
    ]
}

/// The graded bundle `(x; z wt 1; u wt 2)` underlying [`e3_chart`].
pub fn e3_graded_bundle() -> Vec<BlockDecl> {
    vec![
        BlockDecl::base("x", 2),
        BlockDecl::even("z", 1, 3),
        BlockDecl::even("u", 2, 1),
    ]
}

/// A degree-2 weighted algebroid on the [`e3_chart`] over [`aff1_action`].
///
/// Built from a split seed (`d z = K w`, `d u = v`, `d w = d v = 0`) by the
/// coordinate change
///
/// ```text
/// z1 ↦ z1 + x2 z2            u ↦ u + z1² − x1 z2 z3
/// w1 ↦ w1 + x2 y1 z1 + y2 z3  w2 ↦ w2 + y1 z2
/// v  ↦ v + z1 w2 + x1 z3 w1 + y2 u + y1 z1 z2
/// ```
///
/// so that every term shape of the general degree-2 differential occurs.
pub fn e7() -> AlgebroidSpec {
    let t = GeneratorTable::new(&e3_chart()).unwrap();
    let base = aff1_action();
    let map = label_map(base.table(), &t);
    let mut seed: Vec<(GenId, Element)> = base
        .ce_differential()
        .images()
        .map(|(g, e)| (map[g.0].unwrap(), e.remap(&t, &map)))
        .collect();
    for (g, v) in [
        ("z[1]", "w[1]"),
        ("z[2]", "w[2]"),
        ("z[3]", "w[1] - w[2]"),
        ("u[1]", "v[1]"),
    ] {
        seed.push((id(&t, g), el(&t, v)));
    }
    let seed = AlgebroidSpec::from_differential("e7", &t, seed).unwrap();
    let changes = [
        ("z[1]", "z[1] + x[2]*z[2]"),
        ("u[1]", "u[1] + z[1]^2 - x[1]*z[2]*z[3]"),
        ("w[1]", "w[1] + x[2]*y[1]*z[1] + y[2]*z[3]"),
        ("w[2]", "w[2] + y[1]*z[2]"),
        ("v[1]", "v[1] + z[1]*w[2] + x[1]*z[3]*w[1] + y[2]*u[1] + y[1]*z[1]*z[2]"),
    ];
    let phi = Substitution::new(
        &t,
        changes.iter().map(|(g, v)| (id(&t, g), el(&t, v))).collect(),
    )
    .unwrap();
    let order: Vec<GenId> = changes.iter().map(|(g, _)| id(&t, g)).collect();
    seed.conjugate(&phi, &order).unwrap()
}

/// Smallest nonabelian weighted Lie algebra: `aff(1)` acting on a core `v`
/// and a side `z`, both of weight 1.
pub fn aff1_core() -> AlgebroidSpec {
    let t = GeneratorTable::new(&[
        BlockDecl::even("z", 1, 1),
        BlockDecl::odd("y", 0, 2),
        BlockDecl::odd("v", 1, 1),
    ])
    .unwrap();
    weighted_lie_algebra(
        "aff1_core",
        &t,
        &[
            AnchorEntry {
                odd: id(&t, "y[1]"),
                even: id(&t, "z[1]"),
                value: el(&t, "z[1]"),
            },
            AnchorEntry {
                odd: id(&t, "v[1]"),
                even: id(&t, "z[1]"),
                value: Element::one(&t),
            },
        ],
        &[
            BracketEntry {
                left: id(&t, "v[1]"),
                right: id(&t, "y[1]"),
                target: id(&t, "v[1]"),
                value: Element::one(&t),
            },
            BracketEntry {
                left: id(&t, "y[2]"),
                right: id(&t, "y[1]"),
                target: id(&t, "y[2]"),
                value: Element::one(&t),
            },
        ],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_homological() {
        for spec in [
            abelian(2),
            aff1(),
            sl2(),
            tangent_algebroid(2),
            aff1_action(),
            adjoint(),
            e7(),
            aff1_core(),
        ] {
            assert!(spec.is_homological().passed(), "{}", spec.name());
            assert!(spec.check_structure_equations().passed(), "{}", spec.name());
        }
        assert!(!broken().is_homological().passed());
    }

    #[test]
    fn tangent_line_prolongation() {
        let spec = cotangent_prolongation(&tangent_algebroid(1)).unwrap();
        let t = spec.table();
        let d = spec.ce_differential();
        assert_eq!(d.image(id(t, "z[1]")), &Element::var(t, "p", 1));
        assert!(d.image(id(t, "p[1]")).is_zero());
    }

    #[test]
    fn aff1_prolongation_has_no_p() {
        let spec = cotangent_prolongation(&aff1()).unwrap();
        let t = spec.table();
        assert!(t.block("p").is_none());
        assert!(spec.is_homological().passed());
        assert_eq!(
            spec.ce_differential().image(id(t, "z[1]")),
            &el(t, "xi[2]*z[2]")
        );
    }

    #[test]
    fn prolongation_of_tangent_is_tangent_of_bundle() {
        let f = vec![BlockDecl::base("x", 1), BlockDecl::even("z", 1, 2)];
        let t = GeneratorTable::new(&[BlockDecl::base("x", 1), BlockDecl::odd("dx", 0, 1)]).unwrap();
        let tm = AlgebroidSpec::from_differential(
            "tm",
            &t,
            [(id(&t, "x[1]"), Element::var(&t, "dx", 1))],
        )
        .unwrap();
        let a = algebroid_prolongation(&tm, &f).unwrap();
        let b = tangent_graded_bundle("tf", &f).unwrap();
        assert_eq!(a.ce_differential(), b.ce_differential());
    }

    #[test]
    fn constructor_errors() {
        let f = vec![BlockDecl::base("q", 1), BlockDecl::even("z", 1, 1)];
        assert!(matches!(
            algebroid_prolongation(&aff1_action(), &f),
            Err(Error::BaseMismatch(_))
        ));
        assert!(matches!(
            tangent_graded_bundle("bad", &[BlockDecl::odd("w", 1, 1)]),
            Err(Error::OddInGradedBundle(_))
        ));
        assert!(matches!(
            cotangent_prolongation(&adjoint()),
            Err(Error::NotDegreeZero(1))
        ));
        let t = GeneratorTable::new(&[BlockDecl::base("x", 1), BlockDecl::odd("y", 0, 1)]).unwrap();
        assert!(matches!(
            weighted_lie_algebra("bad", &t, &[], &[]),
            Err(Error::HasBase(_))
        ));
    }
}
