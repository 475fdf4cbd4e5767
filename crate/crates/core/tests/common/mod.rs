//! Test-side generators and oracles shared by the integration tests and the
//! acceptance gate. Oracles here are written against the conventions only,
//! not against library internals.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weighted_algebroids::algebra::{q, qi, Substitution};
use weighted_algebroids::algebroid::{AnchorEntry, BracketEntry};
use weighted_algebroids::dsl::SpecDocument;
use weighted_algebroids::{
    AlgebroidSpec, BiWeight, BlockDecl, Element, GenId, GeneratorKind, GeneratorTable, Monomial,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn specs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs")
}

/// Every `.spec` file shipped in `specs/`, parsed, in file-name order.
pub fn shipped_specs() -> Vec<(String, AlgebroidSpec)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(specs_dir())
        .expect("specs directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "spec"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let spec = SpecDocument::parse(&text)
                .and_then(|d| d.to_spec())
                .unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            (p.file_stem().unwrap().to_string_lossy().into_owned(), spec)
        })
        .collect()
}

/// Shipped specs whose differential squares to zero.
pub fn valid_shipped_specs() -> Vec<(String, AlgebroidSpec)> {
    shipped_specs()
        .into_iter()
        .filter(|(_, s)| s.is_homological().passed())
        .collect()
}

// ---------------------------------------------------------------- elements

pub fn random_monomial(table: &GeneratorTable, rng: &mut impl Rng, max_factors: usize) -> Monomial {
    let ids: Vec<GenId> = table.ids().collect();
    let mut even: BTreeMap<GenId, u32> = BTreeMap::new();
    let mut odd: Vec<GenId> = Vec::new();
    for _ in 0..rng.gen_range(0..=max_factors) {
        let g = *ids.choose(rng).unwrap();
        if table.generator(g).is_odd() {
            if !odd.contains(&g) {
                odd.push(g);
            }
        } else {
            *even.entry(g).or_default() += 1;
        }
    }
    let even: Vec<(GenId, u32)> = even.into_iter().collect();
    Monomial::from_factors(&even, &odd).expect("distinct odd factors").1
}

pub fn random_coefficient(rng: &mut impl Rng) -> weighted_algebroids::Rational {
    let mut n = rng.gen_range(-5i64..=5);
    if n == 0 {
        n = 1;
    }
    q(n, rng.gen_range(1i64..=3))
}

pub fn random_element(table: &Arc<GeneratorTable>, rng: &mut impl Rng, terms: usize) -> Element {
    let mut e = Element::zero(table);
    for _ in 0..terms {
        let m = random_monomial(table, rng, 4);
        e += &Element::monomial(table, m, random_coefficient(rng));
    }
    e
}

/// A random element homogeneous for the bi-weight, with 1 to 4 terms drawn
/// from a pool of random monomials.
pub fn random_bihomogeneous(table: &Arc<GeneratorTable>, rng: &mut impl Rng) -> (BiWeight, Element) {
    let mut pool: BTreeMap<BiWeight, Vec<Monomial>> = BTreeMap::new();
    for _ in 0..60 {
        let m = random_monomial(table, rng, 4);
        pool.entry(m.bi_weight(table)).or_default().push(m);
    }
    let keys: Vec<BiWeight> = pool.keys().copied().collect();
    let w = *keys.choose(rng).unwrap();
    let mut e = Element::zero(table);
    for _ in 0..rng.gen_range(1..=4) {
        let m = pool[&w].choose(rng).unwrap().clone();
        e += &Element::monomial(table, m, random_coefficient(rng));
    }
    (w, e)
}

// ------------------------------------------------------- degree-zero specs

/// A degree-zero spec in table form.
#[derive(Clone)]
pub struct TableSpec {
    pub label: String,
    pub table: Arc<GeneratorTable>,
    pub anchors: Vec<AnchorEntry>,
    pub brackets: Vec<BracketEntry>,
}

impl TableSpec {
    fn new(label: &str, base: u32, rank: u32) -> Self {
        let mut decls = Vec::new();
        if base > 0 {
            decls.push(BlockDecl::base("x", base));
        }
        decls.push(BlockDecl::odd("y", 0, rank));
        TableSpec {
            label: label.to_string(),
            table: GeneratorTable::new(&decls).unwrap(),
            anchors: Vec::new(),
            brackets: Vec::new(),
        }
    }

    pub fn x(&self, a: u32) -> GenId {
        self.table.lookup("x", a).unwrap()
    }

    pub fn y(&self, i: u32) -> GenId {
        self.table.lookup("y", i).unwrap()
    }

    pub fn el(&self, s: &str) -> Element {
        Element::parse(&self.table, s).unwrap()
    }

    /// `ρ(s_i)` has `value` as its `∂/∂x^a` coefficient.
    /// Repeated slots add up.
    fn anchor(mut self, i: u32, a: u32, value: &str) -> Self {
        let (odd, even, v) = (self.y(i), self.x(a), self.el(value));
        match self.anchors.iter_mut().find(|e| e.odd == odd && e.even == even) {
            Some(e) => e.value = &e.value + &v,
            None => self.anchors.push(AnchorEntry {
                odd,
                even,
                value: v,
            }),
        }
        self
    }

    /// `[s_i, s_j]` has `value` as its `s_k` coefficient. Repeated slots add
    /// up, with the sign flipped when the pair is given in reverse.
    fn bracket(mut self, i: u32, j: u32, k: u32, value: &str) -> Self {
        let (l, r, target, v) = (self.y(i), self.y(j), self.y(k), self.el(value));
        let slot = self.brackets.iter_mut().find(|e| {
            e.target == target && ((e.left, e.right) == (l, r) || (e.left, e.right) == (r, l))
        });
        match slot {
            Some(e) if e.left == l => e.value = &e.value + &v,
            Some(e) => e.value = &e.value - &v,
            None => self.brackets.push(BracketEntry {
                left: l,
                right: r,
                target,
                value: v,
            }),
        }
        self
    }

    pub fn build(&self) -> AlgebroidSpec {
        AlgebroidSpec::from_tables(&self.label, &self.table, &self.anchors, &self.brackets)
            .expect("weight-consistent tables")
    }

    pub fn base_dim(&self) -> u32 {
        self.table.block("x").map_or(0, |b| b.decl.dim)
    }

    pub fn rank(&self) -> u32 {
        self.table.block("y").unwrap().decl.dim
    }
}

fn small_int(rng: &mut impl Rng) -> i64 {
    rng.gen_range(-2i64..=2)
}

/// A random polynomial of degree ≤ `deg` in the base coordinates.
pub fn random_base_poly(t: &TableSpec, rng: &mut impl Rng, deg: u32, terms: usize) -> String {
    let n = t.base_dim();
    let mut parts = Vec::new();
    for _ in 0..terms {
        let c = small_int(rng);
        if c == 0 {
            continue;
        }
        let mut m = format!("{c}");
        if n > 0 {
            for _ in 0..rng.gen_range(0..=deg) {
                m.push_str(&format!("*x[{}]", rng.gen_range(1..=n)));
            }
        }
        parts.push(m);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `ℝ ⋉_M ℝ²`: `[s1, s2] = M11 s2 + M21 s3`, `[s1, s3] = M12 s2 + M22 s3`.
/// With `base = 1` the matrix entries are polynomials in `x` and the anchor
/// vanishes (a bundle of Lie algebras).
pub fn semidirect(rng: &mut impl Rng, base: u32) -> TableSpec {
    let t = TableSpec::new("semidirect", base, 3);
    let m: Vec<String> = (0..4)
        .map(|_| {
            if base == 0 {
                small_int(rng).to_string()
            } else {
                random_base_poly(&t, rng, 2, 2)
            }
        })
        .collect();
    t.bracket(1, 2, 2, &m[0])
        .bracket(1, 2, 3, &m[1])
        .bracket(1, 3, 2, &m[2])
        .bracket(1, 3, 3, &m[3])
}

/// Heisenberg algebra scaled by `c`.
pub fn heisenberg(c: i64) -> TableSpec {
    TableSpec::new("heisenberg", 0, 3).bracket(1, 2, 3, &c.to_string())
}

/// `sl2` acting on the line by `∂, x∂, x²∂`.
pub fn sl2_on_line() -> TableSpec {
    TableSpec::new("sl2_line", 1, 3)
        .anchor(1, 1, "1")
        .anchor(2, 1, "x[1]")
        .anchor(3, 1, "x[1]^2")
        .bracket(1, 2, 1, "1")
        .bracket(1, 3, 2, "2")
        .bracket(2, 3, 3, "1")
}

/// `aff(1)` acting on the line by `∂, x∂`.
pub fn aff1_on_line() -> TableSpec {
    TableSpec::new("aff1_line", 1, 2)
        .anchor(1, 1, "1")
        .anchor(2, 1, "x[1]")
        .bracket(1, 2, 1, "1")
}

/// `aff(1)` acting on the plane: `ρ(s1) = x1∂1 + x2∂2`, `ρ(s2) = ∂2`.
pub fn aff1_on_plane() -> TableSpec {
    TableSpec::new("aff1_plane", 2, 2)
        .anchor(1, 1, "x[1]")
        .anchor(1, 2, "x[2]")
        .anchor(2, 2, "1")
        .bracket(2, 1, 2, "1")
}

pub fn tangent(n: u32) -> TableSpec {
    let mut t = TableSpec::new("tangent", n, n);
    for a in 1..=n {
        t = t.anchor(a, a, "1");
    }
    t
}

/// Rank-2 bundle of Lie algebras over `ℝ^n` with `[s1, s2] = f s2`.
pub fn rank_two_bundle(rng: &mut impl Rng, n: u32) -> TableSpec {
    let t = TableSpec::new("bundle2", n, 2);
    let f = random_base_poly(&t, rng, 2, 3);
    t.bracket(1, 2, 2, &f)
}

pub fn valid_family(rng: &mut impl Rng) -> TableSpec {
    match rng.gen_range(0..8) {
        0 => semidirect(rng, 0),
        1 => semidirect(rng, 1),
        2 => heisenberg(rng.gen_range(1..=3)),
        3 => sl2_on_line(),
        4 => aff1_on_line(),
        5 => aff1_on_plane(),
        6 => tangent(rng.gen_range(1..=3)),
        _ => {
            let n = rng.gen_range(1..=2);
            rank_two_bundle(rng, n)
        }
    }
}

/// A fully random table, usually violating the structure equations.
pub fn random_tables(rng: &mut impl Rng) -> TableSpec {
    let base = rng.gen_range(0..=2);
    let rank = rng.gen_range(1..=3);
    let mut t = TableSpec::new("random", base, rank);
    for _ in 0..rng.gen_range(1..=4) {
        if base > 0 && rng.gen_bool(0.5) {
            let (i, a) = (rng.gen_range(1..=rank), rng.gen_range(1..=base));
            let v = random_base_poly(&t, rng, 2, 2);
            t = t.anchor(i, a, &v);
        } else if rank >= 2 {
            let i = rng.gen_range(1..rank);
            let j = rng.gen_range(i + 1..=rank);
            let k = rng.gen_range(1..=rank);
            let v = random_base_poly(&t, rng, 2, 2);
            t = t.bracket(i, j, k, &v);
        }
    }
    t
}

/// Perturbs exactly one anchor or bracket coefficient.
pub fn mutate(t: &TableSpec, rng: &mut impl Rng) -> TableSpec {
    let mut m = t.clone();
    m.label = format!("{}_mutant", t.label);
    let rank = t.rank();
    let base = t.base_dim();
    let delta = if base > 0 && rng.gen_bool(0.5) {
        format!("{}*x[{}]", [1, -1, 2][rng.gen_range(0..3)], rng.gen_range(1..=base))
    } else {
        ["1", "-1", "2"][rng.gen_range(0..3)].to_string()
    };
    if base > 0 && (rank < 2 || rng.gen_bool(0.5)) {
        let (i, a) = (rng.gen_range(1..=rank), rng.gen_range(1..=base));
        m = m.anchor(i, a, &delta);
    } else {
        let i = rng.gen_range(1..rank);
        let j = rng.gen_range(i + 1..=rank);
        let k = rng.gen_range(1..=rank);
        m = m.bracket(i, j, k, &delta);
    }
    m
}

/// A triangular change of frame `y_i ↦ y_i + c·x^a y_j` (`j > i`) and of
/// coordinates `x_1 ↦ x_1 + c'·x_2`, applied to a valid spec.
pub fn random_frame_change(spec: &AlgebroidSpec, rng: &mut impl Rng) -> AlgebroidSpec {
    let table = spec.table();
    let y = |i| table.lookup("y", i);
    let x = |a| table.lookup("x", a);
    let rank = table.block("y").unwrap().decl.dim;
    let base = table.block("x").map_or(0, |b| b.decl.dim);
    let mut images = Vec::new();
    let mut order = Vec::new();
    if rank >= 2 {
        let i = rng.gen_range(1..rank);
        let j = rng.gen_range(i + 1..=rank);
        let mut f = Element::constant(table, qi(rng.gen_range(1..=2)));
        if base > 0 && rng.gen_bool(0.5) {
            f = &f * &Element::generator(table, x(rng.gen_range(1..=base)).unwrap());
        }
        let yi = Element::generator(table, y(i).unwrap());
        let yj = Element::generator(table, y(j).unwrap());
        images.push((y(i).unwrap(), &yi + &(&f * &yj)));
        order.push(y(i).unwrap());
    }
    if base >= 2 {
        let x1 = Element::generator(table, x(1).unwrap());
        let x2 = Element::generator(table, x(2).unwrap());
        let c = Element::constant(table, qi(rng.gen_range(1..=2)));
        images.push((x(1).unwrap(), &x1 + &(&c * &x2)));
        order.push(x(1).unwrap());
    }
    // base coordinates first: the frame change may involve them
    order.reverse();
    let phi = Substitution::new(table, images).unwrap();
    spec.conjugate(&phi, &order).unwrap()
}

// ------------------------------------------------------------ W enumerator

/// Counts monomials in the positive-weight generators of `decls` with total
/// weight `i` and `j` odd factors, by explicit enumeration.
pub fn brute_force_w(decls: &[BlockDecl], i: u32, j: u32) -> usize {
    let gens: Vec<(u32, bool)> = decls
        .iter()
        .filter(|d| d.weight > 0)
        .flat_map(|d| std::iter::repeat_n((d.weight, d.kind == GeneratorKind::OddFiber), d.dim as usize))
        .collect();
    fn walk(gens: &[(u32, bool)], weight: u32, odd: u32) -> usize {
        match gens.split_first() {
            None => usize::from(weight == 0 && odd == 0),
            Some((&(w, is_odd), rest)) => {
                let max_exp = if is_odd { 1 } else { weight / w };
                (0..=max_exp)
                    .filter(|e| e * w <= weight && (!is_odd || *e <= odd))
                    .map(|e| walk(rest, weight - e * w, if is_odd { odd - e } else { odd }))
                    .sum()
            }
        }
    }
    walk(&gens, i, j)
}

/// A random chart of degree ≤ 3.
pub fn random_chart(rng: &mut impl Rng) -> Vec<BlockDecl> {
    let mut decls = Vec::new();
    if rng.gen_bool(0.7) {
        decls.push(BlockDecl::base("x", rng.gen_range(1..=2)));
    }
    let mut n = 0;
    for w in 1..=3 {
        for odd in [false, true] {
            let dim = rng.gen_range(0..=3);
            if dim > 0 {
                n += 1;
                let name = format!("{}{n}", if odd { "c" } else { "b" });
                decls.push(if odd {
                    BlockDecl::odd(name, w, dim)
                } else {
                    BlockDecl::even(name, w, dim)
                });
            }
        }
    }
    if rng.gen_bool(0.7) {
        decls.push(BlockDecl::odd("y", 0, rng.gen_range(1..=2)));
    }
    if decls.is_empty() {
        decls.push(BlockDecl::even("b", 1, 1));
    }
    decls
}

// ---------------------------------------------------------- GF(p) CE oracle

pub const PRIME: i64 = 1_000_003;

fn modp(a: i64) -> i64 {
    a.rem_euclid(PRIME)
}

fn inv(a: i64) -> i64 {
    let (mut r, mut base, mut e) = (1i64, modp(a), PRIME - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % PRIME;
        }
        base = base * base % PRIME;
        e >>= 1;
    }
    r
}

pub fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = inv(rows[rank][c]);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * pivot % PRIME;
                let pivot_row = rows[rank].clone();
                for (k, v) in rows[r].iter_mut().enumerate().take(cols).skip(c) {
                    *v = modp(*v - f * pivot_row[k]);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers of the Chevalley–Eilenberg complex of the Lie algebra with
/// `[e_i, e_j] = Σ_k c e_k` for each `(i, j, k, c)` (0-based, antisymmetry
/// filled in), computed over GF(p) from the coboundary formula
/// `dα(x_0..x_p) = Σ_{s<t} (−1)^{s+t} α([x_s, x_t], x_0..x̂_s..x̂_t..x_p)`.
pub fn ce_betti_mod_p(n: usize, constants: &[(usize, usize, usize, i64)]) -> Vec<usize> {
    let mut c = vec![vec![vec![0i64; n]; n]; n];
    for &(i, j, k, v) in constants {
        c[i][j][k] = v;
        c[j][i][k] = -v;
    }
    let subsets = |p: usize| -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == p)
            .map(|m| (0..n).filter(|b| m >> b & 1 == 1).collect())
            .collect()
    };
    // value of the basis cochain ε^S on the ordered tuple `args`
    let eval = |s: &[usize], args: &[usize]| -> i64 {
        let mut sorted = args.to_vec();
        let mut sign = 1;
        for a in 0..sorted.len() {
            for b in 0..sorted.len() - 1 - a {
                if sorted[b] > sorted[b + 1] {
                    sorted.swap(b, b + 1);
                    sign = -sign;
                } else if sorted[b] == sorted[b + 1] {
                    return 0;
                }
            }
        }
        if sorted == s {
            sign
        } else {
            0
        }
    };
    let mut ranks = Vec::new();
    for p in 0..n {
        let src = subsets(p);
        let tgt = subsets(p + 1);
        let mut rows = vec![vec![0i64; src.len()]; tgt.len()];
        for (ti, t) in tgt.iter().enumerate() {
            for (si, s) in src.iter().enumerate() {
                let mut acc = 0i64;
                for a in 0..t.len() {
                    for b in a + 1..t.len() {
                        let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                        let rest: Vec<usize> = t
                            .iter()
                            .enumerate()
                            .filter(|(k, _)| *k != a && *k != b)
                            .map(|(_, v)| *v)
                            .collect();
                        for (k, coeff) in c[t[a]][t[b]].iter().enumerate() {
                            if *coeff != 0 {
                                let mut args = vec![k];
                                args.extend(&rest);
                                acc += sign * coeff * eval(s, &args);
                            }
                        }
                    }
                }
                rows[ti][si] = modp(acc);
            }
        }
        ranks.push(rank_mod_p(rows));
    }
    (0..=n)
        .map(|p| {
            let dim = subsets(p).len();
            let out = ranks.get(p).copied().unwrap_or(0);
            let inc = if p > 0 { ranks[p - 1] } else { 0 };
            dim - out - inc
        })
        .collect()
}

// ------------------------------------------------------------ adjoint oracle

/// Expected `d z_i` and `d p_a` of the cotangent prolongation of a
/// degree-zero spec, assembled from its anchor `Q_i^a` and bracket
/// `Q_{ji}^k` read off `d x^a = Σ y^i Q_i^a` and
/// `d y^k = Σ_{i<j} y^i y^j Q^k_{ji}`:
///
/// ```text
/// d z_i = Q_i^a p_a + y^j Q_{ji}^k z_k
/// d p_a = −y^i ∂_a Q_i^b p_b − ½ y^i y^j ∂_a Q_{ji}^k z_k
/// ```
pub fn adjoint_oracle(base: &AlgebroidSpec, prolonged: &AlgebroidSpec) -> Vec<(GenId, Element)> {
    let bt = base.table();
    let t = prolonged.table();
    let n = bt.block("x").map_or(0, |b| b.decl.dim);
    let r = bt.block("y").unwrap().decl.dim;
    let d = base.ce_differential();
    let lift = |e: &Element| -> Element {
        let mut out = Element::zero(t);
        for (m, c) in e.terms() {
            let mut prod = Element::constant(t, c.clone());
            for &(g, k) in m.even() {
                let g = t.lookup_label(&bt.generator(g).label()).unwrap();
                prod = &prod * &Element::generator(t, g).pow(k);
            }
            for &g in m.odd() {
                let g = t.lookup_label(&bt.generator(g).label()).unwrap();
                prod = &prod * &Element::generator(t, g);
            }
            out += &prod;
        }
        out
    };
    // coefficient of y_i (as a right factor) in an element linear in y
    let strip_y = |e: &Element, i: u32| -> Element {
        let yi = bt.lookup("y", i).unwrap();
        let mut out = Element::zero(bt);
        for (m, c) in e.terms() {
            if m.odd() == [yi] {
                let rest = Monomial::from_factors(m.even(), &[]).unwrap().1;
                out += &Element::monomial(bt, rest, c.clone());
            }
        }
        out
    };
    let anchor = |i: u32, a: u32| -> Element {
        strip_y(d.image(bt.lookup("x", a).unwrap()), i)
    };
    // Q^k_{ji}: the y^i y^j coefficient (i < j) of d y^k; antisymmetric
    let bracket = |j: u32, i: u32, k: u32| -> Element {
        if i == j {
            return Element::zero(bt);
        }
        let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let ylo = bt.lookup("y", lo).unwrap();
        let yhi = bt.lookup("y", hi).unwrap();
        let mut out = Element::zero(bt);
        for (m, c) in d.image(bt.lookup("y", k).unwrap()).terms() {
            if m.odd() == [ylo, yhi] {
                let rest = Monomial::from_factors(m.even(), &[]).unwrap().1;
                out += &Element::monomial(bt, rest, c.clone() * qi(sign));
            }
        }
        out
    };
    let dx = |e: &Element, a: u32| e.partial_derivative(bt.lookup("x", a).unwrap());
    let v = |name: &str, i: u32| Element::var(t, name, i);
    let half = Element::constant(t, q(1, 2));

    let mut out = Vec::new();
    for i in 1..=r {
        let mut e = Element::zero(t);
        for a in 1..=n {
            e += &(&lift(&anchor(i, a)) * &v("p", a));
        }
        for j in 1..=r {
            for k in 1..=r {
                e += &(&(&v("y", j) * &lift(&bracket(j, i, k))) * &v("z", k));
            }
        }
        out.push((t.lookup("z", i).unwrap(), e));
    }
    for a in 1..=n {
        let mut e = Element::zero(t);
        for i in 1..=r {
            for b in 1..=n {
                e -= &(&(&v("y", i) * &lift(&dx(&anchor(i, b), a))) * &v("p", b));
            }
            for j in 1..=r {
                for k in 1..=r {
                    let term = &(&(&v("y", i) * &v("y", j)) * &lift(&dx(&bracket(j, i, k), a)))
                        * &v("z", k);
                    e -= &(&half * &term);
                }
            }
        }
        out.push((t.lookup("p", a).unwrap(), e));
    }
    out
}

/// Random rank-2 algebroids on the plane for the adjoint check: the aff(1)
/// action, the tangent bundle and rank-two bundles, each in a random frame.
pub fn random_plane_algebroid(rng: &mut impl Rng) -> AlgebroidSpec {
    let t = match rng.gen_range(0..3) {
        0 => aff1_on_plane(),
        1 => tangent(2),
        _ => rank_two_bundle(rng, 2),
    };
    random_frame_change(&t.build(), rng)
}
