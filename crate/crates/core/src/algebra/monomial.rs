use super::table::{BiWeight, GenId, GeneratorTable};

/// A coefficient-free monomial: an even part (sorted generator/exponent pairs)
/// followed by a strictly increasing product of distinct odd generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    even: Vec<(GenId, u32)>,
    odd: Vec<GenId>,
}

/// Number of pairs (a, b) with a in `left`, b in `right` and a > b; `None` if
/// the lists share an element. Both inputs are strictly increasing.
fn merge_odd(left: &[GenId], right: &[GenId]) -> Option<(bool, Vec<GenId>)> {
    let mut out = Vec::with_capacity(left.len() + right.len());
    let (mut i, mut j) = (0, 0);
    let mut swaps = 0usize;
    while i < left.len() && j < right.len() {
        match left[i].cmp(&right[j]) {
            std::cmp::Ordering::Less => {
                out.push(left[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // right[j] jumps over every remaining left factor
                swaps += left.len() - i;
                out.push(right[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&left[i..]);
    out.extend_from_slice(&right[j..]);
    Some((swaps % 2 == 1, out))
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn generator(table: &GeneratorTable, id: GenId) -> Self {
        if table.generator(id).is_odd() {
            Monomial {
                even: Vec::new(),
                odd: vec![id],
            }
        } else {
            Monomial {
                even: vec![(id, 1)],
                odd: Vec::new(),
            }
        }
    }

    /// Build from an arbitrary even multiset and an ordered odd word. Returns the
    /// sign of the reordering (`true` = negative), or `None` if an odd generator repeats.
    pub fn from_factors(even: &[(GenId, u32)], odd: &[GenId]) -> Option<(bool, Monomial)> {
        let mut ev: Vec<(GenId, u32)> = Vec::new();
        for &(g, e) in even {
            if e == 0 {
                continue;
            }
            match ev.iter_mut().find(|(h, _)| *h == g) {
                Some(slot) => slot.1 += e,
                None => ev.push((g, e)),
            }
        }
        ev.sort();
        let mut word = odd.to_vec();
        let mut negative = false;
        // insertion sort, counting transpositions
        for i in 1..word.len() {
            let mut j = i;
            while j > 0 && word[j - 1] > word[j] {
                word.swap(j - 1, j);
                negative = !negative;
                j -= 1;
            }
        }
        if word.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((negative, Monomial { even: ev, odd: word }))
    }

    pub fn even(&self) -> &[(GenId, u32)] {
        &self.even
    }

    pub fn odd(&self) -> &[GenId] {
        &self.odd
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn form_degree(&self) -> u32 {
        self.odd.len() as u32
    }

    pub fn total_degree(&self) -> u32 {
        self.even.iter().map(|(_, e)| e).sum::<u32>() + self.odd.len() as u32
    }

    pub fn h_weight(&self, table: &GeneratorTable) -> u32 {
        self.even
            .iter()
            .map(|&(g, e)| table.generator(g).weight * e)
            .sum::<u32>()
            + self
                .odd
                .iter()
                .map(|&g| table.generator(g).weight)
                .sum::<u32>()
    }

    pub fn bi_weight(&self, table: &GeneratorTable) -> BiWeight {
        BiWeight::new(self.h_weight(table), self.form_degree())
    }

    pub fn exponent(&self, id: GenId) -> u32 {
        if let Some(&(_, e)) = self.even.iter().find(|(g, _)| *g == id) {
            e
        } else {
            self.odd.contains(&id) as u32
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = GenId> + '_ {
        self.even.iter().map(|(g, _)| *g).chain(self.odd.iter().copied())
    }

    /// Product `self · other`; the flag is `true` when the Koszul sign is negative.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        let (negative, odd) = merge_odd(&self.odd, &other.odd)?;
        let mut even = Vec::with_capacity(self.even.len() + other.even.len());
        let (mut i, mut j) = (0, 0);
        while i < self.even.len() && j < other.even.len() {
            let (a, b) = (self.even[i], other.even[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    even.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    even.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    even.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        even.extend_from_slice(&self.even[i..]);
        even.extend_from_slice(&other.even[j..]);
        Some((negative, Monomial { even, odd }))
    }

    /// Remove one factor of the even generator `id`, returning the old exponent.
    pub(crate) fn lower_even(&self, id: GenId) -> Option<(u32, Monomial)> {
        let pos = self.even.iter().position(|(g, _)| *g == id)?;
        let mut m = self.clone();
        let e = m.even[pos].1;
        if e == 1 {
            m.even.remove(pos);
        } else {
            m.even[pos].1 -= 1;
        }
        Some((e, m))
    }

    /// Remove the odd factor `id`, returning how many odd factors preceded it.
    pub(crate) fn remove_odd(&self, id: GenId) -> Option<(usize, Monomial)> {
        let pos = self.odd.iter().position(|g| *g == id)?;
        let mut m = self.clone();
        m.odd.remove(pos);
        Some((pos, m))
    }

    /// Split as `sign · left · right` where `left` collects the factors whose
    /// generator satisfies `pred`.
    pub fn split(&self, pred: impl Fn(GenId) -> bool) -> (bool, Monomial, Monomial) {
        let (le, re): (Vec<_>, Vec<_>) = self.even.iter().partition(|(g, _)| pred(*g));
        let mut negative = false;
        let mut lo = Vec::new();
        let mut ro = Vec::new();
        for &g in &self.odd {
            if pred(g) {
                // g moves left across every right factor collected so far
                if ro.len() % 2 == 1 {
                    negative = !negative;
                }
                lo.push(g);
            } else {
                ro.push(g);
            }
        }
        (
            negative,
            Monomial { even: le, odd: lo },
            Monomial { even: re, odd: ro },
        )
    }

    /// Re-index onto another table; `None` if a factor has no image.
    pub(crate) fn remap(&self, map: &[Option<GenId>]) -> Option<Monomial> {
        let even = self
            .even
            .iter()
            .map(|&(g, e)| map[g.0].map(|h| (h, e)))
            .collect::<Option<Vec<_>>>()?;
        let odd = self
            .odd
            .iter()
            .map(|&g| map[g.0])
            .collect::<Option<Vec<_>>>()?;
        let (negative, m) = Monomial::from_factors(&even, &odd)?;
        debug_assert!(!negative, "remap must be order preserving");
        Some(m)
    }

    pub fn render(&self, table: &GeneratorTable) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for &(g, e) in &self.even {
            let label = table.generator(g).label();
            if e == 1 {
                parts.push(label);
            } else {
                parts.push(format!("{label}^{e}"));
            }
        }
        for &g in &self.odd {
            parts.push(table.generator(g).label());
        }
        parts.join("*")
    }
}
