//! Betti numbers of `(Ω^(i,•), d_E)` on finite monomial bases.
//!
//! Over a point the complex is finite and the result exact. With base
//! coordinates present, bases are truncated at a polynomial degree cap and the
//! result is tagged as truncated.

use crate::algebra::Monomial;
use crate::algebroid::AlgebroidSpec;
use crate::error::Result;
use crate::linalg::SparseMatrix;
use crate::weight_modules::{induced_differential_matrix, max_form_degree, omega_basis};

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteComplex {
    pub i: u32,
    pub sectors: Vec<Vec<Monomial>>,
    /// `differentials[j] : sectors[j] → sectors[j+1]`.
    pub differentials: Vec<SparseMatrix>,
    pub cap: u32,
    /// True when base generators exist, so the bases are truncated.
    pub truncated: bool,
}

impl FiniteComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.sectors.iter().map(|s| s.len()).collect()
    }

    /// Consecutive differentials compose to zero.
    pub fn is_closed(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[1].mul(&w[0]).is_zero())
    }
}

pub fn build_complex(spec: &AlgebroidSpec, i: u32, cap: u32) -> Result<FiniteComplex> {
    let table = spec.table();
    let top = max_form_degree(table, i);
    let mut sectors = Vec::new();
    let mut differentials = Vec::new();
    for j in 0..=top {
        sectors.push(omega_basis(table, i, j, cap));
        if j < top {
            differentials.push(induced_differential_matrix(spec, i, j, cap)?.matrix);
        }
    }
    Ok(FiniteComplex {
        i,
        sectors,
        differentials,
        cap,
        truncated: table.has_base(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiReport {
    pub betti: Vec<usize>,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub truncated: bool,
    /// `Σ (−1)^j b_j = Σ (−1)^j dim_j`.
    pub euler_consistent: bool,
}

pub fn betti(c: &FiniteComplex) -> BettiReport {
    let dims = c.dims();
    let ranks: Vec<usize> = c.differentials.iter().map(|d| d.rank()).collect();
    let betti: Vec<usize> = (0..dims.len())
        .map(|j| {
            let out = ranks.get(j).copied().unwrap_or(0);
            let inc = if j > 0 { ranks[j - 1] } else { 0 };
            dims[j] - out - inc
        })
        .collect();
    let alt = |v: &[usize]| -> i64 {
        v.iter()
            .enumerate()
            .map(|(j, x)| if j % 2 == 0 { *x as i64 } else { -(*x as i64) })
            .sum()
    };
    BettiReport {
        euler_consistent: alt(&betti) == alt(&dims),
        betti,
        dims,
        ranks,
        truncated: c.truncated,
    }
}
