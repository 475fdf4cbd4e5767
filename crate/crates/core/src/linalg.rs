//! Sparse rational matrices and fraction-free rank.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::Rational;

/// Column-major sparse matrix over ℚ. Column `c` maps row index to entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<BTreeMap<usize, Rational>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            columns: vec![BTreeMap::new(); cols],
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<BTreeMap<usize, Rational>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.keys().all(|r| *r < rows)));
        SparseMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &BTreeMap<usize, Rational> {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.columns[c].get(&r).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch");
        let columns = rhs
            .columns
            .iter()
            .map(|col| {
                let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, b) in col {
                    for (r, a) in &self.columns[*k] {
                        let e = out.entry(*r).or_insert_with(Rational::zero);
                        *e += a * b;
                    }
                }
                out.retain(|_, v| !v.is_zero());
                out
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            columns,
        }
    }

    /// Dense integer rows, each scaled by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        let mut dense = vec![vec![Rational::zero(); self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                dense[*r][c] = v.clone();
            }
        }
        dense
            .into_iter()
            .map(|row| {
                let l = row
                    .iter()
                    .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.into_iter()
                    .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect()
    }

    /// Rank over ℚ by Bareiss elimination on integer rows.
    pub fn rank(&self) -> usize {
        let mut a = self.integer_rows();
        a.retain(|row| row.iter().any(|v| !v.is_zero()));
        let n = a.len();
        let m = self.cols();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..m {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..n {
                for j in c + 1..m {
                    let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    a[i][j] = v / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }
}
