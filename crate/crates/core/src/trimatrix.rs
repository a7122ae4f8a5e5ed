//! Lower-triangular exact matrices: the change-of-basis tables t, T and the
//! monomial-coefficient tables b of the structural-relation machinery.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rat::Rat;

/// Row n holds n+1 entries (columns 0..=n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriMatrix {
    rows: Vec<Vec<Rat>>,
}

impl TriMatrix {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        for (n, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n + 1, "row {n} must have {} entries", n + 1);
        }
        TriMatrix { rows }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..=n)
            .map(|i| {
                let mut row = vec![Rat::zero(); i + 1];
                row[i] = Rat::one();
                row
            })
            .collect();
        TriMatrix { rows }
    }

    /// Number of rows.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn get(&self, n: usize, v: usize) -> Rat {
        if v > n || n >= self.rows.len() {
            Rat::zero()
        } else {
            self.rows[n][v].clone()
        }
    }

    pub fn has_unit_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(n, row)| row[n].is_one())
    }

    pub fn mul(&self, other: &TriMatrix) -> TriMatrix {
        assert_eq!(self.size(), other.size());
        let rows = (0..self.size())
            .map(|n| {
                (0..=n)
                    .map(|v| {
                        let mut acc = Rat::zero();
                        for k in v..=n {
                            let a = self.get(n, k);
                            if !a.is_zero() {
                                acc += a * other.get(k, v);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        TriMatrix { rows }
    }

    /// Inverse by forward substitution; requires nonzero diagonal.
    pub fn inverse(&self) -> TriMatrix {
        let n = self.size();
        let mut inv: Vec<Vec<Rat>> = (0..n).map(|i| vec![Rat::zero(); i + 1]).collect();
        for i in 0..n {
            let d = self.get(i, i);
            assert!(!d.is_zero(), "singular diagonal at {i}");
            for j in 0..=i {
                // solve Σ_k M[i][k]·inv[k][j] = δ_ij
                let mut acc = if i == j { Rat::one() } else { Rat::zero() };
                for k in j..i {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc -= a * &inv[k][j];
                    }
                }
                inv[i][j] = acc / &d;
            }
        }
        TriMatrix { rows: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(n, row)| row.iter().enumerate().all(|(v, c)| {
                if v == n {
                    c.is_one()
                } else {
                    c.is_zero()
                }
            }))
    }
}
