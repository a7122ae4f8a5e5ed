//! Modified (non-centered) central factorial number tables: t_{n,ν}(α) writes
//! the central factorial basis in powers of w = z+α², T_{n,ν}(α) inverts it,
//! and P_n(x;α) = (−L_α)^n[1] is the preimage of w^n under KL_α.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::kl::{kl_forward, monomial_image, op_l};
use crate::poly::{Poly, Var};
use crate::rat::{rat, Rat};
use crate::trimatrix::TriMatrix;

#[derive(Debug, Clone)]
pub struct StirlingTables {
    pub alpha: Rat,
    /// t_{n,ν}: |(α+1+iτ/2)_n|² = Σ_ν t_{n,ν} w^ν
    pub t: TriMatrix,
    /// T_{n,ν}: w^n = Σ_ν T_{n,ν} |(α+1+iτ/2)_ν|²
    pub t_inv: TriMatrix,
    pub nmax: usize,
}

/// Builds both triangles from their defining recurrences
///   t_{n+1,ν} = t_{n,ν−1} + (2α+n+1)(n+1)·t_{n,ν}
///   T_{n+1,ν} = T_{n,ν−1} − (2α+ν+1)(ν+1)·T_{n,ν}
pub fn build_tables(nmax: usize, alpha: &Rat) -> StirlingTables {
    let two_alpha = alpha + alpha;
    let mut t: Vec<Vec<Rat>> = vec![vec![Rat::one()]];
    let mut big_t: Vec<Vec<Rat>> = vec![vec![Rat::one()]];
    for n in 0..nmax {
        let mut trow = vec![Rat::zero(); n + 2];
        let mut brow = vec![Rat::zero(); n + 2];
        for v in 0..=n + 1 {
            if v > 0 {
                trow[v] += &t[n][v - 1];
                brow[v] += &big_t[n][v - 1];
            }
            if v <= n {
                let np1 = rat(n as i64 + 1);
                trow[v] += (&two_alpha + &np1) * &np1 * &t[n][v];
                let vp1 = rat(v as i64 + 1);
                brow[v] -= (&two_alpha + &vp1) * &vp1 * &big_t[n][v];
            }
        }
        t.push(trow);
        big_t.push(brow);
    }
    StirlingTables {
        alpha: alpha.clone(),
        t: TriMatrix::from_rows(t),
        t_inv: TriMatrix::from_rows(big_t),
        nmax,
    }
}

impl StirlingTables {
    /// Expands monomial_image(n) in powers of w = z+α² by exact substitution
    /// z = w − α²; the independent oracle for row n of t.
    pub fn t_row_oracle(&self, n: usize) -> Vec<Rat> {
        let img = monomial_image(n, &self.alpha);
        // substitute z = w − α² (an affine change of variable)
        let w_poly = img.compose_affine(&Rat::one(), &(-(&self.alpha * &self.alpha)));
        let mut row = vec![Rat::zero(); n + 1];
        for (k, c) in w_poly.coeffs().iter().enumerate() {
            row[k] = c.clone();
        }
        row
    }
}

/// P_n(x;α) = (−L_α)^n[1]; monic of degree n with KL_α[P_n] = (z+α²)^n.
/// Its monomial coefficients are exactly the inverse numbers T_{n,ν} (which
/// absorb the alternating sign of the underlying modified Stirling numbers).
pub fn pn_alpha(n: usize, alpha: &Rat) -> Poly {
    let mut p = Poly::one(Var::X);
    for _ in 0..n {
        p = op_l(&p, alpha).neg();
    }
    p
}

/// KL_α[L_α^m x^n]; asserted equal to (−1)^m (z+α²)^m · KL_α[x^n].
pub fn mixed_image(m: usize, n: usize, alpha: &Rat) -> Poly {
    let mut f = Poly::monomial(Var::X, n);
    for _ in 0..m {
        f = op_l(&f, alpha);
    }
    let out = kl_forward(&f, alpha);
    let w = Poly::from_coeffs(Var::Z, vec![alpha * alpha, Rat::one()]);
    let expect = w.pow(m).mul(&monomial_image(n, alpha)).unwrap();
    let expect = if m % 2 == 1 { expect.neg() } else { expect };
    assert_eq!(out, expect, "mixed image eigen-identity failed at m={m}, n={n}");
    out
}
