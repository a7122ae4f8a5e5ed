//! Dense exact-coefficient polynomials tagged with their variable. The tag is
//! part of the type state: x-polynomials live on the original side of the
//! transform, z-polynomials (z = τ²/4) on the transformed side, and τ appears
//! only inside the central difference operator.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::gauss::GaussRat;
use crate::rat::{binom, rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Tau,
    Z,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Tau => "tau",
            Var::Z => "z",
        })
    }
}

/// Coefficients in ascending degree order; no trailing zeros except for the
/// zero polynomial, which has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub var: Var,
    coeffs: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    VarMismatch { left: Var, right: Var },
    /// τ→z conversion requested on a polynomial with a nonzero odd part.
    OddPart,
    /// expand_in_basis got a basis that is not graded monic.
    BadBasis { index: usize },
    /// δ produced a nonzero imaginary or non-even residue (normalization bug).
    ImaginaryResidue,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::VarMismatch { left, right } => {
                write!(f, "variable mismatch: {left} vs {right}")
            }
            PolyError::OddPart => write!(f, "polynomial has a nonzero odd part in tau"),
            PolyError::BadBasis { index } => {
                write!(f, "basis element {index} is not monic of degree {index}")
            }
            PolyError::ImaginaryResidue => {
                write!(f, "central difference left an imaginary residue")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Poly {
    pub fn zero(var: Var) -> Self {
        Poly { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        Poly { var, coeffs: vec![Rat::one()] }
    }

    pub fn constant(var: Var, c: Rat) -> Self {
        Poly::from_coeffs(var, vec![c])
    }

    /// The monomial var^k.
    pub fn monomial(var: Var, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = Rat::one();
        Poly { var, coeffs }
    }

    pub fn from_coeffs(var: Var, mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { var, coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of var^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    fn check_var(&self, other: &Poly) -> Result<(), PolyError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(PolyError::VarMismatch { left: self.var, right: other.var })
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Ok(Poly::from_coeffs(self.var, coeffs))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Ok(Poly::from_coeffs(self.var, coeffs))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.var));
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Poly::from_coeffs(self.var, coeffs))
    }

    pub fn neg(&self) -> Poly {
        Poly { var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.var);
        }
        Poly { var: self.var, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplication by var^k.
    pub fn mul_var_pow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { var: self.var, coeffs }
    }

    /// Exact division by var^k; panics if the k lowest coefficients are nonzero.
    pub fn div_var_pow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        assert!(
            self.coeffs.iter().take(k).all(|c| c.is_zero()),
            "not divisible by {}^{}",
            self.var,
            k
        );
        Poly { var: self.var, coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec() }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.var);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat(k as i64))
            .collect();
        Poly::from_coeffs(self.var, coeffs)
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// Composition with the affine map var ↦ a·var + b.
    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> Poly {
        let mut acc = Poly::zero(self.var);
        let lin = Poly::from_coeffs(self.var, vec![b.clone(), a.clone()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).unwrap();
            acc = acc.add(&Poly::constant(self.var, c.clone())).unwrap();
        }
        acc
    }

    /// Relabel without any substitution (used when x-families are generated in z).
    pub fn with_var(&self, var: Var) -> Poly {
        Poly { var, coeffs: self.coeffs.clone() }
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one(self.var);
        for _ in 0..k {
            acc = acc.mul(self).unwrap();
        }
        acc
    }
}

/// Single entry point for the three ring operations.
pub fn poly_arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly, PolyError> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    }
}

/// Exact coefficients c_k with p = Σ c_k basis[k], by back-substitution from
/// the top degree. The basis must be graded (deg basis[k] = k) and monic, and
/// long enough to cover deg p.
pub fn expand_in_basis(p: &Poly, basis: &[Poly]) -> Result<Vec<Rat>, PolyError> {
    for (k, b) in basis.iter().enumerate() {
        if b.degree() != Some(k) || !b.is_monic() {
            return Err(PolyError::BadBasis { index: k });
        }
        p.check_var(b)?;
    }
    let deg = match p.degree() {
        None => return Ok(vec![Rat::zero(); basis.len()]),
        Some(d) => d,
    };
    if deg >= basis.len() {
        return Err(PolyError::BadBasis { index: basis.len() });
    }
    let mut rem = p.clone();
    let mut out = vec![Rat::zero(); basis.len()];
    for k in (0..=deg).rev() {
        let c = rem.coeff(k);
        if !c.is_zero() {
            rem = rem.sub(&basis[k].scale(&c))?;
            out[k] = c;
        }
    }
    debug_assert!(rem.is_zero());
    Ok(out)
}

/// Substitutes z = τ²/4 into an even τ-polynomial.
pub fn to_z(p: &Poly) -> Result<Poly, PolyError> {
    assert_eq!(p.var, Var::Tau, "to_z expects a tau polynomial");
    let mut coeffs = vec![Rat::zero(); p.coeffs.len() / 2 + 1];
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k % 2 != 0 {
            return Err(PolyError::OddPart);
        }
        // τ^(2m) = (4z)^m
        coeffs[k / 2] = c * rat(4).pow(k as i32 / 2);
    }
    Ok(Poly::from_coeffs(Var::Z, coeffs))
}

/// Substitutes back τ²/4 for z; the inverse of `to_z` on even τ-polynomials.
pub fn to_tau(p: &Poly) -> Poly {
    assert_eq!(p.var, Var::Z, "to_tau expects a z polynomial");
    let mut coeffs = vec![Rat::zero(); p.coeffs.len().saturating_sub(1) * 2 + 1];
    for (m, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            coeffs[2 * m] = c / rat(4).pow(m as i32);
        }
    }
    Poly::from_coeffs(Var::Tau, coeffs)
}

/// A polynomial over the Gaussian rationals; the intermediate of shift_tau.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPoly {
    pub coeffs: Vec<GaussRat>,
}

impl CPoly {
    pub fn coeff(&self, k: usize) -> GaussRat {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs: Vec<GaussRat> =
            (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CPoly { coeffs }
    }
}

/// Exact composition p(τ + w) by binomial expansion.
pub fn shift_tau(p: &Poly, w: &GaussRat) -> CPoly {
    assert_eq!(p.var, Var::Tau, "shift_tau expects a tau polynomial");
    let n = p.coeffs.len();
    let mut out = vec![GaussRat::zero(); n];
    // powers of w
    let mut wpow = vec![GaussRat::one()];
    for _ in 1..n {
        let last = wpow.last().unwrap().clone();
        wpow.push(last * w.clone());
    }
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // c·(τ+w)^k = c·Σ_j C(k,j) w^(k-j) τ^j
        for j in 0..=k {
            let term = GaussRat::real(c * binom(k, j)) * wpow[k - j].clone();
            out[j] = out[j].clone() + term;
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    CPoly { coeffs: out }
}
