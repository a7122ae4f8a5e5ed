//! The KL_α transform on polynomials — monomials map to the central factorial
//! products ∏_{σ=1}^{n}((α+σ)² + z) with z = τ²/4 — together with the
//! differential operators A, L_α, M_β and the central difference δ that the
//! transform intertwines.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::gauss::GaussRat;
use crate::poly::{expand_in_basis, shift_tau, to_tau, to_z, Poly, PolyError, Var};
use crate::rat::{frac, rat, Rat};

/// Run parameters: the kernel perturbation α. Any rational is accepted here;
/// operations with genuine restrictions enforce them individually.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KlParams {
    pub alpha: Rat,
}

/// KL_α[x^n] = ∏_{σ=1}^{n} ((α+σ)² + z), the expansion of |(α+1+iτ/2)_n|².
pub fn monomial_image(n: usize, alpha: &Rat) -> Poly {
    let mut acc = Poly::one(Var::Z);
    for sigma in 1..=n {
        let c = alpha + rat(sigma as i64);
        let factor = Poly::from_coeffs(Var::Z, vec![&c * &c, Rat::one()]);
        acc = acc.mul(&factor).unwrap();
    }
    acc
}

/// KL_α extended from monomials by linearity; an isomorphism of P onto itself
/// (degree and leading coefficient are preserved).
pub fn kl_forward(p: &Poly, alpha: &Rat) -> Poly {
    assert_eq!(p.var, Var::X, "kl_forward expects an x polynomial");
    let mut acc = Poly::zero(Var::Z);
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&monomial_image(k, alpha).scale(c)).unwrap();
        }
    }
    acc
}

/// Linear inversion of kl_forward, by expansion against the central factorial
/// basis {KL_α[x^k]}.
pub fn kl_inverse(q: &Poly, alpha: &Rat) -> Poly {
    assert_eq!(q.var, Var::Z, "kl_inverse expects a z polynomial");
    let deg = match q.degree() {
        None => return Poly::zero(Var::X),
        Some(d) => d,
    };
    let basis: Vec<Poly> = (0..=deg).map(|k| monomial_image(k, alpha)).collect();
    let coeffs = expand_in_basis(q, &basis).expect("central factorial basis is graded monic");
    Poly::from_coeffs(Var::X, coeffs)
}

/// Checks KL_α[x^n·f] = KL_α[x^n] · KL_{α+n}[f] (the β = n case of the shift
/// property).
pub fn kl_shift_check(f: &Poly, n: usize, alpha: &Rat) -> bool {
    let lhs = kl_forward(&f.mul_var_pow(n), alpha);
    let rhs = monomial_image(n, alpha)
        .mul(&kl_forward(f, &(alpha + rat(n as i64))))
        .unwrap();
    lhs == rhs
}

/// A f = x²f″ + xf′ − xf. The Macdonald kernel is an eigenfunction of A with
/// eigenvalue −τ²/4.
pub fn op_a(f: &Poly) -> Poly {
    assert_eq!(f.var, Var::X);
    let d1 = f.derivative();
    let d2 = d1.derivative();
    d2.mul_var_pow(2)
        .add(&d1.mul_var_pow(1))
        .unwrap()
        .sub(&f.mul_var_pow(1))
        .unwrap()
}

/// L_α f = x²f″ + (2α+3)xf′ + (2α+1)f − xf, the expanded closed form of
/// (1/x)A(x·f) + 2α(x·f)′. KL_α intertwines −L_α with multiplication by z+α².
pub fn op_l(f: &Poly, alpha: &Rat) -> Poly {
    assert_eq!(f.var, Var::X);
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let two_alpha = alpha + alpha;
    let out = d2
        .mul_var_pow(2)
        .add(&d1.mul_var_pow(1).scale(&(&two_alpha + rat(3))))
        .unwrap()
        .add(&f.scale(&(&two_alpha + rat(1))))
        .unwrap()
        .sub(&f.mul_var_pow(1))
        .unwrap();
    #[cfg(debug_assertions)]
    {
        // cross-check against the compositional definition
        let xf = f.mul_var_pow(1);
        let composed = op_a(&xf)
            .div_var_pow(1)
            .add(&xf.derivative().scale(&two_alpha))
            .unwrap();
        debug_assert_eq!(out, composed, "op_l closed form disagrees with (1/x)A(x·)+2αD(x·)");
    }
    out
}

/// M_β f = xf″ + (2β+1)f′ − f, the operator (DxD + 2βD − 1) of the induction
/// identity KL_{α+1}[M_{α+1} f] = −KL_α[f].
pub fn op_m(f: &Poly, beta: &Rat) -> Poly {
    assert_eq!(f.var, Var::X);
    let d1 = f.derivative();
    let d2 = d1.derivative();
    d2.mul_var_pow(1)
        .add(&d1.scale(&(beta + beta + rat(1))))
        .unwrap()
        .sub(f)
        .unwrap()
}

/// Central difference δ with step ω = i: (f(τ+i) − f(τ−i)) / (ωτ), converted
/// back to z. Accepts z- or even τ-polynomials; lowers the z-degree by one.
///
/// The denominator is ωτ, not the 2ωτ a literal reading of the definition
/// would give: only the ωτ normalization satisfies
/// δ KL_α[x^n] = n·KL_{α+1/2}[x^{n−1}], which every downstream identity is
/// stated against. A self-check on the n = 1 case pins the constant.
pub fn delta_op(f: &Poly) -> Result<Poly, PolyError> {
    let p = match f.var {
        Var::Z => to_tau(f),
        Var::Tau => f.clone(),
        Var::X => panic!("delta_op expects a tau or z polynomial"),
    };
    let i = GaussRat::i();
    let num = shift_tau(&p, &i).sub(&shift_tau(&p, &(-i)));
    // divide by ωτ = iτ: drop one power of τ, multiply by −i
    if !num.coeff(0).is_zero() {
        return Err(PolyError::ImaginaryResidue);
    }
    let mut coeffs = Vec::with_capacity(num.coeffs.len().saturating_sub(1));
    for c in num.coeffs.iter().skip(1) {
        // (a+bi)/i = b − ai; real output requires a = 0
        if !c.re.is_zero() {
            return Err(PolyError::ImaginaryResidue);
        }
        coeffs.push(c.im.clone());
    }
    let quotient = Poly::from_coeffs(Var::Tau, coeffs);
    to_z(&quotient).map_err(|_| PolyError::ImaginaryResidue)
}

fn delta_normalization_self_check() {
    // δ(z + a²) must be 1 (the n = 1 factorial identity) — pins the ωτ constant
    let a = frac(5, 3);
    let f = Poly::from_coeffs(Var::Z, vec![&a * &a, Rat::one()]);
    let d = delta_op(&f).expect("n=1 self-check");
    assert_eq!(d, Poly::one(Var::Z), "delta normalization drifted from the factorial identity");
}

/// Both δ-lemma identities:
///   ((α+1)² + z)·δ²(KL_α[f]) = KL_α[x·f″]   and   KL_{α+1/2}[f′] = δ(KL_α[f]).
pub fn delta_lemma_checks(f: &Poly, alpha: &Rat) -> bool {
    delta_normalization_self_check();
    let s = kl_forward(f, alpha);
    let ds = match delta_op(&s) {
        Ok(d) => d,
        Err(_) => return false,
    };
    let dds = match delta_op(&ds) {
        Ok(d) => d,
        Err(_) => return false,
    };
    let ap1 = alpha + rat(1);
    let lhs1 = Poly::from_coeffs(Var::Z, vec![&ap1 * &ap1, Rat::one()])
        .mul(&dds)
        .unwrap();
    let rhs1 = kl_forward(&f.derivative().derivative().mul_var_pow(1), alpha);
    let lhs2 = kl_forward(&f.derivative(), &(alpha + frac(1, 2)));
    lhs1 == rhs1 && lhs2 == ds
}
