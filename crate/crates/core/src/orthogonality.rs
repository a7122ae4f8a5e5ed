//! Moment functionals, structural-relation extraction, d-orthogonality
//! certification, Pearson/semiclassical machinery, connection coefficients for
//! the transformed families, the classification checker, and the rank-one
//! (Dirac-plus-inverse) perturbation of a regular form.

use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::kl::kl_forward;
use crate::poly::{expand_in_basis, Poly, Var};
use crate::rat::{rat, rising, Rat};
use crate::sequences::Mps;

/// A linear functional on polynomials, given by its exact moment sequence.
#[derive(Clone)]
pub struct MomentFunctional {
    moments: Rc<dyn Fn(usize) -> Rat>,
    pub label: String,
}

impl fmt::Debug for MomentFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MomentFunctional({})", self.label)
    }
}

impl MomentFunctional {
    pub fn new(label: &str, moments: impl Fn(usize) -> Rat + 'static) -> Self {
        MomentFunctional { moments: Rc::new(moments), label: String::from(label) }
    }

    pub fn from_table(label: &str, table: Vec<Rat>) -> Self {
        MomentFunctional::new(label, move |n| {
            table.get(n).cloned().unwrap_or_else(|| panic!("moment {n} beyond table"))
        })
    }

    pub fn moment(&self, n: usize) -> Rat {
        (self.moments)(n)
    }

    /// ⟨u, p⟩ for an x-polynomial.
    pub fn apply(&self, p: &Poly) -> Rat {
        let mut acc = Rat::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc += c * self.moment(k);
            }
        }
        acc
    }

    /// Moments of x⁻¹(u − (u)_0δ) shifted: here, the division operation
    /// ⟨θ_c u, p⟩ is not needed — only ⟨u, θ_c p⟩, see [`theta_c`].
    pub fn laguerre(alpha1: &Rat) -> Self {
        let a = alpha1.clone();
        MomentFunctional::new("laguerre", move |n| rising(&(&a + rat(1)), n))
    }

    /// Moments of the normalized Gaussian matching monic Hermite
    /// (γ_{n+1} = (n+1)/2): (u)_{2n} = (1/2)_n, odd moments zero.
    pub fn hermite() -> Self {
        MomentFunctional::new("hermite", move |n| {
            if n % 2 == 0 {
                rising(&crate::rat::frac(1, 2), n / 2)
            } else {
                Rat::zero()
            }
        })
    }

    /// Generalized Hermite: (u)_{2n} = (μ+1/2)_n, odd moments zero.
    pub fn generalized_hermite(mu: &Rat) -> Self {
        let m = mu.clone();
        MomentFunctional::new("generalized-hermite", move |n| {
            if n % 2 == 0 {
                rising(&(&m + crate::rat::frac(1, 2)), n / 2)
            } else {
                Rat::zero()
            }
        })
    }

    /// The regular dual form of the d = 2 reversed-Appell family:
    /// (v₀)_n = (α₁+1)_n(α₂+1)_n.
    pub fn cdh_v0(alpha1: &Rat, alpha2: &Rat) -> Self {
        let (a1, a2) = (alpha1.clone(), alpha2.clone());
        MomentFunctional::new("v0", move |n| {
            rising(&(&a1 + rat(1)), n) * rising(&(&a2 + rat(1)), n)
        })
    }

    /// The second dual functional: (v₁)_n = n(α₁+1)_n(α₂+1)_n/((1+α₁)(1+α₂)).
    pub fn cdh_v1(alpha1: &Rat, alpha2: &Rat) -> Self {
        let (a1, a2) = (alpha1.clone(), alpha2.clone());
        MomentFunctional::new("v1", move |n| {
            rat(n as i64) * rising(&(&a1 + rat(1)), n) * rising(&(&a2 + rat(1)), n)
                / ((rat(1) + &a1) * (rat(1) + &a2))
        })
    }
}

/// (p(x) − p(c))/(x − c), exact synthetic division.
pub fn theta_c(p: &Poly, c: &Rat) -> Poly {
    let n = match p.degree() {
        None | Some(0) => return Poly::zero(p.var),
        Some(n) => n,
    };
    let mut out = vec![Rat::zero(); n];
    let mut carry = p.coeff(n);
    for k in (0..n).rev() {
        out[k] = carry.clone();
        carry = p.coeff(k) + c * &carry;
    }
    Poly::from_coeffs(p.var, out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrthError {
    /// ⟨u, P_k²⟩ = 0: the Hankel determinant of order k+1 vanishes.
    MomentSingularity { level: usize },
    /// A Maroni-perturbation denominator vanished at the given index.
    SingularLambda { level: usize },
    ZeroScale,
}

impl fmt::Display for OrthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrthError::MomentSingularity { level } => {
                write!(f, "regularity fails at level {level} (vanishing Hankel determinant)")
            }
            OrthError::SingularLambda { level } => {
                write!(f, "singular perturbation parameter (denominator {level})")
            }
            OrthError::ZeroScale => write!(f, "affine scale must be nonzero"),
        }
    }
}

/// The structural relation S_{n+1} = (z − ζ_n)S_n − Σ_{ν<n} a_{n,ν}S_ν of a
/// monic graded sequence, with the deepest observed lag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralRelation {
    pub zeta: Vec<Rat>,
    /// a[n] holds a_{n,ν} for ν = 0..n−1.
    pub a: Vec<Vec<Rat>>,
    /// Smallest d with a_{n,ν} = 0 for all ν ≤ n−d−1 and a_{n,n−d} ≠ 0
    /// somewhere in range; None if every a_{n,ν} vanishes.
    pub detected_d: Option<usize>,
    /// Number of rows certified (the relation is range-qualified).
    pub nmax: usize,
}

impl StructuralRelation {
    pub fn a_coeff(&self, n: usize, v: usize) -> Rat {
        self.a[n].get(v).cloned().unwrap_or_else(Rat::zero)
    }
}

/// Exact extraction of the structural relation from a monic graded prefix
/// (any variable; for an x-sequence the relation is the recurrence itself).
pub fn extract_structural(polys: &[Poly]) -> StructuralRelation {
    assert!(polys.len() >= 2, "need at least S_0, S_1");
    let var = polys[0].var;
    let mut zeta = Vec::new();
    let mut a = Vec::new();
    let mut deepest: Option<usize> = None;
    for n in 0..polys.len() - 1 {
        // v·S_n − S_{n+1} = ζ_n S_n + Σ a_{n,ν} S_ν
        let p = polys[n].mul_var_pow(1).sub(&polys[n + 1]).expect("same var");
        debug_assert_eq!(p.var, var);
        let c = expand_in_basis(&p, &polys[..=n]).expect("graded monic prefix");
        zeta.push(c[n].clone());
        let row: Vec<Rat> = c[..n].to_vec();
        for (v, coeff) in row.iter().enumerate() {
            if !coeff.is_zero() {
                let lag = n - v;
                deepest = Some(deepest.map_or(lag, |d| d.max(lag)));
            }
        }
        a.push(row);
    }
    StructuralRelation { zeta, a, detected_d: deepest, nmax: polys.len() - 2 }
}

/// ⟨u, B_nB_m⟩ = 0 for n ≠ m, ≠ 0 for n = m: the Gram matrix is regular
/// diagonal.
pub fn gram_check(u: &MomentFunctional, b: &Mps, nmax: usize) -> bool {
    for n in 0..=nmax.min(b.len().saturating_sub(1)) {
        for m in 0..=n {
            let prod = b.polys[n].mul(&b.polys[m]).unwrap();
            let val = u.apply(&prod);
            if (m == n) == val.is_zero() {
                return false;
            }
        }
    }
    true
}

/// The d-orthogonality conditions ⟨u_k, x^m P_n⟩ = 0 for n ≥ md+k+1 and ≠ 0
/// at n = md+k, for every k < d and every m with md+k ≤ nmax.
pub fn dual_vector_check(b: &Mps, funcs: &[MomentFunctional], d: usize, nmax: usize) -> bool {
    assert_eq!(funcs.len(), d);
    let top = nmax.min(b.len().saturating_sub(1));
    for (k, u) in funcs.iter().enumerate() {
        for m in 0.. {
            if m * d + k > top {
                break;
            }
            for n in 0..=top {
                let p = b.polys[n].mul_var_pow(m);
                let val = u.apply(&p);
                if n >= m * d + k + 1 && !val.is_zero() {
                    return false;
                }
                if n == m * d + k && val.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Dual-basis functionals of an MPS: ⟨u_k, xⁿ⟩ is the B_k-coefficient of xⁿ
/// expanded in the B basis.
pub fn duals_from_mps(b: &Mps, count: usize) -> Vec<MomentFunctional> {
    let top = b.len() - 1;
    let mut tables: Vec<Vec<Rat>> = vec![Vec::new(); count];
    for n in 0..=top {
        let mono = Poly::monomial(b.polys[0].var, n);
        let c = expand_in_basis(&mono, &b.polys[..=n]).expect("graded monic");
        for (k, table) in tables.iter_mut().enumerate() {
            table.push(c.get(k).cloned().unwrap_or_else(Rat::zero));
        }
    }
    tables
        .into_iter()
        .enumerate()
        .map(|(k, t)| MomentFunctional::from_table(if k == 0 { "u0" } else { "uk" }, t))
        .collect()
}

/// Stieltjes orthogonalization: exact β_n, γ_{n+1} (and the MOPS itself) from
/// moments. A vanishing ⟨u, P_k²⟩ is exactly a vanishing Hankel determinant
/// and aborts with the level.
#[derive(Debug)]
pub struct RecurrenceData {
    pub beta: Vec<Rat>,
    pub gamma: Vec<Rat>,
    pub mps: Mps,
}

pub fn moments_to_recurrence(
    u: &MomentFunctional,
    nmax: usize,
) -> Result<RecurrenceData, OrthError> {
    let mut polys = vec![Poly::one(Var::X)];
    let mut beta = Vec::new();
    let mut gamma = Vec::new();
    let mut norms: Vec<Rat> = Vec::new();
    for n in 0..=nmax {
        let pn = polys[n].clone();
        let h = u.apply(&pn.mul(&pn).unwrap());
        if h.is_zero() {
            return Err(OrthError::MomentSingularity { level: n });
        }
        norms.push(h.clone());
        if n >= 1 {
            gamma.push(&norms[n] / &norms[n - 1]);
        }
        let b = u.apply(&pn.mul(&pn).unwrap().mul_var_pow(1)) / &h;
        beta.push(b.clone());
        if n < nmax {
            let step = Poly::from_coeffs(Var::X, vec![-b, Rat::one()]);
            let mut next = step.mul(&pn).unwrap();
            if n >= 1 {
                next = next.sub(&polys[n - 1].scale(&gamma[n - 1])).unwrap();
            }
            polys.push(next);
        }
    }
    Ok(RecurrenceData { beta, gamma, mps: Mps::new(polys, "orthogonalized") })
}

/// Semiclassical data: (Φu)′ + Ψu = 0 with Φ monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PearsonPair {
    pub phi: Poly,
    pub psi: Poly,
}

impl PearsonPair {
    pub fn new(phi: Poly, psi: Poly) -> Self {
        assert!(phi.is_monic(), "Pearson Φ must be monic");
        assert!(psi.degree().is_some_and(|d| d >= 1), "Pearson Ψ must have degree ≥ 1");
        PearsonPair { phi, psi }
    }

    /// Class s = max(deg Φ − 2, deg Ψ − 1), floored at 0.
    pub fn class(&self) -> usize {
        let dphi = self.phi.degree().unwrap_or(0) as i64;
        let dpsi = self.psi.degree().unwrap_or(0) as i64;
        (dphi - 2).max(dpsi - 1).max(0) as usize
    }
}

/// ⟨(Φu)′ + Ψu, xⁿ⟩ = −n⟨u, Φx^{n−1}⟩ + ⟨u, Ψxⁿ⟩ = 0 for n ≤ nmax.
pub fn pearson_check(u: &MomentFunctional, pair: &PearsonPair, nmax: usize) -> bool {
    for n in 0..=nmax {
        let mut val = u.apply(&pair.psi.mul_var_pow(n));
        if n >= 1 {
            val -= rat(n as i64) * u.apply(&pair.phi.mul_var_pow(n - 1));
        }
        if !val.is_zero() {
            return false;
        }
    }
    true
}

fn rational_roots(p: &Poly) -> Vec<Rat> {
    match p.degree() {
        Some(1) => vec![-p.coeff(0) / p.coeff(1)],
        Some(2) => {
            // monic use-case; solve ax²+bx+c over ℚ via a perfect-square test
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let disc = &b * &b - rat(4) * &a * &c;
            if disc.is_negative() {
                return Vec::new();
            }
            let sq_num = disc.numer().sqrt();
            let sq_den = disc.denom().sqrt();
            if &sq_num * &sq_num != *disc.numer() || &sq_den * &sq_den != *disc.denom() {
                return Vec::new();
            }
            let root = Rat::new(sq_num, sq_den);
            let two_a = rat(2) * &a;
            let r1 = (-&b + &root) / &two_a;
            let r2 = (-&b - &root) / &two_a;
            if r1 == r2 {
                vec![r1]
            } else {
                vec![r1, r2]
            }
        }
        // only linear/quadratic Φ arise in the classification; deeper
        // factorization is out of scope, try the origin as a candidate
        Some(n) if n >= 3 => {
            if p.coeff(0).is_zero() {
                vec![Rat::zero()]
            } else {
                Vec::new()
            }
        }
        _ => Vec::new(),
    }
}

/// Repeatedly divide Φ by (x − c) at rational roots c where the pair is
/// reducible: Φ(c) = 0, Φ′(c) + Ψ(c) = 0, and ⟨u, θ_c²Φ + θ_cΨ⟩ = 0; the
/// reduced pair is (θ_cΦ, θ_c²Φ + θ_cΨ).
pub fn class_reduce(pair: &PearsonPair, u: &MomentFunctional) -> PearsonPair {
    let mut cur = pair.clone();
    'outer: loop {
        if cur.phi.degree().unwrap_or(0) == 0 {
            return cur;
        }
        for c in rational_roots(&cur.phi) {
            if !(cur.phi.derivative().eval(&c) + cur.psi.eval(&c)).is_zero() {
                continue;
            }
            let tphi = theta_c(&cur.phi, &c);
            let new_psi = theta_c(&tphi, &c).add(&theta_c(&cur.psi, &c)).unwrap();
            if !u.apply(&new_psi).is_zero() {
                continue;
            }
            cur = PearsonPair::new(tphi, new_psi);
            continue 'outer;
        }
        return cur;
    }
}

/// Moments of (h_{a⁻¹} ∘ τ_{−b})u: ⟨ũ, xⁿ⟩ = ⟨u, ((x−b)/a)ⁿ⟩.
pub fn affine_moments(
    u: &MomentFunctional,
    a: &Rat,
    b: &Rat,
) -> Result<MomentFunctional, OrthError> {
    if a.is_zero() {
        return Err(OrthError::ZeroScale);
    }
    let u = u.clone();
    let inv_a = Rat::one() / a;
    let shift = -b * &inv_a;
    Ok(MomentFunctional::new("affine", move |n| {
        let p = Poly::from_coeffs(Var::X, vec![shift.clone(), inv_a.clone()]).pow(n);
        u.apply(&p)
    }))
}

/// The companion Pearson pair: (a^{−deg Φ}Φ(ax+b), a^{1−deg Φ}Ψ(ax+b)).
pub fn affine_pair(pair: &PearsonPair, a: &Rat, b: &Rat) -> Result<PearsonPair, OrthError> {
    if a.is_zero() {
        return Err(OrthError::ZeroScale);
    }
    let dphi = pair.phi.degree().unwrap_or(0) as i64;
    let sphi = Rat::one() / a.pow(dphi as i32);
    let spsi = a.pow(1 - dphi as i32);
    Ok(PearsonPair::new(
        pair.phi.compose_affine(a, b).scale(&sphi),
        pair.psi.compose_affine(a, b).scale(&spsi),
    ))
}

/// (u)_0 = 1, (u)_n = λ(w)_{n−1}: the moment sequence of λx⁻¹w + δ.
pub fn x_inverse_delta(w: &MomentFunctional, lambda: &Rat) -> MomentFunctional {
    let w = w.clone();
    let lam = lambda.clone();
    MomentFunctional::new("x-inverse-delta", move |n| {
        if n == 0 {
            Rat::one()
        } else {
            &lam * w.moment(n - 1)
        }
    })
}

/// Rank-one perturbation of a regular MOPS W orthogonal to w:
/// P_{n+1} = W_{n+1} + a_nW_n with
///   a_n = −(W_{n+1}(0) + λ⟨w, θ_0W_{n+1}⟩)/(W_n(0) + λ⟨w, θ_0W_n⟩),
/// β^P_0 = β^W_0 − a_0, β^P_{n+1} = β^W_{n+1} + a_n − a_{n+1},
/// γ^P_1 = −a_0(a_0 − β^W_0), γ^P_{n+1} = (a_n/a_{n−1})γ^W_n.
pub fn maroni_perturbation(
    w_mps: &Mps,
    w: &MomentFunctional,
    lambda: &Rat,
    nmax: usize,
) -> Result<RecurrenceData, OrthError> {
    assert!(w_mps.len() > nmax + 1, "need W up to degree nmax+1");
    let w_rec = {
        let st = extract_structural(&w_mps.polys);
        st
    };
    let zero = Rat::zero();
    let mut a: Vec<Rat> = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let den = w_mps.polys[n].eval(&zero) + lambda * w.apply(&theta_c(&w_mps.polys[n], &zero));
        if den.is_zero() {
            return Err(OrthError::SingularLambda { level: n });
        }
        let num = w_mps.polys[n + 1].eval(&zero)
            + lambda * w.apply(&theta_c(&w_mps.polys[n + 1], &zero));
        a.push(-num / den);
    }
    let mut polys = vec![Poly::one(Var::X)];
    for n in 0..nmax {
        polys.push(w_mps.polys[n + 1].add(&w_mps.polys[n].scale(&a[n])).unwrap());
    }
    // recurrence data; W's own β/γ come from its structural relation in x
    let beta_w = |n: usize| w_rec.zeta[n].clone();
    let gamma_w = |n: usize| w_rec.a_coeff(n, n - 1); // γ^W_n
    let mut beta = vec![beta_w(0) - &a[0]];
    let g1 = -&a[0] * (&a[0] - beta_w(0));
    if g1.is_zero() {
        // γ^P_1 = −a_0(a_0 − β^W_0) = 0: regularity lost immediately
        return Err(OrthError::SingularLambda { level: 0 });
    }
    let mut gamma = vec![g1];
    for n in 0..nmax {
        beta.push(beta_w(n + 1) + &a[n] - &a[n + 1]);
        if n >= 1 {
            let g = (&a[n] / &a[n - 1]) * gamma_w(n);
            if g.is_zero() {
                return Err(OrthError::SingularLambda { level: n });
            }
            gamma.push(g);
        }
    }
    Ok(RecurrenceData { beta, gamma, mps: Mps::new(polys, "maroni-perturbed") })
}

/// The ζ/a coefficients of the image structural relation computed from the
/// source three-term data alone:
///   ζ_n = β_n − (α+n+1)²,
///   a_{n,ν} = γ_n b_{n−1,ν} + (n−ν)(n+ν+2+2α) b_{n,ν} − Σ_{μ=ν+1}^{n−1} a_{n,μ} b_{μ,ν},
/// where b_{n,ν} are the monomial coefficients of B_n. Asserted against the
/// extraction oracle applied to the KL_α image.
///
/// `gamma[k]` holds γ_{k+1}.
pub fn connection_coeffs(
    b: &Mps,
    beta: &[Rat],
    gamma: &[Rat],
    alpha: &Rat,
    nmax: usize,
) -> StructuralRelation {
    assert!(b.len() > nmax + 1 && beta.len() > nmax && gamma.len() >= nmax);
    let bc = |n: usize, v: usize| b.polys[n].coeff(v);
    let mut zeta = Vec::with_capacity(nmax + 1);
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(nmax + 1);
    let mut deepest: Option<usize> = None;
    for n in 0..=nmax {
        let shift = alpha + rat(n as i64 + 1);
        zeta.push(&beta[n] - &shift * &shift);
        let mut row = vec![Rat::zero(); n];
        for v in (0..n).rev() {
            let mut val = (rat((n - v) as i64))
                * (rat((n + v) as i64 + 2) + alpha + alpha)
                * bc(n, v);
            if n >= 1 {
                val += &gamma[n - 1] * bc(n - 1, v);
            }
            for mu in v + 1..n {
                let amu = row[mu].clone();
                if !amu.is_zero() {
                    val -= amu * bc(mu, v);
                }
            }
            row[v] = val;
        }
        for (v, coeff) in row.iter().enumerate() {
            if !coeff.is_zero() {
                let lag = n - v;
                deepest = Some(deepest.map_or(lag, |d| d.max(lag)));
            }
        }
        a.push(row);
    }
    let out = StructuralRelation { zeta, a, detected_d: deepest, nmax };
    // the formulas above must reproduce the extraction oracle entrywise
    let image: Vec<Poly> = b.polys[..=nmax + 1].iter().map(|p| kl_forward(p, alpha)).collect();
    let oracle = extract_structural(&image);
    assert_eq!(out.zeta, oracle.zeta, "connection ζ drifted from extraction");
    assert_eq!(out.a, oracle.a, "connection a drifted from extraction");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    A,
    B,
    C,
    None,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::A => "a",
            Case::B => "b",
            Case::C => "c",
            Case::None => "none",
        })
    }
}

/// Outcome of matching a reduced Pearson pair against the three canonical
/// shapes. d = 2·deg ρ; s = d/2, d/2−1, d/2−2 for cases a, b, c.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub case: Case,
    pub rho: Poly,
    pub n_const: Rat,
    pub d: usize,
    pub s: usize,
    pub flags: Vec<(String, bool)>,
}

fn flag(flags: &mut Vec<(String, bool)>, name: &str, val: bool) -> bool {
    flags.push((String::from(name), val));
    val
}

/// Match a (reduced) Pearson pair against the canonical cases:
///   (a) Φ = x², Ψ = x(Nρ − (3+2α)), ρ monic with ρ(0) = 0;
///   (b) Φ = x,  Ψ = Nρ − (2+2α);
///   (c) Φ = 1,  Ψ = Nθ_0ρ with Nρ(0) = 1+2α, d ≥ 4.
/// Every side condition is evaluated exactly and recorded as a flag; the case
/// is assigned only if all of them hold.
pub fn classify(pair: &PearsonPair, alpha: &Rat, u: &MomentFunctional) -> ClassificationReport {
    let mut flags = Vec::new();
    let two_alpha = alpha + alpha;
    let reduced = class_reduce(pair, u);
    let none_report = |flags: Vec<(String, bool)>| ClassificationReport {
        case: Case::None,
        rho: Poly::zero(Var::X),
        n_const: Rat::zero(),
        d: 0,
        s: 0,
        flags,
    };
    match reduced.phi.degree() {
        Some(2) => {
            // case a
            let ok_phi = flag(
                &mut flags,
                "phi = x^2",
                reduced.phi.coeff(0).is_zero() && reduced.phi.coeff(1).is_zero(),
            );
            let ok_psi0 = flag(&mut flags, "psi(0) = 0", reduced.psi.coeff(0).is_zero());
            if !(ok_phi && ok_psi0) {
                return none_report(flags);
            }
            let q = reduced.psi.div_var_pow(1);
            let n_const = q.leading().cloned().unwrap_or_else(Rat::zero);
            if !flag(&mut flags, "N != 0", !n_const.is_zero()) {
                return none_report(flags);
            }
            let rho = q
                .add(&Poly::constant(Var::X, rat(3) + &two_alpha))
                .unwrap()
                .scale(&(Rat::one() / &n_const));
            let ok = flag(&mut flags, "rho(0) = 0", rho.coeff(0).is_zero())
                & flag(
                    &mut flags,
                    "<u, rho> != (2+2alpha)/N",
                    u.apply(&rho) != (rat(2) + &two_alpha) / &n_const,
                )
                & flag(&mut flags, "2alpha+3 not a nonpositive integer", {
                    let t = rat(3) + &two_alpha;
                    !(t.denom().is_one() && !t.numer().is_positive())
                });
            if !ok {
                return none_report(flags);
            }
            let d = 2 * rho.degree().unwrap_or(0);
            ClassificationReport { case: Case::A, rho, n_const, d, s: d / 2, flags }
        }
        Some(1) => {
            // case b
            let ok_phi = flag(
                &mut flags,
                "phi = x",
                reduced.phi.coeff(0).is_zero(),
            );
            if !ok_phi {
                return none_report(flags);
            }
            let n_const = reduced.psi.leading().cloned().unwrap();
            let rho = reduced
                .psi
                .add(&Poly::constant(Var::X, rat(2) + &two_alpha))
                .unwrap()
                .scale(&(Rat::one() / &n_const));
            let guard = !( (&n_const * rho.coeff(0) - rat(1) - &two_alpha).is_zero()
                && u.apply(&theta_c(&rho, &Rat::zero())).is_zero());
            if !flag(&mut flags, "|N rho(0) - (1+2alpha)| + |<u, theta_0 rho>| != 0", guard) {
                return none_report(flags);
            }
            let d = 2 * rho.degree().unwrap_or(0);
            if !flag(&mut flags, "d >= 2", d >= 2) {
                return none_report(flags);
            }
            ClassificationReport { case: Case::B, rho, n_const, d, s: d / 2 - 1, flags }
        }
        Some(0) | None => {
            // case c: Φ = 1 (monic, degree 0)
            let n_const = reduced.psi.leading().cloned().unwrap();
            // ρ = xΨ/N + (1+2α)/N so that Ψ = Nθ_0ρ and Nρ(0) = 1+2α
            let rho = reduced
                .psi
                .mul_var_pow(1)
                .scale(&(Rat::one() / &n_const))
                .add(&Poly::constant(Var::X, (rat(1) + &two_alpha) / &n_const))
                .unwrap();
            flag(&mut flags, "N rho(0) = 1+2alpha", true);
            let d = 2 * rho.degree().unwrap_or(0);
            if !flag(&mut flags, "d >= 4", d >= 4) {
                return none_report(flags);
            }
            ClassificationReport { case: Case::C, rho, n_const, d, s: d / 2 - 2, flags }
        }
        _ => none_report(flags),
    }
}

/// Exact expansion of the second-order relation
///   x²B_n″ − x(2Nρ − (3+2α))B_n′ + {Nρ(Nρ−(2+2α)) − Nxρ′ − x + (1+2α) + 2α²}B_n = −A_n
/// in the B basis, for n ≤ nmax. Reports whether the support stays in
/// [n−1, n+d], whether the lag-0 coefficient of A_n is ζ_n − α², and which of
/// γ_n / γ_1 the lag-(−1) coefficient matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub support_ok: bool,
    pub lag0_ok: bool,
    pub lag1_matches_gamma_n: bool,
    pub lag1_matches_gamma_1: bool,
}

pub fn theorem_diff_relation_check(
    b: &Mps,
    beta: &[Rat],
    gamma: &[Rat],
    report: &ClassificationReport,
    alpha: &Rat,
    nmax: usize,
) -> TheoremVerdict {
    let d = report.d;
    assert!(b.len() > nmax + d, "need B up to degree nmax+d");
    let two_alpha = alpha + alpha;
    let nrho = report.rho.scale(&report.n_const);
    // −x(2Nρ − (3+2α))
    let c1 = nrho
        .scale(&rat(2))
        .sub(&Poly::constant(Var::X, rat(3) + &two_alpha))
        .unwrap()
        .mul_var_pow(1)
        .neg();
    // Nρ(Nρ − (2+2α)) − N x ρ′ − x + (1+2α) + 2α²
    let c0 = nrho
        .mul(&nrho.sub(&Poly::constant(Var::X, rat(2) + &two_alpha)).unwrap())
        .unwrap()
        .sub(&report.rho.derivative().scale(&report.n_const).mul_var_pow(1))
        .unwrap()
        .sub(&Poly::monomial(Var::X, 1))
        .unwrap()
        .add(&Poly::constant(Var::X, rat(1) + &two_alpha + alpha * &two_alpha))
        .unwrap();
    let mut verdict = TheoremVerdict {
        support_ok: true,
        lag0_ok: true,
        lag1_matches_gamma_n: true,
        lag1_matches_gamma_1: true,
    };
    for n in 0..=nmax {
        let bn = &b.polys[n];
        let lhs = bn
            .derivative()
            .derivative()
            .mul_var_pow(2)
            .add(&c1.mul(&bn.derivative()).unwrap())
            .unwrap()
            .add(&c0.mul(bn).unwrap())
            .unwrap();
        let top = n + d;
        let coeffs = expand_in_basis(&lhs, &b.polys[..=top]).expect("graded basis");
        // A_n = −LHS
        for (v, c) in coeffs.iter().enumerate() {
            if v + 1 < n && !c.is_zero() {
                verdict.support_ok = false;
            }
        }
        let shift = alpha + rat(n as i64 + 1);
        let zeta_n = &beta[n] - &shift * &shift;
        if -coeffs[n].clone() != &zeta_n - alpha * alpha {
            verdict.lag0_ok = false;
        }
        if n >= 1 {
            let lag1 = -coeffs[n - 1].clone();
            if lag1 != gamma[n - 1] {
                verdict.lag1_matches_gamma_n = false;
            }
            if lag1 != gamma[0] {
                verdict.lag1_matches_gamma_1 = false;
            }
        }
    }
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kl::monomial_image;
    use crate::rat::frac;
    use crate::sequences::{
        hermite, hermite_type, laguerre, perturbed_laguerre, perturbed_laguerre_an,
        perturbed_laguerre_cn, reversed_appell,
    };

    #[test]
    fn theta_c_divides() {
        let p = Poly::from_coeffs(Var::X, vec![rat(6), rat(-5), rat(1)]); // (x−2)(x−3)
        let q = theta_c(&p, &rat(2));
        assert_eq!(q.coeffs(), &[rat(-3), rat(1)]);
        // general c: p(x) − p(c) = (x−c)·θ_c p
        let c = frac(1, 3);
        let diff = p.sub(&Poly::constant(Var::X, p.eval(&c))).unwrap();
        let lin = Poly::from_coeffs(Var::X, vec![-c.clone(), rat(1)]);
        assert_eq!(diff, lin.mul(&theta_c(&p, &c)).unwrap());
    }

    #[test]
    fn extract_structural_central_factorial() {
        let alpha = frac(1, 2);
        let s: Vec<Poly> = (0..8).map(|k| monomial_image(k, &alpha)).collect();
        let st = extract_structural(&s);
        for n in 0..7usize {
            let shift = &alpha + rat(n as i64 + 1);
            assert_eq!(st.zeta[n], -&shift * &shift);
            assert!(st.a[n].iter().all(Rat::is_zero));
        }
        assert_eq!(st.detected_d, None);
    }

    #[test]
    fn detected_d_of_images() {
        let alpha = rat(0);
        let lag = laguerre(&frac(1, 2), 10).unwrap().kl_image(&alpha);
        assert_eq!(extract_structural(&lag.polys).detected_d, Some(2));
        let h = hermite_type(1, 12).kl_image(&alpha);
        assert_eq!(extract_structural(&h.polys).detected_d, Some(4));
        // even-d observation across the orthogonal test families
        let gh = moments_to_recurrence(&MomentFunctional::generalized_hermite(&frac(1, 2)), 12)
            .unwrap()
            .mps
            .kl_image(&alpha);
        assert_eq!(extract_structural(&gh.polys).detected_d, Some(4));
    }

    #[test]
    fn gram_checks() {
        let a1 = frac(1, 2);
        assert!(gram_check(&MomentFunctional::laguerre(&a1), &laguerre(&a1, 8).unwrap(), 7));
        assert!(gram_check(&MomentFunctional::hermite(), &hermite(8).unwrap(), 7));
        // mismatched parameter fails
        assert!(!gram_check(&MomentFunctional::laguerre(&rat(1)), &laguerre(&a1, 4).unwrap(), 3));
    }

    #[test]
    fn dual_vector_cdh() {
        let (a1, a2) = (rat(1), frac(3, 2));
        let r = reversed_appell(2, &[a1.clone(), a2.clone()], 13).unwrap();
        let v0 = MomentFunctional::cdh_v0(&a1, &a2);
        let v1 = MomentFunctional::cdh_v1(&a1, &a2);
        assert!(dual_vector_check(&r, &[v0.clone(), v1.clone()], 2, 12));
        // biorthogonality spot checks: ⟨v₁, R_1⟩ = 1, ⟨v₀, R_0⟩ = 1
        assert_eq!(v1.apply(&r.polys[1]), rat(1));
        assert_eq!(v0.apply(&r.polys[0]), rat(1));
        // and the dual-basis route agrees with the closed forms
        let duals = duals_from_mps(&r, 2);
        for n in 0..=12usize {
            assert_eq!(duals[0].moment(n), v0.moment(n), "v0 moment {n}");
            assert_eq!(duals[1].moment(n), v1.moment(n), "v1 moment {n}");
        }
    }

    #[test]
    fn dual_vector_d1_is_gram() {
        let a1 = frac(1, 2);
        let l = laguerre(&a1, 9).unwrap();
        let u = MomentFunctional::laguerre(&a1);
        let u0 = MomentFunctional::new("u0-normalized", {
            let u = u.clone();
            move |n| u.moment(n)
        });
        assert!(dual_vector_check(&l, &[u0], 1, 8));
    }

    #[test]
    fn moments_to_recurrence_laguerre() {
        let a1 = frac(2, 3);
        let rec = moments_to_recurrence(&MomentFunctional::laguerre(&a1), 8).unwrap();
        for n in 0..=8usize {
            assert_eq!(rec.beta[n], rat(2 * n as i64) + &a1 + rat(1));
        }
        for n in 1..=8usize {
            assert_eq!(rec.gamma[n - 1], rat(n as i64) * (rat(n as i64) + &a1));
        }
        assert_eq!(rec.mps.polys, laguerre(&a1, 8).unwrap().polys);
    }

    #[test]
    fn moments_to_recurrence_singularity() {
        let u = MomentFunctional::new("degenerate", |n| {
            if n == 0 || n == 2 {
                rat(1)
            } else {
                Rat::zero()
            }
        });
        // h_3 = ⟨u, x⁶⟩ = 0 is the first vanishing Hankel determinant
        assert_eq!(
            moments_to_recurrence(&u, 8).unwrap_err(),
            OrthError::MomentSingularity { level: 3 }
        );
    }

    #[test]
    fn pearson_examples() {
        let a1 = frac(1, 2);
        let lag_pair = PearsonPair::new(
            Poly::monomial(Var::X, 1),
            Poly::from_coeffs(Var::X, vec![-&a1 - rat(1), rat(1)]),
        );
        assert!(pearson_check(&MomentFunctional::laguerre(&a1), &lag_pair, 12));
        let herm_pair = PearsonPair::new(
            Poly::one(Var::X),
            Poly::from_coeffs(Var::X, vec![rat(0), rat(2)]),
        );
        assert!(pearson_check(&MomentFunctional::hermite(), &herm_pair, 12));
        let mu = frac(1, 2);
        let gh_pair = PearsonPair::new(
            Poly::monomial(Var::X, 1),
            Poly::from_coeffs(Var::X, vec![-(&mu + &mu) - rat(1), rat(0), rat(2)]),
        );
        assert!(pearson_check(&MomentFunctional::generalized_hermite(&mu), &gh_pair, 12));
        // wrong parameter fails
        assert!(!pearson_check(&MomentFunctional::laguerre(&rat(2)), &lag_pair, 6));
    }

    #[test]
    fn class_reduce_examples() {
        // (x², x(x−(3+2α))) over the Laguerre(2α+2) perturbation at the
        // reducible point: with u = Laguerre(0) and α = −1/2 the pair
        // (x², x(x−2)) reduces to (x, x−1)? — use the generic identity
        // instead: inflate the Laguerre pair by (x−0) and reduce back.
        let a1 = frac(1, 2);
        let u = MomentFunctional::laguerre(&a1);
        let psi = Poly::from_coeffs(Var::X, vec![-&a1 - rat(1), rat(1)]);
        let minimal = PearsonPair::new(Poly::monomial(Var::X, 1), psi.clone());
        assert_eq!(class_reduce(&minimal, &u), minimal);
        assert_eq!(minimal.class(), 0);
        // inflated pair: Φ̃ = xΦ, Ψ̃ = xΨ − Φ satisfies Pearson for the same u
        let phi_big = Poly::monomial(Var::X, 2);
        let psi_big = psi.mul_var_pow(1).sub(&Poly::monomial(Var::X, 1)).unwrap();
        let big = PearsonPair::new(phi_big, psi_big);
        assert!(pearson_check(&u, &big, 12));
        assert_eq!(class_reduce(&big, &u), minimal);
        // generalized Hermite is irreducible for μ ≠ 0: Φ′(0)+Ψ(0) = −2μ
        let mu = frac(1, 2);
        let gh = PearsonPair::new(
            Poly::monomial(Var::X, 1),
            Poly::from_coeffs(Var::X, vec![-(&mu + &mu) - rat(1), rat(0), rat(2)]),
        );
        let ughm = MomentFunctional::generalized_hermite(&mu);
        assert_eq!(class_reduce(&gh, &ughm), gh);
        assert_eq!(gh.class(), 1);
    }

    #[test]
    fn affine_invariance() {
        let mu = frac(1, 2);
        let u = MomentFunctional::generalized_hermite(&mu);
        let gh = PearsonPair::new(
            Poly::monomial(Var::X, 1),
            Poly::from_coeffs(Var::X, vec![-(&mu + &mu) - rat(1), rat(0), rat(2)]),
        );
        // identity transform
        let same = affine_pair(&gh, &rat(1), &rat(0)).unwrap();
        assert_eq!(same, gh);
        let u_same = affine_moments(&u, &rat(1), &rat(0)).unwrap();
        for n in 0..6 {
            assert_eq!(u_same.moment(n), u.moment(n));
        }
        // a scaled pair still satisfies Pearson for the transformed moments,
        // with class (and classification case/d) preserved
        let (a, b) = (frac(2, 3), rat(0));
        let pair2 = affine_pair(&gh, &a, &b).unwrap();
        let u2 = affine_moments(&u, &a, &b).unwrap();
        assert!(pearson_check(&u2, &pair2, 10));
        let alpha = frac(1, 2);
        let r1 = classify(&gh, &alpha, &u);
        let r2 = classify(&pair2, &alpha, &u2);
        assert_eq!(r1.case, r2.case);
        assert_eq!(r1.d, r2.d);
        assert_eq!(class_reduce(&pair2, &u2).class(), 1);
        assert!(affine_pair(&gh, &rat(0), &rat(0)).is_err());
    }

    #[test]
    fn x_inverse_delta_moments() {
        let alpha = rat(0);
        let w = MomentFunctional::laguerre(&(&alpha + &alpha + rat(2)));
        let lam = rat(1);
        let u = x_inverse_delta(&w, &lam);
        assert_eq!(u.moment(0), rat(1));
        for n in 1..8usize {
            assert_eq!(u.moment(n), &lam * rising(&(&alpha + &alpha + rat(3)), n - 1));
        }
        let dirac = x_inverse_delta(&w, &Rat::zero());
        assert_eq!(dirac.moment(0), rat(1));
        assert!(dirac.moment(3).is_zero());
    }

    #[test]
    fn regularity_trichotomy_d2() {
        let alpha = frac(1, 2);
        let w = MomentFunctional::laguerre(&(&alpha + &alpha + rat(2)));
        let w_mps = laguerre(&(&alpha + &alpha + rat(2)), 10).unwrap();
        // regular λ: all three routes succeed and agree
        let lam = rat(2);
        let u = x_inverse_delta(&w, &lam);
        let via_moments = moments_to_recurrence(&u, 8).unwrap();
        let via_maroni = maroni_perturbation(&w_mps, &w, &lam, 8).unwrap();
        assert_eq!(via_moments.mps.polys, via_maroni.mps.polys);
        assert_eq!(via_moments.beta, via_maroni.beta[..via_moments.beta.len()]);
        assert_eq!(via_moments.gamma, via_maroni.gamma[..via_moments.gamma.len()]);
        // singular λ = 1/c_n(α): both routes report failure
        for k in 0..3usize {
            let bad = Rat::one() / perturbed_laguerre_cn(&alpha, k);
            let ub = x_inverse_delta(&w, &bad);
            assert!(moments_to_recurrence(&ub, 8).is_err(), "k={k}");
            assert!(maroni_perturbation(&w_mps, &w, &bad, 8).is_err(), "k={k}");
        }
        // λ = 0 (pure Dirac) is singular as well
        assert!(maroni_perturbation(&w_mps, &w, &Rat::zero(), 8).is_err());
    }

    #[test]
    fn maroni_reproduces_perturbed_laguerre() {
        for (alpha, lam) in
            [(rat(0), rat(1)), (frac(1, 2), rat(2)), (rat(1), frac(1, 3))]
        {
            let a1 = &alpha + &alpha + rat(2);
            let w = MomentFunctional::laguerre(&a1);
            let w_mps = laguerre(&a1, 10).unwrap();
            let maroni = maroni_perturbation(&w_mps, &w, &lam, 9).unwrap();
            let closed = perturbed_laguerre(&alpha, &lam, 9).unwrap();
            assert_eq!(maroni.mps.polys, closed.mps.polys);
            assert_eq!(&maroni.beta[..], &closed.beta[..maroni.beta.len()]);
            assert_eq!(&maroni.gamma[..], &closed.gamma[..maroni.gamma.len()]);
            // the proposition's a_n equals the closed form
            for n in 0..6usize {
                let den = w_mps.polys[n].eval(&Rat::zero())
                    + &lam * w.apply(&theta_c(&w_mps.polys[n], &Rat::zero()));
                let num = w_mps.polys[n + 1].eval(&Rat::zero())
                    + &lam * w.apply(&theta_c(&w_mps.polys[n + 1], &Rat::zero()));
                assert_eq!(-num / den, perturbed_laguerre_an(&alpha, &lam, n), "n={n}");
            }
            // finite-type inverse relation: x·W_n = B_{n+1} − (B_{n+1}(0)/B_n(0))B_n
            for n in 0..8usize {
                let bn1 = &maroni.mps.polys[n + 1];
                let bn = &maroni.mps.polys[n];
                let ratio = bn1.eval(&Rat::zero()) / bn.eval(&Rat::zero());
                assert_eq!(
                    w_mps.polys[n].mul_var_pow(1),
                    bn1.sub(&bn.scale(&ratio)).unwrap(),
                    "n={n}"
                );
            }
        }
    }

    #[test]
    fn perturbed_laguerre_gram() {
        let (alpha, lam) = (rat(0), rat(1));
        let u = x_inverse_delta(&MomentFunctional::laguerre(&(&alpha + &alpha + rat(2))), &lam);
        let pl = perturbed_laguerre(&alpha, &lam, 7).unwrap();
        assert!(gram_check(&u, &pl.mps, 7));
    }

    #[test]
    fn connection_laguerre_examples() {
        let a1 = frac(1, 2);
        let alpha = frac(1, 3);
        let n = 8;
        let l = laguerre(&a1, n + 2).unwrap();
        let beta: Vec<Rat> = (0..=n).map(|k| rat(2 * k as i64) + &a1 + rat(1)).collect();
        let gamma: Vec<Rat> =
            (1..=n).map(|k| rat(k as i64) * (rat(k as i64) + &a1)).collect();
        let st = connection_coeffs(&l, &beta, &gamma, &alpha, n);
        // ζ_n = (2n+α₁+1) − (α+n+1)²
        for k in 0..=n {
            let shift = &alpha + rat(k as i64 + 1);
            assert_eq!(st.zeta[k], rat(2 * k as i64) + &a1 + rat(1) - &shift * &shift);
        }
        // a_{1,0} = γ_1 + (2+2α+1−2)·… = γ_1 − (2α+1)(α₁+1) = −2α(α₁+1)… with
        // the corrected factor (2n+2α+1): γ_1 + (2α+3)b_{1,0} = −(2α+2)(α₁+1)
        assert_eq!(
            st.a_coeff(1, 0),
            -(rat(2) + &alpha + &alpha) * (&a1 + rat(1))
        );
        assert_eq!(st.detected_d, Some(2));
    }

    #[test]
    fn connection_hermite_symmetry() {
        let alpha = frac(1, 2);
        let n = 8;
        let h = hermite(n + 2).unwrap();
        let beta = vec![Rat::zero(); n + 1];
        let gamma: Vec<Rat> = (1..=n).map(|k| frac(k as i64, 2)).collect();
        let st = connection_coeffs(&h, &beta, &gamma, &alpha, n);
        // β = 0 ⇒ b_{n,n−1} = 0 ⇒ a_{n,n−1} = γ_n
        for k in 1..=n {
            assert_eq!(st.a_coeff(k, k - 1), frac(k as i64, 2), "k={k}");
        }
        assert_eq!(st.detected_d, Some(4));
    }

    #[test]
    fn classify_laguerre_case_b() {
        let a1 = frac(1, 2);
        let alpha = frac(1, 3);
        let u = MomentFunctional::laguerre(&a1);
        let pair = PearsonPair::new(
            Poly::monomial(Var::X, 1),
            Poly::from_coeffs(Var::X, vec![-&a1 - rat(1), rat(1)]),
        );
        let rep = classify(&pair, &alpha, &u);
        assert_eq!(rep.case, Case::B);
        assert_eq!((rep.d, rep.s), (2, 0));
        assert_eq!(rep.n_const, rat(1));
        assert!(rep.flags.iter().all(|(_, v)| *v));
    }

    #[test]
    fn classify_hermite_case_c() {
        let alpha = frac(1, 2);
        let u = MomentFunctional::hermite();
        let pair = PearsonPair::new(
            Poly::one(Var::X),
            Poly::from_coeffs(Var::X, vec![rat(0), rat(2)]),
        );
        let rep = classify(&pair, &alpha, &u);
        assert_eq!(rep.case, Case::C);
        assert_eq!((rep.d, rep.s), (4, 0));
        assert_eq!(rep.n_const, rat(2));
        // ρ = x² + (1+2α)/2
        assert_eq!(
            rep.rho.coeffs(),
            &[(rat(1) + &alpha + &alpha) / rat(2), rat(0), rat(1)]
        );
    }

    #[test]
    fn classify_generalized_hermite_case_b() {
        let mu = frac(1, 2);
        let alpha = frac(1, 3);
        let u = MomentFunctional::generalized_hermite(&mu);
        let pair = PearsonPair::new(
            Poly::monomial(Var::X, 1),
            Poly::from_coeffs(Var::X, vec![-(&mu + &mu) - rat(1), rat(0), rat(2)]),
        );
        let rep = classify(&pair, &alpha, &u);
        assert_eq!(rep.case, Case::B);
        assert_eq!((rep.d, rep.s), (4, 1));
        assert_eq!(rep.n_const, rat(2));
    }

    #[test]
    fn theorem_relation_laguerre_hermite() {
        let alpha = frac(1, 2);
        // Laguerre
        let a1 = frac(1, 2);
        let u = MomentFunctional::laguerre(&a1);
        let pair = PearsonPair::new(
            Poly::monomial(Var::X, 1),
            Poly::from_coeffs(Var::X, vec![-&a1 - rat(1), rat(1)]),
        );
        let rep = classify(&pair, &alpha, &u);
        let n = 8;
        let l = laguerre(&a1, n + rep.d + 1).unwrap();
        let beta: Vec<Rat> = (0..=n).map(|k| rat(2 * k as i64) + &a1 + rat(1)).collect();
        let gamma: Vec<Rat> =
            (1..=n).map(|k| rat(k as i64) * (rat(k as i64) + &a1)).collect();
        let v = theorem_diff_relation_check(&l, &beta, &gamma, &rep, &alpha, n);
        assert!(v.support_ok && v.lag0_ok && v.lag1_matches_gamma_n);
        assert!(!v.lag1_matches_gamma_1, "printed γ₁ only matches at n = 1");
        // Hermite
        let uh = MomentFunctional::hermite();
        let pairh = PearsonPair::new(
            Poly::one(Var::X),
            Poly::from_coeffs(Var::X, vec![rat(0), rat(2)]),
        );
        let reph = classify(&pairh, &alpha, &uh);
        let h = hermite(n + reph.d + 1).unwrap();
        let betah = vec![Rat::zero(); n + 1];
        let gammah: Vec<Rat> = (1..=n).map(|k| frac(k as i64, 2)).collect();
        let vh = theorem_diff_relation_check(&h, &betah, &gammah, &reph, &alpha, n);
        assert!(vh.support_ok && vh.lag0_ok && vh.lag1_matches_gamma_n);
    }

    #[test]
    fn theorem_relation_generalized_hermite() {
        let mu = frac(1, 2);
        let alpha = frac(1, 3);
        let u = MomentFunctional::generalized_hermite(&mu);
        let pair = PearsonPair::new(
            Poly::monomial(Var::X, 1),
            Poly::from_coeffs(Var::X, vec![-(&mu + &mu) - rat(1), rat(0), rat(2)]),
        );
        let rep = classify(&pair, &alpha, &u);
        let n = 8;
        let rec = moments_to_recurrence(&u, n + rep.d + 1).unwrap();
        let v = theorem_diff_relation_check(&rec.mps, &rec.beta, &rec.gamma, &rep, &alpha, n);
        assert!(v.support_ok && v.lag0_ok && v.lag1_matches_gamma_n);
    }
}
