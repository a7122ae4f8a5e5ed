//! Floating-point validation of the exact layer against the defining
//! integrals: Simpson quadrature of the Macdonald-kernel transform and the
//! Gamma-product Parseval/weight identities. Everything here is
//! double-precision; every quadrature carries a two-resolution error estimate.

use std::cell::RefCell;
use std::collections::HashMap;

use klpoly::kl::monomial_image;
use klpoly::poly::{Poly, Var};
use klpoly::rat::{rat, rising, Rat};

use num_traits::ToPrimitive;

#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    /// Outer truncation: the u-integral stops where a·cosh(u) − a exceeds this.
    pub u_cutoff: f64,
    /// Simpson panel count for the kernel (u) integral.
    pub u_panels: usize,
    /// Truncation and panel count for the t-integral of the transform
    /// (x = t² substitution).
    pub t_max: f64,
    pub t_panels: usize,
    /// Truncation and panel count for τ-integrals (Parseval / weight checks).
    pub tau_max: f64,
    pub tau_panels: usize,
    pub rel_tol: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            u_cutoff: 45.0,
            u_panels: 1024,
            t_max: 60.0,
            t_panels: 4096,
            tau_max: 60.0,
            tau_panels: 6000,
            rel_tol: 1e-8,
        }
    }
}

/// A quadrature value with its two-resolution error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub err_est: f64,
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels.max(2) & !1; // even
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * k as f64);
    }
    acc * h / 3.0
}

/// K_{iτ}(2√x) through its cosine representation
/// ∫₀^∞ e^{−2√x·cosh u} cos(τu) du, truncated where the exponent has decayed
/// by u_cutoff e-folds relative to the value at u = 0.
pub fn bessel_k_imag(x: f64, tau: f64, cfg: &QuadConfig) -> Estimate {
    assert!(x > 0.0, "kernel argument must be positive");
    let a = 2.0 * x.sqrt();
    let u_max = (1.0 + cfg.u_cutoff / a).acosh();
    let f = |u: f64| (-a * u.cosh()).exp() * (tau * u).cos();
    let fine = simpson(f, 0.0, u_max, cfg.u_panels);
    let coarse = simpson(f, 0.0, u_max, cfg.u_panels / 2);
    Estimate { value: fine, err_est: (fine - coarse).abs() }
}

fn rat_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

/// |Γ(x + iy)|² for x = two_x/2 a nonnegative integer or half-integer, via the
/// π-closed forms at x ∈ {0, 1/2, 1} and the upward recurrence
/// |Γ(x+1+iy)|² = (x²+y²)|Γ(x+iy)|². Even in y.
pub fn gamma_abs_sq(two_x: i64, y: f64) -> f64 {
    assert!(two_x >= 0, "real part must be nonnegative");
    let y = y.abs();
    let pi = std::f64::consts::PI;
    if two_x % 2 == 0 {
        let k = two_x / 2;
        if k == 0 {
            return pi / (y * (pi * y).sinh());
        }
        let mut v = if y == 0.0 { 1.0 } else { pi * y / (pi * y).sinh() };
        let mut x = 1.0;
        for _ in 1..k {
            v *= x * x + y * y;
            x += 1.0;
        }
        v
    } else {
        let mut v = pi / (pi * y).cosh();
        let mut x = 0.5;
        for _ in 0..(two_x - 1) / 2 {
            v *= x * x + y * y;
            x += 1.0;
        }
        v
    }
}

/// Γ(x) for x = two_x/2 a positive integer or half-integer:
/// Γ(k) = (k−1)!, Γ(k+1/2) = (2k)!√π/(4^k·k!).
pub fn gamma_real(two_x: i64) -> f64 {
    assert!(two_x > 0);
    if two_x % 2 == 0 {
        let mut v = 1.0;
        for j in 1..two_x / 2 {
            v *= j as f64;
        }
        v
    } else {
        let k = (two_x - 1) / 2;
        let mut v = std::f64::consts::PI.sqrt();
        let mut x = 0.5;
        for _ in 0..k {
            v *= x;
            x += 1.0;
        }
        v
    }
}

/// Nested quadrature of the transform. Kernel rows over the t-grid are cached
/// per τ, so evaluating a grid of polynomials at the same τ costs one kernel
/// sweep.
pub struct KlQuad {
    pub cfg: QuadConfig,
    cache: RefCell<HashMap<(u64, usize), Vec<f64>>>,
}

impl KlQuad {
    pub fn new(cfg: QuadConfig) -> Self {
        KlQuad { cfg, cache: RefCell::new(HashMap::new()) }
    }

    /// v_max of the logarithmic inner region t = e^{−v}, t ∈ (0, 1]; the
    /// damping there is e^{−(2α+2)v}, so this covers α ≥ 0 to ~e^{−36}.
    const V_MAX: f64 = 18.0;

    /// Kernel values over one of the two t-grids. `log_part` selects the
    /// t = e^{−v} region; otherwise the uniform grid on [1, t_max].
    fn kernel_row(&self, tau: f64, panels: usize, log_part: bool) -> Vec<f64> {
        let key = (tau.to_bits(), panels + if log_part { 1 << 32 } else { 0 });
        if let Some(row) = self.cache.borrow().get(&key) {
            return row.clone();
        }
        let mut row = Vec::with_capacity(panels + 1);
        for k in 0..=panels {
            let t = if log_part {
                (-Self::V_MAX * k as f64 / panels as f64).exp()
            } else {
                1.0 + (self.cfg.t_max - 1.0) * k as f64 / panels as f64
            };
            row.push(bessel_k_imag(t * t, tau, &self.cfg).value);
        }
        self.cache.borrow_mut().insert(key, row.clone());
        row
    }

    fn transform_at(&self, f: &Poly, alpha: &Rat, tau: f64, panels: usize) -> f64 {
        let a_f = rat_f64(alpha);
        let coeffs: Vec<f64> = f.coeffs().iter().map(rat_f64).collect();
        let horner = |x: f64| {
            let mut fx = 0.0;
            for c in coeffs.iter().rev() {
                fx = fx * x + *c;
            }
            fx
        };
        // inner region: 4∫₀^1 t^{2α+1}K(2t)f(t²)dt with t = e^{−v}
        let row_log = self.kernel_row(tau, panels, true);
        let hv = Self::V_MAX / panels as f64;
        let mut acc_log = 0.0;
        for (k, kv) in row_log.iter().enumerate() {
            let v = hv * k as f64;
            let t = (-v).exp();
            let integrand = (-(2.0 * a_f + 2.0) * v).exp() * kv * horner(t * t);
            let w = if k == 0 || k == panels {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc_log += w * integrand;
        }
        acc_log *= hv / 3.0;
        // outer region: 4∫₁^{t_max} t^{2α+1}K(2t)f(t²)dt
        let row = self.kernel_row(tau, panels, false);
        let ht = (self.cfg.t_max - 1.0) / panels as f64;
        let mut acc = 0.0;
        for (k, kv) in row.iter().enumerate() {
            let t = 1.0 + ht * k as f64;
            let integrand = t.powf(2.0 * a_f + 1.0) * kv * horner(t * t);
            let w = if k == 0 || k == panels {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += w * integrand;
        }
        acc *= ht / 3.0;
        // normalization 2/|Γ(α+1+iτ/2)|²; α restricted to half-integers
        let two_a1 = two_x_of(&(alpha + rat(1)));
        4.0 * (acc_log + acc) / gamma_abs_sq(two_a1, tau / 2.0)
    }

    /// KL_α[f](τ) by quadrature, with a half-resolution error estimate.
    pub fn kl_numeric(&self, f: &Poly, alpha: &Rat, tau: f64) -> Estimate {
        assert_eq!(f.var, Var::X);
        let fine = self.transform_at(f, alpha, tau, self.cfg.t_panels);
        let coarse = self.transform_at(f, alpha, tau, self.cfg.t_panels / 2);
        Estimate { value: fine, err_est: (fine - coarse).abs() }
    }
}

/// 2x for a rational with denominator 1 or 2; panics otherwise (the numeric
/// layer only supports integer/half-integer Γ arguments).
pub fn two_x_of(r: &Rat) -> i64 {
    let two = r * rat(2);
    assert!(two.denom().to_f64().unwrap() == 1.0, "need integer or half-integer, got {r}");
    two.numer().to_i64().expect("parameter out of i64 range")
}

/// Relative residual of the Parseval Gamma identity: the Mellin-side value
/// ½|Γ(α+β+n+1+iμ/2)|² against the τ-quadrature
/// (8πΓ(2β))⁻¹ ∫₀^∞ |Γ(β+i(τ+μ)/2)Γ(β+i(τ−μ)/2)Γ(α+n+1+iτ/2)|²/|Γ(iτ)|² dτ.
pub fn parseval_gamma_check(
    n: usize,
    alpha: &Rat,
    beta: &Rat,
    mu: f64,
    cfg: &QuadConfig,
) -> Estimate {
    let lhs = 0.5 * gamma_abs_sq(two_x_of(&(alpha + beta + rat(n as i64 + 1))), mu / 2.0);
    let two_b = two_x_of(beta);
    let two_an1 = two_x_of(&(alpha + rat(n as i64 + 1)));
    let integrand = |tau: f64| {
        if tau == 0.0 {
            return 0.0;
        }
        gamma_abs_sq(two_b, (tau + mu) / 2.0)
            * gamma_abs_sq(two_b, (tau - mu) / 2.0)
            * gamma_abs_sq(two_an1, tau / 2.0)
            / gamma_abs_sq(0, tau)
    };
    let norm = 1.0 / (8.0 * std::f64::consts::PI * gamma_real(2 * two_b));
    let fine = norm * simpson(&integrand, 0.0, cfg.tau_max, cfg.tau_panels);
    let coarse = norm * simpson(&integrand, 0.0, cfg.tau_max, cfg.tau_panels / 2);
    Estimate {
        value: (fine - lhs).abs() / lhs.abs(),
        err_est: (fine - coarse).abs() / lhs.abs(),
    }
}

/// Moment check of the regular dual form against its integral representation:
/// for n ≤ nmax compare (v₀)_n = (α₁+1)_n(α₂+1)_n with
/// (4πΓ(1+α₁)Γ(1+α₂)Γ(α₁+α₂−2α))⁻¹ ∫₀^∞ KL_α[xⁿ](τ)·
///   |Γ(α₁−α+iτ/2)Γ(α₂−α+iτ/2)Γ(α+1+iτ/2)|²/|Γ(iτ)|² dτ.
/// Returns the worst relative residual over n.
pub fn cdh_weight_check(
    alpha: &Rat,
    alpha1: &Rat,
    alpha2: &Rat,
    nmax: usize,
    cfg: &QuadConfig,
) -> Estimate {
    let g1 = two_x_of(&(alpha1 - alpha));
    let g2 = two_x_of(&(alpha2 - alpha));
    let g3 = two_x_of(&(alpha + rat(1)));
    let norm = 1.0
        / (4.0
            * std::f64::consts::PI
            * gamma_real(two_x_of(&(alpha1 + rat(1))))
            * gamma_real(two_x_of(&(alpha2 + rat(1))))
            * gamma_real(two_x_of(&(alpha1 + alpha2 - alpha - alpha))));
    let mut worst = Estimate { value: 0.0, err_est: 0.0 };
    for n in 0..=nmax {
        let lhs = rat_f64(&(rising(&(alpha1 + rat(1)), n) * rising(&(alpha2 + rat(1)), n)));
        let image = monomial_image(n, alpha);
        let coeffs: Vec<f64> = image.coeffs().iter().map(rat_f64).collect();
        let integrand = |tau: f64| {
            if tau == 0.0 {
                return 0.0;
            }
            let z = tau * tau / 4.0;
            let mut pz = 0.0;
            for c in coeffs.iter().rev() {
                pz = pz * z + *c;
            }
            pz * gamma_abs_sq(g1, tau / 2.0)
                * gamma_abs_sq(g2, tau / 2.0)
                * gamma_abs_sq(g3, tau / 2.0)
                / gamma_abs_sq(0, tau)
        };
        let fine = norm * simpson(&integrand, 0.0, cfg.tau_max, cfg.tau_panels);
        let coarse = norm * simpson(&integrand, 0.0, cfg.tau_max, cfg.tau_panels / 2);
        let resid = (fine - lhs).abs() / lhs.abs();
        if resid > worst.value {
            worst = Estimate { value: resid, err_est: (fine - coarse).abs() / lhs.abs() };
        }
    }
    worst
}

/// Finite-difference residual of the kernel eigen-relation
/// A K_{iτ}(2√x) = −(τ/2)²·K_{iτ}(2√x) with A f = x²f″ + xf′ − xf.
pub fn kernel_eigen_residual(x: f64, tau: f64, cfg: &QuadConfig) -> f64 {
    let h = 1e-3 * x.max(1.0);
    let k = |xx: f64| bessel_k_imag(xx, tau, cfg).value;
    let f0 = k(x);
    let fp = k(x + h);
    let fm = k(x - h);
    let d1 = (fp - fm) / (2.0 * h);
    let d2 = (fp - 2.0 * f0 + fm) / (h * h);
    let lhs = x * x * d2 + x * d1 - x * f0;
    let rhs = -(tau * tau / 4.0) * f0;
    (lhs - rhs).abs() / f0.abs().max(1e-300)
}

#[cfg(test)]
mod tests {
    use super::*;
    use klpoly::kl::kl_forward;
    use klpoly::rat::frac;

    #[test]
    fn kernel_values() {
        let cfg = QuadConfig::default();
        // K_0(2) reference value
        let k02 = bessel_k_imag(1.0, 0.0, &cfg);
        assert!((k02.value - 0.1138938727495).abs() < 1e-10, "{}", k02.value);
        assert!(k02.err_est < 1e-9);
        // decay in x at fixed τ
        assert!(
            bessel_k_imag(4.0, 1.0, &cfg).value < bessel_k_imag(1.0, 1.0, &cfg).value
        );
    }

    #[test]
    fn kernel_eigen_relation() {
        let cfg = QuadConfig::default();
        for x in [0.5, 1.0, 2.0] {
            for tau in [0.5, 1.0, 2.0] {
                let r = kernel_eigen_residual(x, tau, &cfg);
                assert!(r < 1e-5, "x={x} tau={tau} residual={r}");
            }
        }
    }

    #[test]
    fn gamma_closed_forms() {
        assert!((gamma_abs_sq(2, 0.0) - 1.0).abs() < 1e-15);
        let pi = std::f64::consts::PI;
        assert!((gamma_abs_sq(4, 1.0) - 2.0 * pi / pi.sinh()).abs() < 1e-12);
        assert!((gamma_abs_sq(1, 0.0) - pi).abs() < 1e-12);
        assert!((gamma_real(1) - pi.sqrt()).abs() < 1e-12);
        assert!((gamma_real(8) - 6.0).abs() < 1e-12);
        assert!((gamma_real(5) - 0.75 * pi.sqrt()).abs() < 1e-12);
        // evenness in y
        assert_eq!(gamma_abs_sq(3, 1.5), gamma_abs_sq(3, -1.5));
    }

    #[test]
    fn kl_numeric_matches_exact() {
        let q = KlQuad::new(QuadConfig::default());
        // f = 1 → 1 for any (α, τ)
        let one = Poly::one(Var::X);
        let e = q.kl_numeric(&one, &frac(1, 2), 1.0);
        assert!((e.value - 1.0).abs() < 1e-8, "{}", e.value);
        // f = x², α = 0, τ = 2 → 10
        let x2 = Poly::monomial(Var::X, 2);
        let e = q.kl_numeric(&x2, &rat(0), 2.0);
        assert!((e.value - 10.0).abs() / 10.0 < 1e-8, "{}", e.value);
        // f = x, α = 1/2, τ = 1 → exact layer value (9/4 + 1/4)
        let x1 = Poly::monomial(Var::X, 1);
        let exact = rat_f64(&kl_forward(&x1, &frac(1, 2)).eval(&frac(1, 4)));
        let e = q.kl_numeric(&x1, &frac(1, 2), 1.0);
        assert!((e.value - exact).abs() / exact < 1e-8, "{} vs {exact}", e.value);
        assert!((exact - 2.5).abs() < 1e-15);
    }

    #[test]
    fn parseval_examples() {
        let cfg = QuadConfig::default();
        let r = parseval_gamma_check(0, &rat(0), &rat(1), 1.0, &cfg);
        assert!(r.value <= 1e-6, "residual {}", r.value);
        let r = parseval_gamma_check(1, &frac(1, 2), &frac(1, 2), 0.0, &cfg);
        assert!(r.value <= 1e-6, "residual {}", r.value);
    }

    #[test]
    fn cdh_weight_examples() {
        let cfg = QuadConfig::default();
        let r = cdh_weight_check(&rat(0), &rat(1), &rat(1), 2, &cfg);
        assert!(r.value <= 1e-6, "residual {}", r.value);
        let r = cdh_weight_check(&rat(0), &frac(1, 2), &frac(3, 2), 2, &cfg);
        assert!(r.value <= 1e-6, "residual {}", r.value);
    }
}
