//! Exact rational scalars and the small combinatorial helpers (factorials,
//! binomials, Pochhammer symbols) used throughout.

use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational. Always reduced, denominator > 0 (maintained
/// by `num_rational` itself).
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// n! as a rational.
pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// Binomial coefficient C(n, k).
pub fn binom(n: usize, k: usize) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    Rat::new(num, den)
}

/// Pochhammer rising factorial (a)_n = a(a+1)...(a+n-1).
pub fn rising(a: &Rat, n: usize) -> Rat {
    let mut acc = Rat::one();
    for k in 0..n {
        acc *= a + rat(k as i64);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatParseError {
    pub input: String,
    pub reason: &'static str,
}

impl fmt::Display for RatParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad rational {:?}: {}", self.input, self.reason)
    }
}

/// Parses "p/q" or "p" (optional leading sign) into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let err = |reason| RatParseError { input: s.to_string(), reason };
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let num: BigInt = num_s.parse().map_err(|_| err("integer part is not a number"))?;
    let den: BigInt = match den_s {
        Some(d) => d.parse().map_err(|_| err("denominator is not a number"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// Renders a rational as "p/q", or just "p" when the denominator is 1.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s += &r.denom().to_string();
        s
    }
}

/// True iff r is a nonnegative integer.
pub fn is_nonneg_int(r: &Rat) -> bool {
    r.denom().is_one() && !r.numer().is_negative()
}

/// r as usize, when it is a small nonnegative integer.
pub fn as_usize(r: &Rat) -> Option<usize> {
    use num_traits::ToPrimitive;
    if r.denom().is_one() {
        r.numer().to_usize()
    } else {
        None
    }
}
