//! Gaussian rationals. These appear only transiently inside the central
//! difference operator δ_ω (whose shift is ω = i); every public polynomial API
//! returns real-rational data after asserting the imaginary parts cancel.

use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rat::{rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Rat) -> Self {
        GaussRat { re, im: Rat::zero() }
    }

    /// The shift unit i.
    pub fn i() -> Self {
        GaussRat { re: Rat::zero(), im: rat(1) }
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Division (exact field inverse).
    pub fn div(&self, rhs: &GaussRat) -> GaussRat {
        let n = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        assert!(!n.is_zero(), "division by zero GaussRat");
        GaussRat {
            re: (&self.re * &rhs.re + &self.im * &rhs.im) / &n,
            im: (&self.im * &rhs.re - &self.re * &rhs.im) / &n,
        }
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::zero() }
    }
    fn is_zero(&self) -> bool {
        GaussRat::is_zero(self)
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::real(Rat::one())
    }
}
