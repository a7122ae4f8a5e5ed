//! Exact-arithmetic realization of the KL_α (Kontorovich-Lebedev) transform as
//! an automorphism of the polynomial space, together with the d-orthogonal
//! polynomial families it maps between, modified central factorial number
//! tables, recurrence/orthogonality structure extraction, and a classification
//! checker for semiclassical forms whose KL_α image is d-orthogonal.
//!
//! Everything in this crate is exact: coefficients are arbitrary-precision
//! rationals and no identity is ever checked in floating point. The companion
//! CLI crate carries the numeric (quadrature) side channel.

#![no_std]

extern crate alloc;

pub mod gauss;
pub mod kl;
pub mod orthogonality;
pub mod poly;
pub mod rat;
pub mod sequences;
pub mod stirling;
pub mod trimatrix;

pub use gauss::GaussRat;
pub use poly::{Poly, Var};
pub use rat::Rat;
pub use trimatrix::TriMatrix;
