//! Exact and numerical computation of (delocalised) ℓ²-Betti numbers for free products
//! of finite cyclic groups, free groups and products of free groups with finite groups.
//!
//! The crate is `no_std` with `alloc`.

#![no_std]

extern crate alloc;

pub mod complexes;
pub mod error;
pub mod groups;
pub mod kclass;
pub mod ring;
pub mod spectral;

pub use error::{Error, Result};
pub use groups::{GroupElement, GroupSpec};
pub use ring::{Rational, RingElement, RingMatrix, TraceFunctional};
