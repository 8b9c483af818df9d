//! Fractional soliton charge in one-dimensional dimerized chains.
//!
//! A dimerized chain (alternating strong/weak bonds) supports domain-wall
//! defects, and each defect binds exactly half a unit of charge. This crate
//! verifies that statement three independent ways:
//!
//! - [`dimer`] — the combinatorial route: build bond patterns with domain
//!   walls and count the link deficit in exact rational arithmetic.
//! - [`lattice`] — the spectral route: diagonalize nearest-neighbor hopping
//!   chains with domain-wall textures, locate midgap modes, and measure the
//!   windowed, symmetrically regularized charge around a single wall.
//! - [`continuum`] — the low-energy route: classify a background profile by
//!   its asymptotics, build the normalizable zero mode by quadrature, and
//!   integrate its charge.
//! - [`fock`] — the operator route: occupation-number states over a finite
//!   mode set with one unpaired zero mode, and the exact half-integer
//!   spectrum of the regularized charge operator.
//!
//! [`eigen`] holds the dense symmetric eigensolver the lattice route uses.

pub mod continuum;
pub mod dimer;
pub mod eigen;
pub mod fock;
pub mod lattice;

pub use num_rational::Rational64;

use serde::{Deserialize, Serialize};

/// Inclusive site-index interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Interval {
        Interval { lo, hi }
    }

    pub fn contains_site(&self, n: usize) -> bool {
        self.lo <= n && n <= self.hi
    }

    /// Whether the bond joining sites `b` and `b + 1` lies fully inside.
    pub fn contains_bond(&self, b: usize) -> bool {
        self.lo <= b && b + 1 <= self.hi
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}
