//! Geodesic length spectra of Platonic solids and wave-arrival counting.
//!
//! Vertex-to-vertex geodesics on the cube and on the triangle-faced solids
//! unfold to irreducible vectors of the square and triangular lattices.
//! Their lengths are square roots of integers represented by `x²+y²` or
//! `x²+xy+y²`. Broken geodesics are non-negative combinations of the
//! square-free lengths, and counting those up to a time `t` gives the
//! number of wave fronts that reach the vertices.
//!
//! - [`lattice`]: lattice vectors, norms, irreducible-point counts in sectors
//! - [`spectra`]: bit sieves for representable and square-free representable norms
//! - [`semigroup`]: Landau–Ramanujan constants, ζ(s), additive prime number theorem constants
//! - [`waves`]: exact counting of broken-geodesic lengths
//! - [`pentagon`]: ℤ[ζ₅] geometry for dodecahedral unfoldings

pub mod error;
pub mod lattice;
pub mod pentagon;
pub mod primes;
pub mod semigroup;
pub mod spectra;
pub mod waves;

pub use error::{Error, Result};
pub use lattice::{LatticeKind, LatticeVec, Sector, Solid};
pub use pentagon::{CycloInt, PentagonStrip, QuadReal, SignCone};
pub use semigroup::{EulerProduct, SemigroupParams};
pub use spectra::SpectrumSieve;
pub use waves::{RadicalSum, WaveCount, WaveOptions};

/// Largest integer norm `n` with `n ≤ l²`.
///
/// The square is widened by a few ulps so that `l = √n` computed in floating
/// point still admits `n`.
pub fn norm_bound(l: f64) -> u64 {
    if !(l > 0.0) {
        return 0;
    }
    let sq = l * l * (1.0 + 8.0 * f64::EPSILON);
    if sq >= u64::MAX as f64 {
        u64::MAX
    } else {
        sq.floor() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::norm_bound;

    #[test]
    fn norm_bound_admits_rounded_roots() {
        for n in 1..5000u64 {
            assert_eq!(norm_bound((n as f64).sqrt()), n);
        }
        assert_eq!(norm_bound(0.0), 0);
        assert_eq!(norm_bound(0.99), 0);
        assert_eq!(norm_bound(1.5), 2);
    }
}
