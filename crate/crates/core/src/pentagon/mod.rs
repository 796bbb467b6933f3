//! Pentagonal surfaces: exact ℤ[ζ₅] geometry, unfoldings of dodecahedron
//! face paths, edge-path decompositions and length counting.

mod cone;
mod cyclo;
mod dodecahedron;
mod lengths;
mod strip;

pub use cone::SignCone;
pub use cyclo::{CycloInt, QuadReal, PHI};
pub use dodecahedron::Dodecahedron;
pub use lengths::{
    count_bound_table, enumerate_pentagon_lengths, epsilon_bound, for_each_combination,
    lengths_csv, CountBoundRow,
};
pub use strip::{DecomposeOutcome, Decomposition, PentagonStrip, PlacedFace};
