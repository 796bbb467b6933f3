//! Shared inputs for the benchmarks.

use polywave_core::pentagon::Dodecahedron;
use polywave_core::{PentagonStrip, Result};

/// Times `from, from + step, …` up to `to`.
pub fn time_grid(from: f64, to: f64, step: f64) -> Vec<f64> {
    let n = ((to - from) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| from + i as f64 * step).collect()
}

/// Seeded strips traced along random rays.
pub fn strips(count: u64, max_faces: usize) -> Result<Vec<PentagonStrip>> {
    let d = Dodecahedron::new();
    (0..count).map(|seed| PentagonStrip::random(&d, seed, max_faces)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        assert_eq!(time_grid(2.0, 4.0, 0.5), vec![2.0, 2.5, 3.0, 3.5, 4.0]);
        assert_eq!(time_grid(3.0, 3.0, 1.0), vec![3.0]);
    }

    #[test]
    fn strips_are_reproducible() {
        assert_eq!(strips(3, 10).unwrap(), strips(3, 10).unwrap());
    }
}
