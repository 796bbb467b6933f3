//! Distinct lengths of non-negative edge combinations.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::cone::SignCone;
use super::cyclo::{CycloInt, QuadReal};
use crate::error::{Error, Result};

/// `ε = min_k (f_k, v0)² / (v0, v0)`, so that `(v, v) ≥ ε Σ n_k²` for every
/// `v = Σ n_k f_k` with `n_k ≥ 0`.
pub fn epsilon_bound(v0: &CycloInt, cone: SignCone) -> Result<f64> {
    let mut min = f64::INFINITY;
    for f in cone.oriented_basis() {
        let d = f.dot2(v0);
        if d.signum() <= 0 {
            return Err(Error::precondition(format!(
                "v0 = {v0} is not strictly inside cone {}",
                cone.index()
            )));
        }
        min = min.min(d.value() / 2.0);
    }
    Ok(min * min / v0.norm2().value())
}

/// Calls `visit(n, v)` for every `v = Σ n_k f_k` with `n_k ≥ 0` and
/// `Σ n_k (f_k, v0) ≤ l·|v0|`, the cone-canonical `v0`.
pub fn for_each_combination(l: f64, cone: SignCone, mut visit: impl FnMut([u64; 5], CycloInt)) {
    if !(l >= 0.0) {
        return;
    }
    let (basis, weights, budget) = region(l, cone);
    let mut n = [0u64; 5];
    walk(0, CycloInt::ZERO, budget, &basis, &weights, &mut n, &mut visit);
}

fn region(l: f64, cone: SignCone) -> ([CycloInt; 5], [f64; 5], f64) {
    let basis = cone.oriented_basis();
    let v0 = cone.canonical_vector();
    let weights = basis.map(|f| f.dot2(&v0).value() / 2.0);
    let budget = l * v0.length() * (1.0 + 1e-12);
    (basis, weights, budget)
}

fn walk(
    k: usize,
    acc: CycloInt,
    left: f64,
    basis: &[CycloInt; 5],
    weights: &[f64; 5],
    n: &mut [u64; 5],
    visit: &mut impl FnMut([u64; 5], CycloInt),
) {
    if k == 5 {
        visit(*n, acc);
        return;
    }
    let mut v = acc;
    let mut rest = left;
    n[k] = 0;
    while rest >= 0.0 {
        walk(k + 1, v, rest, basis, weights, n, visit);
        n[k] += 1;
        v = v + basis[k];
        rest -= weights[k];
    }
    n[k] = 0;
}

/// Distinct squared lengths `|v|² ≤ l²` of combinations `v` that lie in
/// the closed `cone` and are at least an edge long, ascending.
pub fn enumerate_pentagon_lengths(l: f64, cone: SignCone) -> Result<Vec<QuadReal>> {
    if l.is_nan() || l < 0.0 {
        return Err(Error::precondition("length bound must be non-negative"));
    }
    if l < 1.0 {
        return Ok(Vec::new());
    }
    let (basis, weights, budget) = region(l, cone);
    let limit = l * l;
    let top = (budget / weights[0]).floor() as u64;
    let one = QuadReal::integer(1);
    let sets: Vec<BTreeSet<QuadReal>> = (0..=top)
        .into_par_iter()
        .map(|n0| {
            let mut out = BTreeSet::new();
            let start = basis[0].scale(n0 as i64);
            let left = budget - n0 as f64 * weights[0];
            let mut n = [n0, 0, 0, 0, 0];
            walk(1, start, left, &basis, &weights, &mut n, &mut |_, v| {
                let q = v.norm2();
                if q >= one && q.le_f64(limit) && cone.contains_closed(&v) {
                    out.insert(q);
                }
            });
            out
        })
        .collect();
    let all: BTreeSet<QuadReal> = sets.into_iter().flatten().collect();
    Ok(all.into_iter().collect())
}

/// CSV with header `a,b,value`, one row per `a + bφ`.
pub fn lengths_csv(lengths: &[QuadReal]) -> String {
    let mut s = String::from("a,b,value\n");
    for q in lengths {
        let _ = writeln!(s, "{},{},{:.12}", q.a, q.b, q.value());
    }
    s
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountBoundRow {
    pub l: u32,
    pub count: usize,
    pub bound: f64,
    pub holds: bool,
}

/// Distinct-length counts for each `l` in `ls` against `γ l⁵`, with `γ`
/// taken from the count at `fit_l`.
pub fn count_bound_table(ls: &[u32], fit_l: u32, cone: SignCone) -> Result<(f64, Vec<CountBoundRow>)> {
    if fit_l == 0 {
        return Err(Error::precondition("fit length must be positive"));
    }
    let fit = enumerate_pentagon_lengths(fit_l as f64, cone)?.len();
    let gamma = fit as f64 / (fit_l as f64).powi(5);
    let rows = ls
        .iter()
        .map(|&l| {
            let count = enumerate_pentagon_lengths(l as f64, cone)?.len();
            let bound = gamma * (l as f64).powi(5);
            Ok(CountBoundRow { l, count, bound, holds: (count as f64) < bound })
        })
        .collect::<Result<_>>()?;
    Ok((gamma, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone0() -> SignCone {
        SignCone::new(0).unwrap()
    }

    #[test]
    fn small_examples() {
        assert!(enumerate_pentagon_lengths(0.0, cone0()).unwrap().is_empty());
        assert_eq!(enumerate_pentagon_lengths(1.0, cone0()).unwrap(), vec![QuadReal::integer(1)]);
        let two = enumerate_pentagon_lengths(2.0, cone0()).unwrap();
        assert!(two.contains(&QuadReal::new(1, 1)));
        assert!(two.windows(2).all(|w| w[0] < w[1]));
        assert!(two.iter().all(|q| q.value() <= 4.0 + 1e-12 && q.value() >= 1.0));
        assert!(enumerate_pentagon_lengths(-1.0, cone0()).is_err());
    }

    #[test]
    fn counts_grow() {
        let counts: Vec<usize> = (1..=5)
            .map(|l| enumerate_pentagon_lengths(l as f64, cone0()).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 9, 26, 63, 134]);
    }

    #[test]
    fn cones_give_the_same_lengths() {
        let base = enumerate_pentagon_lengths(4.0, cone0()).unwrap();
        for c in SignCone::all().skip(1) {
            assert_eq!(enumerate_pentagon_lengths(4.0, c).unwrap(), base, "cone {}", c.index());
        }
    }

    #[test]
    fn exact_norms_match_floats() {
        for c in [cone0(), SignCone::new(7).unwrap()] {
            for_each_combination(6.0, c, |_, v| {
                let (x, y) = v.embed();
                assert!((v.norm2().value() - (x * x + y * y)).abs() < 1e-9);
            });
        }
    }

    #[test]
    fn epsilon_bounds_every_combination() {
        for c in SignCone::all() {
            let v0 = c.canonical_vector();
            let eps = epsilon_bound(&v0, c).unwrap();
            assert!(eps > 0.0);
            for_each_combination(6.0, c, |n, v| {
                let sq: u64 = n.iter().map(|k| k * k).sum();
                if sq > 0 {
                    assert!(v.norm2().value() >= eps * sq as f64 - 1e-9);
                }
            });
        }
    }

    #[test]
    fn epsilon_rejects_degenerate_v0() {
        // 1 − ζ² is perpendicular to ζ
        let c = cone0();
        let v0 = CycloInt::zeta_pow(0) - CycloInt::zeta_pow(2);
        assert!(epsilon_bound(&v0, c).is_err());
        assert!(epsilon_bound(&CycloInt::ZERO, c).is_err());
        assert!(epsilon_bound(&c.rotated(5).canonical_vector(), c).is_err());
    }

    #[test]
    fn csv_rows() {
        let csv = lengths_csv(&[QuadReal::integer(1), QuadReal::new(1, 1)]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "a,b,value");
        assert_eq!(lines[1], "1,0,1.000000000000");
        assert!(lines[2].starts_with("1,1,2.618033988"));
    }

    #[test]
    fn count_bound_rows() {
        let (gamma, rows) = count_bound_table(&[4, 5, 6], 4, cone0()).unwrap();
        assert!((gamma - 63.0 / 1024.0).abs() < 1e-15);
        assert!(!rows[0].holds);
        assert!(rows[1].holds && rows[2].holds);
    }
}
