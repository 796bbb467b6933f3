//! Square and triangular lattice vectors and irreducible-point counting in
//! angular sectors.
//!
//! Triangular vectors use Eisenstein coordinates: `(x, y)` stands for
//! `x·(1, 0) + y·(1/2, √3/2)`, so `x² + xy + y²` is the exact squared
//! length. Both coordinate systems are lattice bases, which makes
//! irreducibility the same coprimality test in either case.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norm_bound;

const TAU: f64 = 2.0 * PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Square,
    Triangular,
}

impl LatticeKind {
    /// Order of the point symmetry group of the lattice.
    pub fn symmetry_order(self) -> usize {
        match self {
            LatticeKind::Square => 8,
            LatticeKind::Triangular => 12,
        }
    }

    /// Number of exactly representable boundary directions, spaced evenly
    /// around the circle (every 45° resp. 30°). Each one is a lattice direction.
    fn axis_count(self) -> usize {
        match self {
            LatticeKind::Square => 8,
            LatticeKind::Triangular => 12,
        }
    }

    fn axis(self, k: usize) -> (i64, i64) {
        const SQUARE: [(i64, i64); 8] = [
            (1, 0),
            (1, 1),
            (0, 1),
            (-1, 1),
            (-1, 0),
            (-1, -1),
            (0, -1),
            (1, -1),
        ];
        const TRIANGULAR: [(i64, i64); 12] = [
            (1, 0),
            (1, 1),
            (0, 1),
            (-1, 2),
            (-1, 1),
            (-2, 1),
            (-1, 0),
            (-1, -1),
            (0, -1),
            (1, -2),
            (1, -1),
            (2, -1),
        ];
        match self {
            LatticeKind::Square => SQUARE[k],
            LatticeKind::Triangular => TRIANGULAR[k],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Square => "square",
            LatticeKind::Triangular => "triangular",
        }
    }

    pub fn byte(self) -> u8 {
        match self {
            LatticeKind::Square => 0,
            LatticeKind::Triangular => 1,
        }
    }

    pub fn from_byte(b: u8) -> Option<Self> {
        match b {
            0 => Some(LatticeKind::Square),
            1 => Some(LatticeKind::Triangular),
            _ => None,
        }
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeVec {
    pub kind: LatticeKind,
    pub x: i64,
    pub y: i64,
}

impl LatticeVec {
    pub fn new(kind: LatticeKind, x: i64, y: i64) -> Self {
        LatticeVec { kind, x, y }
    }

    /// Squared length: `x²+y²` or `x²+xy+y²`.
    pub fn norm(&self) -> Result<u64> {
        let (x, y) = (self.x as i128, self.y as i128);
        let n = match self.kind {
            LatticeKind::Square => x * x + y * y,
            LatticeKind::Triangular => x * x + x * y + y * y,
        };
        u64::try_from(n).map_err(|_| Error::Overflow("lattice norm"))
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// True when the segment from the origin holds no other lattice point.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::precondition("irreducibility of the zero vector"));
        }
        Ok(self.x.unsigned_abs().gcd(&self.y.unsigned_abs()) == 1)
    }

    /// Cartesian coordinates of the embedded vector.
    pub fn embed(&self) -> (f64, f64) {
        let (x, y) = (self.x as f64, self.y as f64);
        match self.kind {
            LatticeKind::Square => (x, y),
            LatticeKind::Triangular => (x + 0.5 * y, y * 3f64.sqrt() / 2.0),
        }
    }

    /// Angle of the embedded vector in `[0, 2π)`.
    pub fn angle(&self) -> f64 {
        let (ex, ey) = self.embed();
        let a = ey.atan2(ex);
        if a < 0.0 {
            (a + TAU).min(TAU.next_down())
        } else {
            a
        }
    }

    /// Images of `self` under every element of the lattice's point group.
    pub fn symmetric_images(&self) -> Vec<LatticeVec> {
        let (x, y, kind) = (self.x, self.y, self.kind);
        match kind {
            LatticeKind::Square => [(x, y), (-y, x), (-x, -y), (y, -x)]
                .into_iter()
                .flat_map(|(a, b)| [(a, b), (b, a)])
                .map(|(a, b)| LatticeVec::new(kind, a, b))
                .collect(),
            LatticeKind::Triangular => {
                // rotation by 60°: x + yω ↦ -y + (x + y)ω; reflection swaps x and y
                let mut out = Vec::with_capacity(12);
                let (mut a, mut b) = (x, y);
                for _ in 0..6 {
                    out.push(LatticeVec::new(kind, a, b));
                    out.push(LatticeVec::new(kind, b, a));
                    (a, b) = (-b, a + b);
                }
                out
            }
        }
    }
}

/// `true` when the embedded vector lies in the upper half plane
/// `y > 0 or (y = 0 and x > 0)`, i.e. its angle is in `[0, π)`.
fn upper_half(kind: LatticeKind, (x, y): (i64, i64)) -> bool {
    let ex = match kind {
        LatticeKind::Square => x as i128,
        LatticeKind::Triangular => 2 * x as i128 + y as i128,
    };
    y > 0 || (y == 0 && ex > 0)
}

/// Compares angles in `[0, 2π)` of two nonzero vectors of the same lattice
/// with integer arithmetic only.
fn angle_cmp(kind: LatticeKind, u: (i64, i64), w: (i64, i64)) -> Ordering {
    let (hu, hw) = (upper_half(kind, u), upper_half(kind, w));
    if hu != hw {
        return if hu { Ordering::Less } else { Ordering::Greater };
    }
    // the basis has positive orientation, so the sign of the coordinate
    // determinant is the sign of the planar cross product
    let det = u.0 as i128 * w.1 as i128 - u.1 as i128 * w.0 as i128;
    0.cmp(&det)
}

#[derive(Clone, Copy, Debug)]
enum Boundary {
    Axis(usize),
    Approx(f64),
}

impl Boundary {
    fn cmp_vec(self, v: &LatticeVec) -> Ordering {
        match self {
            Boundary::Axis(k) => angle_cmp(v.kind, (v.x, v.y), v.kind.axis(k)),
            Boundary::Approx(a) => v.angle().total_cmp(&a),
        }
    }
}

/// Half-open angular interval `[start, start + width)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sector {
    pub start_angle: f64,
    pub width: f64,
}

impl Sector {
    pub fn new(start_angle: f64, width: f64) -> Result<Self> {
        if !start_angle.is_finite() || !(width > 0.0) || width > TAU * (1.0 + 1e-12) {
            return Err(Error::precondition(format!(
                "sector width {width} must lie in (0, 2π]"
            )));
        }
        Ok(Sector { start_angle, width: width.min(TAU) })
    }

    pub fn full() -> Self {
        Sector { start_angle: 0.0, width: TAU }
    }

    pub fn is_full(&self) -> bool {
        self.width >= TAU * (1.0 - 1e-12)
    }

    fn resolve(&self, kind: LatticeKind) -> (Boundary, Boundary, bool) {
        let m = kind.axis_count();
        let step = TAU / m as f64;
        let snap = |angle: f64| -> Option<usize> {
            let k = (angle / step).round();
            ((angle - k * step).abs() <= 1e-9 * step.max(angle.abs())).then_some(k as usize)
        };
        let start = self.start_angle.rem_euclid(TAU);
        let end = start + self.width;
        let lower = match snap(start) {
            Some(k) => Boundary::Axis(k % m),
            None => Boundary::Approx(start),
        };
        let (upper, wraps) = match snap(end) {
            Some(k) => (Boundary::Axis(k % m), k >= m),
            None => (Boundary::Approx(end.rem_euclid(TAU)), end >= TAU),
        };
        (lower, upper, wraps)
    }

    /// Membership of the nonzero vector `v`, decided exactly when both
    /// boundaries lie along lattice axes.
    pub fn contains(&self, v: &LatticeVec) -> bool {
        if self.is_full() {
            return true;
        }
        let (lower, upper, wraps) = self.resolve(v.kind);
        self.contains_resolved(v, lower, upper, wraps)
    }

    fn contains_resolved(
        &self,
        v: &LatticeVec,
        lower: Boundary,
        upper: Boundary,
        wraps: bool,
    ) -> bool {
        if self.is_full() {
            return true;
        }
        let above_lower = lower.cmp_vec(v) != Ordering::Less;
        let below_upper = upper.cmp_vec(v) == Ordering::Less;
        if wraps {
            above_lower || below_upper
        } else {
            above_lower && below_upper
        }
    }
}

/// Unfolding presets. The cube uses the square lattice; the solids with
/// triangular faces use the triangular lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solid {
    Cube,
    Tetrahedron,
    Octahedron,
    Icosahedron,
}

impl Solid {
    pub const ALL: [Solid; 4] = [
        Solid::Cube,
        Solid::Tetrahedron,
        Solid::Octahedron,
        Solid::Icosahedron,
    ];

    pub fn kind(self) -> LatticeKind {
        match self {
            Solid::Cube => LatticeKind::Square,
            _ => LatticeKind::Triangular,
        }
    }

    /// Angle of the sector holding the unfolded geodesics from one vertex.
    pub fn sector_width(self) -> f64 {
        match self {
            Solid::Cube => 1.5 * PI,
            Solid::Tetrahedron | Solid::Octahedron => 4.0 * PI / 3.0,
            Solid::Icosahedron => 5.0 * PI / 3.0,
        }
    }

    pub fn sector(self) -> Sector {
        Sector { start_angle: 0.0, width: self.sector_width() }
    }

    pub fn name(self) -> &'static str {
        match self {
            Solid::Cube => "cube",
            Solid::Tetrahedron => "tetrahedron",
            Solid::Octahedron => "octahedron",
            Solid::Icosahedron => "icosahedron",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Solid::ALL.into_iter().find(|p| p.name() == s)
    }
}

/// Range of the outer coordinate and, for a fixed outer value, of the inner
/// one, for all vectors with `norm ≤ bound`.
fn outer_range(kind: LatticeKind, bound: u64) -> i64 {
    match kind {
        LatticeKind::Square => bound.isqrt() as i64,
        // for fixed y, x² + xy + y² ≤ N has solutions iff 3y² ≤ 4N
        LatticeKind::Triangular => ((4 * bound as u128) / 3).isqrt() as i64,
    }
}

fn inner_range(kind: LatticeKind, outer: i64, bound: u64) -> Option<(i64, i64)> {
    let b = bound as i128;
    let o = outer as i128;
    match kind {
        LatticeKind::Square => {
            let rest = b - o * o;
            if rest < 0 {
                return None;
            }
            let r = (rest as u128).isqrt() as i64;
            Some((-r, r))
        }
        LatticeKind::Triangular => {
            // x² + ox + o² ≤ N  ⇔  (2x + o)² ≤ 4N - 3o²
            let disc = 4 * b - 3 * o * o;
            if disc < 0 {
                return None;
            }
            let r = (disc as u128).isqrt() as i128;
            // 2x + o ∈ [-r, r]
            let lo = Integer::div_ceil(&(-r - o), &2);
            let hi = Integer::div_floor(&(r - o), &2);
            Some((lo as i64, hi as i64))
        }
    }
}

fn check_size(l: f64) -> Result<u64> {
    if !(l >= 0.0) {
        return Err(Error::precondition(format!("radius must be non-negative, got {l}")));
    }
    let bound = norm_bound(l);
    if bound > (i64::MAX as u64) / 4 {
        return Err(Error::Overflow("sector count radius"));
    }
    Ok(bound)
}

/// Number of irreducible vectors `v` with `0 < norm(v) ≤ l²` whose angle
/// lies in `sector`.
pub fn count_irreducible_in_sector(kind: LatticeKind, sector: &Sector, l: f64) -> Result<u64> {
    let bound = check_size(l)?;
    if bound == 0 {
        return Ok(0);
    }
    let (lower, upper, wraps) = sector.resolve(kind);
    let reach = outer_range(kind, bound);
    let count = (-reach..=reach)
        .into_par_iter()
        .map(|outer| {
            let Some((lo, hi)) = inner_range(kind, outer, bound) else {
                return 0u64;
            };
            let mut c = 0u64;
            for inner in lo..=hi {
                // square: outer = x; triangular: outer = y
                let v = match kind {
                    LatticeKind::Square => LatticeVec::new(kind, outer, inner),
                    LatticeKind::Triangular => LatticeVec::new(kind, inner, outer),
                };
                if v.is_zero() {
                    continue;
                }
                if v.x.unsigned_abs().gcd(&v.y.unsigned_abs()) == 1
                    && sector.contains_resolved(&v, lower, upper, wraps)
                {
                    c += 1;
                }
            }
            c
        })
        .sum();
    Ok(count)
}

/// `count_irreducible_in_sector / l²`, the finite-radius coefficient of the
/// quadratic growth.
pub fn irreducible_sector_density(kind: LatticeKind, sector: &Sector, l: f64) -> Result<f64> {
    if !(l > 0.0) {
        return Err(Error::precondition(format!("density needs l > 0, got {l}")));
    }
    Ok(count_irreducible_in_sector(kind, sector, l)? as f64 / (l * l))
}

/// Limit of [`irreducible_sector_density`] for a sector of the given width:
/// sector area per unit cell times the coprime density 6/π².
pub fn asymptotic_sector_density(kind: LatticeKind, width: f64) -> f64 {
    let cell = match kind {
        LatticeKind::Square => 1.0,
        LatticeKind::Triangular => 3f64.sqrt() / 2.0,
    };
    (width / 2.0) / cell * 6.0 / (PI * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SQ: LatticeKind = LatticeKind::Square;
    const TRI: LatticeKind = LatticeKind::Triangular;

    #[test]
    fn norms() {
        assert_eq!(LatticeVec::new(SQ, 11, 3).norm().unwrap(), 130);
        assert_eq!(LatticeVec::new(SQ, 9, 7).norm().unwrap(), 130);
        assert_eq!(LatticeVec::new(TRI, 1, 1).norm().unwrap(), 3);
        assert_eq!(LatticeVec::new(SQ, 0, 0).norm().unwrap(), 0);
        assert_eq!(LatticeVec::new(TRI, 2, -1).norm().unwrap(), 3);
    }

    #[test]
    fn norm_overflow_is_reported() {
        let v = LatticeVec::new(SQ, i64::MAX, i64::MAX);
        assert!(matches!(v.norm(), Err(Error::Overflow(_))));
        let w = LatticeVec::new(TRI, i64::MIN, 0);
        assert!(matches!(w.norm(), Err(Error::Overflow(_))));
        // x² + xy + y² stays representable where x² + y² would not
        let u = LatticeVec::new(TRI, 3_000_000_000, -3_000_000_000);
        assert_eq!(u.norm().unwrap(), 9_000_000_000_000_000_000);
    }

    #[test]
    fn triangular_norm_is_squared_length() {
        for x in -6..=6 {
            for y in -6..=6 {
                let v = LatticeVec::new(TRI, x, y);
                let (ex, ey) = v.embed();
                assert!((ex * ex + ey * ey - v.norm().unwrap() as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn irreducibility() {
        assert!(LatticeVec::new(SQ, 11, 3).is_irreducible().unwrap());
        assert!(!LatticeVec::new(SQ, 2, 2).is_irreducible().unwrap());
        assert!(!LatticeVec::new(TRI, 2, 4).is_irreducible().unwrap());
        assert!(LatticeVec::new(TRI, 0, -1).is_irreducible().unwrap());
        assert!(LatticeVec::new(SQ, 0, 0).is_irreducible().is_err());
    }

    #[test]
    fn small_counts() {
        let full = Sector::full();
        assert_eq!(count_irreducible_in_sector(SQ, &full, 2.0).unwrap(), 8);
        assert_eq!(count_irreducible_in_sector(TRI, &full, 1.0).unwrap(), 6);
        assert_eq!(count_irreducible_in_sector(SQ, &full, 0.0).unwrap(), 0);
        assert_eq!(count_irreducible_in_sector(TRI, &full, 0.0).unwrap(), 0);
        assert!(count_irreducible_in_sector(SQ, &full, -1.0).is_err());
    }

    #[test]
    fn axis_table_matches_angles() {
        for kind in [SQ, TRI] {
            let m = kind.axis_count();
            for k in 0..m {
                let (x, y) = kind.axis(k);
                let a = LatticeVec::new(kind, x, y).angle();
                assert!((a - TAU * k as f64 / m as f64).abs() < 1e-12, "{kind} axis {k}");
            }
        }
    }

    #[test]
    fn axis_boundaries_are_half_open() {
        // 3π/2 sector from 0: the +x axis is in, the -y axis is out
        let cube = Solid::Cube.sector();
        assert!(cube.contains(&LatticeVec::new(SQ, 1, 0)));
        assert!(cube.contains(&LatticeVec::new(SQ, -1, -1)));
        assert!(!cube.contains(&LatticeVec::new(SQ, 0, -1)));
        assert!(!cube.contains(&LatticeVec::new(SQ, 1, -1)));
        // 4π/3: direction 240° is (0, -1) in Eisenstein coordinates
        let tet = Solid::Tetrahedron.sector();
        assert!(tet.contains(&LatticeVec::new(TRI, -1, -1)));
        assert!(!tet.contains(&LatticeVec::new(TRI, 0, -1)));
        assert!(!tet.contains(&LatticeVec::new(TRI, 0, -7)));
    }

    #[test]
    fn wrapping_sector() {
        let s = Sector::new(1.5 * PI, PI).unwrap();
        assert!(s.contains(&LatticeVec::new(SQ, 0, -1)));
        assert!(s.contains(&LatticeVec::new(SQ, 1, 0)));
        assert!(!s.contains(&LatticeVec::new(SQ, 0, 1)));
        assert!(s.contains(&LatticeVec::new(SQ, 1, 5)));
    }

    #[test]
    fn sector_validation() {
        assert!(Sector::new(0.0, 0.0).is_err());
        assert!(Sector::new(0.0, 7.0).is_err());
        assert!(Sector::new(f64::NAN, 1.0).is_err());
        assert!(Sector::new(0.0, TAU).unwrap().is_full());
    }

    #[test]
    fn symmetry_orbit_closure() {
        for kind in [SQ, TRI] {
            let reach = 120;
            for x in -reach..=reach {
                for y in -reach..=reach {
                    let v = LatticeVec::new(kind, x, y);
                    let n = v.norm().unwrap();
                    if n == 0 || n > 10_000 {
                        continue;
                    }
                    let irreducible = v.is_irreducible().unwrap();
                    let images = v.symmetric_images();
                    assert_eq!(images.len(), kind.symmetry_order());
                    for w in images {
                        assert_eq!(w.norm().unwrap(), n);
                        assert_eq!(w.is_irreducible().unwrap(), irreducible);
                    }
                }
            }
        }
    }

    #[test]
    fn full_circle_counts_are_unions_of_orbits() {
        // orbits on mirror lines have half the group order
        let full = Sector::full();
        for l in [1.0, 2.5, 7.0, 13.3, 40.0] {
            assert_eq!(count_irreducible_in_sector(SQ, &full, l).unwrap() % 4, 0);
            assert_eq!(count_irreducible_in_sector(TRI, &full, l).unwrap() % 6, 0);
        }
    }

    #[test]
    fn density_examples() {
        assert!(irreducible_sector_density(SQ, &Sector::full(), 0.0).is_err());
        let d = irreducible_sector_density(SQ, &Sector::full(), 1.0).unwrap();
        assert_eq!(d, 4.0);
    }

    proptest! {
        #[test]
        fn sector_additivity(split in 0.1f64..6.0, l in 0.0f64..30.0, tri in any::<bool>()) {
            let kind = if tri { TRI } else { SQ };
            let a = Sector::new(0.0, split).unwrap();
            let b = Sector::new(split, TAU - split).unwrap();
            let total = count_irreducible_in_sector(kind, &Sector::full(), l).unwrap();
            let parts = count_irreducible_in_sector(kind, &a, l).unwrap()
                + count_irreducible_in_sector(kind, &b, l).unwrap();
            prop_assert_eq!(total, parts);
        }

        #[test]
        fn axis_aligned_additivity(k in 1usize..12, l in 0.0f64..30.0, tri in any::<bool>()) {
            let kind = if tri { TRI } else { SQ };
            let m = kind.axis_count();
            let k = k % m + 1;
            let w = TAU * k as f64 / m as f64;
            let a = Sector::new(0.0, w).unwrap();
            let total = count_irreducible_in_sector(kind, &Sector::full(), l).unwrap();
            let mut parts = count_irreducible_in_sector(kind, &a, l).unwrap();
            if k < m {
                let b = Sector::new(w, TAU - w).unwrap();
                parts += count_irreducible_in_sector(kind, &b, l).unwrap();
            }
            prop_assert_eq!(total, parts);
        }

        #[test]
        fn monotone_in_radius(l1 in 0.0f64..40.0, dl in 0.0f64..10.0, start in 0.0f64..6.3, width in 0.01f64..6.28) {
            let s = Sector::new(start, width).unwrap();
            for kind in [SQ, TRI] {
                let a = count_irreducible_in_sector(kind, &s, l1).unwrap();
                let b = count_irreducible_in_sector(kind, &s, l1 + dl).unwrap();
                prop_assert!(a <= b);
            }
        }
    }
}
