//! The ten direction cones cut out by the perpendiculars to the pentagon
//! edge directions.
//!
//! Edge directions are `±ζ^k`. Their perpendiculars sit at `18° + 36°m`, so
//! cone `m` is centred on `36°m`. Inside a cone each edge direction has a
//! fixed orientation with positive dot product against every direction of
//! the cone. A direction on a cone boundary belongs to the lower-index cone
//! of the two it separates.

use serde::{Deserialize, Serialize};

use super::cyclo::CycloInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignCone(u8);

impl SignCone {
    pub const COUNT: u8 = 10;

    pub fn new(index: u8) -> Option<Self> {
        (index < Self::COUNT).then_some(SignCone(index))
    }

    pub fn all() -> impl Iterator<Item = SignCone> {
        (0..Self::COUNT).map(SignCone)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// Centre direction in degrees.
    pub fn center_degrees(self) -> f64 {
        36.0 * self.0 as f64
    }

    /// Cone reached by turning `steps · 36°` counter-clockwise.
    pub fn rotated(self, steps: i64) -> SignCone {
        SignCone((self.0 as i64 + steps).rem_euclid(Self::COUNT as i64) as u8)
    }

    /// `σ_k = sign cos(36°m − 72°k)`.
    pub fn signs(self) -> [i64; 5] {
        std::array::from_fn(|k| {
            let d = (36 * self.0 as i64 - 72 * k as i64).rem_euclid(360);
            if d < 90 || d > 270 {
                1
            } else {
                -1
            }
        })
    }

    /// The edge vectors `σ_k ζ^k`, oriented to point into the cone.
    pub fn oriented_basis(self) -> [CycloInt; 5] {
        let s = self.signs();
        std::array::from_fn(|k| CycloInt::zeta_pow(k as i64).scale(s[k]))
    }

    /// Cone of a nonzero vector, exactly.
    pub fn of(v: &CycloInt) -> Option<SignCone> {
        if v.is_zero() {
            return None;
        }
        let dots: [i32; 5] =
            std::array::from_fn(|k| v.dot2(&CycloInt::zeta_pow(k as i64)).signum());
        // on a boundary one dot product vanishes and two cones match
        SignCone::all().find(|c| {
            c.signs()
                .iter()
                .zip(&dots)
                .all(|(&s, &d)| d == 0 || d as i64 == s)
        })
    }

    /// Membership in the closed cone, boundaries included on both sides.
    pub fn contains_closed(self, v: &CycloInt) -> bool {
        !v.is_zero()
            && self.signs().iter().enumerate().all(|(k, &s)| {
                let d = v.dot2(&CycloInt::zeta_pow(k as i64)).signum();
                d == 0 || d as i64 == s
            })
    }

    /// `Σ_k f_k`, a vector strictly inside the cone with positive dot product
    /// against every oriented basis vector.
    pub fn canonical_vector(self) -> CycloInt {
        self.oriented_basis().into_iter().fold(CycloInt::ZERO, |a, b| a + b)
    }
}
