//! Exact arithmetic in ℤ[ζ₅] and ℤ[φ].

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Golden ratio `(1 + √5)/2`.
pub const PHI: f64 = 1.618_033_988_749_895;

/// `a0 + a1ζ + a2ζ² + a3ζ³` with `ζ = e^{2πi/5}`; `ζ⁴ = −1 − ζ − ζ² − ζ³`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycloInt(pub [i64; 4]);

impl CycloInt {
    pub const ZERO: CycloInt = CycloInt([0; 4]);
    pub const ONE: CycloInt = CycloInt([1, 0, 0, 0]);

    pub fn new(a0: i64, a1: i64, a2: i64, a3: i64) -> Self {
        CycloInt([a0, a1, a2, a3])
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        match k.rem_euclid(5) {
            4 => CycloInt([-1, -1, -1, -1]),
            r => {
                let mut c = [0; 4];
                c[r as usize] = 1;
                CycloInt(c)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    /// Multiplication by ζ.
    pub fn mul_zeta(self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        CycloInt([-a3, a0 - a3, a1 - a3, a2 - a3])
    }

    /// Multiplication by `ζ^k`.
    pub fn rotate(self, k: i64) -> Self {
        (0..k.rem_euclid(5)).fold(self, |v, _| v.mul_zeta())
    }

    /// Complex conjugation, `ζ ↦ ζ⁴`.
    pub fn conj(self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        // a0 + a1ζ⁴ + a2ζ³ + a3ζ²
        CycloInt([a0 - a1, -a1, a3 - a1, a2 - a1])
    }

    pub fn scale(self, k: i64) -> Self {
        CycloInt(self.0.map(|a| a * k))
    }

    /// Planar coordinates of the complex embedding.
    pub fn embed(&self) -> (f64, f64) {
        self.0.iter().enumerate().fold((0.0, 0.0), |(x, y), (k, &a)| {
            let angle = 2.0 * PI * k as f64 / 5.0;
            (x + a as f64 * angle.cos(), y + a as f64 * angle.sin())
        })
    }

    /// Twice the Euclidean dot product of the embeddings, exactly.
    ///
    /// `2⟨ζ^j, ζ^k⟩ = 2cos(72°(j−k))` is `2`, `φ − 1` or `−φ` depending on
    /// whether `|j − k|` is 0, 1 or in {2, 3}.
    pub fn dot2(&self, other: &CycloInt) -> QuadReal {
        let (u, w) = (self.0, other.0);
        let mut same = 0i64;
        let mut near = 0i64;
        let mut far = 0i64;
        for (j, &uj) in u.iter().enumerate() {
            for (k, &wk) in w.iter().enumerate() {
                match j.abs_diff(k) {
                    0 => same += uj * wk,
                    1 => near += uj * wk,
                    _ => far += uj * wk,
                }
            }
        }
        // 2·same + near·(φ − 1) − far·φ
        QuadReal::new(2 * same - near, near - far)
    }

    /// Exact squared length `|v|²` as `a + bφ`.
    pub fn norm2(&self) -> QuadReal {
        let d = self.dot2(self);
        debug_assert!(d.a % 2 == 0 && d.b % 2 == 0);
        QuadReal::new(d.a / 2, d.b / 2)
    }

    pub fn length(&self) -> f64 {
        self.norm2().value().max(0.0).sqrt()
    }
}

impl Add for CycloInt {
    type Output = CycloInt;
    fn add(self, o: CycloInt) -> CycloInt {
        CycloInt(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl AddAssign for CycloInt {
    fn add_assign(&mut self, o: CycloInt) {
        *self = *self + o;
    }
}

impl Sub for CycloInt {
    type Output = CycloInt;
    fn sub(self, o: CycloInt) -> CycloInt {
        CycloInt(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for CycloInt {
    type Output = CycloInt;
    fn neg(self) -> CycloInt {
        CycloInt(self.0.map(|a| -a))
    }
}

impl Mul for CycloInt {
    type Output = CycloInt;
    fn mul(self, o: CycloInt) -> CycloInt {
        // product of degree-3 polynomials, reduced with ζ⁵ = 1 then ζ⁴
        let mut full = [0i64; 5];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in o.0.iter().enumerate() {
                full[(i + j) % 5] += a * b;
            }
        }
        let top = full[4];
        CycloInt([full[0] - top, full[1] - top, full[2] - top, full[3] - top])
    }
}

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2, a3] = self.0;
        write!(f, "({a0}, {a1}, {a2}, {a3})")
    }
}

/// The real number `a + bφ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadReal {
    pub a: i64,
    pub b: i64,
}

impl QuadReal {
    pub const ZERO: QuadReal = QuadReal { a: 0, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        QuadReal { a, b }
    }

    pub fn integer(a: i64) -> Self {
        QuadReal { a, b: 0 }
    }

    pub fn value(&self) -> f64 {
        self.a as f64 + self.b as f64 * PHI
    }

    /// Sign of `a + bφ`, i.e. of `(2a + b) + b√5`.
    pub fn signum(&self) -> i32 {
        let p = 2 * self.a as i128 + self.b as i128;
        let q = self.b as i128;
        let sign = |x: i128| x.signum() as i32;
        match (sign(p), sign(q)) {
            (0, s) | (s, 0) => s,
            (sp, sq) if sp == sq => sp,
            // opposite signs: compare p² with 5q²
            (sp, _) => match (p * p).cmp(&(5 * q * q)) {
                Ordering::Greater => sp,
                Ordering::Less => -sp,
                Ordering::Equal => 0,
            },
        }
    }

    /// `self ≤ x` for a float bound; exact when `x` is an integer.
    pub fn le_f64(&self, x: f64) -> bool {
        if x.fract() == 0.0 && x.abs() < 9.0e15 {
            *self <= QuadReal::integer(x as i64)
        } else {
            self.value() <= x
        }
    }
}

impl Add for QuadReal {
    type Output = QuadReal;
    fn add(self, o: QuadReal) -> QuadReal {
        QuadReal::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QuadReal {
    type Output = QuadReal;
    fn sub(self, o: QuadReal) -> QuadReal {
        QuadReal::new(self.a - o.a, self.b - o.b)
    }
}

impl Ord for QuadReal {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

impl PartialOrd for QuadReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}φ", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn close(a: (f64, f64), b: (f64, f64), tol: f64) -> bool {
        (a.0 - b.0).abs() < tol && (a.1 - b.1).abs() < tol
    }

    fn random_cyclo(rng: &mut impl Rng, r: i64) -> CycloInt {
        CycloInt(std::array::from_fn(|_| rng.gen_range(-r..=r)))
    }

    #[test]
    fn phi_constant() {
        assert_eq!(PHI, (1.0 + 5f64.sqrt()) / 2.0);
    }

    #[test]
    fn cyclotomic_identity() {
        let sum = (0..5).map(CycloInt::zeta_pow).fold(CycloInt::ZERO, |a, b| a + b);
        assert_eq!(sum, CycloInt::ZERO);
        assert_eq!(CycloInt::ONE.rotate(5), CycloInt::ONE);
        assert_eq!(CycloInt::zeta_pow(4), CycloInt::zeta_pow(3).mul_zeta());
        assert_eq!(CycloInt::zeta_pow(-1), CycloInt::zeta_pow(4));
    }

    #[test]
    fn reduced_power_embeds_correctly() {
        for k in 0..10 {
            let direct = (
                (2.0 * PI * k as f64 / 5.0).cos(),
                (2.0 * PI * k as f64 / 5.0).sin(),
            );
            assert!(close(CycloInt::zeta_pow(k).embed(), direct, 1e-12));
        }
    }

    #[test]
    fn embedding_is_additive_and_rotation_compatible() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let u = random_cyclo(&mut rng, 50);
            let w = random_cyclo(&mut rng, 50);
            let (ux, uy) = u.embed();
            let (wx, wy) = w.embed();
            assert!(close((u + w).embed(), (ux + wx, uy + wy), 1e-10));
            // multiplying by ζ rotates by 72°
            let (c, s) = ((0.4 * PI).cos(), (0.4 * PI).sin());
            let rotated = (ux * c - uy * s, ux * s + uy * c);
            assert!(close(u.mul_zeta().embed(), rotated, 1e-10));
            // ζ⁴·u via the relation equals the direct rotation by 288°
            let (c4, s4) = ((1.6 * PI).cos(), (1.6 * PI).sin());
            let r4 = (ux * c4 - uy * s4, ux * s4 + uy * c4);
            assert!(close((CycloInt::zeta_pow(4) * u).embed(), r4, 1e-10));
        }
    }

    #[test]
    fn multiplication_matches_complex_product() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..2000 {
            let u = random_cyclo(&mut rng, 20);
            let w = random_cyclo(&mut rng, 20);
            let (a, b) = u.embed();
            let (c, d) = w.embed();
            assert!(close((u * w).embed(), (a * c - b * d, a * d + b * c), 1e-8));
        }
    }

    #[test]
    fn conjugation_reflects() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let u = random_cyclo(&mut rng, 30);
            let (x, y) = u.embed();
            assert!(close(u.conj().embed(), (x, -y), 1e-10));
            assert_eq!(u.conj().conj(), u);
        }
    }

    #[test]
    fn norm_examples() {
        assert_eq!(CycloInt::ONE.norm2(), QuadReal::new(1, 0));
        assert_eq!((CycloInt::ONE + CycloInt::zeta_pow(1)).norm2(), QuadReal::new(1, 1));
        assert_eq!(CycloInt::ZERO.norm2(), QuadReal::ZERO);
        for k in 0..5 {
            assert_eq!(CycloInt::zeta_pow(k).norm2(), QuadReal::new(1, 0));
        }
        // ζ + ζ⁴ = 2cos72° = φ − 1, so its square is 2 − φ
        let short = CycloInt::zeta_pow(1) + CycloInt::zeta_pow(4);
        assert_eq!(short.norm2(), QuadReal::new(2, -1));
    }

    #[test]
    fn dot_table_matches_cosines() {
        for j in 0..5 {
            for k in 0..5 {
                let d = CycloInt::zeta_pow(j).dot2(&CycloInt::zeta_pow(k)).value();
                let expect = 2.0 * (2.0 * PI * (j - k) as f64 / 5.0).cos();
                assert!((d - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn norm_matches_float_norm() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10_000 {
            let u = random_cyclo(&mut rng, 100);
            let (x, y) = u.embed();
            let rel = (u.norm2().value() - (x * x + y * y)).abs() / (1.0 + x * x + y * y);
            assert!(rel < 1e-9);
        }
    }

    #[test]
    fn quad_real_order_matches_floats() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let p = QuadReal::new(rng.gen_range(-1000..1000), rng.gen_range(-1000..1000));
            let q = QuadReal::new(rng.gen_range(-1000..1000), rng.gen_range(-1000..1000));
            let (pv, qv) = (p.value(), q.value());
            if (pv - qv).abs() > 1e-9 {
                assert_eq!(p.cmp(&q), pv.total_cmp(&qv), "{p} vs {q}");
            } else {
                assert_eq!(p, q);
            }
        }
    }

    #[test]
    fn quad_real_signs() {
        assert_eq!(QuadReal::new(0, 0).signum(), 0);
        assert_eq!(QuadReal::new(-1, 1).signum(), 1);
        assert_eq!(QuadReal::new(2, -1).signum(), 1);
        assert_eq!(QuadReal::new(1, -1).signum(), -1);
        assert!(QuadReal::new(1, 1).le_f64(4.0));
        assert!(!QuadReal::new(4, 1).le_f64(4.0));
        assert!(QuadReal::new(4, 0).le_f64(4.0));
    }

    proptest! {
        #[test]
        fn order_is_total_and_transitive(
            a in -500i64..500, b in -500i64..500,
            c in -500i64..500, d in -500i64..500,
            e in -500i64..500, f in -500i64..500,
        ) {
            let (x, y, z) = (QuadReal::new(a, b), QuadReal::new(c, d), QuadReal::new(e, f));
            prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
            prop_assert_eq!(x.cmp(&y) == Ordering::Equal, x == y);
            if x <= y && y <= z {
                prop_assert!(x <= z);
            }
        }

        #[test]
        fn dot_is_symmetric_bilinear(u in prop::array::uniform4(-30i64..30), v in prop::array::uniform4(-30i64..30), w in prop::array::uniform4(-30i64..30)) {
            let (u, v, w) = (CycloInt(u), CycloInt(v), CycloInt(w));
            prop_assert_eq!(u.dot2(&v), v.dot2(&u));
            prop_assert_eq!((u + v).dot2(&w), u.dot2(&w) + v.dot2(&w));
            // rotation preserves lengths
            prop_assert_eq!(u.mul_zeta().norm2(), u.norm2());
        }
    }
}
