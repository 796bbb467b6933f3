//! Landau–Ramanujan constants, ζ(s), and the constant `c_G` of the additive
//! abstract prime number theorem.
//!
//! If the abstract primes of an additive arithmetical semigroup satisfy
//! `π_G(x) ~ C x^κ (ln x)^ν`, the number of elements of norm at most `x` is
//! `exp([c_G + o(1)] x^{κ/(κ+1)} (ln x)^{ν/(κ+1)})` with
//!
//! ```text
//! c_G = κ⁻¹ (κ+1)^{(κ-ν+1)/(κ+1)} [κ C Γ(κ+1) ζ(κ+1)]^{1/(κ+1)}.
//! ```

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::LatticeKind;
use crate::primes::primes_up_to;

/// Truncated Euler product with a bound on the relative truncation error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EulerProduct {
    pub value: f64,
    pub prime_limit: u64,
    /// The true constant lies in `[value, value·(1 + tail_bound)]`.
    pub tail_bound: f64,
}

impl EulerProduct {
    pub fn upper(&self) -> f64 {
        self.value * (1.0 + self.tail_bound)
    }
}

/// Residue class of the inert primes and the prefactor under the square root.
fn landau_ramanujan_class(kind: LatticeKind) -> (u64, u64, f64) {
    match kind {
        LatticeKind::Square => (4, 3, 0.5),
        LatticeKind::Triangular => (3, 2, 1.0 / (2.0 * 3f64.sqrt())),
    }
}

/// `γ = (prefactor · ∏ p²/(p²−1))^{1/2}` over primes `p ≤ prime_limit` in the
/// inert residue class (`p ≡ 3 mod 4`, resp. `p ≡ 2 mod 3`).
pub fn landau_ramanujan(kind: LatticeKind, prime_limit: u64) -> Result<EulerProduct> {
    if prime_limit < 3 {
        return Err(Error::precondition(format!(
            "prime limit must be at least 3, got {prime_limit}"
        )));
    }
    Ok(landau_ramanujan_from_primes(kind, &primes_up_to(prime_limit), prime_limit))
}

/// Same as [`landau_ramanujan`] with a precomputed ascending prime list; only
/// primes `≤ prime_limit` are used.
pub fn landau_ramanujan_from_primes(
    kind: LatticeKind,
    primes: &[u64],
    prime_limit: u64,
) -> EulerProduct {
    let (modulus, residue, prefactor) = landau_ramanujan_class(kind);
    // summing logarithms keeps ten million factors accurate
    let log_product: f64 = primes
        .iter()
        .take_while(|&&p| p <= prime_limit)
        .filter(|&&p| p % modulus == residue)
        .map(|&p| {
            let p2 = (p as f64) * (p as f64);
            (1.0 / (p2 - 1.0)).ln_1p()
        })
        .sum();
    let value = (0.5 * (prefactor.ln() + log_product)).exp();
    // Σ_{p>L} 1/(p²−1) < 1/(L−1), halved by the square root
    let tail_bound = (0.5 / (prime_limit as f64 - 1.0)).exp_m1();
    EulerProduct { value, prime_limit, tail_bound }
}

/// Lower and upper bounds around a central value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Bracket {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Partial sum of `Σ n^{-s}` over `n ≤ terms`, bracketed by the integral
/// bounds `(N+1)^{1−s}/(s−1) < Σ_{n>N} n^{-s} < N^{1−s}/(s−1)`.
pub fn zeta_partial(s: f64, terms: u64) -> Result<Bracket> {
    if !(s > 1.0) {
        return Err(Error::precondition(format!("ζ(s) needs s > 1, got {s}")));
    }
    if terms == 0 {
        return Err(Error::precondition("ζ partial sum needs at least one term"));
    }
    // smallest terms first, compensated
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for n in (1..=terms).rev() {
        let term = (n as f64).powf(-s);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    let partial = sum + comp;
    let n = terms as f64;
    let lower = partial + (n + 1.0).powf(1.0 - s) / (s - 1.0);
    let upper = partial + n.powf(1.0 - s) / (s - 1.0);
    Ok(Bracket { value: 0.5 * (lower + upper), lower, upper })
}

/// ζ(s) with half the bracket width at most `tolerance`.
pub fn zeta(s: f64, tolerance: f64) -> Result<Bracket> {
    if !(s > 1.0) {
        return Err(Error::precondition(format!("ζ(s) needs s > 1, got {s}")));
    }
    if !(tolerance > 0.0) {
        return Err(Error::precondition("ζ tolerance must be positive"));
    }
    // the bracket width is below N^{-s}
    let n = (2.0 * tolerance).powf(-1.0 / s).ceil();
    if n > 1e9 {
        return Err(Error::precondition(format!(
            "ζ({s}) to {tolerance} needs {n:e} terms"
        )));
    }
    zeta_partial(s, (n as u64).max(1))
}

const ZETA_TOLERANCE: f64 = 1e-14;

/// Parameters `(C, κ, ν)` of the abstract prime counting law.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SemigroupParams {
    pub c: f64,
    pub kappa: f64,
    pub nu: f64,
}

impl SemigroupParams {
    pub fn new(c: f64, kappa: f64, nu: f64) -> Result<Self> {
        if !(c > 0.0) || !(kappa > 0.0) || !nu.is_finite() {
            return Err(Error::precondition(format!(
                "need C > 0, κ > 0, finite ν; got ({c}, {kappa}, {nu})"
            )));
        }
        Ok(SemigroupParams { c, kappa, nu })
    }

    /// The lattice solids: `π_G(x) ~ (3γ/π²) x² (ln x)^{-1/2}`.
    pub fn for_lattice(gamma: f64) -> Self {
        SemigroupParams { c: 3.0 * gamma / (PI * PI), kappa: 2.0, nu: -0.5 }
    }

    /// `c_G` by the general formula. Γ(κ+1) is evaluated as a factorial, so
    /// κ must be a positive integer.
    pub fn c_g(&self) -> Result<f64> {
        let gamma_fn = factorial_gamma(self.kappa + 1.0)?;
        let zeta = zeta(self.kappa + 1.0, ZETA_TOLERANCE)?.value;
        let k = self.kappa;
        Ok((k + 1.0).powf((k - self.nu + 1.0) / (k + 1.0))
            * (k * self.c * gamma_fn * zeta).powf(1.0 / (k + 1.0))
            / k)
    }

    /// `x^{κ/(κ+1)} (ln x)^{ν/(κ+1)}`.
    pub fn growth_scale(&self, x: f64) -> Result<f64> {
        if !(x > 1.0) {
            return Err(Error::precondition(format!("growth model needs x > 1, got {x}")));
        }
        let k1 = self.kappa + 1.0;
        Ok(x.powf(self.kappa / k1) * x.ln().powf(self.nu / k1))
    }

    /// `ln N_G(x) ≈ c_G · x^{κ/(κ+1)} (ln x)^{ν/(κ+1)}`.
    pub fn log_model(&self, x: f64) -> Result<f64> {
        Ok(self.c_g()? * self.growth_scale(x)?)
    }

    /// `N_G(x)`; overflows to infinity for large `x`, use [`Self::log_model`].
    pub fn model(&self, x: f64) -> Result<f64> {
        Ok(self.log_model(x)?.exp())
    }
}

fn factorial_gamma(arg: f64) -> Result<f64> {
    if arg.fract() != 0.0 || !(1.0..=171.0).contains(&arg) {
        return Err(Error::precondition(format!(
            "Γ({arg}) is only evaluated at positive integers"
        )));
    }
    Ok((1..arg as u64).map(|k| k as f64).product())
}

/// `c_G` for `κ = 2, ν = −1/2`: `(3^{7/6}/2) (4 C ζ(3))^{1/3}`.
pub fn c_g_lattice_specialized(c: f64) -> Result<f64> {
    let zeta3 = zeta(3.0, ZETA_TOLERANCE)?.value;
    Ok(3f64.powf(7.0 / 6.0) / 2.0 * (4.0 * c * zeta3).cbrt())
}

/// `c_G` written through the Landau–Ramanujan constant:
/// `(√27/∛2) ∛(ζ(3) γ / π²)`.
pub fn c_g_lattice_radical(gamma: f64) -> Result<f64> {
    let zeta3 = zeta(3.0, ZETA_TOLERANCE)?.value;
    Ok(27f64.sqrt() / 2f64.cbrt() * (zeta3 * gamma / (PI * PI)).cbrt())
}

/// Upper-bound model `exp(c t^{5/6})` for the dodecahedron.
pub fn dodec_bound_model(t: f64, c: f64) -> Result<f64> {
    Ok(dodec_bound_exponent(t, c)?.exp())
}

pub fn dodec_bound_exponent(t: f64, c: f64) -> Result<f64> {
    if !(t > 0.0) || !(c > 0.0) {
        return Err(Error::precondition(format!("need t > 0 and c > 0, got ({t}, {c})")));
    }
    Ok(c * t.powf(5.0 / 6.0))
}
