//! Modified Bessel functions of the second kind `K₀`, `K₁`, `K₂`.
//!
//! `K₀` and `K₁` come from the ascending series for `x ≤ 2` and from Steed's
//! continued fraction (Temme's CF2) above; `K₂` follows from the upward
//! recurrence `K₂ = K₀ + (2/x)K₁`. An independent quadrature of the integral
//! representation is exposed as [`bessel_k_oracle`] for verification.

use crate::error::{Error, Result};
use crate::quadrature;
use crate::Real;

/// Order of the Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BesselOrder {
    Zero,
    One,
    Two,
}

impl BesselOrder {
    pub fn n(self) -> u8 {
        match self {
            BesselOrder::Zero => 0,
            BesselOrder::One => 1,
            BesselOrder::Two => 2,
        }
    }
}

impl TryFrom<u8> for BesselOrder {
    type Error = Error;

    fn try_from(n: u8) -> Result<Self> {
        match n {
            0 => Ok(BesselOrder::Zero),
            1 => Ok(BesselOrder::One),
            2 => Ok(BesselOrder::Two),
            _ => Err(Error::OutOfRange { name: "bessel order", reason: format!("{n} not in {{0, 1, 2}}") }),
        }
    }
}

/// Series/continued-fraction crossover. Checked against the quadrature oracle
/// on both sides in the tests.
const SERIES_LIMIT: f64 = 2.0;

/// `K_n(x)` for `x > 0`.
pub fn bessel_k<T: Real>(order: BesselOrder, x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::BesselDomain { order: order.n(), x: x.as_f64() });
    }
    let (k0, k1) = bessel_k0_k1(x);
    Ok(match order {
        BesselOrder::Zero => k0,
        BesselOrder::One => k1,
        BesselOrder::Two => k0 + (T::lit(2.0) / x) * k1,
    })
}

/// `(K₀(x), K₁(x))` for finite `x > 0`; the caller guarantees the domain.
pub fn bessel_k0_k1<T: Real>(x: T) -> (T, T) {
    debug_assert!(x > T::zero());
    if x <= T::lit(SERIES_LIMIT) {
        ascending_series(x)
    } else {
        steed_continued_fraction(x)
    }
}

/// `K₂(x)` for finite `x > 0`; the caller guarantees the domain.
#[inline]
pub fn bessel_k2<T: Real>(x: T) -> T {
    let (k0, k1) = bessel_k0_k1(x);
    k0 + (T::lit(2.0) / x) * k1
}

// K₀ = -(ln(x/2) + γ) I₀ + Σ H_k t^k/(k!)²
// K₁ = 1/x + ln(x/2) I₁ - (x/4) Σ (ψ(k+1) + ψ(k+2)) t^k/(k!(k+1)!)
// with t = x²/4, H_k the harmonic numbers and ψ(k+1) = H_k - γ.
fn ascending_series<T: Real>(x: T) -> (T, T) {
    let gamma = T::euler_gamma();
    let t = x * x * T::lit(0.25);
    let log_half = (x * T::lit(0.5)).ln();

    let mut term = T::one(); // t^k/(k!)²
    let mut harmonic = T::zero(); // H_k
    let mut i0 = T::zero();
    let mut k0_tail = T::zero();
    let mut i1_sum = T::zero();
    let mut k1_tail = T::zero();
    for k in 0..64 {
        if k > 0 {
            let kf = T::from_int(k);
            term = term * t / (kf * kf);
            harmonic += kf.recip();
        }
        let kp1 = T::from_int(k + 1);
        let term1 = term / kp1; // t^k/(k!(k+1)!)
        i0 += term;
        k0_tail += harmonic * term;
        i1_sum += term1;
        k1_tail += (harmonic + harmonic + kp1.recip() - gamma - gamma) * term1;
        if term1 <= T::epsilon() * T::lit(1e-3) * i0 {
            break;
        }
    }
    let k0 = -(log_half + gamma) * i0 + k0_tail;
    let k1 = x.recip() + log_half * (x * T::lit(0.5)) * i1_sum - x * T::lit(0.25) * k1_tail;
    (k0, k1)
}

// Steed's algorithm for CF2 with ν = 0 (Temme 1975; Numerical Recipes §6.7).
fn steed_continued_fraction<T: Real>(x: T) -> (T, T) {
    let two = T::lit(2.0);
    let a1 = T::lit(0.25);
    let mut b = two * (T::one() + x);
    let mut d = b.recip();
    let mut delh = d;
    let mut h = d;
    let mut q1 = T::zero();
    let mut q2 = T::one();
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = T::one() + q * delh;
    for i in 2..10_000_i64 {
        a -= T::from_int(2 * (i - 1));
        c = -a * c / T::from_int(i);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += two;
        d = (b + a * d).recip();
        delh = (b * d - T::one()) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < T::epsilon() * T::lit(0.1) {
            break;
        }
    }
    h = a1 * h;
    let k0 = (T::PI() / (two * x)).sqrt() * (-x).exp() / s;
    let k1 = k0 * (x + T::lit(0.5) - h) / x;
    (k0, k1)
}

/// `K_n(x) = ∫₀^∞ e^{-x cosh t} cosh(nt) dt` by adaptive Gauss–Kronrod
/// quadrature. Slow; used only to check [`bessel_k`].
pub fn bessel_k_oracle<T: Real>(order: BesselOrder, x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::BesselDomain { order: order.n(), x: x.as_f64() });
    }
    let n = T::from_int(i64::from(order.n()));
    // Factor out e^{-x}; the integrand is then ≤ e^{nt} and decays double
    // exponentially. Cut where x(cosh t - 1) - nt exceeds 60 and the
    // integrand has dropped by e^{-60} relative to its t = 0 value.
    let integrand = |t: T| (-x * (t.cosh() - T::one()) + n * t).exp() * (T::one() + (-(n + n) * t).exp()) * T::lit(0.5);
    let mut upper = T::one();
    while x * (upper.cosh() - T::one()) - n * upper < T::lit(60.0) {
        upper = upper + upper * T::lit(0.25);
    }
    // The bulk of the mass sits below t ≈ arccosh(1 + 1/x); split there so
    // the adaptive driver resolves the shoulder for small x.
    let knee = (T::one() + x.recip()).acosh().min(upper * T::lit(0.5));
    let tol = T::epsilon() * T::lit(16.0);
    let head = quadrature::integrate(integrand, T::zero(), knee, T::zero(), tol);
    let tail = quadrature::integrate(integrand, knee, upper, T::zero(), tol);
    Ok((head + tail) * (-x).exp())
}
