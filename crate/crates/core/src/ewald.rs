//! Exponentially convergent lattice sums.
//!
//! Between planes the oscillating sum `S(k) = Σ e^{ik·R}/(R² + b²)^{5/2}`
//! becomes a reciprocal-lattice series with real, exponentially decaying
//! terms:
//!
//! ```text
//! S̃(k) = (3a²b³/2π) S(k) = Σ_{n,m} (1 + 2(b/a)Γ_nm) e^{-2(b/a)Γ_nm},
//! Γ_nm = |(πn + k_x a/2, πm + k_y a/2)|
//! ```
//!
//! and every tensor component follows from first and second `k` derivatives
//! of `S`, taken term by term.
//!
//! Inside a plane the sums `S_x`, `S_y` and `D_xy` become series over lines
//! `l_x ≥ 1` and reciprocal index `n` with modified Bessel functions of
//! argument `Λ = l_x |πn + k_y a/2|·2`. The `n = 0` line decays only
//! algebraically when `k_y a` is small; below a threshold it is summed in
//! closed form through a second Poisson resummation along `l_x`.

use num_complex::Complex;

use crate::error::{require_positive, Error, Result};
use crate::model::{CouplingTensor, WaveVector};
use crate::specfun::{bessel_k0_k1, bessel_k2};
use crate::Real;

/// Truncation of the three series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EwaldConfig {
    /// Reciprocal window half-width for the `(n, m)` and `n` sums.
    pub n_max: usize,
    /// Real-space line cutoff for the in-plane Bessel series (`n ≠ 0`; the
    /// `n = 0` line is always summed to convergence).
    pub l_max: usize,
    /// Half-width of the double series for `F`.
    pub bessel_n_max: usize,
}

impl Default for EwaldConfig {
    fn default() -> Self {
        Self { n_max: 6, l_max: 30, bessel_n_max: 8 }
    }
}

impl EwaldConfig {
    pub fn new(n_max: usize, l_max: usize, bessel_n_max: usize) -> Result<Self> {
        for (name, v) in [("n_max", n_max), ("l_max", l_max), ("bessel_n_max", bessel_n_max)] {
            if v == 0 {
                return Err(Error::OutOfRange { name, reason: "must be at least 1".into() });
            }
        }
        Ok(Self { n_max, l_max, bessel_n_max })
    }

    pub fn with_n_max(self, n_max: usize) -> Self {
        Self { n_max, ..self }
    }

    /// Terms in the inter-plane `(n, m)` window, `(2 n_max + 1)²`.
    pub fn inter_term_count(&self) -> usize {
        let side = 2 * self.n_max + 1;
        side * side
    }
}

/// `S̃` and its derivatives with respect to `k_x a` and `k_y a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterSeries<T> {
    pub value: T,
    pub d_x: T,
    pub d_y: T,
    pub d_xx: T,
    pub d_yy: T,
    pub d_xy: T,
}

/// Term-wise analytic derivatives of `S̃`, with `β = 2b/a`, `u = (πn + k_x a/2,
/// πm + k_y a/2)` and `Γ = |u|`:
///
/// ```text
/// ∂_x      = -(β²/2) u_x e^{-βΓ}
/// ∂_x²     = -(β²/4) e^{-βΓ} (1 - β u_x²/Γ)
/// ∂_x ∂_y  =  (β³/4) u_x u_y e^{-βΓ}/Γ
/// ```
///
/// At `Γ = 0` (only for `k = 0`) the second derivatives depend on the
/// direction of approach; the `u_i u_j/Γ` pieces are then taken as zero.
pub fn s_inter_derivatives<T: Real>(k: WaveVector<T>, b_over_a: T, cfg: EwaldConfig) -> Result<InterSeries<T>> {
    let h = require_positive("b_over_a", b_over_a)?;
    let q = k.reduced();
    let beta = h + h;
    let beta2 = beta * beta;
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    let n_max = cfg.n_max as i64;

    let mut out = InterSeries { value: T::zero(), d_x: T::zero(), d_y: T::zero(), d_xx: T::zero(), d_yy: T::zero(), d_xy: T::zero() };
    for n in -n_max..=n_max {
        let ux = T::PI() * T::from_int(n) + q.kxa * half;
        for m in -n_max..=n_max {
            let uy = T::PI() * T::from_int(m) + q.kya * half;
            let gamma = ux.hypot(uy);
            let e = (-beta * gamma).exp();
            out.value += (T::one() + beta * gamma) * e;
            out.d_x += -beta2 * half * ux * e;
            out.d_y += -beta2 * half * uy * e;
            let (xx, yy, xy) = if gamma > T::zero() {
                (ux * ux / gamma, uy * uy / gamma, ux * uy / gamma)
            } else {
                (T::zero(), T::zero(), T::zero())
            };
            out.d_xx += -beta2 * quarter * e * (T::one() - beta * xx);
            out.d_yy += -beta2 * quarter * e * (T::one() - beta * yy);
            out.d_xy += beta2 * beta * quarter * xy * e;
        }
    }
    Ok(out)
}

/// Dimensionless `S̃(k) = Σ_{n,m} (1 + 2(b/a)Γ_nm) e^{-2(b/a)Γ_nm}`.
pub fn s_inter_series<T: Real>(k: WaveVector<T>, b_over_a: T, cfg: EwaldConfig) -> Result<T> {
    Ok(s_inter_derivatives(k, b_over_a, cfg)?.value)
}

/// Inter-plane `a³D_ij(k)` for planes a distance `b` apart, from
///
/// ```text
/// D_xx = (2∂²_x - ∂²_y + b²) S     D_xy = 3 ∂_x∂_y S
/// D_yy = (2∂²_y - ∂²_x + b²) S     D_xz = 3ib ∂_x S
/// D_zz = (-∂²_x - ∂²_y - 2b²) S    D_yz = 3ib ∂_y S
/// ```
///
/// Fails at `k = 0` (modulo reciprocal vectors), where the tensor depends on
/// the direction of approach.
pub fn d_inter_ewald<T: Real>(k: WaveVector<T>, b_over_a: T, cfg: EwaldConfig) -> Result<CouplingTensor<T>> {
    require_positive("b_over_a", b_over_a)?;
    if k.reduced().is_zero() {
        return Err(Error::ZeroWaveVector);
    }
    let s = s_inter_derivatives(k, b_over_a, cfg)?;
    let h = b_over_a;
    let h2 = h * h;
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let pref = two * T::PI() / (three * h2 * h);

    let re = |v: T| Complex::new(v, T::zero());
    let im = |v: T| Complex::new(T::zero(), v);
    Ok(CouplingTensor::from_upper(
        re(pref * (two * s.d_xx - s.d_yy + h2 * s.value)),
        re(pref * (two * s.d_yy - s.d_xx + h2 * s.value)),
        re(pref * (-s.d_xx - s.d_yy - two * h2 * s.value)),
        re(pref * three * s.d_xy),
        im(pref * three * h * s.d_x),
        im(pref * three * h * s.d_y),
    ))
}

/// Single `(0, 0)` term of the inter-plane series, valid for `ka ≪ 1`:
///
/// ```text
/// D_xx = 2π k_x²/k e^{-kb}    D_xy = 2π k_x k_y/k e^{-kb}    D_xz = -2πi k_x e^{-kb}
/// D_yy = 2π k_y²/k e^{-kb}    D_zz = -2π k e^{-kb}           D_yz = -2πi k_y e^{-kb}
/// ```
///
/// (all in units of `a`).
pub fn d_inter_longwave<T: Real>(k: WaveVector<T>, b_over_a: T) -> Result<CouplingTensor<T>> {
    let h = require_positive("b_over_a", b_over_a)?;
    let ka = k.ka();
    if !(ka > T::zero()) {
        return Err(Error::ZeroWaveVector);
    }
    let two_pi_e = (T::PI() + T::PI()) * (-ka * h).exp();
    let (qx, qy) = (k.kxa, k.kya);
    Ok(CouplingTensor::from_upper(
        Complex::new(two_pi_e * qx * qx / ka, T::zero()),
        Complex::new(two_pi_e * qy * qy / ka, T::zero()),
        Complex::new(-two_pi_e * ka, T::zero()),
        Complex::new(two_pi_e * qx * qy / ka, T::zero()),
        Complex::new(T::zero(), -two_pi_e * qx),
        Complex::new(T::zero(), -two_pi_e * qy),
    ))
}

/// In-plane direction selecting `S_x` or `S_y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneAxis {
    X,
    Y,
}

/// Below this `|2πn + k_y a|` the `n = 0` line is resummed in closed form.
const LINE_RESUM_THRESHOLD: f64 = 0.02;
/// Lines are summed until `l·|ω| ≥ LINE_DECAY`, where the Bessel factors are
/// below `e^{-45}`.
const LINE_DECAY: f64 = 45.0;
/// Reciprocal images kept in the closed-form line sums; the dropped tail is
/// `O(ω⁴/M²)` and `O(ω³/M²)`.
const LINE_IMAGES: i64 = 4096;

/// In-plane `S_x(k) = Σ' l_x²/|l|⁵ e^{ik·l}` (or `S_y` for [`PlaneAxis::Y`]),
/// dimensionless.
///
/// ```text
/// S_x = (8/3) Σ_{l≥1} Σ_n cos(k_x a l) (Λ/l²) [(Λ/2) K₀(Λ) + K₁(Λ)],
/// Λ = 2l|πn + k_y a/2|
/// ```
///
/// with `Λ K₁(Λ) → 1`, `Λ² K₀(Λ) → 0` on the degenerate line.
pub fn s_intra_axis<T: Real>(k: WaveVector<T>, axis: PlaneAxis, cfg: EwaldConfig) -> T {
    match axis {
        PlaneAxis::X => s_intra_x(k, cfg),
        PlaneAxis::Y => s_intra_x(k.transposed(), cfg),
    }
}

fn s_intra_x<T: Real>(k: WaveVector<T>, cfg: EwaldConfig) -> T {
    let q = k.reduced();
    let two_pi = T::PI() + T::PI();
    let n_max = cfg.n_max as i64;
    let mut total = T::zero();
    for n in -n_max..=n_max {
        let omega = two_pi * T::from_int(n) + q.kya;
        total += if n == 0 {
            s_line(q.kxa, omega, cfg.l_max)
        } else {
            s_line_direct(q.kxa, omega, cfg.l_max)
        };
    }
    total
}

fn s_line<T: Real>(qx: T, omega: T, l_min: usize) -> T {
    if omega.abs() < T::lit(LINE_RESUM_THRESHOLD) {
        s_line_resummed(qx, omega)
    } else {
        s_line_direct(qx, omega, line_length(omega, l_min))
    }
}

fn line_length<T: Real>(omega: T, l_min: usize) -> usize {
    let needed = (T::lit(LINE_DECAY) / omega.abs()).ceil().to_usize().unwrap_or(usize::MAX);
    needed.max(l_min)
}

// (8/3) Σ_{l=1}^{len} cos(qx l) (Λ/l²)[(Λ/2)K₀(Λ) + K₁(Λ)],  Λ = l|ω| > 0
fn s_line_direct<T: Real>(qx: T, omega: T, len: usize) -> T {
    let w = omega.abs();
    let half = T::lit(0.5);
    let mut acc = T::zero();
    for l in 1..=len as i64 {
        let lf = T::from_int(l);
        let lambda = lf * w;
        let (k0, k1) = bessel_k0_k1(lambda);
        acc += (qx * lf).cos() * lambda / (lf * lf) * (lambda * half * k0 + k1);
    }
    acc * T::lit(8.0 / 3.0)
}

// Poisson resummation of the n = 0 line along l. Writing the line as
// (2/3) Σ_{l≠0} e^{iql} ω² K₂(|l||ω|) and splitting off 2/l²:
//
//   Σ_{l≠0} e^{iql} 2/l²    = 4 B(q),  B(q) = π²/6 - π|q|/2 + q²/4
//   Σ_{l≠0} e^{iql} g(l)    = Σ_m ĝ(q + 2πm) + ω²/2,
//   ĝ(u) = 2π|u| - π(ω² + 2u²)/√(ω² + u²) = -π ω⁴ / (s (s + |u|)²),  s = √(ω² + u²)
//
// with g(l) = ω² K₂(|l||ω|) - 2/l² and g(0) = -ω²/2.
fn s_line_resummed<T: Real>(q: T, omega: T) -> T {
    let pi = T::PI();
    let qa = q.abs();
    let bernoulli = pi * pi / T::lit(6.0) - pi * qa * T::lit(0.5) + q * q * T::lit(0.25);
    let four = T::lit(4.0);
    if omega == T::zero() {
        return T::lit(2.0 / 3.0) * four * bernoulli;
    }
    let w2 = omega * omega;
    let w4 = w2 * w2;
    let mut images = T::zero();
    for m in -LINE_IMAGES..=LINE_IMAGES {
        let u = (q + (pi + pi) * T::from_int(m)).abs();
        let s = (w2 + u * u).sqrt();
        images += -pi * w4 / (s * (s + u) * (s + u));
    }
    T::lit(2.0 / 3.0) * (four * bernoulli + images + w2 * T::lit(0.5))
}

/// In-plane off-diagonal `D_xy(k) = -3 Σ' l_x l_y/|l|⁵ e^{ik·l}`,
/// dimensionless:
///
/// ```text
/// D_xy = 4 Σ_{l≥1} Σ_n sgn(πn + k_y a/2) (Λ²/l²) sin(k_x a l) K₁(Λ)
/// ```
///
/// The sign factor makes the `n` and `-n` lines cancel exactly at `k_y = 0`.
pub fn d_xy_intra<T: Real>(k: WaveVector<T>, cfg: EwaldConfig) -> T {
    let q = k.reduced();
    let two_pi = T::PI() + T::PI();
    let n_max = cfg.n_max as i64;
    let mut total = T::zero();
    for n in -n_max..=n_max {
        let omega = two_pi * T::from_int(n) + q.kya;
        total += if n != 0 {
            dxy_line_direct(q.kxa, omega, cfg.l_max)
        } else if omega.abs() < T::lit(LINE_RESUM_THRESHOLD) {
            dxy_line_resummed(q.kxa, omega)
        } else {
            dxy_line_direct(q.kxa, omega, line_length(omega, cfg.l_max))
        };
    }
    total
}

fn dxy_line_direct<T: Real>(qx: T, omega: T, len: usize) -> T {
    if omega == T::zero() {
        return T::zero();
    }
    let w = omega.abs();
    let mut acc = T::zero();
    for l in 1..=len as i64 {
        let lf = T::from_int(l);
        let lambda = lf * w;
        let (_, k1) = bessel_k0_k1(lambda);
        acc += (qx * lf).sin() * lambda * lambda / (lf * lf) * k1;
    }
    T::lit(4.0) * omega.signum() * acc
}

// Same resummation for the odd line Σ_{l≥1} sin(ql) ω|ω| K₁(l|ω|): splitting
// off ω/l leaves Σ_{l≥1} sin(ql)/l = σ(q) = sgn(q)π/2 - q/2 on (-π, π), and
// the remainder transforms to (πω/2) Σ_m [u/√(ω²+u²) - sgn u]
//                             = -(πω/2) Σ_m sgn(u) ω² / (s (s + |u|)).
fn dxy_line_resummed<T: Real>(q: T, omega: T) -> T {
    if omega == T::zero() {
        return T::zero();
    }
    let pi = T::PI();
    let half = T::lit(0.5);
    let sawtooth = if q == T::zero() { T::zero() } else { q.signum() * pi * half - q * half };
    let w2 = omega * omega;
    let mut images = T::zero();
    for m in -LINE_IMAGES..=LINE_IMAGES {
        let u = q + (pi + pi) * T::from_int(m);
        if u == T::zero() {
            continue;
        }
        let ua = u.abs();
        let s = (w2 + ua * ua).sqrt();
        images += -u.signum() * w2 / (s * (s + ua));
    }
    T::lit(4.0) * (omega * sawtooth + pi * omega * half * images)
}

/// Intra-plane `a³D_ij(k)` assembled from
/// `D_xx = -2S_x + S_y`, `D_yy = -2S_y + S_x`, `D_zz = S_x + S_y` and
/// [`d_xy_intra`]; `D_xz = D_yz = 0`.
pub fn d_intra_ewald<T: Real>(k: WaveVector<T>, cfg: EwaldConfig) -> CouplingTensor<T> {
    let sx = s_intra_axis(k, PlaneAxis::X, cfg);
    let sy = s_intra_axis(k, PlaneAxis::Y, cfg);
    let dxy = d_xy_intra(k, cfg);
    let two = T::lit(2.0);
    CouplingTensor::from_real_upper(sy - two * sx, sx - two * sy, sx + sy, dxy)
}

/// Long-wavelength intra-plane tensor `diag(-F, -F, 2F)`.
pub fn d_intra_longwave<T: Real>(cfg: EwaldConfig) -> CouplingTensor<T> {
    let f: T = f_constant(cfg);
    CouplingTensor::from_real_upper(-f, -f, f + f, T::zero())
}

/// `F = 4π²/9 + (32π²/3) Σ_{n,m≥1} n² K₂(2πnm)`, the `k → 0` limit of
/// `S_x = S_y`.
pub fn f_constant<T: Real>(cfg: EwaldConfig) -> T {
    f_constant_truncated(cfg.bessel_n_max)
}

/// [`f_constant`] with the double series cut at `n, m ≤ n_max`; `n_max = 0`
/// keeps only the leading `4π²/9`.
pub fn f_constant_truncated<T: Real>(n_max: usize) -> T {
    let pi2 = T::PI() * T::PI();
    let two_pi = T::PI() + T::PI();
    let mut series = T::zero();
    for n in 1..=n_max as i64 {
        let nf = T::from_int(n);
        for m in 1..=n_max as i64 {
            series += nf * nf * bessel_k2(two_pi * nf * T::from_int(m));
        }
    }
    T::lit(4.0) * pi2 / T::lit(9.0) + T::lit(32.0) * pi2 / T::lit(3.0) * series
}
