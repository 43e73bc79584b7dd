//! Exciton couplings and energies.
//!
//! `J(k) = m·D_intra(k)·m` and `J′(k) = m·D_inter(k)·m` in units of
//! `J₀ = μ²/(4πε₀a³)`, the two-plane hybrid modes `E_A + J ± J′`, and the
//! `N`-plane generalization in which planes `α` and `β` couple through the
//! inter-plane tensor at separation `|α - β| b`.

use crate::direct_sum::{d_tensor_direct_with_tail, DirectSumConfig};
use crate::error::{require_positive, Error, Result};
use crate::ewald::{d_inter_ewald, d_inter_longwave, d_intra_ewald, d_intra_longwave, EwaldConfig};
use crate::model::{CouplingTensor, EnergyScale, LatticeGeometry, TransitionDipole, WaveVector};
use crate::Real;

mod eigen;

pub use eigen::{symmetric_eigen, MAX_JACOBI_DIM};

/// Engine used for the coupling tensors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Real-space window of half-width `cutoff`, with the continuum tail
    /// added at `k = 0`.
    Direct { cutoff: usize },
    Ewald(EwaldConfig),
    /// Single-term long-wavelength forms; `F` uses the default series.
    LongWave,
}

/// Eigenmodes of the plane stack at one `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpectrum<T> {
    pub k: WaveVector<T>,
    /// Ascending, relative to `E_A`, in units of `J₀`.
    pub energies_j0: Vec<T>,
    /// Same modes in eV, `E_A` included.
    pub energies_ev: Vec<T>,
}

impl<T: Real> ModeSpectrum<T> {
    fn from_j0(k: WaveVector<T>, mut energies_j0: Vec<T>, scale: &EnergyScale<T>) -> Self {
        energies_j0.sort_by(|a, b| a.partial_cmp(b).expect("finite energies"));
        let energies_ev = energies_j0.iter().map(|&e| scale.to_ev(e)).collect();
        Self { k, energies_j0, energies_ev }
    }

    /// `max - min` in units of `J₀`.
    pub fn bandwidth(&self) -> T {
        match (self.energies_j0.first(), self.energies_j0.last()) {
            (Some(&lo), Some(&hi)) => hi - lo,
            _ => T::zero(),
        }
    }
}

/// Intra-plane tensor from the selected engine.
pub fn intra_tensor<T: Real>(k: WaveVector<T>, method: Method) -> Result<CouplingTensor<T>> {
    match method {
        Method::Direct { cutoff } => d_tensor_direct_with_tail(k, DirectSumConfig::intra(cutoff)?, T::one()),
        Method::Ewald(cfg) => Ok(d_intra_ewald(k, cfg)),
        Method::LongWave => Ok(d_intra_longwave(EwaldConfig::default())),
    }
}

/// Inter-plane tensor for planes `b_over_a · a` apart.
pub fn inter_tensor<T: Real>(k: WaveVector<T>, b_over_a: T, method: Method) -> Result<CouplingTensor<T>> {
    match method {
        Method::Direct { cutoff } => d_tensor_direct_with_tail(k, DirectSumConfig::inter(cutoff)?, b_over_a),
        Method::Ewald(cfg) => d_inter_ewald(k, b_over_a, cfg),
        Method::LongWave => d_inter_longwave(k, b_over_a),
    }
}

/// `m·D·m`, which is real for a Hermitian `D` and real `m`. Fails if the
/// imaginary part exceeds rounding level.
pub fn contract_real<T: Real>(tensor: &CouplingTensor<T>, direction: &[T; 3]) -> Result<T> {
    let z = tensor.contract(direction);
    let tol = T::lit(1e-12).max(T::epsilon() * T::lit(64.0)) * tensor.max_abs().max(T::one());
    if z.im.abs() > tol {
        return Err(Error::ComplexContraction(z.im.as_f64()));
    }
    Ok(z.re)
}

/// `J(k)/J₀`.
pub fn j_intra<T: Real>(k: WaveVector<T>, dipole: &TransitionDipole<T>, method: Method) -> Result<T> {
    contract_real(&intra_tensor(k, method)?, &dipole.direction())
}

/// `J′(k)/J₀` between two planes `b_over_a · a` apart. In the long-wave
/// limit this is `2π ka e^{-kb} [(m_∥·k̂)² - m_z²]`.
pub fn j_inter<T: Real>(k: WaveVector<T>, dipole: &TransitionDipole<T>, b_over_a: T, method: Method) -> Result<T> {
    contract_real(&inter_tensor(k, b_over_a, method)?, &dipole.direction())
}

/// Symmetric and antisymmetric hybrid energies `(J + J′, J - J′)` in units of
/// `J₀`. The symmetric combination of the two planes always carries `+J′`.
pub fn hybrid_energies<T: Real>(j: T, jprime: T) -> (T, T) {
    (j + jprime, j - jprime)
}

/// Two-plane spectrum `E_A + J₀(J ± J′)`.
pub fn pair_energies<T: Real>(
    k: WaveVector<T>,
    dipole: &TransitionDipole<T>,
    b_over_a: T,
    method: Method,
    scale: &EnergyScale<T>,
) -> Result<ModeSpectrum<T>> {
    let j = j_intra(k, dipole, method)?;
    let jp = j_inter(k, dipole, b_over_a, method)?;
    let (sym, anti) = hybrid_energies(j, jp);
    Ok(ModeSpectrum::from_j0(k, vec![sym, anti], scale))
}

/// Hybrid-mode splitting `2|J′|` in units of `J₀`.
pub fn splitting<T: Real>(k: WaveVector<T>, dipole: &TransitionDipole<T>, b_over_a: T, method: Method) -> Result<T> {
    let jp = j_inter(k, dipole, b_over_a, method)?;
    Ok(jp.abs() + jp.abs())
}

/// Gap `3F` between the normal (`2F`) and in-plane (`-F`) polarized branches
/// at `k = 0`, in units of `J₀`.
pub fn polarization_splitting<T: Real>(f: T) -> Result<T> {
    Ok(T::lit(3.0) * require_positive("F", f)?)
}

/// Exciton matrix of a stack of `n_planes` identical planes, relative to
/// `E_A` and in units of `J₀`. Entry `(α, β)` is `J′` at separation
/// `|α - β| b`; with `nearest_only` only `|α - β| = 1` is kept.
pub fn stack_matrix<T: Real>(
    k: WaveVector<T>,
    dipole: &TransitionDipole<T>,
    geometry: &LatticeGeometry<T>,
    method: Method,
    nearest_only: bool,
) -> Result<Vec<Vec<T>>> {
    let n = geometry.n_planes;
    let j = j_intra(k, dipole, method)?;
    let reach = if nearest_only { n.min(2) } else { n };
    // J′ depends only on |α - β|
    let mut by_offset = vec![T::zero(); n];
    by_offset[0] = j;
    for (d, slot) in by_offset.iter_mut().enumerate().take(reach).skip(1) {
        *slot = j_inter(k, dipole, geometry.b_over_a * T::from_int(d as i64), method)?;
    }
    Ok((0..n).map(|a| (0..n).map(|b| by_offset[a.abs_diff(b)]).collect()).collect())
}

/// Sorted eigenvalues of [`stack_matrix`].
pub fn stack_spectrum<T: Real>(
    k: WaveVector<T>,
    dipole: &TransitionDipole<T>,
    geometry: &LatticeGeometry<T>,
    method: Method,
    nearest_only: bool,
    scale: &EnergyScale<T>,
) -> Result<ModeSpectrum<T>> {
    let m = stack_matrix(k, dipole, geometry, method, nearest_only)?;
    Ok(ModeSpectrum::from_j0(k, symmetric_eigen(&m)?, scale))
}
