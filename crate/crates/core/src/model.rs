//! Domain types: lattice geometry, transition dipoles, wave vectors, the
//! dimensionless coupling tensor and the J₀ energy scale.
//!
//! Lengths are carried in units of the lattice constant `a` everywhere inside
//! the crate. Tensors hold `a³·D_ij(k)` and couplings are reported in units of
//! `J₀ = μ²/(4πε₀a³)`; electron-volts only appear through [`EnergyScale`].

use std::fmt;

use num_complex::Complex;

use crate::error::{require_positive, Error, Result};
use crate::real::{reduce_to_zone, Real};

/// Elementary charge in coulomb (exact since the 2019 SI redefinition).
pub const ELEMENTARY_CHARGE_C: f64 = 1.602_176_634e-19;

/// Vacuum permittivity in F/m (CODATA 2018).
pub const VACUUM_PERMITTIVITY_F_PER_M: f64 = 8.854_187_812_8e-12;

/// `e²/(4πε₀)` in eV·Å.
pub fn coulomb_constant_ev_angstrom() -> f64 {
    // e²/(4πε₀ r) joule, divided by e for eV; 1 m = 1e10 Å
    ELEMENTARY_CHARGE_C / (4.0 * std::f64::consts::PI * VACUUM_PERMITTIVITY_F_PER_M) * 1e10
}

/// Cartesian axis of a tensor index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// Square lattice stack: lattice constant, layer spacing, sites per plane and
/// number of planes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeGeometry<T> {
    /// Lattice constant in Å.
    pub a: T,
    /// Layer separation `b` in units of `a`.
    pub b_over_a: T,
    /// Sites per plane `N`; a perfect square.
    pub n_sites: usize,
    pub n_planes: usize,
}

impl<T: Real> LatticeGeometry<T> {
    pub fn new(a: T, b_over_a: T, n_sites: usize, n_planes: usize) -> Result<Self> {
        require_positive("a", a)?;
        require_positive("b_over_a", b_over_a)?;
        perfect_square_side(n_sites)?;
        if n_planes == 0 {
            return Err(Error::OutOfRange { name: "n_planes", reason: "need at least one plane".into() });
        }
        Ok(Self { a, b_over_a, n_sites, n_planes })
    }

    /// Number of sites along one edge, `√N`.
    pub fn side(&self) -> usize {
        perfect_square_side(self.n_sites).expect("validated on construction")
    }

    pub fn k_grid(&self) -> Vec<WaveVector<T>> {
        make_k_grid(self.n_sites).expect("validated on construction")
    }
}

pub fn perfect_square_side(n_sites: usize) -> Result<usize> {
    if n_sites == 0 {
        return Err(Error::NotPerfectSquare(n_sites));
    }
    let mut side = (n_sites as f64).sqrt().round() as usize;
    while side * side > n_sites {
        side -= 1;
    }
    while (side + 1) * (side + 1) <= n_sites {
        side += 1;
    }
    if side * side == n_sites {
        Ok(side)
    } else {
        Err(Error::NotPerfectSquare(n_sites))
    }
}

/// Unit direction of the transition dipole `μ/|μ|` together with its
/// magnitude in e·Å.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionDipole<T> {
    direction: [T; 3],
    magnitude: T,
}

impl<T: Real> TransitionDipole<T> {
    /// Normalizes `direction`; fails on a zero vector or non-positive magnitude.
    pub fn new(direction: [T; 3], magnitude: T) -> Result<Self> {
        require_positive("dipole magnitude", magnitude)?;
        let norm = direction.iter().map(|&c| c * c).sum::<T>().sqrt();
        require_positive("dipole direction norm", norm)?;
        Ok(Self { direction: direction.map(|c| c / norm), magnitude })
    }

    /// Dipole `μ (sin θ, 0, cos θ)`: tilted from the plane normal towards `x`.
    pub fn from_theta(theta: T, magnitude: T) -> Result<Self> {
        require_positive("dipole magnitude", magnitude)?;
        Ok(Self { direction: dipole_from_theta(theta), magnitude })
    }

    #[inline]
    pub fn direction(&self) -> [T; 3] {
        self.direction
    }

    #[inline]
    pub fn magnitude(&self) -> T {
        self.magnitude
    }

    /// In-plane part `m_∥ = (m_x, m_y)` of the unit direction.
    #[inline]
    pub fn in_plane(&self) -> [T; 2] {
        [self.direction[0], self.direction[1]]
    }

    #[inline]
    pub fn normal(&self) -> T {
        self.direction[2]
    }
}

/// Unit vector `(sin θ, 0, cos θ)`.
pub fn dipole_from_theta<T: Real>(theta: T) -> [T; 3] {
    let (s, c) = theta.sin_cos();
    [s, T::zero(), c]
}

/// In-plane wave vector in units of `1/a`: `(k_x a, k_y a)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WaveVector<T> {
    pub kxa: T,
    pub kya: T,
}

impl<T: Real> WaveVector<T> {
    pub fn new(kxa: T, kya: T) -> Self {
        Self { kxa, kya }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// `ka (cos φ, sin φ)`.
    pub fn from_polar(ka: T, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(ka * c, ka * s)
    }

    /// `|k| a`.
    #[inline]
    pub fn ka(&self) -> T {
        self.kxa.hypot(self.kya)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.kxa == T::zero() && self.kya == T::zero()
    }

    /// `k̂ = k/|k|`, or `None` at the origin.
    pub fn unit(&self) -> Option<[T; 2]> {
        let ka = self.ka();
        (ka > T::zero()).then(|| [self.kxa / ka, self.kya / ka])
    }

    /// Equivalent point in the first Brillouin zone `[-π, π)²`.
    pub fn reduced(&self) -> Self {
        Self::new(reduce_to_zone(self.kxa), reduce_to_zone(self.kya))
    }

    /// Swaps the roles of the x and y axes.
    pub fn transposed(&self) -> Self {
        Self::new(self.kya, self.kxa)
    }

    pub fn is_finite(&self) -> bool {
        self.kxa.is_finite() && self.kya.is_finite()
    }
}

/// Every `(2πp/√N, 2πq/√N)` with `p, q ∈ {-⌊√N/2⌋, …, ⌊√N/2⌋}`.
///
/// For even `√N` both zone edges `±π` are kept, so edge points appear twice
/// (as `-π` and `+π`); nothing downstream needs the grid to be unique.
pub fn make_k_grid<T: Real>(n_sites: usize) -> Result<Vec<WaveVector<T>>> {
    let side = perfect_square_side(n_sites)?;
    let half = (side / 2) as i64;
    let step = (T::PI() + T::PI()) / T::from_int(side as i64);
    let coords: Vec<T> = (-half..=half).map(|p| step * T::from_int(p)).collect();
    Ok(coords
        .iter()
        .flat_map(|&kx| coords.iter().map(move |&ky| WaveVector::new(kx, ky)))
        .collect())
}

/// Dimensionless dynamical matrix `a³·D_ij(k)`.
///
/// Stored densely; constructors enforce Hermiticity by filling the lower
/// triangle with conjugates of the upper one.
#[derive(Clone, Copy, PartialEq)]
pub struct CouplingTensor<T> {
    entries: [[Complex<T>; 3]; 3],
}

impl<T: Real> CouplingTensor<T> {
    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self { entries: [[z; 3]; 3] }
    }

    /// Builds the tensor from its upper triangle `(xx, yy, zz, xy, xz, yz)`.
    /// Diagonal imaginary parts are kept as given so that residual checks
    /// still see them.
    pub fn from_upper(xx: Complex<T>, yy: Complex<T>, zz: Complex<T>, xy: Complex<T>, xz: Complex<T>, yz: Complex<T>) -> Self {
        Self {
            entries: [
                [xx, xy, xz],
                [xy.conj(), yy, yz],
                [xz.conj(), yz.conj(), zz],
            ],
        }
    }

    pub fn from_real_upper(xx: T, yy: T, zz: T, xy: T) -> Self {
        let r = |v: T| Complex::new(v, T::zero());
        Self::from_upper(r(xx), r(yy), r(zz), r(xy), r(T::zero()), r(T::zero()))
    }

    pub fn from_entries(entries: [[Complex<T>; 3]; 3]) -> Self {
        Self { entries }
    }

    #[inline]
    pub fn get(&self, i: Axis, j: Axis) -> Complex<T> {
        self.entries[i.index()][j.index()]
    }

    #[inline]
    pub fn entries(&self) -> &[[Complex<T>; 3]; 3] {
        &self.entries
    }

    pub fn trace(&self) -> Complex<T> {
        self.entries[0][0] + self.entries[1][1] + self.entries[2][2]
    }

    /// `max |D_ij - conj(D_ji)|`.
    pub fn hermiticity_residual(&self) -> T {
        let mut worst = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.entries[i][j] - self.entries[j][i].conj()).norm());
            }
        }
        worst
    }

    /// `Σ_ij m_i m_j D_ij`.
    pub fn contract(&self, m: &[T; 3]) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..3 {
            for j in 0..3 {
                acc += self.entries[i][j] * (m[i] * m[j]);
            }
        }
        acc
    }

    /// Largest componentwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        worst
    }

    /// Largest componentwise modulus.
    pub fn max_abs(&self) -> T {
        self.max_abs_diff(&Self::zero())
    }

    pub fn conj(&self) -> Self {
        Self { entries: self.entries.map(|row| row.map(|c| c.conj())) }
    }
}

impl<T: Real> std::ops::Add for CouplingTensor<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.entries[i][j] = self.entries[i][j] + rhs.entries[i][j];
            }
        }
        out
    }
}

impl<T: Real> fmt::Debug for CouplingTensor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

/// Absolute energy scale: `J₀` and the bare transition energy `E_A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyScale<T> {
    pub j0_ev: T,
    pub ea_ev: T,
}

impl<T: Real> EnergyScale<T> {
    pub fn new(mu_e_angstrom: T, a_angstrom: T, ea_ev: T) -> Result<Self> {
        require_positive("ea_ev", ea_ev)?;
        Ok(Self { j0_ev: j0_scale(mu_e_angstrom, a_angstrom)?, ea_ev })
    }

    /// `E_A + J₀·x` for a coupling `x` expressed in units of `J₀`.
    #[inline]
    pub fn to_ev(&self, energy_j0: T) -> T {
        self.ea_ev + self.j0_ev * energy_j0
    }
}

/// `J₀ = μ²/(4πε₀a³)` in eV, with `μ` in e·Å and `a` in Å.
pub fn j0_scale<T: Real>(mu_e_angstrom: T, a_angstrom: T) -> Result<T> {
    require_positive("mu", mu_e_angstrom)?;
    require_positive("a", a_angstrom)?;
    let c = T::lit(coulomb_constant_ev_angstrom());
    Ok(mu_e_angstrom * mu_e_angstrom * c / (a_angstrom * a_angstrom * a_angstrom))
}
