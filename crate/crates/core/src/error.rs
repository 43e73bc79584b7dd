use thiserror::Error;

/// Errors raised by the lattice-sum and dispersion routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} is out of range: {reason}")]
    OutOfRange { name: &'static str, reason: String },

    #[error("site count {0} is not a perfect square")]
    NotPerfectSquare(usize),

    #[error("K_{order}(x) is undefined for x = {x} (requires x > 0)")]
    BesselDomain { order: u8, x: f64 },

    #[error("zero separation: the self-interaction term is excluded")]
    ZeroSeparation,

    #[error("the inter-plane tensor is non-analytic at k = 0; use the direct sum there")]
    ZeroWaveVector,

    #[error("matrix is not square: {rows} rows of length {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric: |m[{i}][{j}] - m[{j}][{i}]| = {gap:e}")]
    NotSymmetric { i: usize, j: usize, gap: f64 },

    #[error("dipole contraction has non-negligible imaginary part {0:e}")]
    ComplexContraction(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_positive<T: crate::Real>(name: &'static str, value: T) -> Result<T> {
    if value > T::zero() && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value: value.as_f64() })
    }
}
