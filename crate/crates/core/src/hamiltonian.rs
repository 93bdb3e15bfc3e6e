//! Undriven Duffing Hamiltonian `H = ½(x² + p²) + (ε/4) x⁴` in the number
//! basis, its numerical ground state, and state fidelity.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{inner_product, quartic_element, FockState, OperatorMatrix};

/// Smallest basis that holds the `|0⟩ → |4⟩` coupling.
pub const MIN_DIM: usize = 5;

/// Maximum `‖Hψ − Eψ‖∞` accepted from the eigensolver.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-10;

/// Norm deviation tolerated by [`fidelity`].
pub const NORMALIZATION_TOL: f64 = 1e-6;

/// Model parameters: anharmonicity `ε`, drive amplitude `F`, drive
/// frequency `ω` and evaluation time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DuffingParams {
    pub epsilon: f64,
    pub force: f64,
    pub omega: f64,
    pub time: f64,
}

impl DuffingParams {
    pub fn new(epsilon: f64, force: f64, omega: f64, time: f64) -> Result<Self> {
        let params = Self {
            epsilon,
            force,
            omega,
            time,
        };
        params.validate()?;
        Ok(params)
    }

    /// No drive; `ω = 1` and `t = 0` are placeholders.
    pub fn undriven(epsilon: f64) -> Result<Self> {
        Self::new(epsilon, 0.0, 1.0, 0.0)
    }

    pub fn with_epsilon(self, epsilon: f64) -> Result<Self> {
        Self::new(epsilon, self.force, self.omega, self.time)
    }

    pub fn validate(&self) -> Result<()> {
        check_epsilon(self.epsilon)?;
        if !(self.force >= 0.0 && self.force.is_finite()) {
            return Err(Error::Domain {
                name: "force",
                value: self.force,
                reason: "drive amplitude must be finite and non-negative",
            });
        }
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::Domain {
                name: "omega",
                value: self.omega,
                reason: "drive frequency must be finite and positive",
            });
        }
        if !self.time.is_finite() {
            return Err(Error::Domain {
                name: "time",
                value: self.time,
                reason: "time must be finite",
            });
        }
        Ok(())
    }
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::Domain {
            name: "epsilon",
            value: epsilon,
            reason: "anharmonicity must be finite and non-negative (stiffening)",
        });
    }
    Ok(())
}

fn hamiltonian_real(epsilon: f64, dim: usize) -> Result<DMatrix<f64>> {
    check_epsilon(epsilon)?;
    if dim < MIN_DIM {
        return Err(Error::InvalidDimension { dim, min: MIN_DIM });
    }
    let coupling = epsilon / 4.0;
    Ok(DMatrix::from_fn(dim, dim, |i, j| {
        let harmonic = if i == j { i as f64 + 0.5 } else { 0.0 };
        harmonic + coupling * quartic_element(i, j)
    }))
}

/// `H = diag(n + ½) + (ε/4) x⁴`, real symmetric.
pub fn build_hamiltonian(epsilon: f64, dim: usize) -> Result<OperatorMatrix> {
    OperatorMatrix::from_real(hamiltonian_real(epsilon, dim)?)
}

/// Lowest eigenpair of [`build_hamiltonian`] by dense symmetric
/// diagonalization. The returned state is normalized and phase fixed.
pub fn ground_state_numeric(epsilon: f64, dim: usize) -> Result<(FockState, f64)> {
    let h = hamiltonian_real(epsilon, dim)?;
    let eigen = SymmetricEigen::new(h.clone());
    let (index, &energy) = eigen
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("dim >= MIN_DIM");
    let vector = eigen.eigenvectors.column(index).into_owned();
    let residual = (&h * &vector - &vector * energy).amax();
    if residual.is_nan() || residual >= EIGEN_RESIDUAL_TOL {
        return Err(Error::NumericalFailure { residual });
    }
    let state = FockState::from_real(vector.as_slice())?.normalized()?;
    Ok((state, energy))
}

/// `|⟨a|b⟩|²` between normalized states.
pub fn fidelity(a: &FockState, b: &FockState) -> Result<f64> {
    a.check_normalized(NORMALIZATION_TOL)?;
    b.check_normalized(NORMALIZATION_TOL)?;
    Ok(inner_product(a, b).norm_sqr().clamp(0.0, 1.0))
}

/// `‖Hψ − Eψ‖∞` for a candidate eigenpair.
pub fn eigen_residual(h: &OperatorMatrix, state: &FockState, energy: f64) -> f64 {
    let applied = h.apply(state);
    applied
        .coeffs()
        .iter()
        .zip(state.coeffs())
        .map(|(hv, v)| (hv - v * Complex64::new(energy, 0.0)).norm())
        .fold(0.0, f64::max)
}
