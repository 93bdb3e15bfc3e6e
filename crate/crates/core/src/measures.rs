//! Nonlinearity measures of a pure ground state.
//!
//! `η_B` is the normalized Bures distance to the harmonic vacuum. `η_NG` is
//! the entropy of the Gaussian state sharing the first and second moments;
//! for a single mode only `√det σ` enters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{inner_product, quadrature_matrices, FockState};
use crate::hamiltonian::NORMALIZATION_TOL;

/// Distance from `½` within which a symplectic eigenvalue is taken as
/// exactly `½` (rounding in the moments of a pure Gaussian state).
pub const SYMPLECTIC_SLACK: f64 = 1e-12;

/// First moments and covariance matrix in the convention where the vacuum
/// has `σ = diag(½, ½)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianMoments {
    pub mean: (f64, f64),
    pub sigma_xx: f64,
    pub sigma_pp: f64,
    pub sigma_xp: f64,
}

impl GaussianMoments {
    pub fn det(&self) -> f64 {
        self.sigma_xx * self.sigma_pp - self.sigma_xp * self.sigma_xp
    }

    /// `√det σ`, the single-mode symplectic eigenvalue.
    pub fn symplectic_eigenvalue(&self) -> f64 {
        self.det().max(0.0).sqrt()
    }
}

/// `√(1 − |⟨0|ψ⟩|)`.
pub fn bures_nonlinearity(state: &FockState) -> Result<f64> {
    state.check_normalized(NORMALIZATION_TOL)?;
    let overlap = state.coeff(0).norm().min(1.0);
    Ok((1.0 - overlap).sqrt())
}

/// Means and symmetrized covariances of `x` and `p`.
///
/// The state is padded by two levels first so the quadratures act on it
/// without truncation error.
pub fn moments(state: &FockState) -> Result<GaussianMoments> {
    state.check_normalized(NORMALIZATION_TOL)?;
    let padded = state.padded(state.dim() + 2)?;
    let (x, p) = quadrature_matrices(padded.dim())?;
    let x_psi = x.apply(&padded);
    let p_psi = p.apply(&padded);
    let mean_x = inner_product(&padded, &x_psi).re;
    let mean_p = inner_product(&padded, &p_psi).re;
    let xx = x_psi.norm_sqr();
    let pp = p_psi.norm_sqr();
    let xp = inner_product(&x_psi, &p_psi).re;
    Ok(GaussianMoments {
        mean: (mean_x, mean_p),
        sigma_xx: xx - mean_x * mean_x,
        sigma_pp: pp - mean_p * mean_p,
        sigma_xp: xp - mean_x * mean_p,
    })
}

/// `h(x) = (x+½)ln(x+½) − (x−½)ln(x−½)`, the entropy of a Gaussian state
/// with symplectic eigenvalue `x`.
pub fn entropy_h(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.5 - SYMPLECTIC_SLACK {
        return Err(Error::Domain {
            name: "symplectic eigenvalue",
            value: x,
            reason: "must be at least 1/2",
        });
    }
    if x <= 0.5 + SYMPLECTIC_SLACK {
        return Ok(0.0);
    }
    let (up, down) = (x + 0.5, x - 0.5);
    Ok(up * up.ln() - down * down.ln())
}

/// `h(√det σ)` of the moment-matched Gaussian reference state.
pub fn non_gaussianity(state: &FockState) -> Result<f64> {
    entropy_h(moments(state)?.symplectic_eigenvalue())
}
