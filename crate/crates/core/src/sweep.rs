//! Parameter sweeps over the anharmonicity.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::axis;
use crate::hamiltonian::{fidelity, ground_state_numeric, DuffingParams};
use crate::measures::{bures_nonlinearity, non_gaussianity};
use crate::perturbative::{driven_ground_state, ground_state_perturbative, VALIDATED_EPSILON_MAX};
use crate::wigner::{nonclassicality, QuadratureConfig};

/// Measures evaluated at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureRecord {
    pub params: DuffingParams,
    pub eta_b: f64,
    pub eta_ng: f64,
    pub nu: f64,
    /// Perturbative versus numerical ground state; undriven sweeps only.
    pub fidelity: Option<f64>,
}

/// Uniform grid of `steps` anharmonicities from `eps_min` to `eps_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonGrid {
    pub eps_min: f64,
    pub eps_max: f64,
    pub steps: usize,
}

impl Default for EpsilonGrid {
    fn default() -> Self {
        Self {
            eps_min: 0.0,
            eps_max: VALIDATED_EPSILON_MAX,
            steps: 81,
        }
    }
}

impl EpsilonGrid {
    pub fn new(eps_min: f64, eps_max: f64, steps: usize) -> Result<Self> {
        let grid = Self {
            eps_min,
            eps_max,
            steps,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps_min >= 0.0 && self.eps_min < self.eps_max && self.eps_max.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "need 0 <= eps_min < eps_max, got [{}, {}]",
                self.eps_min, self.eps_max
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidConfig(format!(
                "need at least 2 steps, got {}",
                self.steps
            )));
        }
        if self.eps_max > VALIDATED_EPSILON_MAX {
            log::warn!(
                "eps_max = {} exceeds the validated range [0, {VALIDATED_EPSILON_MAX}]",
                self.eps_max
            );
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        axis(self.eps_min, self.eps_max, self.steps)
    }
}

/// Which undriven ground state the measures are evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GroundStateSource {
    #[default]
    Perturbative,
    Numeric,
}

/// For each `ε`: perturbative and numerical ground states, their fidelity,
/// and `η_B`, `η_NG`, `ν` on the state selected by `source`.
pub fn sweep_undriven(
    grid: &EpsilonGrid,
    dim: usize,
    quad: &QuadratureConfig,
    source: GroundStateSource,
) -> Result<Vec<MeasureRecord>> {
    grid.validate()?;
    quad.validate()?;
    grid.values()
        .into_par_iter()
        .map(|eps| {
            let perturbative = ground_state_perturbative(eps, dim)?.state;
            let (numeric, _) = ground_state_numeric(eps, dim)?;
            let fid = fidelity(&perturbative, &numeric)?;
            let state = match source {
                GroundStateSource::Perturbative => &perturbative,
                GroundStateSource::Numeric => &numeric,
            };
            Ok(MeasureRecord {
                params: DuffingParams::undriven(eps)?,
                eta_b: bures_nonlinearity(state)?,
                eta_ng: non_gaussianity(state)?,
                nu: nonclassicality(state, quad)?,
                fidelity: Some(fid),
            })
        })
        .collect()
}

/// Same measures on the driven ground state, sweeping `ε` with the drive of
/// `base` held fixed.
pub fn sweep_driven(
    base: &DuffingParams,
    grid: &EpsilonGrid,
    dim: usize,
    quad: &QuadratureConfig,
) -> Result<Vec<MeasureRecord>> {
    base.validate()?;
    grid.validate()?;
    quad.validate()?;
    grid.values()
        .into_par_iter()
        .map(|eps| {
            let params = base.with_epsilon(eps)?;
            let state = driven_ground_state(&params, dim)?.state;
            Ok(MeasureRecord {
                params,
                eta_b: bures_nonlinearity(&state)?,
                eta_ng: non_gaussianity(&state)?,
                nu: nonclassicality(&state, quad)?,
                fidelity: None,
            })
        })
        .collect()
}

/// `(ε, |⟨ψ_pert|ψ_num⟩|²)` over the grid.
pub fn fidelity_sweep(grid: &EpsilonGrid, dim: usize) -> Result<Vec<(f64, f64)>> {
    grid.validate()?;
    grid.values()
        .into_par_iter()
        .map(|eps| {
            let perturbative = ground_state_perturbative(eps, dim)?.state;
            let (numeric, _) = ground_state_numeric(eps, dim)?;
            Ok((eps, fidelity(&perturbative, &numeric)?))
        })
        .collect()
}
