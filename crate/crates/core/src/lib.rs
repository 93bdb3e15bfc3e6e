//! Ground states of the quantum Duffing oscillator in a truncated Fock space,
//! their nonlinearity (Bures and non-Gaussianity measures) and their
//! nonclassicality (Wigner negative volume).

pub mod cli;
pub mod error;
pub mod fit;
pub mod fock;
pub mod grid;
pub mod hamiltonian;
pub mod measures;
pub mod perturbative;
pub mod profile;
pub mod records;
pub mod sweep;
pub mod wigner;

pub use error::{Error, Result};
pub use fit::{fit_sqrt_linear_model, fit_sqrt_model, FitModel, FitResult};
pub use fock::{
    harmonic_wavefunction, inner_product, ladder_matrix, quadrature_matrices, quartic_matrix,
    FockState, OperatorMatrix, DEFAULT_DIM,
};
pub use hamiltonian::{build_hamiltonian, fidelity, ground_state_numeric, DuffingParams};
pub use measures::{bures_nonlinearity, entropy_h, moments, non_gaussianity, GaussianMoments};
pub use perturbative::{
    driven_ground_state, driven_ground_state_first_order, first_order_coefficient,
    ground_state_perturbative, Approximation,
};
pub use sweep::{sweep_driven, sweep_undriven, EpsilonGrid, GroundStateSource, MeasureRecord};
pub use wigner::{
    negativity_volume, nonclassicality, wigner_grid, wigner_point, QuadratureConfig, WignerGrid,
};
