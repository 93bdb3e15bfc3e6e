//! Wigner function of Fock-expanded pure states and the negative-volume
//! nonclassicality measure.
//!
//! `W(x, p)` is normalized to unit mass over `dx dp`. For a state
//! `Σ c_n |n⟩` it is the sum `Σ_{m,n} c_m conj(c_n) W_{mn}(x, p)` where, for
//! `m ≥ n`,
//!
//! ```text
//! W_{mn} = (−1)ⁿ/π √(n!/m!) (√2 (x − ip))^{m−n} e^{−r²} L_n^{(m−n)}(2r²),   r² = x² + p²
//! ```
//!
//! is the Wigner function of `|m⟩⟨n|`, and `W_{nm} = conj(W_{mn})`.

use std::f64::consts::{FRAC_1_PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::FockState;
use crate::grid::Grid2D;
use crate::hamiltonian::NORMALIZATION_TOL;

pub type WignerGrid = Grid2D;

/// Maximum disagreement between the default and refined negative volumes.
pub const REFINE_TOL: f64 = 1e-4;

/// Square integration window `[−extent, extent]²` sampled with spacing `step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub extent: f64,
    pub step: f64,
    /// Re-evaluate once at half the step and twice the extent and require
    /// agreement within [`REFINE_TOL`].
    pub refine: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            extent: 6.0,
            step: 0.02,
            refine: false,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.extent > 0.0 && self.extent.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "extent {} must be positive",
                self.extent
            )));
        }
        if !(self.step > 0.0 && self.step <= self.extent / 10.0) {
            return Err(Error::InvalidConfig(format!(
                "step {} must be positive and at most extent/10 = {}",
                self.step,
                self.extent / 10.0
            )));
        }
        Ok(())
    }

    /// Samples per axis; the spacing is adjusted so both ends are hit.
    pub fn samples(&self) -> usize {
        (2.0 * self.extent / self.step).round() as usize + 1
    }

    pub fn refined(&self) -> Self {
        Self {
            extent: 2.0 * self.extent,
            step: 0.5 * self.step,
            refine: false,
        }
    }
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Associated Laguerre `L_n^{(k)}(z)` by the three-term recurrence.
fn laguerre(n: usize, k: usize, z: f64) -> f64 {
    let k = k as f64;
    let (mut prev, mut cur) = (0.0, 1.0);
    for j in 0..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + k - z) * cur - (jf + k) * prev) / (jf + 1.0);
        (prev, cur) = (cur, next);
    }
    cur
}

/// The Wigner function `W_{mn}(x, p)` of the operator `|m⟩⟨n|`.
pub fn fock_kernel(m: usize, n: usize, x: f64, p: f64) -> Complex64 {
    if m < n {
        return fock_kernel(n, m, x, p).conj();
    }
    let k = m - n;
    let r2 = x * x + p * p;
    if k > 0 && r2 == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let log_mag = 0.5 * (ln_factorial(n) - ln_factorial(m)) - r2
        + if k > 0 {
            0.5 * k as f64 * (2.0 * r2).ln()
        } else {
            0.0
        };
    let angle = -(k as f64) * p.atan2(x);
    let radial = sign * FRAC_1_PI * laguerre(n, k, 2.0 * r2);
    Complex64::from_polar(radial * log_mag.exp(), angle)
}

/// `W(x, p)` of a normalized state.
///
/// Sums each diagonal `m − n = k` of the kernel with a normalized Laguerre
/// recurrence, `ℓ_n = √(n! k!/(n+k)!) L_n^{(k)}(2r²)`, so no factorials are
/// formed. Cost is `O(K²)` with `K` the support length of the state.
pub fn wigner_point(state: &FockState, x: f64, p: f64) -> f64 {
    let c = &state.coeffs()[..state.support_len()];
    let dim = c.len();
    let r2 = x * x + p * p;
    let z = 2.0 * r2;
    let w = Complex64::new(SQRT_2 * x, -SQRT_2 * p);

    // u_k = e^{−r²}/π · w^k/√(k!)
    let mut u = Complex64::new(FRAC_1_PI * (-r2).exp(), 0.0);
    let mut total = 0.0;
    for k in 0..dim {
        if k > 0 {
            u *= w / (k as f64).sqrt();
        }
        let kf = k as f64;
        let (mut prev, mut cur) = (0.0, 1.0);
        let mut diagonal = Complex64::new(0.0, 0.0);
        for n in 0..dim - k {
            let weight = c[n + k] * c[n].conj();
            let signed = if n % 2 == 0 { cur } else { -cur };
            diagonal += weight * signed;
            let nf = n as f64;
            let next = ((2.0 * nf + 1.0 + kf - z) * cur - (nf * (nf + kf)).sqrt() * prev)
                / ((nf + 1.0) * (nf + 1.0 + kf)).sqrt();
            (prev, cur) = (cur, next);
        }
        let term = u * diagonal;
        total += if k == 0 { term.re } else { 2.0 * term.re };
    }
    total
}

/// Samples [`wigner_point`] on the square grid of `config`.
pub fn wigner_grid(state: &FockState, config: &QuadratureConfig) -> Result<WignerGrid> {
    config.validate()?;
    state.check_normalized(NORMALIZATION_TOL)?;
    let n = config.samples();
    let axis = (-config.extent, config.extent, n);
    Grid2D::sample(axis, axis, "p", |x, p| wigner_point(state, x, p))
}

/// Negative volume `∫|W| − 1` evaluated as twice the Riemann sum of the
/// negative part, which equals it whenever `∫W = 1` and avoids the
/// cancellation in `Σ|W| − 1`.
pub fn negative_volume_of(grid: &WignerGrid) -> f64 {
    2.0 * grid.negative_mass()
}

/// Negative volume `η = ∫|W| dx dp − 1 ≥ 0` of a normalized state.
pub fn negativity_volume(state: &FockState, config: &QuadratureConfig) -> Result<f64> {
    let coarse = negative_volume_of(&wigner_grid(state, config)?);
    if !config.refine {
        return Ok(coarse);
    }
    let fine = negative_volume_of(&wigner_grid(state, &config.refined())?);
    if (fine - coarse).abs() > REFINE_TOL {
        return Err(Error::Accuracy { coarse, fine });
    }
    Ok(fine)
}

/// `ν = η/(1 + η)`.
pub fn nonclassicality_from_volume(eta: f64) -> f64 {
    eta / (1.0 + eta)
}

pub fn nonclassicality(state: &FockState, config: &QuadratureConfig) -> Result<f64> {
    negativity_volume(state, config).map(nonclassicality_from_volume)
}
