//! First-order perturbative ground states of the Duffing oscillator.
//!
//! The static state follows from time-independent perturbation theory with
//! unit level spacing (`E_n = n + ½`). The driven state follows from
//! first-order time-dependent perturbation theory in both `ε` and `F`,
//! starting from `|ψ(0)⟩ = |0⟩`. Coefficients are stored in the Schrödinger
//! picture, i.e. with the free phases `e^{−iE_n t}` applied.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{position_element, quartic_element, FockState};
use crate::hamiltonian::{check_epsilon, DuffingParams, MIN_DIM};

/// Upper end of the anharmonicity range where the static state is validated.
pub const VALIDATED_EPSILON_MAX: f64 = 0.8;

/// Minimum `|ω² − 1|` accepted for a nonzero drive.
pub const RESONANCE_GUARD: f64 = 1e-6;

/// Bistable working window of the driven oscillator.
pub const BISTABLE_FORCE: (f64, f64) = (0.015, 0.06);
pub const BISTABLE_OMEGA: (f64, f64) = (1.016, 1.02);

/// A perturbative state plus a flag raised when the parameters leave the
/// regime where the approximation was checked.
#[derive(Debug, Clone, PartialEq)]
pub struct Approximation {
    pub state: FockState,
    pub outside_validated_regime: bool,
}

impl Approximation {
    pub fn into_state(self) -> FockState {
        self.state
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < MIN_DIM {
        return Err(Error::InvalidDimension { dim, min: MIN_DIM });
    }
    Ok(())
}

/// `N [|0⟩ − 3ε/(8√2) |2⟩ − √3 ε/(16√2) |4⟩]` with `N = (1 + 39ε²/512)^{-1/2}`.
pub fn ground_state_perturbative(epsilon: f64, dim: usize) -> Result<Approximation> {
    check_epsilon(epsilon)?;
    check_dim(dim)?;
    let norm = 1.0 / (1.0 + 39.0 * epsilon * epsilon / 512.0).sqrt();
    let mut coeffs = vec![0.0; dim];
    coeffs[0] = norm;
    coeffs[2] = -3.0 * epsilon / (8.0 * SQRT_2) * norm;
    coeffs[4] = -(3f64.sqrt()) * epsilon / (16.0 * SQRT_2) * norm;
    let state = FockState::from_real(&coeffs)?.normalized()?;
    let outside = epsilon > VALIDATED_EPSILON_MAX;
    if outside {
        log::warn!("epsilon = {epsilon} exceeds the validated range [0, {VALIDATED_EPSILON_MAX}]");
    }
    Ok(Approximation {
        state,
        outside_validated_regime: outside,
    })
}

fn check_resonance(params: &DuffingParams) -> Result<()> {
    if params.force > 0.0 && (params.omega * params.omega - 1.0).abs() <= RESONANCE_GUARD {
        return Err(Error::Resonance {
            omega: params.omega,
            guard: RESONANCE_GUARD,
        });
    }
    Ok(())
}

/// `∫₀ᵗ e^{iνs} ds`, written to stay accurate as `ν → 0`.
fn phase_integral(nu: f64, t: f64) -> Complex64 {
    if nu == 0.0 {
        return Complex64::new(t, 0.0);
    }
    let half = 0.5 * nu * t;
    Complex64::from_polar(2.0 * half.sin() / nu, half)
}

/// First-order amplitude `c⁽¹⁾_n(t) = −i ∫₀ᵗ e^{i(n−l)t′} ⟨n|V(t′)|l⟩ dt′`
/// for `V(t) = (ε/4)x⁴ − F x cos ωt`, in closed form.
pub fn first_order_coefficient(n: usize, l: usize, params: &DuffingParams) -> Result<Complex64> {
    params.validate()?;
    check_resonance(params)?;
    let t = params.time;
    let bohr = n as f64 - l as f64;
    let quartic = 0.25 * params.epsilon * quartic_element(n, l);
    let drive = -params.force * position_element(n, l);
    let mut integral = Complex64::new(0.0, 0.0);
    if quartic != 0.0 {
        integral += quartic * phase_integral(bohr, t);
    }
    if drive != 0.0 {
        let w = params.omega;
        integral += 0.5 * drive * (phase_integral(bohr + w, t) + phase_integral(bohr - w, t));
    }
    Ok(Complex64::new(0.0, -1.0) * integral)
}

fn driven_regime_flag(params: &DuffingParams) -> bool {
    let in_window = |v: f64, (lo, hi): (f64, f64)| (lo..=hi).contains(&v);
    params.epsilon > VALIDATED_EPSILON_MAX
        || (params.force > 0.0
            && !(in_window(params.force, BISTABLE_FORCE)
                && in_window(params.omega, BISTABLE_OMEGA)))
}

/// The driven ground state with the closed-form amplitudes
///
/// ```text
/// ψ₀: (1 − 3itε/16) e^{−it/2}
/// ψ₁: F (1 − e^{it}[cos ωt − iω sin ωt]) / (√2 (ω² − 1)) e^{−3it/2}
/// ψ₂: (ε/16) 3√2 (e^{−5it/2} − e^{−it/2})
/// ψ₄: (ε/16) (e^{−9it/2} − e^{−it/2}) / 4
/// ```
///
/// then normalized. The ψ₄ prefactor is kept in this conventional form; first-order
/// theory gives `√6 ε/32` in place of `ε/64` there, which
/// [`driven_ground_state_first_order`] uses instead.
pub fn driven_ground_state(params: &DuffingParams, dim: usize) -> Result<Approximation> {
    params.validate()?;
    check_resonance(params)?;
    check_dim(dim)?;
    let DuffingParams {
        epsilon: eps,
        force,
        omega,
        time: t,
    } = *params;
    let phase = |energy: f64| Complex64::from_polar(1.0, -energy * t);
    let i = Complex64::new(0.0, 1.0);

    let mut coeffs = vec![Complex64::new(0.0, 0.0); dim];
    coeffs[0] = (1.0 - i * (3.0 * t * eps / 16.0)) * phase(0.5);
    if force > 0.0 {
        let (s, c) = (omega * t).sin_cos();
        let bracket = 1.0 - Complex64::from_polar(1.0, t) * Complex64::new(c, -omega * s);
        coeffs[1] = force * bracket / (SQRT_2 * (omega * omega - 1.0)) * phase(1.5);
    }
    coeffs[2] = eps / 16.0 * 3.0 * SQRT_2 * (phase(2.5) - phase(0.5));
    coeffs[4] = eps / 16.0 * (phase(4.5) - phase(0.5)) / 4.0;

    Ok(Approximation {
        state: FockState::new(coeffs)?.normalized()?,
        outside_validated_regime: driven_regime_flag(params),
    })
}

/// Driven ground state assembled from [`first_order_coefficient`] for every
/// level of the basis: `Σ_n (δ_{n0} + c⁽¹⁾_n(t)) e^{−i(n+½)t} |n⟩`, normalized.
pub fn driven_ground_state_first_order(
    params: &DuffingParams,
    dim: usize,
) -> Result<Approximation> {
    params.validate()?;
    check_resonance(params)?;
    check_dim(dim)?;
    let coeffs = (0..dim)
        .map(|n| {
            let zeroth = if n == 0 { 1.0 } else { 0.0 };
            let amp = zeroth + first_order_coefficient(n, 0, params)?;
            Ok(amp * Complex64::from_polar(1.0, -(n as f64 + 0.5) * params.time))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Approximation {
        state: FockState::new(coeffs)?.normalized()?,
        outside_validated_regime: driven_regime_flag(params),
    })
}
