//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the library's operator builders or Wigner kernel;
//! everything is rebuilt from ladder operators and Hermite polynomials.

#![allow(dead_code)]

use duffing::FockState;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C = Complex64;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Annihilation operator with `a|n⟩ = √n |n−1⟩`.
pub fn annihilation(dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(
        dim,
        dim,
        |i, j| if j == i + 1 { (j as f64).sqrt() } else { 0.0 },
    )
}

/// `p²/2 + x²/2 + εx⁴/4` with `x⁴` taken as the truncated fourfold product.
pub fn duffing_hamiltonian(epsilon: f64, dim: usize) -> (DMatrix<f64>, DMatrix<f64>) {
    let a = annihilation(dim);
    let x = (&a + a.transpose()) / 2f64.sqrt();
    let x2 = &x * &x;
    let number = a.transpose() * &a;
    let h = number + DMatrix::identity(dim, dim) * 0.5 + (&x2 * &x2) * (epsilon / 4.0);
    (h, x)
}

/// Classical RK4 for `i dψ/dt = [H − F x cos ωt] ψ` from `|0⟩` at `t = 0`.
pub fn propagate(
    epsilon: f64,
    force: f64,
    omega: f64,
    time: f64,
    dim: usize,
    steps: usize,
) -> Vec<C> {
    let (h, x) = duffing_hamiltonian(epsilon, dim);
    let h = h.map(|v| c(v, 0.0));
    let x = x.map(|v| c(v, 0.0));
    let rhs = |t: f64, psi: &DVector<C>| -> DVector<C> {
        let drive = force * (omega * t).cos();
        (&h * psi - &x * psi * c(drive, 0.0)) * c(0.0, -1.0)
    };
    let mut psi = DVector::from_element(dim, c(0.0, 0.0));
    psi[0] = c(1.0, 0.0);
    let dt = time / steps as f64;
    for k in 0..steps {
        let t = k as f64 * dt;
        let k1 = rhs(t, &psi);
        let k2 = rhs(t + dt / 2.0, &(&psi + &k1 * c(dt / 2.0, 0.0)));
        let k3 = rhs(t + dt / 2.0, &(&psi + &k2 * c(dt / 2.0, 0.0)));
        let k4 = rhs(t + dt, &(&psi + &k3 * c(dt, 0.0)));
        psi += (k1 + k2 * c(2.0, 0.0) + k3 * c(2.0, 0.0) + k4) * c(dt / 6.0, 0.0);
    }
    psi.iter().copied().collect()
}

/// `|⟨a|b⟩|²` for plain amplitude vectors (shorter one zero-padded).
pub fn overlap_sqr(a: &[C], b: &[C]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<C>()
        .norm_sqr()
}

/// Physicists' Hermite polynomial from its explicit sum.
pub fn hermite(n: usize, x: f64) -> f64 {
    let mut total = 0.0;
    for m in 0..=n / 2 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * factorial(n) / (factorial(m) * factorial(n - 2 * m))
            * (2.0 * x).powi((n - 2 * m) as i32);
    }
    total
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `⟨x|n⟩` through the explicit Hermite sum; only sensible for small `n`.
pub fn eigenfunction(n: usize, x: f64) -> f64 {
    let norm = std::f64::consts::PI.powf(-0.25) / (2f64.powi(n as i32) * factorial(n)).sqrt();
    norm * hermite(n, x) * (-x * x / 2.0).exp()
}

pub fn psi(state: &FockState, x: f64) -> C {
    state
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, cn)| cn * eigenfunction(n, x))
        .sum()
}

/// `W(x, p) = (1/π) ∫ ψ*(x+y) ψ(x−y) e^{2ipy} dy` by the trapezoid rule,
/// which converges spectrally for the Gaussian-decaying integrand.
pub fn wigner_transform(state: &FockState, x: f64, p: f64) -> f64 {
    let (half, n) = (9.0, 3600);
    let h = 2.0 * half / n as f64;
    let mut total = c(0.0, 0.0);
    for k in 0..=n {
        let y = -half + k as f64 * h;
        let weight = if k == 0 || k == n { 0.5 } else { 1.0 };
        total +=
            psi(state, x + y).conj() * psi(state, x - y) * C::from_polar(1.0, 2.0 * p * y) * weight;
    }
    total.re * h / std::f64::consts::PI
}

/// Doubled negative mass of `W₁(r) = (2r² − 1)e^{−r²}/π` by Simpson's rule
/// over the disc `r < 1/√2` where it is negative.
pub fn one_photon_negativity_radial() -> f64 {
    let edge = 0.5f64.sqrt();
    let n = 2000;
    let h = edge / n as f64;
    let f = |r: f64| 2.0 * r * (1.0 - 2.0 * r * r) * (-r * r).exp();
    let mut total = f(0.0) + f(edge);
    for k in 1..n {
        total += f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    2.0 * total * h / 3.0
}

/// Deterministic pseudo-random normalized state with `support` levels.
pub fn sample_state(seed: u64, support: usize) -> FockState {
    let mut s = seed
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    let mut next = || {
        s = s
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    let coeffs: Vec<C> = (0..support).map(|_| c(next(), next())).collect();
    FockState::new(coeffs).unwrap().normalized().unwrap()
}
