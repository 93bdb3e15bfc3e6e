//! Truncated Fock-space representation.
//!
//! Units are ℏ = 1 with the oscillator mass and frequency absorbed, so that
//! `x = (a + a†)/√2`, `p = i(a† − a)/√2` and `[x, p] = i`. The vacuum has
//! `⟨x²⟩ = ⟨p²⟩ = 1/2`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default truncation: the first 51 number states.
pub const DEFAULT_DIM: usize = 51;

/// Normalization is skipped when `|Σ|c|² − 1|` is already below this, which
/// keeps `normalized` idempotent at the bit level.
const NORM_SKIP: f64 = 1e-14;

/// Pure state expanded in the truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    coeffs: Vec<Complex64>,
}

impl FockState {
    /// Wraps raw amplitudes. No normalization is applied.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidDimension { dim: 0, min: 1 });
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// The number state `|n⟩` in a basis of size `dim`.
    pub fn basis(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::InvalidDimension { dim, min: n + 1 });
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); dim];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Ok(Self { coeffs })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Amplitude on `|n⟩`; zero beyond the truncation.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// One past the highest number state carrying a nonzero amplitude.
    pub fn support_len(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| *c != Complex64::new(0.0, 0.0))
            .map_or(0, |k| k + 1)
    }

    /// Returns `Err(NotNormalized)` unless `|Σ|c|² − 1| ≤ tol`.
    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        let norm_sqr = self.norm_sqr();
        if (norm_sqr - 1.0).abs() > tol || !norm_sqr.is_finite() {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(())
    }

    /// Unit-norm copy whose first nonzero amplitude is real and positive.
    pub fn normalized(&self) -> Result<Self> {
        let norm_sqr = self.norm_sqr();
        if !norm_sqr.is_finite() {
            return Err(Error::NotNormalized { norm_sqr });
        }
        if norm_sqr == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let mut coeffs = self.coeffs.clone();
        if (norm_sqr - 1.0).abs() > NORM_SKIP {
            let scale = 1.0 / norm_sqr.sqrt();
            coeffs.iter_mut().for_each(|c| *c *= scale);
        }
        let lead = coeffs
            .iter()
            .position(|c| *c != Complex64::new(0.0, 0.0))
            .expect("nonzero norm implies a nonzero amplitude");
        let c = coeffs[lead];
        if c.im != 0.0 || c.re < 0.0 {
            let modulus = c.norm();
            let rotation = c.conj() / modulus;
            coeffs.iter_mut().for_each(|z| *z *= rotation);
            coeffs[lead] = Complex64::new(modulus, 0.0);
        }
        Ok(Self { coeffs })
    }

    /// Zero-pads to a larger basis.
    pub fn padded(&self, dim: usize) -> Result<Self> {
        if dim < self.dim() {
            return Err(Error::InvalidDimension {
                dim,
                min: self.dim(),
            });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(dim, Complex64::new(0.0, 0.0));
        Ok(Self { coeffs })
    }

    /// Position-space wavefunction `Σ c_n ψ_n(x)`.
    pub fn wavefunction(&self, x: f64) -> Complex64 {
        harmonic_wavefunctions(self.dim(), x)
            .into_iter()
            .zip(&self.coeffs)
            .map(|(psi, c)| c * psi)
            .sum()
    }
}

/// `Σ_n conj(a_n) b_n`; the shorter state is treated as zero-padded.
pub fn inner_product(a: &FockState, b: &FockState) -> Complex64 {
    a.coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| x.conj() * y)
        .sum()
}

/// Dense operator in the number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn from_matrix(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() == 0 || entries.nrows() != entries.ncols() {
            return Err(Error::InvalidDimension {
                dim: entries.nrows().min(entries.ncols()),
                min: 1,
            });
        }
        Ok(Self { entries })
    }

    pub fn from_real(entries: DMatrix<f64>) -> Result<Self> {
        Self::from_matrix(entries.map(|v| Complex64::new(v, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
        }
    }

    /// Exact (bitwise) Hermiticity test.
    pub fn is_hermitian(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i..n).all(|j| self.entries[(i, j)] == self.entries[(j, i)].conj()))
    }

    /// Real part, for operators known to be real symmetric.
    pub fn real_part(&self) -> DMatrix<f64> {
        self.entries.map(|z| z.re)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            entries: self.entries.map(|z| z * factor),
        }
    }

    /// `O|ψ⟩`, unnormalized. The state is zero-padded or truncated to `dim`.
    pub fn apply(&self, state: &FockState) -> FockState {
        let n = self.dim();
        let coeffs = (0..n)
            .map(|i| (0..n).map(|j| self.entries[(i, j)] * state.coeff(j)).sum())
            .collect();
        FockState { coeffs }
    }

    /// `⟨ψ|O|ψ⟩`.
    pub fn expectation(&self, state: &FockState) -> Complex64 {
        inner_product(state, &self.apply(state))
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: Self) -> OperatorMatrix {
        OperatorMatrix {
            entries: &self.entries * &rhs.entries,
        }
    }
}

fn check_dim(dim: usize, min: usize) -> Result<()> {
    if dim < min {
        return Err(Error::InvalidDimension { dim, min });
    }
    Ok(())
}

/// Annihilation operator: `a[n−1][n] = √n`.
pub fn ladder_matrix(dim: usize) -> Result<OperatorMatrix> {
    check_dim(dim, 1)?;
    let entries = DMatrix::from_fn(dim, dim, |i, j| {
        if j == i + 1 {
            Complex64::new((j as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(OperatorMatrix { entries })
}

/// Position and momentum quadratures `(x, p)`.
pub fn quadrature_matrices(dim: usize) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let a = ladder_matrix(dim)?;
    let a_dag = a.adjoint();
    let x = (&a.entries + &a_dag.entries).map(|z| z * FRAC_1_SQRT_2);
    let p = (&a_dag.entries - &a.entries).map(|z| z * Complex64::new(0.0, FRAC_1_SQRT_2));
    Ok((OperatorMatrix { entries: x }, OperatorMatrix { entries: p }))
}

/// `⟨m|x|n⟩` of the untruncated position operator.
pub fn position_element(m: usize, n: usize) -> f64 {
    if m.abs_diff(n) == 1 {
        (m.max(n) as f64).sqrt() * FRAC_1_SQRT_2
    } else {
        0.0
    }
}

/// `⟨m|x⁴|n⟩` of the untruncated quartic operator.
pub fn quartic_element(m: usize, n: usize) -> f64 {
    let lo = m.min(n) as f64;
    match m.abs_diff(n) {
        0 => (6.0 * lo * lo + 6.0 * lo + 3.0) / 4.0,
        2 => (2.0 * lo + 3.0) * ((lo + 1.0) * (lo + 2.0)).sqrt() / 2.0,
        4 => ((lo + 1.0) * (lo + 2.0) * (lo + 3.0) * (lo + 4.0)).sqrt() / 4.0,
        _ => 0.0,
    }
}

/// Matrix of `x⁴` projected onto the first `dim` number states.
///
/// Entries are the exact matrix elements of the full operator, so every
/// block is independent of the truncation.
pub fn quartic_matrix(dim: usize) -> Result<OperatorMatrix> {
    check_dim(dim, 1)?;
    let entries = DMatrix::from_fn(dim, dim, |i, j| Complex64::new(quartic_element(i, j), 0.0));
    Ok(OperatorMatrix { entries })
}

/// `ψ_0(x), …, ψ_{count−1}(x)` by upward recurrence on the normalized functions.
pub fn harmonic_wavefunctions(count: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let psi0 = PI.powf(-0.25) * (-0.5 * x * x).exp();
    out.push(psi0);
    if count == 1 {
        return out;
    }
    out.push(std::f64::consts::SQRT_2 * x * psi0);
    for n in 1..count - 1 {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
        out.push(next);
    }
    out
}

/// `⟨x|n⟩ = π^{-1/4} (2ⁿ n!)^{-1/2} H_n(x) e^{-x²/2}`.
pub fn harmonic_wavefunction(n: usize, x: f64) -> f64 {
    harmonic_wavefunctions(n + 1, x)[n]
}
