//! Linear least squares in small fixed bases of `{1, √x, x}`.
//!
//! Both empirical relations are linear in their coefficients, so they are
//! solved directly through a Householder QR of the design matrix.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative size below which a diagonal entry of `R` marks the design as
/// rank deficient.
const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitModel {
    /// `y = a + b√x`
    Sqrt,
    /// `y = c₀ + c₁√x + c₂x`
    SqrtLinear,
    /// `y = c₀ + c₂x`
    Linear,
}

impl FitModel {
    pub fn tag(self) -> &'static str {
        match self {
            FitModel::Sqrt => "sqrt",
            FitModel::SqrtLinear => "sqrt-linear",
            FitModel::Linear => "linear",
        }
    }

    pub fn arity(self) -> usize {
        self.basis(0.0).len()
    }

    fn basis(self, x: f64) -> Vec<f64> {
        match self {
            FitModel::Sqrt => vec![1.0, x.sqrt()],
            FitModel::SqrtLinear => vec![1.0, x.sqrt(), x],
            FitModel::Linear => vec![1.0, x],
        }
    }

    pub fn eval(self, coefficients: &[f64], x: f64) -> f64 {
        self.basis(x)
            .iter()
            .zip(coefficients)
            .map(|(b, c)| b * c)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    #[serde(rename = "model_tag")]
    pub model: FitModel,
    pub coefficients: Vec<f64>,
    pub residual_rms: f64,
}

impl FitResult {
    pub fn eval(&self, x: f64) -> f64 {
        self.model.eval(&self.coefficients, x)
    }
}

/// Ordinary least squares of `ys` against the basis of `model`.
pub fn fit(model: FitModel, xs: &[f64], ys: &[f64]) -> Result<FitResult> {
    let k = model.arity();
    if xs.len() != ys.len() {
        return Err(Error::InvalidInput(format!(
            "{} abscissae but {} ordinates",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() <= k {
        return Err(Error::InvalidInput(format!(
            "model {} needs at least {} points, got {}",
            model.tag(),
            k + 1,
            xs.len()
        )));
    }
    if let Some(bad) = xs.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
        return Err(Error::InvalidInput(format!(
            "abscissa {bad} is not a finite non-negative number"
        )));
    }
    if let Some(bad) = ys.iter().find(|y| !y.is_finite()) {
        return Err(Error::InvalidInput(format!("ordinate {bad} is not finite")));
    }

    let n = xs.len();
    let design = DMatrix::from_fn(n, k, |i, j| model.basis(xs[i])[j]);
    let target = DVector::from_column_slice(ys);
    let scale = design.column_iter().map(|c| c.norm()).fold(0.0, f64::max);
    let qr = design.clone().qr();
    let r = qr.r();
    if (0..k).any(|i| r[(i, i)].abs() <= RANK_TOL * scale) {
        return Err(Error::DegenerateFit { model: model.tag() });
    }
    let rhs = qr.q().transpose() * &target;
    let coefficients = r
        .solve_upper_triangular(&rhs)
        .ok_or(Error::DegenerateFit { model: model.tag() })?;
    let residual = &design * &coefficients - target;
    Ok(FitResult {
        model,
        coefficients: coefficients.iter().copied().collect(),
        residual_rms: (residual.norm_squared() / n as f64).sqrt(),
    })
}

/// `y = a + b√x`.
pub fn fit_sqrt_model(xs: &[f64], ys: &[f64]) -> Result<FitResult> {
    fit(FitModel::Sqrt, xs, ys)
}

/// `y = c₀ + c₁√x + c₂x`.
pub fn fit_sqrt_linear_model(xs: &[f64], ys: &[f64]) -> Result<FitResult> {
    fit(FitModel::SqrtLinear, xs, ys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn grid(n: usize) -> Vec<f64> {
        (0..n).map(|i| 0.2 * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn recovers_exact_sqrt_model() {
        let xs = grid(30);
        let ys: Vec<f64> = xs.iter().map(|x| 0.1 + 0.5 * x.sqrt()).collect();
        let f = fit_sqrt_model(&xs, &ys).unwrap();
        assert_eq!(f.model.tag(), "sqrt");
        assert_abs_diff_eq!(f.coefficients[0], 0.1, epsilon = 1e-12);
        assert_abs_diff_eq!(f.coefficients[1], 0.5, epsilon = 1e-12);
        assert!(f.residual_rms < 1e-14);
    }

    #[test]
    fn recovers_exact_sqrt_linear_model() {
        let xs = grid(40);
        let ys: Vec<f64> = xs
            .iter()
            .map(|x| 0.002 + 0.2 * x.sqrt() + 2.7 * x)
            .collect();
        let f = fit_sqrt_linear_model(&xs, &ys).unwrap();
        for (got, want) in f.coefficients.iter().zip([0.002, 0.2, 2.7]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn constant_data() {
        let xs = grid(10);
        let ys = vec![0.25; 10];
        let f = fit_sqrt_model(&xs, &ys).unwrap();
        assert_abs_diff_eq!(f.coefficients[0], 0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(f.coefficients[1], 0.0, epsilon = 1e-14);
    }

    #[test]
    fn degenerate_and_invalid_inputs() {
        let xs = vec![0.3; 6];
        let ys: Vec<f64> = (0..6).map(|i| i as f64).collect();
        assert!(matches!(
            fit_sqrt_model(&xs, &ys),
            Err(Error::DegenerateFit { model: "sqrt" })
        ));
        assert!(matches!(
            fit_sqrt_model(&[0.0, 1.0], &[0.0, 1.0]),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            fit_sqrt_linear_model(&[0.0, 1.0, 2.0], &[0.0, 1.0, 2.0]),
            Err(Error::InvalidInput(_))
        ));
        assert!(fit_sqrt_model(&[0.0, -1.0, 2.0], &[0.0, 1.0, 2.0]).is_err());
        assert!(fit_sqrt_model(&[0.0, 1.0, 2.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn result_serializes_with_tag() {
        let f = FitResult {
            model: FitModel::SqrtLinear,
            coefficients: vec![1.0, 2.0, 3.0],
            residual_rms: 0.0,
        };
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"model_tag\":\"sqrt-linear\""));
        assert_eq!(f.coefficients.len(), f.model.arity());
    }

    proptest! {
        #[test]
        fn residual_is_orthogonal_to_basis(
            ys in prop::collection::vec(-1.0f64..1.0, 12),
        ) {
            let xs = grid(12);
            let f = fit_sqrt_linear_model(&xs, &ys).unwrap();
            for j in 0..3 {
                let dot: f64 = xs
                    .iter()
                    .zip(&ys)
                    .map(|(x, y)| (f.eval(*x) - y) * FitModel::SqrtLinear.basis(*x)[j])
                    .sum();
                prop_assert!(dot.abs() < 1e-12);
            }
            prop_assert!(f.residual_rms >= 0.0);
        }
    }
}
