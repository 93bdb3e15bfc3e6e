//! Potential-energy surfaces and position densities for plotting.

use std::io::Write;

use crate::error::{Error, Result};
use crate::fock::FockState;
use crate::grid::{axis, fmt, Grid2D};

/// `V(x, t) = εx⁴/4 − xF cos ωt`; the drive term vanishes for `F = 0`.
pub fn potential(epsilon: f64, force: f64, omega: f64, x: f64, t: f64) -> f64 {
    0.25 * epsilon * x.powi(4) - x * force * (omega * t).cos()
}

/// Sampling window of a potential surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileWindow {
    pub x_extent: f64,
    pub nx: usize,
    pub t_max: f64,
    pub nt: usize,
}

impl Default for ProfileWindow {
    fn default() -> Self {
        Self {
            x_extent: 3.0,
            nx: 121,
            t_max: 10.0,
            nt: 101,
        }
    }
}

impl ProfileWindow {
    fn validate(&self) -> Result<()> {
        if !(self.x_extent > 0.0 && self.t_max >= 0.0 && self.nx >= 2 && self.nt >= 1) {
            return Err(Error::InvalidConfig(format!("bad profile window {self:?}")));
        }
        Ok(())
    }
}

/// `V(x, t)` on `[−x_extent, x_extent] × [0, t_max]`.
pub fn potential_grid(
    epsilon: f64,
    force: f64,
    omega: f64,
    window: &ProfileWindow,
) -> Result<Grid2D> {
    window.validate()?;
    for (name, value) in [("epsilon", epsilon), ("force", force), ("omega", omega)] {
        if !value.is_finite() {
            return Err(Error::Domain {
                name,
                value,
                reason: "must be finite",
            });
        }
    }
    Grid2D::sample(
        (-window.x_extent, window.x_extent, window.nx),
        (0.0, window.t_max, window.nt),
        "t",
        |x, t| potential(epsilon, force, omega, x, t),
    )
}

/// `(x, |ψ(x)|²)` on a uniform grid over `[−x_extent, x_extent]`.
pub fn density_profile(state: &FockState, x_extent: f64, nx: usize) -> Vec<(f64, f64)> {
    axis(-x_extent, x_extent, nx)
        .into_iter()
        .map(|x| (x, state.wavefunction(x).norm_sqr()))
        .collect()
}

pub fn write_density<W: Write>(profile: &[(f64, f64)], mut out: W) -> Result<()> {
    writeln!(out, "# x density")?;
    for (x, d) in profile {
        writeln!(out, "{} {}", fmt(*x), fmt(*d))?;
    }
    Ok(())
}
