//! Uniformly sampled 2D grids and their plot-ready text format.
//!
//! ```text
//! # x_min x_max p_min p_max nx np
//! # -6 6 -6 6 601 601
//! x p W
//! ...
//! ```
//!
//! Samples are written row-major in `x`, one `x y value` triple per line,
//! with a blank line after each `x` row so gnuplot-style tools read it as a
//! surface.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    /// Name of the second axis in the header (`p` or `t`).
    pub y_name: String,
    /// `values[i * ny + j]` is the sample at `(x_i, y_j)`.
    pub values: Vec<f64>,
}

impl Grid2D {
    pub fn new(
        (x_min, x_max, nx): (f64, f64, usize),
        (y_min, y_max, ny): (f64, f64, usize),
        y_name: &str,
        values: Vec<f64>,
    ) -> Result<Self> {
        if nx == 0 || ny == 0 || values.len() != nx * ny {
            return Err(Error::InvalidConfig(format!(
                "grid of {nx}x{ny} samples cannot hold {} values",
                values.len()
            )));
        }
        if !(x_min <= x_max && y_min <= y_max) {
            return Err(Error::InvalidConfig("grid bounds are not ordered".into()));
        }
        Ok(Self {
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
            y_name: y_name.to_owned(),
            values,
        })
    }

    /// Evaluates `f(x_i, y_j)` over the grid, one row per `x` in parallel.
    pub fn sample<F>(
        x_axis: (f64, f64, usize),
        y_axis: (f64, f64, usize),
        y_name: &str,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(f64, f64) -> f64 + Sync,
    {
        use rayon::prelude::*;
        let xs = axis(x_axis.0, x_axis.1, x_axis.2);
        let ys = axis(y_axis.0, y_axis.1, y_axis.2);
        let rows: Vec<Vec<f64>> = xs
            .par_iter()
            .map(|&x| ys.iter().map(|&y| f(x, y)).collect())
            .collect();
        Self::new(x_axis, y_axis, y_name, rows.concat())
    }

    pub fn dx(&self) -> f64 {
        spacing(self.x_min, self.x_max, self.nx)
    }

    pub fn dy(&self) -> f64 {
        spacing(self.y_min, self.y_max, self.ny)
    }

    pub fn x(&self, i: usize) -> f64 {
        coordinate(self.x_min, self.x_max, self.nx, i)
    }

    pub fn y(&self, j: usize) -> f64 {
        coordinate(self.y_min, self.y_max, self.ny, j)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ny + j]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn abs_max(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn cell(&self) -> f64 {
        self.dx() * self.dy()
    }

    /// Riemann sum `Σ v ΔxΔy`.
    pub fn integral(&self) -> f64 {
        compensated_sum(self.values.iter().copied()) * self.cell()
    }

    /// Riemann sum `Σ |v| ΔxΔy`.
    pub fn abs_integral(&self) -> f64 {
        compensated_sum(self.values.iter().map(|v| v.abs())) * self.cell()
    }

    /// Riemann sum of the negative part, `Σ max(−v, 0) ΔxΔy`.
    pub fn negative_mass(&self) -> f64 {
        compensated_sum(self.values.iter().map(|v| (-v).max(0.0))) * self.cell()
    }

    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        let y = &self.y_name;
        writeln!(out, "# x_min x_max {y}_min {y}_max nx n{y}")?;
        writeln!(
            out,
            "# {} {} {} {} {} {}",
            fmt(self.x_min),
            fmt(self.x_max),
            fmt(self.y_min),
            fmt(self.y_max),
            self.nx,
            self.ny
        )?;
        for i in 0..self.nx {
            let x = fmt(self.x(i));
            for j in 0..self.ny {
                writeln!(out, "{x} {} {}", fmt(self.y(j)), fmt(self.get(i, j)))?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let mut next_line = || -> Result<String> {
            lines
                .next()
                .transpose()?
                .ok_or_else(|| Error::Parse("unexpected end of grid file".into()))
        };
        let label = next_line()?;
        let y_name = label
            .split_whitespace()
            .nth(3)
            .and_then(|s| s.strip_suffix("_min"))
            .ok_or_else(|| Error::Parse(format!("bad grid header: {label}")))?
            .to_owned();
        let extent = next_line()?;
        let fields: Vec<&str> = extent.trim_start_matches('#').split_whitespace().collect();
        if fields.len() != 6 {
            return Err(Error::Parse(format!("bad grid extent line: {extent}")));
        }
        let float = |s: &str| {
            s.parse::<f64>()
                .map_err(|e| Error::Parse(format!("{s}: {e}")))
        };
        let count = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| Error::Parse(format!("{s}: {e}")))
        };
        let (nx, ny) = (count(fields[4])?, count(fields[5])?);
        let mut values = Vec::with_capacity(nx * ny);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let v = line
                .split_whitespace()
                .nth(2)
                .ok_or_else(|| Error::Parse(format!("bad sample line: {line}")))?;
            values.push(float(v)?);
        }
        Self::new(
            (float(fields[0])?, float(fields[1])?, nx),
            (float(fields[2])?, float(fields[3])?, ny),
            &y_name,
            values,
        )
    }
}

fn spacing(lo: f64, hi: f64, n: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        (hi - lo) / (n - 1) as f64
    }
}

fn coordinate(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    if n < 2 {
        lo
    } else if i + 1 == n {
        hi
    } else {
        lo + (hi - lo) * (i as f64 / (n - 1) as f64)
    }
}

pub(crate) fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| coordinate(lo, hi, n, i)).collect()
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// Neumaier-compensated sum in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}
