//! Command-line front end.
//!
//! Every command computes its result in memory first and then writes the
//! artifact to a temporary file next to the destination, renaming it into
//! place only on success.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::{fit_sqrt_linear_model, fit_sqrt_model, FitResult};
use crate::fock::{FockState, DEFAULT_DIM};
use crate::grid::fmt;
use crate::hamiltonian::{ground_state_numeric, DuffingParams};
use crate::perturbative::{driven_ground_state, ground_state_perturbative};
use crate::profile::{density_profile, potential_grid, write_density, ProfileWindow};
use crate::records;
use crate::sweep::{
    fidelity_sweep, sweep_driven, sweep_undriven, EpsilonGrid, GroundStateSource, MeasureRecord,
};
use crate::wigner::{
    negative_volume_of, nonclassicality_from_volume, wigner_grid, QuadratureConfig,
};

/// Relative output paths are resolved against this directory when set.
pub const OUT_DIR_ENV: &str = "DUFFING_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "duffing",
    version,
    about = "Nonlinearity and Wigner negativity of the quantum Duffing oscillator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Measures along an anharmonicity sweep of the undriven ground state.
    SweepUndriven {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        quad: QuadArgs,
        /// Ground state the measures are evaluated on.
        #[arg(long, value_enum, default_value_t = Source::Perturbative)]
        source: Source,
        #[command(flatten)]
        output: RecordOutput,
    },
    /// Measures along an anharmonicity sweep of the driven ground state.
    SweepDriven {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        drive: DriveArgs,
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        output: RecordOutput,
    },
    /// Wigner function of a ground state on a phase-space grid.
    Wigner {
        #[arg(long)]
        epsilon: f64,
        /// Use the driven ground state with the drive parameters below.
        #[arg(long)]
        driven: bool,
        #[command(flatten)]
        drive: DriveArgs,
        /// Use the numerically diagonalized ground state (undriven only).
        #[arg(long, conflicts_with = "driven")]
        numeric: bool,
        #[arg(long, default_value_t = DEFAULT_DIM)]
        dim: usize,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fidelity between perturbative and numerical ground states.
    Fidelity {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Optional CSV with columns `epsilon,fidelity`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fits `η_B = a + b√η_NG` and `η_NG = c₀ + c₁√ν + c₂ν`.
    Fit {
        /// Sweep records (CSV or JSON) to fit; computed afresh when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        quad: QuadArgs,
        /// Optional JSON file receiving both fits.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Potential surface `V(x, t)` and optionally the ground-state density.
    Potential {
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.0)]
        force: f64,
        #[arg(long, default_value_t = 1.018)]
        omega: f64,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 101)]
        nt: usize,
        #[arg(long, default_value_t = 3.0)]
        x_extent: f64,
        #[arg(long, default_value_t = 121)]
        nx: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also write `|ψ₀(x)|²`; driven when `--force` is positive, at `--time`.
        #[arg(long)]
        density_out: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        time: f64,
        #[arg(long, default_value_t = DEFAULT_DIM)]
        dim: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.0)]
    pub eps_min: f64,
    #[arg(long, default_value_t = 0.8)]
    pub eps_max: f64,
    #[arg(long, default_value_t = 81)]
    pub steps: usize,
    #[arg(long, default_value_t = DEFAULT_DIM)]
    pub dim: usize,
}

impl SweepArgs {
    fn grid(&self) -> Result<EpsilonGrid> {
        EpsilonGrid::new(self.eps_min, self.eps_max, self.steps)
    }
}

#[derive(Debug, Clone, Args)]
pub struct DriveArgs {
    #[arg(long, default_value_t = 0.015)]
    pub force: f64,
    #[arg(long, default_value_t = 1.018)]
    pub omega: f64,
    #[arg(long, default_value_t = 1.0)]
    pub time: f64,
}

#[derive(Debug, Clone, Args)]
pub struct QuadArgs {
    /// Half-width of the phase-space window.
    #[arg(long, default_value_t = 6.0)]
    pub extent: f64,
    /// Grid spacing.
    #[arg(long, default_value_t = 0.02)]
    pub step: f64,
    /// Check the negative volume once more at half step and double extent.
    #[arg(long)]
    pub refine: bool,
}

impl From<&QuadArgs> for QuadratureConfig {
    fn from(q: &QuadArgs) -> Self {
        Self {
            extent: q.extent,
            step: q.step,
            refine: q.refine,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RecordOutput {
    #[arg(long)]
    pub out: PathBuf,
    /// Defaults to JSON for a `.json` path, CSV otherwise.
    #[arg(long, value_enum)]
    pub format: Option<RecordFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RecordFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Perturbative,
    Numeric,
}

impl From<Source> for GroundStateSource {
    fn from(s: Source) -> Self {
        match s {
            Source::Perturbative => GroundStateSource::Perturbative,
            Source::Numeric => GroundStateSource::Numeric,
        }
    }
}

fn format_for(path: &Path, explicit: Option<RecordFormat>) -> RecordFormat {
    explicit.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => RecordFormat::Json,
        _ => RecordFormat::Csv,
    })
}

/// Applies [`OUT_DIR_ENV`] to relative paths.
pub fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() && !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Writes through a sibling temporary file and renames it over `path`.
pub fn write_atomic<F>(path: &Path, write: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut out = BufWriter::new(tmp.as_file_mut());
        write(&mut out)?;
        out.flush()?;
    }
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn write_records(records: &[MeasureRecord], output: &RecordOutput) -> Result<PathBuf> {
    let path = resolve_output(&output.out);
    match format_for(&path, output.format) {
        RecordFormat::Csv => write_atomic(&path, |w| records::write_csv(records, w))?,
        RecordFormat::Json => write_atomic(&path, |w| records::write_json(records, w))?,
    }
    Ok(path)
}

fn read_records(path: &Path) -> Result<Vec<MeasureRecord>> {
    let file = fs::File::open(path)?;
    match format_for(path, None) {
        RecordFormat::Csv => records::read_csv(file),
        RecordFormat::Json => records::read_json(file),
    }
}

#[derive(Debug, Serialize)]
struct FitReport {
    eta_b_vs_eta_ng: FitResult,
    eta_ng_vs_nu: FitResult,
    points: usize,
}

fn fit_records(records: &[MeasureRecord]) -> Result<FitReport> {
    let eta_b: Vec<f64> = records.iter().map(|r| r.eta_b).collect();
    let eta_ng: Vec<f64> = records.iter().map(|r| r.eta_ng).collect();
    let nu: Vec<f64> = records.iter().map(|r| r.nu).collect();
    Ok(FitReport {
        eta_b_vs_eta_ng: fit_sqrt_model(&eta_ng, &eta_b)?,
        eta_ng_vs_nu: fit_sqrt_linear_model(&nu, &eta_ng)?,
        points: records.len(),
    })
}

fn coefficient_list(fit: &FitResult) -> String {
    fit.coefficients
        .iter()
        .map(|c| format!("{c:.6}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn select_state(
    epsilon: f64,
    driven: bool,
    drive: &DriveArgs,
    numeric: bool,
    dim: usize,
) -> Result<FockState> {
    if driven {
        let params = DuffingParams::new(epsilon, drive.force, drive.omega, drive.time)?;
        Ok(driven_ground_state(&params, dim)?.state)
    } else if numeric {
        Ok(ground_state_numeric(epsilon, dim)?.0)
    } else {
        Ok(ground_state_perturbative(epsilon, dim)?.state)
    }
}

/// Executes one command and returns its one-line summary.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::SweepUndriven {
            sweep,
            quad,
            source,
            output,
        } => {
            let records =
                sweep_undriven(&sweep.grid()?, sweep.dim, &quad.into(), (*source).into())?;
            let path = write_records(&records, output)?;
            Ok(format!(
                "{} records written to {}",
                records.len(),
                path.display()
            ))
        }
        Command::SweepDriven {
            sweep,
            drive,
            quad,
            output,
        } => {
            let base = DuffingParams::new(sweep.eps_min, drive.force, drive.omega, drive.time)?;
            let records = sweep_driven(&base, &sweep.grid()?, sweep.dim, &quad.into())?;
            let path = write_records(&records, output)?;
            Ok(format!(
                "{} records written to {}",
                records.len(),
                path.display()
            ))
        }
        Command::Wigner {
            epsilon,
            driven,
            drive,
            numeric,
            dim,
            quad,
            out,
        } => {
            let state = select_state(*epsilon, *driven, drive, *numeric, *dim)?;
            let grid = wigner_grid(&state, &quad.into())?;
            let path = resolve_output(out);
            write_atomic(&path, |w| grid.write_text(w))?;
            let nu = nonclassicality_from_volume(negative_volume_of(&grid));
            Ok(format!(
                "{}x{} grid written to {}: min W = {:.6e}, max W = {:.6e}, mass = {:.8}, nu = {:.6e}",
                grid.nx,
                grid.ny,
                path.display(),
                grid.min(),
                grid.max(),
                grid.integral(),
                nu
            ))
        }
        Command::Fidelity { sweep, out } => {
            let points = fidelity_sweep(&sweep.grid()?, sweep.dim)?;
            let (eps_at_min, min) = points
                .iter()
                .copied()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("grid has at least two points");
            let mut summary = format!(
                "min fidelity = {min:.8} at epsilon = {eps_at_min} over {} points",
                points.len()
            );
            if let Some(out) = out {
                let path = resolve_output(out);
                write_atomic(&path, |w| {
                    writeln!(w, "epsilon,fidelity")?;
                    for (e, f) in &points {
                        writeln!(w, "{},{}", fmt(*e), fmt(*f))?;
                    }
                    Ok(())
                })?;
                summary.push_str(&format!(" (written to {})", path.display()));
            }
            Ok(summary)
        }
        Command::Fit {
            input,
            sweep,
            quad,
            out,
        } => {
            let records = match input {
                Some(path) => read_records(path)?,
                None => sweep_undriven(
                    &sweep.grid()?,
                    sweep.dim,
                    &quad.into(),
                    GroundStateSource::Perturbative,
                )?,
            };
            let report = fit_records(&records)?;
            if let Some(out) = out {
                let path = resolve_output(out);
                write_atomic(&path, |w| Ok(serde_json::to_writer_pretty(w, &report)?))?;
            }
            Ok(format!(
                "eta_b = a + b*sqrt(eta_ng): ({}) rms {:.2e}; eta_ng = c0 + c1*sqrt(nu) + c2*nu: ({}) rms {:.2e}; {} points",
                coefficient_list(&report.eta_b_vs_eta_ng),
                report.eta_b_vs_eta_ng.residual_rms,
                coefficient_list(&report.eta_ng_vs_nu),
                report.eta_ng_vs_nu.residual_rms,
                report.points
            ))
        }
        Command::Potential {
            epsilon,
            force,
            omega,
            t_max,
            nt,
            x_extent,
            nx,
            out,
            density_out,
            time,
            dim,
        } => {
            let window = ProfileWindow {
                x_extent: *x_extent,
                nx: *nx,
                t_max: *t_max,
                nt: *nt,
            };
            let grid = potential_grid(*epsilon, *force, *omega, &window)?;
            let density = match density_out {
                Some(_) => {
                    let drive = DriveArgs {
                        force: *force,
                        omega: *omega,
                        time: *time,
                    };
                    let state = select_state(*epsilon, *force > 0.0, &drive, false, *dim)?;
                    Some(density_profile(&state, *x_extent, *nx))
                }
                None => None,
            };
            let path = resolve_output(out);
            write_atomic(&path, |w| grid.write_text(w))?;
            let mut summary = format!(
                "{}x{} potential grid written to {}: V in [{:.6}, {:.6}]",
                grid.nx,
                grid.ny,
                path.display(),
                grid.min(),
                grid.max()
            );
            if let (Some(profile), Some(dout)) = (density, density_out) {
                let dpath = resolve_output(dout);
                write_atomic(&dpath, |w| write_density(&profile, w))?;
                summary.push_str(&format!("; density written to {}", dpath.display()));
            }
            Ok(summary)
        }
    }
}
