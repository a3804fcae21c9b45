mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Grid, Point, ZoneRange};

/// Zeeman zones, propagator kernels, path measures and Pauli-Dirac spinors.
///
/// Outputs go to `--out-dir` (or $ZONEKIT_OUT_DIR, or the `out_dir` config
/// key, or the current directory). Exit status: 0 success, 1 failed check,
/// 2 usage or validation error.
#[derive(Parser, Debug)]
#[command(name = "zonekit", version)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Common {
    /// key=value file; flags override its entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Magnetic coupling λ > 0 [default: 1].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Even real dimension of X-space [default: 2].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k: Option<i64>,
    /// `negative` (J) or `positive` (-J) [default: negative].
    #[arg(long, global = true)]
    pub charge: Option<String>,
    /// Quadrature nodes per axis.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    #[arg(long, global = true, env = "ZONEKIT_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    /// Disable the thread pool.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a global or zonal kernel on X×Y along the first real axis.
    Kernel(KernelArgs),
    /// Zeeman eigenvalues per zone, closed form against the zone basis.
    Spectrum(SpectrumArgs),
    /// Dump a zone kernel and optionally its orthonormal basis.
    Zones(ZonesArgs),
    /// Spectral evolution of a zone function.
    Evolve(EvolveArgs),
    /// Thermodynamic curves and period scans.
    Thermo(ThermoArgs),
    /// Sliced Feynman-Kac reconstruction against the closed form.
    Path(PathArgs),
    /// Pauli-Dirac eigenspinors and anomalous kernels.
    Padi(PadiArgs),
    /// Galerkin spectrum of the Zeeman-Coulomb operator.
    Coulomb(CoulombArgs),
    /// Clifford module dimensions and irreducible counts.
    Clifford(CliffordArgs),
    /// Run invariant checks and emit a JSON report.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    /// `1` (Wiener-Kac) or `i` (Dirac-Feynman).
    #[arg(long)]
    pub sigma: Option<String>,
    /// Zone index [default: 0].
    #[arg(long)]
    pub a: Option<usize>,
    /// Evaluate the global kernel instead of a zonal one.
    #[arg(long)]
    pub global: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// lo:hi:step along the first real coordinate [default: -1:1:0.25].
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// `a..b`, `a..=b` or `a` [default: 0..3].
    #[arg(long)]
    pub zones: Option<ZoneRange>,
    #[arg(long)]
    pub pmax: Option<u32>,
    #[arg(long)]
    pub no_field_term: bool,
}

#[derive(Args, Debug)]
pub struct ZonesArgs {
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
    /// Also write the first N basis polynomials as JSON.
    #[arg(long)]
    pub basis: Option<usize>,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[arg(long)]
    pub sigma: Option<String>,
    #[arg(long)]
    pub a: Option<usize>,
    /// Holomorphic degree of the basis element to evolve [default: 0].
    #[arg(long)]
    pub p: Option<u32>,
    /// Polynomial JSON (one entry of `zones_basis.json`) instead of a basis element.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub times: Option<Grid>,
}

#[derive(Args, Debug)]
pub struct ThermoArgs {
    /// energy, specific-heat, partition-scan, diagonal-scan, energy-scan,
    /// tension-scan, extrema-partition, extrema-diagonal.
    #[arg(long)]
    pub curve: Option<String>,
    #[arg(long)]
    pub sigma: Option<String>,
    #[arg(long)]
    pub a: Option<usize>,
    /// [default: 2π/λ]
    #[arg(long)]
    pub kappa: Option<f64>,
    /// [default: 1]
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub temps: Option<Grid>,
    /// Samples per period for scans and extrema.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<Point>,
}

#[derive(Args, Debug)]
pub struct PathArgs {
    #[arg(long)]
    pub sigma: Option<String>,
    #[arg(long)]
    pub a: Option<usize>,
    /// Horizon T.
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Largest number of interior slices; rows are written for 1..=n.
    #[arg(long)]
    pub n_slices: Option<usize>,
    /// `quadrature` or `mc`.
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<Point>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<Point>,
}

#[derive(Args, Debug)]
pub struct PadiArgs {
    /// `z` or `zf`.
    #[arg(long)]
    pub variant: Option<String>,
    #[arg(long)]
    pub zones: Option<ZoneRange>,
    #[arg(long)]
    pub pmax: Option<u32>,
    /// Also dump anomalous kernel components along this grid.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
}

#[derive(Args, Debug)]
pub struct CoulombArgs {
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    #[arg(long)]
    pub basis: Option<usize>,
    /// Use the full polynomial space up to --max-degree instead of one zone.
    #[arg(long)]
    pub unprojected: bool,
    #[arg(long)]
    pub max_degree: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CliffordArgs {
    #[arg(long)]
    pub rmax: Option<u32>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Module suite or `all`.
    #[arg(long)]
    pub suite: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
