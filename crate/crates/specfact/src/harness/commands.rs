//! Command implementations behind the `specfact` binary.
//!
//! Exit codes: 0 success/pass, 1 usage or parse problems, 2 numeric failure
//! (failed verdicts, non-convergence), 3 inputs that are not comparable.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use nalgebra::DMatrix;

use crate::energy::{
    energy_curve, matrix_energy_curve, scalar_gain_defect, verify_energy_delay,
    verify_matrix_energy_delay, DelayReport, EnergyCurve, MATRIX_MARGIN_SCALE, SCALAR_MARGIN_SCALE,
};
use crate::error::{Error, Result};
use crate::grid::{default_grid_for, MatrixSamples};
use crate::matfact::{
    factorization_residual, inner_certificate, inner_quotient_matrix, outer_certificate,
    para_hermitian_product, spectral_factor_outer,
};
use crate::scalar::{inner_quotient, minimum_phase_equivalent, optimality_gap};
use crate::EQUAL_GAIN_TOL;

use super::config::RunConfig;
use super::format::{FilterFile, FilterKind};
use super::sweep::run_sweep;

#[derive(Debug, Parser)]
#[command(
    name = "specfact",
    version,
    about = "Outer factors, inner quotients and energy delay checks for FIR filters"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Replace a filter by its minimum-phase (outer) equivalent
    Minphase {
        /// Input filter file (JSON)
        input: PathBuf,
        /// Grid size for boundary certificates (power of two)
        #[arg(long)]
        grid: Option<usize>,
        /// Write the outer filter here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the partial-energy curve of a filter
    Energy {
        /// Input filter file (JSON)
        input: PathBuf,
        /// Write the curve as CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the energy delay theorem for an equal-gain pair
    Verify {
        /// Minimum-phase reference filter
        reference: PathBuf,
        /// Equal-gain challenger
        challenger: PathBuf,
        /// Relative margin tolerance (default 1e-8 scalar, 1e-6 matrix)
        #[arg(long)]
        tol: Option<f64>,
        /// Grid size for the gain comparison (power of two)
        #[arg(long)]
        grid: Option<usize>,
        /// Write the margin table as CSV here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify the boundary quotient challenger/reference as inner
    Quotient {
        /// Minimum-phase (outer) reference filter
        reference: PathBuf,
        /// Equal-gain challenger
        challenger: PathBuf,
        /// Grid size for the quotient samples (power of two)
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Run the seeded theorem sweeps and print a JSON summary
    Sweep {
        /// JSON config file; missing fields take their defaults
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the base seed
        #[arg(long)]
        seed: Option<u64>,
        /// Override the relative margin tolerance for both sweeps
        #[arg(long)]
        tol: Option<f64>,
        /// Override the certificate grid size (power of two)
        #[arg(long)]
        grid: Option<usize>,
        /// Restrict matrix cases to a single dimension
        #[arg(long)]
        dim: Option<usize>,
        /// Directory to write summary.json into
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Dispatches a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Minphase { input, grid, out } => cmd_minphase(&input, grid, out.as_deref()),
        Command::Energy { input, out } => cmd_energy(&input, out.as_deref()),
        Command::Verify {
            reference,
            challenger,
            tol,
            grid,
            out,
        } => cmd_verify(&reference, &challenger, tol, grid, out.as_deref()),
        Command::Quotient {
            reference,
            challenger,
            grid,
        } => cmd_quotient(&reference, &challenger, grid),
        Command::Sweep {
            config,
            seed,
            tol,
            grid,
            dim,
            out,
        } => cmd_sweep(config.as_deref(), seed, tol, grid, dim, out.as_deref()),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn load(path: &Path) -> Result<(FilterFile, FilterKind)> {
    let file = FilterFile::read(path)?;
    let kind = file.kind()?;
    Ok((file, kind))
}

fn describe(file: &FilterFile) -> String {
    let label = file
        .label
        .as_deref()
        .map(|l| format!(" ({l})"))
        .unwrap_or_default();
    format!("dim {}, {} taps{label}", file.dim, file.tap_count())
}

fn matrix_grid(deg: usize) -> usize {
    (2 * deg + 3).next_power_of_two().max(256)
}

fn cmd_minphase(input: &Path, grid: Option<usize>, out: Option<&Path>) -> Result<i32> {
    let (file, kind) = load(input)?;
    println!("input: {}", describe(&file));
    match kind {
        FilterKind::Scalar(p) => {
            let q = minimum_phase_equivalent(&p)?;
            let m = grid.unwrap_or_else(|| default_grid_for(q.degree().unwrap_or(0)));
            let gap = optimality_gap(&q, m)?;
            println!("minimum-phase equivalent: {q}");
            println!(
                "optimality: |q(0)| = {:.12e}, geometric mean gain = {:.12e} (gap {:.3e})",
                gap.value_at_zero,
                gap.geometric_mean_gain,
                gap.gap()
            );
            if let Some(path) = out {
                FilterFile::from_poly(&q, file.label.clone()).write(path)?;
                println!("wrote {}", path.display());
            }
        }
        FilterKind::Matrix(a) => {
            let deg = a.degree().ok_or(Error::ZeroPolynomial)?;
            let m = grid.unwrap_or_else(|| matrix_grid(deg));
            let s = para_hermitian_product(&a, m)?;
            let f = spectral_factor_outer(&s, deg)?;
            let residual = factorization_residual(&f, &s)?;
            let cert = outer_certificate(&f, &s)?;
            println!("outer spectral factor of A A^H: degree {deg}, residual {residual:.3e}");
            println!(
                "outer certificate: |det F(0)| = {:.12e}, geometric mean = {:.12e} (gap {:.3e})",
                cert.det_at_origin,
                cert.geometric_mean,
                cert.gap()
            );
            if let Some(path) = out {
                FilterFile::from_matrix_poly(&f, file.label.clone()).write(path)?;
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(0)
}

fn write_energy_csv(curve: &EnergyCurve, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "N,E")?;
    for (n, e) in curve.partials().iter().enumerate() {
        writeln!(w, "{n},{e}")?;
    }
    Ok(())
}

fn cmd_energy(input: &Path, out: Option<&Path>) -> Result<i32> {
    let (file, kind) = load(input)?;
    let curve = match kind {
        FilterKind::Scalar(p) => energy_curve(&p),
        FilterKind::Matrix(m) => matrix_energy_curve(&m),
    };
    println!("input: {}", describe(&file));
    match out {
        Some(path) => {
            let mut buf = Vec::new();
            write_energy_csv(&curve, &mut buf)?;
            fs::write(path, buf)?;
            println!("wrote {}", path.display());
        }
        None => write_energy_csv(&curve, std::io::stdout().lock())?,
    }
    Ok(0)
}

fn margin_csv(report: &DelayReport) -> String {
    let mut s = String::from("N,E_f,E_g,margin\n");
    let len = report.curve_f.len().max(report.curve_g.len()).max(1);
    for n in 0..len {
        let ef = report.curve_f.value_at(n);
        let eg = report.curve_g.value_at(n);
        s.push_str(&format!("{n},{ef},{eg},{}\n", ef - eg));
    }
    s
}

fn cmd_verify(
    reference: &Path,
    challenger: &Path,
    tol: Option<f64>,
    grid: Option<usize>,
    out: Option<&Path>,
) -> Result<i32> {
    let (f_file, f_kind) = load(reference)?;
    let (g_file, g_kind) = load(challenger)?;
    println!("reference:  {}", describe(&f_file));
    println!("challenger: {}", describe(&g_file));

    let report = match (f_kind, g_kind) {
        (FilterKind::Scalar(f), FilterKind::Scalar(g)) => {
            if let Some(m) = grid {
                // Early gain check on the requested grid so resolution
                // problems surface as grid errors, not spurious verdicts.
                let defect = scalar_gain_defect(&f, &g, m)?;
                if defect > EQUAL_GAIN_TOL {
                    return Err(Error::NotComparable {
                        defect,
                        tol: EQUAL_GAIN_TOL,
                    });
                }
            }
            let total = energy_curve(&f).total();
            let tol_abs = tol.unwrap_or(SCALAR_MARGIN_SCALE) * total;
            verify_energy_delay(&f, &g, tol_abs)?
        }
        (FilterKind::Matrix(f), FilterKind::Matrix(g)) => {
            let total = matrix_energy_curve(&f).total();
            let tol_abs = tol.unwrap_or(MATRIX_MARGIN_SCALE) * total;
            verify_matrix_energy_delay(&f, &g, tol_abs)?
        }
        _ => {
            return Err(Error::NotComparable {
                defect: f64::INFINITY,
                tol: EQUAL_GAIN_TOL,
            })
        }
    };

    let csv = margin_csv(&report);
    match out {
        Some(path) => {
            fs::write(path, &csv)?;
            println!("wrote {}", path.display());
        }
        None => print!("{csv}"),
    }
    println!(
        "min margin = {:.6e} (tolerance {:.1e}), total gap = {:.3e}",
        report.min_margin, report.tol, report.total_gap
    );
    if report.passed() {
        println!("verdict: PASS");
        Ok(0)
    } else {
        println!("verdict: FAIL");
        Ok(2)
    }
}

fn cmd_quotient(reference: &Path, challenger: &Path, grid: Option<usize>) -> Result<i32> {
    let (f_file, f_kind) = load(reference)?;
    let (g_file, g_kind) = load(challenger)?;
    println!("reference:  {}", describe(&f_file));
    println!("challenger: {}", describe(&g_file));

    let cert = match (f_kind, g_kind) {
        (FilterKind::Scalar(f), FilterKind::Scalar(g)) => {
            let deg = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0));
            let m = grid.unwrap_or_else(|| default_grid_for(deg));
            let u = inner_quotient(&g, &f, m)?;
            let wrapped = MatrixSamples::new(
                u.values()
                    .iter()
                    .map(|&v| DMatrix::from_element(1, 1, v))
                    .collect(),
            )?;
            inner_certificate(&wrapped)
        }
        (FilterKind::Matrix(f), FilterKind::Matrix(g)) => {
            let deg = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0));
            let m = grid.unwrap_or_else(|| matrix_grid(deg));
            let (_, cert) = inner_quotient_matrix(&f, &g, m)?;
            cert
        }
        _ => {
            return Err(Error::NotComparable {
                defect: f64::INFINITY,
                tol: EQUAL_GAIN_TOL,
            })
        }
    };

    println!(
        "unitarity defect = {:.3e}, analytic defect = {:.3e}",
        cert.max_unitarity_defect, cert.analytic_defect
    );
    if cert.passes() {
        println!("quotient is inner: PASS");
        Ok(0)
    } else {
        println!("quotient is inner: FAIL");
        Ok(2)
    }
}

fn cmd_sweep(
    config_path: Option<&Path>,
    seed: Option<u64>,
    tol: Option<f64>,
    grid: Option<usize>,
    dim: Option<usize>,
    out: Option<&Path>,
) -> Result<i32> {
    let mut config = match config_path {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(s) = seed {
        config.seed = s;
    }
    if let Some(t) = tol {
        config.tol = Some(t);
    }
    if let Some(g) = grid {
        config.grid_size = g;
    }
    if let Some(d) = dim {
        config.matrix_dims = vec![d];
    }
    config.validate()?;

    let summary = run_sweep(&config);
    let json = serde_json::to_string_pretty(&summary)?;
    println!("{json}");
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        let path = dir.join("summary.json");
        fs::write(&path, format!("{json}\n"))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(if summary.all_passed() { 0 } else { 2 })
}
