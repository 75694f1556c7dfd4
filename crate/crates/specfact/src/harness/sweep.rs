//! Seeded theorem sweeps: scalar and matrix equal-gain pairs are generated
//! deterministically from the base seed, verified against the energy delay
//! theorem, and the matrix cases additionally certified through their
//! factorization residual and inner quotient.

use serde::Serialize;

use crate::energy::{
    energy_curve, generate_equal_gain_pair, matrix_energy_curve, verify_energy_delay,
    verify_matrix_energy_delay, MATRIX_MARGIN_SCALE, SCALAR_MARGIN_SCALE,
};
use crate::matfact::{generate_matrix_pair_case, inner_quotient_matrix, RESIDUAL_TOL};

use super::config::RunConfig;

/// Machine-readable sweep outcome; serialized as the JSON summary.
#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    /// Total cases attempted across both sweeps.
    pub cases: usize,
    /// Cases whose verdicts and certificates all passed.
    pub passes: usize,
    /// Worst over all cases of the smallest margin relative to the total
    /// energy of the reference.
    pub min_margin_worst: f64,
    /// Largest relative factorization residual over the matrix cases.
    pub max_residual: f64,
    /// Base seed the sweep derived its cases from.
    pub seed: u64,
    /// Human-readable descriptions of every failing case.
    pub failures: Vec<String>,
}

impl SweepSummary {
    pub fn all_passed(&self) -> bool {
        self.passes == self.cases
    }
}

/// Runs the configured sweeps. Infallible by design: generation or
/// verification errors are recorded as failing cases, not propagated.
pub fn run_sweep(config: &RunConfig) -> SweepSummary {
    let mut summary = SweepSummary {
        cases: 0,
        passes: 0,
        min_margin_worst: f64::INFINITY,
        max_residual: 0.0,
        seed: config.seed,
        failures: Vec::new(),
    };

    let scalar_tol = config.tol.unwrap_or(SCALAR_MARGIN_SCALE);
    for i in 0..config.scalar_cases {
        summary.cases += 1;
        let seed = config.seed.wrapping_add(i as u64);
        let degree = 1 + i % config.scalar_max_degree;
        let (f, g) = generate_equal_gain_pair(seed, degree);
        let total = energy_curve(&f).total();
        match verify_energy_delay(&f, &g, scalar_tol * total) {
            Ok(report) => {
                summary.min_margin_worst = summary.min_margin_worst.min(report.min_margin / total);
                if report.passed() {
                    summary.passes += 1;
                } else {
                    summary.failures.push(format!(
                        "scalar case {i} (seed {seed}, degree {degree}): margin {:.3e}",
                        report.min_margin
                    ));
                }
            }
            Err(e) => summary.failures.push(format!(
                "scalar case {i} (seed {seed}, degree {degree}): {e}"
            )),
        }
    }

    let matrix_tol = config.tol.unwrap_or(MATRIX_MARGIN_SCALE);
    for i in 0..config.matrix_cases {
        summary.cases += 1;
        let seed = config.seed.wrapping_add(1_000_000).wrapping_add(i as u64);
        let dim = config.matrix_dims[i % config.matrix_dims.len()];
        let degree = 1 + i % config.matrix_max_degree;
        let n_factors = if config.matrix_max_factors == 0 {
            0
        } else {
            1 + i % config.matrix_max_factors
        };
        let label = format!("matrix case {i} (seed {seed}, dim {dim}, degree {degree})");
        let case = match generate_matrix_pair_case(seed, dim, degree, n_factors) {
            Ok(case) => case,
            Err(e) => {
                summary.failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        summary.max_residual = summary.max_residual.max(case.residual);

        let total = matrix_energy_curve(&case.f).total();
        let report = match verify_matrix_energy_delay(&case.f, &case.g, matrix_tol * total) {
            Ok(report) => report,
            Err(e) => {
                summary.failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        summary.min_margin_worst = summary.min_margin_worst.min(report.min_margin / total);

        let cert_grid = config
            .grid_size
            .max((2 * (degree + n_factors) + 3).next_power_of_two());
        let cert = match inner_quotient_matrix(&case.f, &case.g, cert_grid) {
            Ok((_, cert)) => cert,
            Err(e) => {
                summary.failures.push(format!("{label}: {e}"));
                continue;
            }
        };

        if !report.passed() {
            summary
                .failures
                .push(format!("{label}: margin {:.3e}", report.min_margin));
        } else if case.residual > RESIDUAL_TOL {
            summary
                .failures
                .push(format!("{label}: residual {:.3e}", case.residual));
        } else if !cert.passes() {
            summary.failures.push(format!(
                "{label}: quotient defects {:.3e} / {:.3e}",
                cert.max_unitarity_defect, cert.analytic_defect
            ));
        } else {
            summary.passes += 1;
        }
    }

    if !summary.min_margin_worst.is_finite() {
        summary.min_margin_worst = 0.0;
    }
    summary
}
