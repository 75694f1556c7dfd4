//! Sweep configuration, loadable from JSON with every field optional.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Grid size for boundary certificates.
    pub grid_size: usize,
    /// Base seed; case `i` derives its own stream from it.
    pub seed: u64,
    /// Relative margin tolerance override for both sweeps; `null` keeps the
    /// per-sweep defaults. Zero demands margins at the rounding floor.
    pub tol: Option<f64>,
    pub scalar_cases: usize,
    pub scalar_max_degree: usize,
    pub matrix_cases: usize,
    pub matrix_dims: Vec<usize>,
    pub matrix_max_degree: usize,
    pub matrix_max_factors: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid_size: 4096,
            seed: 20260813,
            tol: None,
            scalar_cases: 1000,
            scalar_max_degree: 32,
            matrix_cases: 200,
            matrix_dims: vec![2, 3],
            matrix_max_degree: 6,
            matrix_max_factors: 4,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::BadFile(format!("{}: {e}", path.display())))?;
        let config: RunConfig = serde_json::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.grid_size.is_power_of_two() || self.grid_size < 2 {
            return Err(Error::BadFile(format!(
                "grid_size {} must be a power of two",
                self.grid_size
            )));
        }
        if self.scalar_max_degree == 0 || self.scalar_max_degree > 64 {
            return Err(Error::BadFile("scalar_max_degree must be in 1..=64".into()));
        }
        if self.matrix_cases > 0 {
            if self.matrix_dims.is_empty() {
                return Err(Error::BadFile("matrix_dims must not be empty".into()));
            }
            for &d in &self.matrix_dims {
                if d == 0 || d > 8 {
                    return Err(Error::BadFile(format!("matrix dim {d} out of 1..=8")));
                }
            }
            if self.matrix_max_degree == 0 || self.matrix_max_degree > 8 {
                return Err(Error::BadFile("matrix_max_degree must be in 1..=8".into()));
            }
            if self.matrix_max_factors > 8 {
                return Err(Error::BadFile("matrix_max_factors must be <= 8".into()));
            }
        }
        if let Some(tol) = self.tol {
            if !tol.is_finite() || tol < 0.0 {
                return Err(Error::BadFile("tol must be finite and >= 0".into()));
            }
        }
        Ok(())
    }
}
