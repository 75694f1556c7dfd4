//! On-disk filter format: a JSON object with the matrix dimension, an
//! optional label, and the coefficient taps as `[re, im]` pairs.
//!
//! For `dim = d`, tap `n` occupies the `d*d` row-major entries starting at
//! `n * d * d`, so scalar filters are simply the coefficient list.

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matpoly::MatrixPoly;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub coeffs: Vec<[f64; 2]>,
}

/// A parsed filter: scalar polynomials keep their own type so the scalar
/// pipeline stays exact.
#[derive(Debug, Clone, PartialEq)]
pub enum FilterKind {
    Scalar(Poly),
    Matrix(MatrixPoly),
}

impl FilterFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: FilterFile = serde_json::from_str(text)?;
        file.validate()?;
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::BadFile(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical serialization: pretty JSON plus a trailing newline. Parsing
    /// and re-serializing a canonical file reproduces it byte for byte.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_canonical_string())
            .map_err(|e| Error::BadFile(format!("{}: {e}", path.display())))
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::BadFile("dim must be at least 1".into()));
        }
        let block = self.dim * self.dim;
        if !self.coeffs.len().is_multiple_of(block) {
            return Err(Error::BadFile(format!(
                "coefficient count {} is not a multiple of dim^2 = {block}",
                self.coeffs.len()
            )));
        }
        for (i, [re, im]) in self.coeffs.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::BadFile(format!("non-finite entry at index {i}")));
            }
        }
        Ok(())
    }

    /// Number of polynomial taps stored.
    pub fn tap_count(&self) -> usize {
        self.coeffs.len() / (self.dim * self.dim)
    }

    pub fn kind(&self) -> Result<FilterKind> {
        self.validate()?;
        let d = self.dim;
        let entries: Vec<Complex64> = self
            .coeffs
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        if d == 1 {
            return Ok(FilterKind::Scalar(Poly::new(entries)));
        }
        let taps = self.tap_count();
        let coeffs: Vec<DMatrix<Complex64>> = (0..taps)
            .map(|n| DMatrix::from_fn(d, d, |r, c| entries[n * d * d + r * d + c]))
            .collect();
        Ok(FilterKind::Matrix(MatrixPoly::new(d, coeffs)?))
    }

    pub fn from_poly(p: &Poly, label: Option<String>) -> Self {
        Self {
            dim: 1,
            label,
            coeffs: p.coeffs().iter().map(|c| [c.re, c.im]).collect(),
        }
    }

    pub fn from_matrix_poly(m: &MatrixPoly, label: Option<String>) -> Self {
        let d = m.dim();
        let mut coeffs = Vec::new();
        for a in m.coeffs() {
            for r in 0..d {
                for c in 0..d {
                    let v = a[(r, c)];
                    coeffs.push([v.re, v.im]);
                }
            }
        }
        Self {
            dim: d,
            label,
            coeffs,
        }
    }
}
