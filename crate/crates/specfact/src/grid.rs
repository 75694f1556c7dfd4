//! Uniform power-of-two grids on the unit circle and the FFT plumbing
//! shared by every module.
//!
//! Samples live at the nodes `theta_k = 2*pi*k / M`. A polynomial of degree
//! `n < M` is recovered exactly from its node values by one forward FFT, so
//! every boundary computation in the crate reduces to arithmetic on these
//! grids.

use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{Error, Result};

/// Values attached to the nodes of a uniform unit-circle grid.
///
/// The element type is generic: scalar boundary values, pointwise matrices
/// and nonnegative magnitude data all share the same node layout.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSamples<T> {
    values: Vec<T>,
}

pub type ScalarSamples = GridSamples<Complex64>;
pub type MatrixSamples = GridSamples<DMatrix<Complex64>>;

impl<T> GridSamples<T> {
    /// Wraps node values; the length must be a power of two, at least 2.
    pub fn new(values: Vec<T>) -> Result<Self> {
        check_grid_size(values.len())?;
        Ok(Self { values })
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    /// Angle of node `k`.
    pub fn theta(&self, k: usize) -> f64 {
        2.0 * std::f64::consts::PI * k as f64 / self.values.len() as f64
    }

    /// Node `k` as a point `e^{i theta_k}` on the circle.
    pub fn node(&self, k: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.theta(k))
    }

    /// Applies `f` to every node value, keeping the grid layout.
    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> GridSamples<U> {
        GridSamples {
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl ScalarSamples {
    /// Forward transform: coefficient `c_n = (1/M) sum_k v_k e^{-i n theta_k}`.
    ///
    /// For values of a polynomial of degree `< M` this returns its
    /// coefficients exactly (index `n` holds the `z^n` tap); in general it
    /// returns the aliased coefficient sequence.
    pub fn to_coefficients(&self) -> Vec<Complex64> {
        let mut buf = self.values.clone();
        forward_fft(&mut buf);
        let scale = 1.0 / buf.len() as f64;
        for c in &mut buf {
            *c *= scale;
        }
        buf
    }

    /// Largest node magnitude.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

impl MatrixSamples {
    /// Common row/column dimension of the node matrices.
    pub fn dim(&self) -> usize {
        self.values.first().map_or(0, |m| m.nrows())
    }

    /// Largest node value of the Frobenius norm.
    pub fn sup_frobenius(&self) -> f64 {
        self.values.iter().map(|m| m.norm()).fold(0.0, f64::max)
    }
}

/// Default grid for boundary work on a polynomial of the given degree:
/// at least 4096 nodes and more than twice the degree, rounded to a power
/// of two so products of two such polynomials stay alias-free.
pub fn default_grid_for(degree: usize) -> usize {
    (2 * degree + 3).next_power_of_two().max(4096)
}

pub(crate) fn check_grid_size(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidGrid {
            size: m,
            reason: "at least 2 nodes required",
        });
    }
    if !m.is_power_of_two() {
        return Err(Error::InvalidGrid {
            size: m,
            reason: "size must be a power of two",
        });
    }
    Ok(())
}

/// Checks that a grid of size `m` resolves a polynomial of degree `deg`.
pub(crate) fn check_grid_resolves(m: usize, deg: usize) -> Result<()> {
    check_grid_size(m)?;
    if m <= deg {
        return Err(Error::InvalidGrid {
            size: m,
            reason: "size must exceed the polynomial degree",
        });
    }
    Ok(())
}

static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();

fn plan(len: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER
        .get_or_init(|| Mutex::new(FftPlanner::new()))
        .lock()
        .unwrap()
        .plan_fft(len, direction)
}

/// In-place unnormalized forward DFT: `X_k = sum_n x_n e^{-2 pi i n k / M}`.
pub(crate) fn forward_fft(buf: &mut [Complex64]) {
    plan(buf.len(), FftDirection::Forward).process(buf);
}

/// In-place unnormalized inverse DFT: `x_k = sum_n X_n e^{+2 pi i n k / M}`.
///
/// With coefficients in the input this evaluates `sum_n c_n z^n` at the grid
/// nodes, which is exactly the boundary-evaluation convention of the crate.
pub(crate) fn inverse_fft(buf: &mut [Complex64]) {
    plan(buf.len(), FftDirection::Inverse).process(buf);
}

/// Evaluates the coefficient sequence on an `m`-point grid (zero padding).
pub(crate) fn coefficients_to_grid(coeffs: &[Complex64], m: usize) -> Vec<Complex64> {
    debug_assert!(coeffs.len() <= m);
    let mut buf = vec![Complex64::ZERO; m];
    buf[..coeffs.len()].copy_from_slice(coeffs);
    inverse_fft(&mut buf);
    buf
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_bad_sizes() {
        assert!(GridSamples::new(vec![Complex64::ZERO; 12]).is_err());
        assert!(GridSamples::new(vec![Complex64::ZERO; 1]).is_err());
        assert!(GridSamples::new(vec![Complex64::ZERO; 8]).is_ok());
    }

    #[test]
    fn nodes_walk_the_circle() {
        let g = GridSamples::new(vec![0.0f64; 8]).unwrap();
        assert_relative_eq!(g.theta(2), std::f64::consts::FRAC_PI_2);
        let z = g.node(2);
        assert_relative_eq!(z.re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(z.im, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn fft_round_trip_is_identity() {
        let coeffs: Vec<Complex64> = (0..5)
            .map(|n| Complex64::new(n as f64 + 0.5, -(n as f64)))
            .collect();
        let values = coefficients_to_grid(&coeffs, 16);
        let g = ScalarSamples::new(values).unwrap();
        let back = g.to_coefficients();
        for n in 0..16 {
            let want = if n < 5 { coeffs[n] } else { Complex64::ZERO };
            assert_relative_eq!(back[n].re, want.re, epsilon = 1e-13);
            assert_relative_eq!(back[n].im, want.im, epsilon = 1e-13);
        }
    }

    #[test]
    fn default_grid_tracks_degree() {
        assert_eq!(default_grid_for(1), 4096);
        assert_eq!(default_grid_for(2000), 4096);
        assert_eq!(default_grid_for(3000), 8192);
    }
}
