//! Square matrix polynomials `F(z) = A_0 + A_1 z + ... + A_n z^n` with
//! complex entries, the matrix counterpart of [`Poly`](crate::poly::Poly).
//!
//! Norms are Frobenius throughout: `h2_norm_sq` sums `||A_n||_F^2`, which by
//! Parseval equals the boundary mean of `||F(e^{i t})||_F^2`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{self, MatrixSamples, ScalarSamples};
use crate::poly::Poly;

/// Condition numbers above this make a pointwise matrix inverse meaningless
/// in f64 and are reported as singular.
const INVERSE_COND_LIMIT: f64 = 1e14;

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPoly {
    dim: usize,
    coeffs: Vec<DMatrix<Complex64>>,
}

impl MatrixPoly {
    /// Builds a matrix polynomial from coefficient matrices, all `dim x dim`.
    /// Exact zero trailing coefficients are trimmed.
    pub fn new(dim: usize, mut coeffs: Vec<DMatrix<Complex64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch { left: 0, right: 0 });
        }
        for a in &coeffs {
            if a.nrows() != dim || a.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: a.nrows().max(a.ncols()),
                });
            }
        }
        while coeffs
            .last()
            .is_some_and(|a| a.iter().all(|c| *c == Complex64::ZERO))
        {
            coeffs.pop();
        }
        Ok(Self { dim, coeffs })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            coeffs: Vec::new(),
        }
    }

    /// The constant identity polynomial.
    pub fn identity(dim: usize) -> Self {
        Self::constant(DMatrix::identity(dim, dim))
    }

    pub fn constant(a: DMatrix<Complex64>) -> Self {
        let dim = a.nrows();
        Self::new(dim, vec![a]).expect("square constant")
    }

    /// Diagonal matrix polynomial with the given scalar diagonal entries.
    pub fn diagonal(entries: &[Poly]) -> Result<Self> {
        let dim = entries.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch { left: 0, right: 0 });
        }
        let deg = entries.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
        let mut coeffs = vec![DMatrix::<Complex64>::zeros(dim, dim); deg + 1];
        for (i, p) in entries.iter().enumerate() {
            for (n, c) in coeffs.iter_mut().enumerate() {
                c[(i, i)] = p.coeff(n);
            }
        }
        Self::new(dim, coeffs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient `A_n`, a zero matrix beyond the degree.
    pub fn coeff(&self, n: usize) -> DMatrix<Complex64> {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(|| DMatrix::zeros(self.dim, self.dim))
    }

    pub fn coeffs(&self) -> &[DMatrix<Complex64>] {
        &self.coeffs
    }

    /// The scalar polynomial in entry `(r, c)`.
    pub fn entry(&self, r: usize, c: usize) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a[(r, c)]).collect())
    }

    /// Horner evaluation at an arbitrary point.
    pub fn eval(&self, z: Complex64) -> DMatrix<Complex64> {
        let mut acc = DMatrix::<Complex64>::zeros(self.dim, self.dim);
        for a in self.coeffs.iter().rev() {
            acc = acc * z + a;
        }
        acc
    }

    /// Squared H2 norm `sum_n ||A_n||_F^2`.
    pub fn h2_norm_sq(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|a| a.iter().map(|c| c.norm_sqr()).sum::<f64>())
            .sum()
    }

    /// Truncation projector `P_N`: keeps the coefficients of `z^0 ... z^N`.
    pub fn project(&self, n: usize) -> MatrixPoly {
        let keep = self.coeffs.len().min(n + 1);
        Self::new(self.dim, self.coeffs[..keep].to_vec()).expect("projection keeps shape")
    }

    pub fn scale(&self, c: Complex64) -> MatrixPoly {
        Self::new(self.dim, self.coeffs.iter().map(|a| a * c).collect())
            .expect("scaling keeps shape")
    }

    /// Exact coefficient-level product; errors on dimension mismatch.
    pub fn multiply(&self, rhs: &MatrixPoly) -> Result<MatrixPoly> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.dim));
        }
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = vec![DMatrix::<Complex64>::zeros(self.dim, self.dim); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(self.dim, out)
    }

    /// Coefficient-wise sum; errors on dimension mismatch.
    pub fn add(&self, rhs: &MatrixPoly) -> Result<MatrixPoly> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let out = (0..len).map(|n| self.coeff(n) + rhs.coeff(n)).collect();
        Self::new(self.dim, out)
    }

    /// Determinant as a scalar polynomial, by Laplace expansion on the first
    /// column. Exact coefficient arithmetic; intended for small dimensions.
    pub fn determinant(&self) -> Poly {
        if self.is_zero() {
            return if self.dim == 0 {
                Poly::one()
            } else {
                Poly::zero()
            };
        }
        let entries: Vec<Vec<Poly>> = (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.entry(r, c)).collect())
            .collect();
        det_laplace(&entries)
    }

    /// Boundary values at the `m` grid nodes, entrywise through the FFT.
    pub fn evaluate_on_grid(&self, m: usize) -> Result<MatrixSamples> {
        grid::check_grid_resolves(m, self.degree().unwrap_or(0))?;
        let d = self.dim;
        let mut values = vec![DMatrix::<Complex64>::zeros(d, d); m];
        for r in 0..d {
            for c in 0..d {
                let coeffs: Vec<Complex64> = self.coeffs.iter().map(|a| a[(r, c)]).collect();
                let line = grid::coefficients_to_grid(&coeffs, m);
                for (k, v) in line.into_iter().enumerate() {
                    values[k][(r, c)] = v;
                }
            }
        }
        MatrixSamples::new(values)
    }

    /// Recovers a matrix polynomial from grid values, keeping coefficients
    /// `z^0 ... z^N` of the aliased sequence.
    pub fn from_grid(samples: &MatrixSamples, max_degree: usize) -> Result<MatrixPoly> {
        let d = samples.dim();
        let m = samples.size();
        let keep = m.min(max_degree + 1);
        let mut coeffs = vec![DMatrix::<Complex64>::zeros(d, d); keep];
        for r in 0..d {
            for c in 0..d {
                let line: Vec<Complex64> = samples.values().iter().map(|v| v[(r, c)]).collect();
                let entry_coeffs = ScalarSamples::new(line)?.to_coefficients();
                for (n, coeff) in coeffs.iter_mut().enumerate() {
                    coeff[(r, c)] = entry_coeffs[n];
                }
            }
        }
        Self::new(d, coeffs)
    }
}

fn det_laplace(entries: &[Vec<Poly>]) -> Poly {
    let d = entries.len();
    if d == 1 {
        return entries[0][0].clone();
    }
    let mut det = Poly::zero();
    for r in 0..d {
        if entries[r][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = (0..d)
            .filter(|&i| i != r)
            .map(|i| entries[i][1..].to_vec())
            .collect();
        let term = &entries[r][0] * &det_laplace(&minor);
        det = if r % 2 == 0 {
            &det + &term
        } else {
            &det - &term
        };
    }
    det
}

/// Pointwise inverse of matrix boundary samples.
///
/// Fails with the node index and a Frobenius condition estimate when a node
/// matrix is singular or too ill conditioned to invert in f64.
pub fn matrix_inverse_on_grid(samples: &MatrixSamples) -> Result<MatrixSamples> {
    let mut out = Vec::with_capacity(samples.size());
    for (k, v) in samples.values().iter().enumerate() {
        let norm = v.norm();
        let inv = v.clone().try_inverse().ok_or(Error::SingularOnCircle {
            node: k,
            cond: f64::INFINITY,
        })?;
        let cond = norm * inv.norm();
        if !cond.is_finite() || cond > INVERSE_COND_LIMIT {
            return Err(Error::SingularOnCircle { node: k, cond });
        }
        out.push(inv);
    }
    MatrixSamples::new(out)
}
