//! Matrix spectral factorization and polynomial inner functions.
//!
//! A para-Hermitian density `S(e^{i t}) = A(e^{i t}) A(e^{i t})^H` that is
//! uniformly positive definite admits an outer factor `F` with
//! `F F^H = S` on the circle, unique once `F(0)` is normalized to be lower
//! triangular with positive diagonal. The factor is computed by Bauer's
//! method: the coefficients of `S` fill a banded block Toeplitz matrix, its
//! Cholesky factor is taken, and the last block row converges geometrically
//! to the coefficients of `F` as the Toeplitz order grows.
//!
//! Inner (matrix all-pass) functions enter through Blaschke-Potapov factors
//! `U(z) = I - P + b(z) P` for a Hermitian projection `P`; right-multiplying
//! an outer factor by such a `U` preserves the density while delaying
//! energy, which is the raw material for the matrix energy delay theorem.

use nalgebra::{Cholesky, DMatrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::energy::matrix_gain_defect;
use crate::error::{Error, Result};
use crate::grid::{check_grid_size, MatrixSamples, ScalarSamples};
use crate::matpoly::{matrix_inverse_on_grid, MatrixPoly};
use crate::poly::Poly;
use crate::EQUAL_GAIN_TOL;

/// Relative floor for the smallest eigenvalue of a density on the circle;
/// below it the Toeplitz blocks are numerically semidefinite.
const PD_FLOOR: f64 = 1e-9;

/// Residual at which the Bauer iteration stops refining.
const BAUER_TARGET: f64 = 1e-9;

/// Relative residual the factorization contract promises on success.
pub const RESIDUAL_TOL: f64 = 1e-6;

/// Largest block order tried before giving up.
const BAUER_MAX_BLOCKS: usize = 512;

/// Hermitian-projection validation tolerance for Blaschke-Potapov factors.
const PROJECTION_TOL: f64 = 1e-12;

/// Unitarity tolerance for certifying a boundary quotient as inner.
pub const UNITARITY_TOL: f64 = 1e-8;

/// Analytic-defect tolerance (relative negative-frequency energy) for
/// certifying a boundary quotient as inner.
pub const ANALYTIC_TOL: f64 = 1e-6;

/// Grid samples of a para-Hermitian, uniformly positive definite density.
///
/// Construction validates Hermitian symmetry per node and uniform positive
/// definiteness, then symmetrizes exactly, so downstream code can rely on
/// real positive eigenvalues and determinants.
#[derive(Debug, Clone, PartialEq)]
pub struct ParaHermitianSamples {
    samples: MatrixSamples,
    min_eigenvalue: f64,
    sup_norm: f64,
}

impl ParaHermitianSamples {
    pub fn new(samples: MatrixSamples) -> Result<Self> {
        let d = samples.dim();
        if d == 0 {
            return Err(Error::DimensionMismatch { left: 0, right: 0 });
        }
        let sup = samples.sup_frobenius();
        let scale = if sup > 0.0 { sup } else { 1.0 };
        // Hermitian defect per node, then exact symmetrization.
        let mut sym = Vec::with_capacity(samples.size());
        for (k, v) in samples.values().iter().enumerate() {
            let defect = (v - v.adjoint()).norm();
            if defect > 1e-10 * scale {
                return Err(Error::BoundaryDegenerate {
                    node: k,
                    min_eig: f64::NAN,
                });
            }
            sym.push((v + v.adjoint()).scale(0.5));
        }
        let mut min_eig = f64::INFINITY;
        let mut min_node = 0;
        for (k, v) in sym.iter().enumerate() {
            let eig = v.clone().symmetric_eigenvalues();
            let lo = eig.min();
            if lo < min_eig {
                min_eig = lo;
                min_node = k;
            }
        }
        if min_eig <= PD_FLOOR * scale {
            return Err(Error::BoundaryDegenerate {
                node: min_node,
                min_eig,
            });
        }
        Ok(Self {
            samples: MatrixSamples::new(sym)?,
            min_eigenvalue: min_eig,
            sup_norm: sup,
        })
    }

    pub fn samples(&self) -> &MatrixSamples {
        &self.samples
    }

    pub fn size(&self) -> usize {
        self.samples.size()
    }

    pub fn dim(&self) -> usize {
        self.samples.dim()
    }

    /// Smallest eigenvalue over all nodes.
    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    /// Largest Frobenius norm over all nodes.
    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    /// Boundary mean of `log det S`, the quantity the outer certificate
    /// compares against `|det F(0)|^2`.
    pub fn mean_log_det(&self) -> f64 {
        let m = self.size() as f64;
        self.samples
            .values()
            .iter()
            .map(|v| v.determinant().norm().ln())
            .sum::<f64>()
            / m
    }

    /// Fourier coefficient blocks `S_k` for `k = 0 ..= max_lag`, zero padded
    /// beyond the grid's resolution.
    fn coefficient_blocks(&self, max_lag: usize) -> Vec<DMatrix<Complex64>> {
        let d = self.dim();
        let m = self.size();
        let mut blocks = vec![DMatrix::<Complex64>::zeros(d, d); max_lag + 1];
        for r in 0..d {
            for c in 0..d {
                let line: Vec<Complex64> =
                    self.samples.values().iter().map(|v| v[(r, c)]).collect();
                let coeffs = ScalarSamples::new(line)
                    .expect("validated grid")
                    .to_coefficients();
                for (k, b) in blocks.iter_mut().enumerate() {
                    if k < m {
                        b[(r, c)] = coeffs[k];
                    }
                }
            }
        }
        blocks
    }
}

/// Evaluates `A A^H` on an `m`-point grid as a validated density.
///
/// `m` must resolve the trigonometric degree of the product, i.e. exceed
/// twice the degree of `A`.
pub fn para_hermitian_product(a: &MatrixPoly, m: usize) -> Result<ParaHermitianSamples> {
    let deg = a.degree().ok_or(Error::ZeroPolynomial)?;
    if m <= 2 * deg {
        return Err(Error::InvalidGrid {
            size: m,
            reason: "grid does not resolve the para-Hermitian product",
        });
    }
    let av = a.evaluate_on_grid(m)?;
    let values = av.values().iter().map(|v| v * v.adjoint()).collect();
    ParaHermitianSamples::new(MatrixSamples::new(values)?)
}

/// Relative sup-norm residual `max_k ||F F^H - S|| / max_k ||S||` on the
/// density's own grid.
pub fn factorization_residual(f: &MatrixPoly, s: &ParaHermitianSamples) -> Result<f64> {
    let fv = f.evaluate_on_grid(s.size())?;
    let mut worst: f64 = 0.0;
    for (v, sv) in fv.values().iter().zip(s.samples().values()) {
        worst = worst.max((v * v.adjoint() - sv).norm());
    }
    Ok(worst / s.sup_norm())
}

/// Outer spectral factor of a polynomial density by Bauer's method.
///
/// `target_degree` is the degree of the factor being sought; for
/// `S = A A^H` with `A` of degree `n` the factor has degree `n` exactly.
/// The block Toeplitz order is doubled until the factorization residual
/// reaches the internal target or stops improving; the best factor is
/// returned as long as it meets the contract residual, otherwise the
/// final residual and order are reported in the error.
pub fn spectral_factor_outer(s: &ParaHermitianSamples, target_degree: usize) -> Result<MatrixPoly> {
    let d = s.dim();
    let mut order = (2 * (target_degree + 1)).next_power_of_two().max(8);
    let mut best: Option<(f64, MatrixPoly)> = None;

    while order <= BAUER_MAX_BLOCKS {
        let blocks = s.coefficient_blocks(order);
        if let Some(f) = bauer_step(&blocks, d, order, target_degree) {
            let residual = factorization_residual(&f, s)?;
            if best.as_ref().is_none_or(|(r, _)| residual < *r) {
                best = Some((residual, f));
            }
            if best.as_ref().is_some_and(|(r, _)| *r <= BAUER_TARGET) {
                break;
            }
        }
        order *= 2;
    }

    match best {
        Some((residual, f)) if residual <= RESIDUAL_TOL => Ok(f),
        Some((residual, _)) => Err(Error::NoConvergence {
            residual,
            blocks: BAUER_MAX_BLOCKS,
        }),
        None => Err(Error::NoConvergence {
            residual: f64::INFINITY,
            blocks: BAUER_MAX_BLOCKS,
        }),
    }
}

/// One Bauer step: Cholesky of the `(order+1) d` block Toeplitz matrix
/// `T[(i, j)] = S_{i-j}`, reading the factor coefficients from the last
/// block row, `A_k = L[block (order, order - k)]`.
fn bauer_step(
    blocks: &[DMatrix<Complex64>],
    d: usize,
    order: usize,
    target_degree: usize,
) -> Option<MatrixPoly> {
    let n = (order + 1) * d;
    let mut t = DMatrix::<Complex64>::zeros(n, n);
    for bi in 0..=order {
        for bj in 0..=bi {
            let lag = bi - bj;
            if lag >= blocks.len() {
                continue;
            }
            // Lower triangle holds S_{lag}; Cholesky reads only this half.
            for r in 0..d {
                for c in 0..d {
                    t[(bi * d + r, bj * d + c)] = blocks[lag][(r, c)];
                }
            }
        }
        // Diagonal blocks mirrored for well-formedness.
        for r in 0..d {
            for c in 0..d {
                if bi * d + r < bi * d + c {
                    t[(bi * d + r, bi * d + c)] = blocks[0][(c, r)].conj();
                }
            }
        }
    }
    let chol = Cholesky::new(t)?;
    let l = chol.l();
    let take = target_degree.min(order);
    let coeffs: Vec<DMatrix<Complex64>> = (0..=take)
        .map(|k| DMatrix::from_fn(d, d, |r, c| l[(order * d + r, (order - k) * d + c)]))
        .collect();
    MatrixPoly::new(d, coeffs).ok()
}

/// Two sides of the outer certificate for a spectral factor: `|det F(0)|`
/// against the geometric mean `exp(mean log det S / 2)`. Equality within a
/// relative tolerance certifies that `F` is outer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuterCertificate {
    /// `|det F(0)|`.
    pub det_at_origin: f64,
    /// `exp` of half the boundary mean of `log det S`.
    pub geometric_mean: f64,
}

impl OuterCertificate {
    pub fn gap(&self) -> f64 {
        self.geometric_mean - self.det_at_origin
    }

    pub fn is_outer(&self, tol: f64) -> bool {
        self.gap().abs() <= tol * self.geometric_mean
    }
}

/// Evaluates the outer certificate of `f` against the density `s`.
pub fn outer_certificate(f: &MatrixPoly, s: &ParaHermitianSamples) -> Result<OuterCertificate> {
    if f.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: s.dim(),
        });
    }
    Ok(OuterCertificate {
        det_at_origin: f.coeff(0).determinant().norm(),
        geometric_mean: (0.5 * s.mean_log_det()).exp(),
    })
}

fn projection_defect(p: &DMatrix<Complex64>) -> f64 {
    let scale = 1.0 + p.norm();
    let herm = (p - p.adjoint()).norm();
    let idem = (p * p - p).norm();
    herm.max(idem) / scale
}

/// Degree-one Blaschke-Potapov factor at the origin,
/// `U(z) = (I - P) + z P`, for a Hermitian projection `P`.
///
/// The factor is unitary on the circle and delays exactly the range of `P`.
pub fn blaschke_potapov_poly(p: &DMatrix<Complex64>) -> Result<MatrixPoly> {
    let defect = projection_defect(p);
    if defect > PROJECTION_TOL {
        return Err(Error::NotAProjection { defect });
    }
    let d = p.nrows();
    let eye = DMatrix::<Complex64>::identity(d, d);
    MatrixPoly::new(d, vec![&eye - p, p.clone()])
}

/// Boundary samples of the Blaschke-Potapov factor
/// `U(z) = I - P + b_{z0}(z) P` with an arbitrary zero `z0` in the open
/// disk, where `b_{z0}` is the scalar Blaschke factor vanishing at `z0`.
pub fn blaschke_potapov_samples(
    p: &DMatrix<Complex64>,
    z0: Complex64,
    m: usize,
) -> Result<MatrixSamples> {
    let defect = projection_defect(p);
    if defect > PROJECTION_TOL {
        return Err(Error::NotAProjection { defect });
    }
    let r = z0.norm();
    if r.is_nan() || r >= 1.0 {
        return Err(Error::InvalidBlaschke { zero: z0 });
    }
    check_grid_size(m)?;
    let b = crate::scalar::BlaschkeProduct::new(vec![z0], 0.0)?;
    let d = p.nrows();
    let eye = DMatrix::<Complex64>::identity(d, d);
    let complement = &eye - p;
    let probe = ScalarSamples::new(vec![Complex64::ZERO; m])?;
    let values = (0..m)
        .map(|k| &complement + p.scale(1.0) * b.eval(probe.node(k)))
        .collect();
    MatrixSamples::new(values)
}

/// Numerical certificate that a boundary quotient is inner: how far the
/// node values are from unitary, and how much energy its coefficient
/// sequence leaks into negative frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerMatrixCertificate {
    /// `max_k || U_k U_k^H - I ||_F`.
    pub max_unitarity_defect: f64,
    /// Energy in strictly negative frequency bins relative to the total.
    pub analytic_defect: f64,
}

impl InnerMatrixCertificate {
    /// Checks the certificate against the crate's inner-function tolerances.
    pub fn passes(&self) -> bool {
        self.max_unitarity_defect <= UNITARITY_TOL && self.analytic_defect <= ANALYTIC_TOL
    }
}

/// Certificate of the defects of boundary samples against being inner.
pub fn inner_certificate(u: &MatrixSamples) -> InnerMatrixCertificate {
    let d = u.dim();
    let m = u.size();
    let eye = DMatrix::<Complex64>::identity(d, d);
    let unit = u
        .values()
        .iter()
        .map(|v| (v * v.adjoint() - &eye).norm())
        .fold(0.0, f64::max);

    // Negative-frequency leakage, entry by entry; bins above the Nyquist
    // index alias the strictly negative frequencies.
    let mut negative = 0.0;
    let mut total = 0.0;
    for r in 0..d {
        for c in 0..d {
            let line: Vec<Complex64> = u.values().iter().map(|v| v[(r, c)]).collect();
            let coeffs = ScalarSamples::new(line)
                .expect("grid size already validated")
                .to_coefficients();
            for (n, coeff) in coeffs.iter().enumerate() {
                let e = coeff.norm_sqr();
                total += e;
                if n > m / 2 {
                    negative += e;
                }
            }
        }
    }
    InnerMatrixCertificate {
        max_unitarity_defect: unit,
        analytic_defect: if total > 0.0 { negative / total } else { 0.0 },
    }
}

/// Boundary quotient `U = F^{-1} G` of two equal-gain matrix polynomials,
/// with its inner certificate.
///
/// When `F` is the outer factor of the common density and `G` is any
/// equal-gain companion, `U` is inner: unitary on the circle and free of
/// negative-frequency energy, up to the certified defects.
pub fn inner_quotient_matrix(
    f: &MatrixPoly,
    g: &MatrixPoly,
    m: usize,
) -> Result<(MatrixSamples, InnerMatrixCertificate)> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: g.dim(),
        });
    }
    let defect = matrix_gain_defect(f, g, m)?;
    if defect > EQUAL_GAIN_TOL {
        return Err(Error::NotComparable {
            defect,
            tol: EQUAL_GAIN_TOL,
        });
    }
    let f_inv = matrix_inverse_on_grid(&f.evaluate_on_grid(m)?)?;
    let gv = g.evaluate_on_grid(m)?;
    let values: Vec<DMatrix<Complex64>> = f_inv
        .values()
        .iter()
        .zip(gv.values())
        .map(|(a, b)| a * b)
        .collect();
    let u = MatrixSamples::new(values)?;
    let cert = inner_certificate(&u);
    Ok((u, cert))
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) / std::f64::consts::SQRT_2
}

fn random_gaussian_matrix(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(d, d, |_, _| random_complex(rng))
}

/// Haar-like random unitary from the QR factorization of a Gaussian matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<Complex64> {
    let qr = random_gaussian_matrix(rng, d).qr();
    qr.q()
}

/// Random Hermitian projection of the given rank (orthonormal Gaussian
/// range).
pub fn random_projection(rng: &mut ChaCha8Rng, d: usize, rank: usize) -> DMatrix<Complex64> {
    let rank = rank.clamp(1, d.max(1));
    let g = DMatrix::from_fn(d, rank, |_, _| random_complex(rng));
    let q = g.qr().q();
    &q * q.adjoint()
}

/// A generated matrix pair together with its factorization diagnostics.
#[derive(Debug, Clone)]
pub struct MatrixPairCase {
    /// Outer spectral factor of the drawn density.
    pub f: MatrixPoly,
    /// Equal-gain companion `F U` with a polynomial inner `U`.
    pub g: MatrixPoly,
    /// Bauer residual of `f` against the drawn density.
    pub residual: f64,
    /// The density itself, for recomputing certificates.
    pub density: ParaHermitianSamples,
}

/// Deterministic equal-gain matrix pair: the outer factor `F` of a seeded
/// random polynomial density and a companion `G = F U Q` delayed by
/// `n_factors` origin Blaschke-Potapov factors and a constant unitary `Q`.
///
/// The density is `A A^H` for `A = T0 diag(p_1 .. p_d) T1` with moderate
/// constant factors and diagonal zeros kept a fixed distance from the unit
/// circle, so the factorization is uniformly well conditioned and the pair
/// is equal-gain to rounding accuracy.
pub fn generate_matrix_pair(
    seed: u64,
    dim: usize,
    degree: usize,
    n_factors: usize,
) -> Result<(MatrixPoly, MatrixPoly)> {
    generate_matrix_pair_case(seed, dim, degree, n_factors).map(|case| (case.f, case.g))
}

/// [`generate_matrix_pair`] with the residual and density kept for reports.
pub fn generate_matrix_pair_case(
    seed: u64,
    dim: usize,
    degree: usize,
    n_factors: usize,
) -> Result<MatrixPairCase> {
    if dim == 0 || dim > 8 {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: 8,
        });
    }
    let degree = degree.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;

    // Diagonal outer-or-not entries with zeros away from the annulus
    // [0.9, 1.12] around the circle.
    let mut diag = Vec::with_capacity(dim);
    for _ in 0..dim {
        let mut roots = Vec::with_capacity(degree);
        for _ in 0..degree {
            let modulus = if rng.random_bool(0.5) {
                rng.random_range(0.35..0.88)
            } else {
                rng.random_range(1.14..1.65)
            };
            roots.push(Complex64::from_polar(modulus, rng.random_range(0.0..tau)));
        }
        let lead = Complex64::new(rng.random_range(0.7..1.4), 0.0);
        diag.push(Poly::from_roots(lead, &roots));
    }

    // Constant mixing factors with bounded condition number.
    let t0 = moderate_random_matrix(&mut rng, dim);
    let t1 = moderate_random_matrix(&mut rng, dim);
    let a = MatrixPoly::constant(t0)
        .multiply(&MatrixPoly::diagonal(&diag)?)?
        .multiply(&MatrixPoly::constant(t1))?;

    let m = (2 * degree + 3).next_power_of_two().max(256);
    let density = para_hermitian_product(&a, m)?;
    let f = spectral_factor_outer(&density, degree)?;
    let residual = factorization_residual(&f, &density)?;

    // Delay through origin Blaschke-Potapov factors and a constant unitary.
    let mut u = MatrixPoly::identity(dim);
    for _ in 0..n_factors {
        let rank = rng.random_range(1..=dim.max(2) - 1).min(dim);
        let p = random_projection(&mut rng, dim, rank);
        u = u.multiply(&blaschke_potapov_poly(&p)?)?;
    }
    let q = random_unitary(&mut rng, dim);
    let g = f.multiply(&u)?.multiply(&MatrixPoly::constant(q))?;

    Ok(MatrixPairCase {
        f,
        g,
        residual,
        density,
    })
}

/// Gaussian matrix redrawn until its condition number is moderate, keeping
/// the generated densities uniformly positive definite.
fn moderate_random_matrix(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<Complex64> {
    for _ in 0..100_000 {
        let t = random_gaussian_matrix(rng, d);
        let svd = t.clone().svd(false, false);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if smin > 0.0 && smax / smin <= 8.0 {
            return t;
        }
    }
    unreachable!("condition rejection loop failed to terminate");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::{matrix_energy_curve, matrix_tolerance, verify_matrix_energy_delay};
    use crate::scalar::minimum_phase_equivalent;
    use approx::assert_relative_eq;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scalar_density(p: &Poly, m: usize) -> ParaHermitianSamples {
        let mp = MatrixPoly::diagonal(std::slice::from_ref(p)).unwrap();
        para_hermitian_product(&mp, m).unwrap()
    }

    #[test]
    fn para_hermitian_product_matches_pointwise_gain() {
        let s = scalar_density(&Poly::from_real(&[2.0, 1.0]), 64);
        assert_eq!(s.dim(), 1);
        // |2 + e^{i t}|^2 ranges over [1, 9].
        assert_relative_eq!(s.min_eigenvalue(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(s.sup_norm(), 9.0, epsilon = 1e-12);
        let v0 = s.samples().values()[0][(0, 0)];
        assert_relative_eq!(v0.re, 9.0, epsilon = 1e-12);
        assert_relative_eq!(v0.im, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn density_validation_rejects_degenerate_input() {
        // 1 - z vanishes on the circle: not uniformly positive definite.
        let p = Poly::from_real(&[1.0, -1.0]);
        let mp = MatrixPoly::diagonal(&[p]).unwrap();
        assert!(matches!(
            para_hermitian_product(&mp, 64),
            Err(Error::BoundaryDegenerate { .. })
        ));
        // Non-Hermitian samples are rejected.
        let bad = MatrixSamples::new(vec![
            DMatrix::from_row_slice(
                2,
                2,
                &[cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0),]
            );
            8
        ])
        .unwrap();
        assert!(ParaHermitianSamples::new(bad).is_err());
    }

    #[test]
    fn scalar_factorization_recovers_canonical_outer() {
        let s = scalar_density(&Poly::from_real(&[1.0, 2.0]), 64);
        let f = spectral_factor_outer(&s, 1).unwrap();
        // The outer factor of |1 + 2z|^2 is 2 + z.
        assert_relative_eq!(f.coeff(0)[(0, 0)].re, 2.0, epsilon = 1e-9);
        assert_relative_eq!(f.coeff(1)[(0, 0)].re, 1.0, epsilon = 1e-9);
        assert!(f.coeff(0)[(0, 0)].im.abs() < 1e-10);
        assert!(factorization_residual(&f, &s).unwrap() < 1e-9);
    }

    #[test]
    fn diagonal_density_gets_diagonal_factor() {
        let p1 = Poly::from_real(&[1.0, 2.0]);
        let p2 = Poly::new(vec![cx(0.5, 0.0), cx(0.2, 0.4), cx(3.0, 0.0)]);
        let a = MatrixPoly::diagonal(&[p1.clone(), p2.clone()]).unwrap();
        let s = para_hermitian_product(&a, 64).unwrap();
        let f = spectral_factor_outer(&s, 2).unwrap();
        let scale = s.sup_norm().sqrt();
        // Off-diagonal entries vanish.
        for n in 0..=2 {
            assert!(f.coeff(n)[(0, 1)].norm() < 1e-10 * scale);
            assert!(f.coeff(n)[(1, 0)].norm() < 1e-10 * scale);
        }
        // Diagonal entries are the scalar minimum-phase equivalents.
        let q1 = minimum_phase_equivalent(&p1).unwrap();
        let q2 = minimum_phase_equivalent(&p2).unwrap();
        for n in 0..=2 {
            assert!((f.entry(0, 0).coeff(n) - q1.coeff(n)).norm() < 1e-8);
            assert!((f.entry(1, 1).coeff(n) - q2.coeff(n)).norm() < 1e-8);
        }
    }

    #[test]
    fn mixed_density_factor_is_normalized_and_tight() {
        let t0 = DMatrix::from_row_slice(
            2,
            2,
            &[cx(1.0, 0.0), cx(0.0, 0.0), cx(1.0, -0.5), cx(1.0, 0.0)],
        );
        let t1 = DMatrix::from_row_slice(
            2,
            2,
            &[cx(1.0, 0.0), cx(0.5, 0.2), cx(0.0, 0.0), cx(1.0, 0.0)],
        );
        let d = MatrixPoly::diagonal(&[
            Poly::from_real(&[2.0, 1.0]),
            Poly::from_real(&[3.0, 0.0, 1.0]),
        ])
        .unwrap();
        let a = MatrixPoly::constant(t0)
            .multiply(&d)
            .unwrap()
            .multiply(&MatrixPoly::constant(t1))
            .unwrap();
        let s = para_hermitian_product(&a, 128).unwrap();
        let f = spectral_factor_outer(&s, 2).unwrap();
        assert!(factorization_residual(&f, &s).unwrap() < 1e-9);

        // F(0) lower triangular with positive diagonal.
        let f0 = f.coeff(0);
        assert!(f0[(0, 1)].norm() < 1e-9 * f0.norm());
        for i in 0..2 {
            assert!(f0[(i, i)].re > 0.0);
            assert!(f0[(i, i)].im.abs() < 1e-9 * f0[(i, i)].re);
        }

        // Outer certificate equality.
        let cert = outer_certificate(&f, &s).unwrap();
        assert!(cert.is_outer(1e-8), "certificate gap {}", cert.gap());
    }

    #[test]
    fn delayed_factor_fails_outer_certificate() {
        let a = MatrixPoly::diagonal(&[Poly::from_real(&[2.0, 1.0]), Poly::from_real(&[3.0, 1.0])])
            .unwrap();
        let s = para_hermitian_product(&a, 64).unwrap();
        let f = spectral_factor_outer(&s, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = random_projection(&mut rng, 2, 1);
        let g = f.multiply(&blaschke_potapov_poly(&p).unwrap()).unwrap();
        // G carries the same density but delays the range of P, so its
        // origin determinant collapses.
        let cert_f = outer_certificate(&f, &s).unwrap();
        let cert_g = outer_certificate(&g, &s).unwrap();
        assert!(cert_f.is_outer(1e-8));
        assert!(!cert_g.is_outer(1e-2));
        assert!(cert_g.det_at_origin < 1e-10);
    }

    #[test]
    fn potapov_factor_is_unitary_and_projects_at_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = random_projection(&mut rng, 3, 2);
        let u = blaschke_potapov_poly(&p).unwrap();
        let eye = DMatrix::<Complex64>::identity(3, 3);
        assert_relative_eq!((u.coeff(0) - (&eye - &p)).norm(), 0.0, epsilon = 1e-14);
        let samples = u.evaluate_on_grid(16).unwrap();
        let cert = inner_certificate(&samples);
        assert!(cert.max_unitarity_defect < 1e-13);
        assert!(cert.analytic_defect < 1e-28);
    }

    #[test]
    fn potapov_rejects_non_projection() {
        let p = DMatrix::from_row_slice(
            2,
            2,
            &[cx(1.0, 0.0), cx(0.3, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)],
        );
        assert!(matches!(
            blaschke_potapov_poly(&p),
            Err(Error::NotAProjection { .. })
        ));
    }

    #[test]
    fn potapov_samples_vanish_on_range_at_z0() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_projection(&mut rng, 2, 1);
        let z0 = cx(0.4, -0.2);
        let m = 32;
        let samples = blaschke_potapov_samples(&p, z0, m).unwrap();
        let cert = inner_certificate(&samples);
        assert!(cert.max_unitarity_defect < 1e-13);
        // Interpolate back to a rational check: at a node, U - (I - P)
        // must be b(z) P exactly.
        let b = crate::scalar::BlaschkeProduct::new(vec![z0], 0.0).unwrap();
        let eye = DMatrix::<Complex64>::identity(2, 2);
        for k in [0, 5, 17] {
            let z = samples.node(k);
            let want = (&eye - &p) + p.scale(1.0) * b.eval(z);
            assert_relative_eq!((&want - &samples.values()[k]).norm(), 0.0, epsilon = 1e-13);
        }
        assert!(matches!(
            blaschke_potapov_samples(&p, cx(1.0, 0.0), m),
            Err(Error::InvalidBlaschke { .. })
        ));
    }

    #[test]
    fn quotient_certifies_generated_pair_and_flags_swap() {
        let case = generate_matrix_pair_case(5, 2, 2, 2).unwrap();
        assert!(case.residual < 1e-8);
        let m = 256;
        let (_, cert) = inner_quotient_matrix(&case.f, &case.g, m).unwrap();
        assert!(cert.passes(), "defects {cert:?}");

        // Swapped quotient is unitary but anti-analytic.
        let (_, swapped) = inner_quotient_matrix(&case.g, &case.f, m).unwrap();
        assert!(swapped.max_unitarity_defect < 1e-8);
        assert!(swapped.analytic_defect > 0.05);
        assert!(!swapped.passes());
    }

    #[test]
    fn quotient_rejects_unequal_densities() {
        let f = MatrixPoly::identity(2);
        let g = MatrixPoly::identity(2).scale(cx(2.0, 0.0));
        assert!(matches!(
            inner_quotient_matrix(&f, &g, 64),
            Err(Error::NotComparable { .. })
        ));
    }

    #[test]
    fn generated_pairs_satisfy_matrix_energy_delay() {
        for seed in [1u64, 2, 3] {
            let dim = 2 + (seed as usize % 2);
            let case = generate_matrix_pair_case(seed, dim, 2, 1 + seed as usize % 3).unwrap();
            let total = matrix_energy_curve(&case.f).total();
            let report =
                verify_matrix_energy_delay(&case.f, &case.g, matrix_tolerance(total)).unwrap();
            assert!(report.passed(), "seed {seed}: margin {}", report.min_margin);
        }
    }

    #[test]
    fn generator_is_deterministic() {
        let a = generate_matrix_pair(9, 2, 3, 2).unwrap();
        let b = generate_matrix_pair(9, 2, 3, 2).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }
}
