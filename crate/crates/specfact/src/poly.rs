//! Dense polynomials with complex coefficients, viewed as causal FIR
//! transfer functions `f(z) = a_0 + a_1 z + ... + a_n z^n` on the closed
//! unit disk.
//!
//! Coefficient arithmetic is exact convolution; boundary work goes through
//! [`evaluate_on_grid`](Poly::evaluate_on_grid) and the FFT. The zero
//! polynomial is represented by an empty coefficient vector and has degree
//! `None`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{self, ScalarSamples};

/// Tolerance for merging eigenvalue clusters into a single multiple root,
/// relative to the cluster's distance from the origin.
const ROOT_CLUSTER_RADIUS: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// Builds a polynomial from taps `a_0, a_1, ...`, trimming exact trailing
    /// zeros so the stored degree is sharp.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::ONE)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c z^n`.
    pub fn monomial(c: Complex64, n: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// Convenience constructor from real taps.
    pub fn from_real(taps: &[f64]) -> Self {
        Self::new(taps.iter().map(|&t| Complex64::new(t, 0.0)).collect())
    }

    /// Expands `leading * prod_i (z - roots[i])` by exact convolution.
    pub fn from_roots(leading: Complex64, roots: &[Complex64]) -> Self {
        let mut p = Self::constant(leading);
        for &r in roots {
            p = &p * &Self::new(vec![-r, Complex64::ONE]);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the trimmed polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Tap `a_n`, zero beyond the degree.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Horner evaluation at an arbitrary point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::ZERO, |acc, &c| acc * z + c)
    }

    /// Squared H2 norm `sum |a_n|^2`, equal to the mean of `|f|^2` over the
    /// boundary by Parseval.
    pub fn h2_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Largest coefficient magnitude.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Truncation projector `P_N`: keeps the taps of `z^0 ... z^N`.
    pub fn project(&self, n: usize) -> Poly {
        let keep = self.coeffs.len().min(n + 1);
        Self::new(self.coeffs[..keep].to_vec())
    }

    pub fn scale(&self, c: Complex64) -> Poly {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Coefficient-wise conjugation `a_n -> conj(a_n)`.
    pub fn conj(&self) -> Poly {
        Self::new(self.coeffs.iter().map(|a| a.conj()).collect())
    }

    /// Boundary values at the `m` grid nodes, `values[k] = f(e^{i theta_k})`.
    ///
    /// `m` must be a power of two larger than the degree so the values
    /// determine the polynomial exactly.
    pub fn evaluate_on_grid(&self, m: usize) -> Result<ScalarSamples> {
        grid::check_grid_resolves(m, self.degree().unwrap_or(0))?;
        ScalarSamples::new(grid::coefficients_to_grid(&self.coeffs, m))
    }

    /// Recovers a polynomial from grid values, keeping taps `z^0 ... z^N`.
    ///
    /// For samples of a polynomial of degree `<= N < M` this inverts
    /// [`evaluate_on_grid`](Poly::evaluate_on_grid) up to rounding; for
    /// general samples it truncates the aliased coefficient sequence.
    pub fn from_grid(samples: &ScalarSamples, max_degree: usize) -> Poly {
        let coeffs = samples.to_coefficients();
        let keep = coeffs.len().min(max_degree + 1);
        Self::new(coeffs[..keep].to_vec())
    }

    /// All roots, with multiplicity, in arbitrary order.
    ///
    /// Exact zero taps at the bottom are split off as origin roots; the rest
    /// come from companion-matrix eigenvalues polished by Newton steps on the
    /// monic polynomial, and clusters closer than a relative `1e-7` are
    /// averaged so multiple roots are reported at their centroid.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let origin = self
            .coeffs
            .iter()
            .take_while(|c| **c == Complex64::ZERO)
            .count();
        let mut roots = vec![Complex64::ZERO; origin];
        let reduced = &self.coeffs[origin..];
        let n = reduced.len() - 1;
        if n == 0 {
            return Ok(roots);
        }

        let lead = reduced[n];
        let monic: Vec<Complex64> = reduced.iter().map(|&c| c / lead).collect();
        let mut companion = DMatrix::<Complex64>::zeros(n, n);
        for i in 1..n {
            companion[(i, i - 1)] = Complex64::ONE;
        }
        for i in 0..n {
            companion[(i, n - 1)] = -monic[i];
        }
        let eigen = companion
            .eigenvalues()
            .ok_or(Error::RootSolve { degree: n })?;

        let mut found: Vec<Complex64> = eigen.iter().copied().collect();
        for z in &mut found {
            *z = newton_polish(&monic, *z);
        }
        roots.extend(cluster_roots(found));
        Ok(roots)
    }
}

/// A few Newton steps on the monic polynomial to sharpen an eigenvalue into
/// a root. Stops on stagnation; multiple roots settle on the usual
/// `eps^(1/m)` plateau and are handled by clustering afterwards.
fn newton_polish(monic: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..50 {
        let mut p = Complex64::ZERO;
        let mut dp = Complex64::ZERO;
        for &c in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        if dp == Complex64::ZERO {
            break;
        }
        let step = p / dp;
        z -= step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Greedy transitive clustering: eigenvalues within the relative radius of
/// each other collapse to their centroid, preserving multiplicity.
fn cluster_roots(mut pool: Vec<Complex64>) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(pool.len());
    while let Some(seed) = pool.pop() {
        let mut cluster = vec![seed];
        loop {
            let before = cluster.len();
            pool.retain(|&z| {
                let near = cluster.iter().any(|&c| {
                    (z - c).norm() <= ROOT_CLUSTER_RADIUS * (1.0 + z.norm().max(c.norm()))
                });
                if near {
                    cluster.push(z);
                }
                !near
            });
            if cluster.len() == before {
                break;
            }
        }
        let centroid = cluster.iter().sum::<Complex64>() / cluster.len() as f64;
        out.extend(std::iter::repeat_n(centroid, cluster.len()));
    }
    out
}

impl Mul for &Poly {
    type Output = Poly;

    /// Exact coefficient convolution.
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Complex64::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Complex64::ZERO; len];
        for (n, c) in out.iter_mut().enumerate() {
            *c = self.coeff(n) + rhs.coeff(n);
        }
        Poly::new(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Complex64::ZERO; len];
        for (n, c) in out.iter_mut().enumerate() {
            *c = self.coeff(n) - rhs.coeff(n);
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if *c == Complex64::ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c.im == 0.0 {
                format!("{}", c.re)
            } else {
                format!("({}{:+}i)", c.re, c.im)
            };
            match n {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}·z")?,
                _ => write!(f, "{coeff}·z^{n}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Direct power-sum evaluation, independent of Horner and the FFT.
    fn naive_eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
        coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| c * z.powu(n as u32))
            .sum()
    }

    #[test]
    fn trims_and_reports_degree() {
        let p = Poly::new(vec![Complex64::ONE, Complex64::ZERO, Complex64::ZERO]);
        assert_eq!(p.degree(), Some(0));
        assert!(Poly::zero().is_zero());
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::monomial(Complex64::ONE, 3).degree(), Some(3));
    }

    #[test]
    fn eval_matches_power_sums() {
        let p = Poly::new(vec![
            Complex64::new(1.0, -2.0),
            Complex64::new(0.5, 0.25),
            Complex64::new(-3.0, 1.0),
            Complex64::new(0.0, 2.0),
        ]);
        for z in [
            Complex64::new(0.3, -0.7),
            Complex64::new(-1.2, 0.1),
            Complex64::ZERO,
        ] {
            let got = p.eval(z);
            let want = naive_eval(p.coeffs(), z);
            assert_relative_eq!(got.re, want.re, epsilon = 1e-12, max_relative = 1e-12);
            assert_relative_eq!(got.im, want.im, epsilon = 1e-12, max_relative = 1e-12);
        }
    }

    #[test]
    fn grid_values_match_pointwise_eval() {
        let p = Poly::from_real(&[1.0, 2.0]);
        let samples = p.evaluate_on_grid(8).unwrap();
        for k in 0..8 {
            let want = naive_eval(p.coeffs(), samples.node(k));
            let got = samples.values()[k];
            assert_relative_eq!(got.re, want.re, epsilon = 1e-14);
            assert_relative_eq!(got.im, want.im, epsilon = 1e-14);
        }
    }

    #[test]
    fn flipped_factor_has_mirrored_gain() {
        // |1 + 2 e^{i t}| = |2 + e^{-i t}|, so the gains of 1+2z and 2+z
        // agree after reversing the node order.
        let p = Poly::from_real(&[1.0, 2.0]).evaluate_on_grid(8).unwrap();
        let q = Poly::from_real(&[2.0, 1.0]).evaluate_on_grid(8).unwrap();
        for k in 0..8 {
            let mirrored = q.values()[(8 - k) % 8].norm();
            assert_relative_eq!(p.values()[k].norm(), mirrored, epsilon = 1e-13);
        }
    }

    #[test]
    fn grid_requires_power_of_two_above_degree() {
        let p = Poly::from_real(&[1.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            p.evaluate_on_grid(12),
            Err(Error::InvalidGrid { .. })
        ));
        assert!(matches!(
            p.evaluate_on_grid(2),
            Err(Error::InvalidGrid { .. })
        ));
        assert!(p.evaluate_on_grid(4).is_ok());
    }

    #[test]
    fn grid_round_trip_recovers_taps() {
        let p = Poly::new(vec![
            Complex64::new(0.2, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(3.0, -0.5),
        ]);
        let samples = p.evaluate_on_grid(16).unwrap();
        let q = Poly::from_grid(&samples, 2);
        for n in 0..3 {
            assert_relative_eq!(q.coeff(n).re, p.coeff(n).re, epsilon = 1e-13);
            assert_relative_eq!(q.coeff(n).im, p.coeff(n).im, epsilon = 1e-13);
        }
    }

    #[test]
    fn h2_norm_is_parseval_mean() {
        let p = Poly::from_real(&[1.0, 2.0]);
        assert_relative_eq!(p.h2_norm_sq(), 5.0);

        // Independent oracle: the boundary mean of |2 + e^{i t}|^2 is 5.
        let q = Poly::from_real(&[2.0, 1.0]);
        let samples = q.evaluate_on_grid(64).unwrap();
        let mean: f64 = samples.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / 64.0;
        assert_relative_eq!(q.h2_norm_sq(), mean, epsilon = 1e-12);
    }

    #[test]
    fn projector_truncates_and_is_idempotent() {
        let p = Poly::from_real(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(p.project(1), Poly::from_real(&[1.0, 2.0]));
        assert_eq!(p.project(1).project(1), p.project(1));
        assert_eq!(p.project(9), p);
    }

    #[test]
    fn projector_commutation_instance() {
        // P_1(z * f) = P_1(z * P_1 f) for f = 1 + z + z^2: both sides are z.
        let f = Poly::from_real(&[1.0, 1.0, 1.0]);
        let u = Poly::monomial(Complex64::ONE, 1);
        let lhs = (&u * &f).project(1);
        let rhs = (&u * &f.project(1)).project(1);
        assert_eq!(lhs, Poly::from_real(&[0.0, 1.0]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn convolution_multiplies() {
        let a = Poly::from_real(&[1.0, 1.0]);
        let b = Poly::from_real(&[1.0, -1.0]);
        assert_eq!(&a * &b, Poly::from_real(&[1.0, 0.0, -1.0]));
        assert_eq!(&a * &Poly::zero(), Poly::zero());
    }

    #[test]
    fn from_roots_expands() {
        let r = [Complex64::new(0.5, 0.0), Complex64::new(-2.0, 0.0)];
        let p = Poly::from_roots(Complex64::new(3.0, 0.0), &r);
        // 3 (z - 1/2)(z + 2) = 3 z^2 + 4.5 z - 3
        assert_relative_eq!(p.coeff(0).re, -3.0);
        assert_relative_eq!(p.coeff(1).re, 4.5);
        assert_relative_eq!(p.coeff(2).re, 3.0);
    }

    #[test]
    fn roots_of_affine_poly() {
        let p = Poly::from_real(&[1.0, 2.0]);
        let roots = p.roots().unwrap();
        assert_eq!(roots.len(), 1);
        assert_relative_eq!(roots[0].re, -0.5, epsilon = 1e-14);
        assert_relative_eq!(roots[0].im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn roots_split_origin_factors() {
        // z^2 (z - 3) has a double origin root.
        let p = Poly::from_real(&[0.0, 0.0, -3.0, 1.0]);
        let mut roots = p.roots().unwrap();
        roots.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
        assert_eq!(roots[0], Complex64::ZERO);
        assert_eq!(roots[1], Complex64::ZERO);
        assert_relative_eq!(roots[2].re, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn double_root_is_clustered() {
        // (z - 0.5)^2 = 0.25 - z + z^2
        let p = Poly::from_real(&[0.25, -1.0, 1.0]);
        let roots = p.roots().unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0], roots[1]);
        assert_relative_eq!(roots[0].re, 0.5, epsilon = 1e-7);
        assert_relative_eq!(roots[0].im, 0.0, epsilon = 1e-7);
    }

    #[test]
    fn root_residuals_stay_small() {
        // Residual oracle on a fixed degree-12 polynomial with spread taps.
        let taps: Vec<Complex64> = (0..13)
            .map(|n| {
                let t = n as f64;
                Complex64::new((0.3 * t).sin() + 0.2, (0.7 * t).cos() - 0.1)
            })
            .collect();
        let p = Poly::new(taps);
        let roots = p.roots().unwrap();
        assert_eq!(roots.len(), 12);
        let scale = p.max_coeff_norm();
        for r in roots {
            let bound = 1e-8 * scale * (1.0 + r.norm()).powi(12);
            assert!(
                naive_eval(p.coeffs(), r).norm() <= bound,
                "residual too large at root {r}"
            );
        }
    }

    #[test]
    fn zero_poly_has_no_roots() {
        assert!(matches!(Poly::zero().roots(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(Poly::from_real(&[2.0, 1.0]).to_string(), "2 + 1·z");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
