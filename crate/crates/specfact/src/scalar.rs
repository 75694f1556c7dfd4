//! Scalar inner-outer machinery: Blaschke products, minimum-phase
//! equivalents, outer functions from magnitude data, and inner quotients.
//!
//! A polynomial is outer (minimum-phase) exactly when it has no zeros in the
//! open unit disk; among all transfer functions with the same boundary gain
//! it maximizes `|f(0)|`, with equality to `exp(mean log |f|)` reached only
//! in the outer case. The constructions here all work by splitting zeros
//! against the unit circle: a factor `(z - a)` and its reflection
//! `(1 - conj(a) z)` have identical gain on the circle, so reflecting the
//! interior zeros changes nothing measurable from outside while making the
//! function outer.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{GridSamples, ScalarSamples};
use crate::poly::Poly;
use crate::EQUAL_GAIN_TOL;

/// Zeros within this distance of the unit circle are snapped onto it and
/// kept in the outer factor; reflecting them would be numerically void.
pub const BOUNDARY_SNAP: f64 = 1e-9;

/// Finite Blaschke product `e^{i phase} prod_n b_{z_n}(z)` with zeros in the
/// open unit disk.
///
/// Each factor is normalized to be positive at the origin,
/// `b_a(z) = (|a|/a) (a - z) / (1 - conj(a) z)`, and an origin zero
/// contributes the factor `z` itself.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    zeros: Vec<Complex64>,
    phase: f64,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<Complex64>, phase: f64) -> Result<Self> {
        for &z in &zeros {
            let r = z.norm();
            if r.is_nan() || r >= 1.0 {
                return Err(Error::InvalidBlaschke { zero: z });
            }
        }
        Ok(Self { zeros, phase })
    }

    /// The identity inner function (empty product, phase zero).
    pub fn trivial() -> Self {
        Self {
            zeros: Vec::new(),
            phase: 0.0,
        }
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// The unimodular front constant `e^{i phase}`.
    pub fn constant(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phase)
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// Evaluation anywhere off the reflected pole set `1 / conj(zeros)`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = self.constant();
        for &a in &self.zeros {
            if a == Complex64::ZERO {
                acc *= z;
            } else {
                let front = Complex64::from_polar(1.0, -a.arg());
                acc *= front * (a - z) / (Complex64::ONE - a.conj() * z);
            }
        }
        acc
    }

    /// Boundary values on the unit circle, where the product is unimodular.
    pub fn evaluate_on_grid(&self, m: usize) -> Result<ScalarSamples> {
        crate::grid::check_grid_size(m)?;
        let probe = ScalarSamples::new(vec![Complex64::ZERO; m])?;
        let values = (0..m).map(|k| self.eval(probe.node(k))).collect();
        ScalarSamples::new(values)
    }
}

/// Inner-outer splitting `p(z) = B(z) * q(z)` of a polynomial: a Blaschke
/// product carrying the interior zeros and an outer polynomial `q` with
/// `q(0) > 0` carrying the gain.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarFactorization {
    pub inner: BlaschkeProduct,
    pub outer: Poly,
}

impl ScalarFactorization {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.inner.eval(z) * self.outer.eval(z)
    }

    /// Boundary values of the reconstructed product `B * q`.
    pub fn evaluate_on_grid(&self, m: usize) -> Result<ScalarSamples> {
        let b = self.inner.evaluate_on_grid(m)?;
        let q = self.outer.evaluate_on_grid(m)?;
        let values = b
            .values()
            .iter()
            .zip(q.values())
            .map(|(x, y)| x * y)
            .collect();
        ScalarSamples::new(values)
    }
}

/// Splits roots against the circle and rebuilds the outer polynomial:
/// interior roots are reflected (`(z - a)` becomes `(1 - conj(a) z)`, origin
/// roots drop out), near-circle roots are snapped onto the circle and kept,
/// exterior roots are kept. Returns the outer factor, normalized so that
/// `q(0) > 0`, together with the interior roots that were removed.
fn split_against_circle(p: &Poly) -> Result<(Poly, Vec<Complex64>)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let roots = p.roots()?;
    let leading = p.coeff(p.degree().expect("nonzero"));
    let mut q = Poly::constant(leading);
    let mut interior = Vec::new();
    for r in roots {
        let modulus = r.norm();
        if modulus <= 1.0 - BOUNDARY_SNAP {
            // Reflected factor; for r = 0 this is the constant 1.
            q = &q * &Poly::new(vec![Complex64::ONE, -r.conj()]);
            interior.push(r);
        } else if modulus < 1.0 + BOUNDARY_SNAP {
            let snapped = r / modulus;
            q = &q * &Poly::new(vec![-snapped, Complex64::ONE]);
        } else {
            q = &q * &Poly::new(vec![-r, Complex64::ONE]);
        }
    }
    let q0 = q.coeff(0);
    debug_assert!(q0 != Complex64::ZERO);
    Ok((q.scale(q0.conj() / q0.norm()), interior))
}

/// The outer polynomial with the same boundary gain as `p`.
///
/// The zeros of `p` strictly inside the disk are reflected across the circle
/// and exact origin zeros are removed, so the degree drops by the origin
/// multiplicity. The result is normalized to a positive value at the origin.
pub fn minimum_phase_equivalent(p: &Poly) -> Result<Poly> {
    split_against_circle(p).map(|(q, _)| q)
}

/// Full inner-outer factorization `p = B * q` with the unimodular constant
/// of `B` chosen so the product reproduces `p` itself, not just its gain.
///
/// `m` is the grid used to align the phase; it must resolve `p`.
pub fn inner_outer_factorize(p: &Poly, m: usize) -> Result<ScalarFactorization> {
    let (outer, interior) = split_against_circle(p)?;
    let mut inner = BlaschkeProduct::new(interior, 0.0)?;

    // Align the constant at the node where p is largest, away from zeros.
    let p_vals = p.evaluate_on_grid(m)?;
    let best = (0..m)
        .max_by(|&a, &b| {
            p_vals.values()[a]
                .norm()
                .total_cmp(&p_vals.values()[b].norm())
        })
        .expect("grid is nonempty");
    let z = p_vals.node(best);
    let ratio = p_vals.values()[best] / (inner.eval(z) * outer.eval(z));
    inner.phase = ratio.arg();
    Ok(ScalarFactorization { inner, outer })
}

/// Outer polynomial of degree `<= k` from strictly positive squared
/// magnitude samples `w_j ~ |f(e^{i theta_j})|^2`.
///
/// Cepstral construction: the Fourier coefficients `c` of `log w / 2` are
/// folded into the analytic completion `L = c_0 + 2 sum_{n>0} c_n z^n`
/// (Schwarz integral), `q = exp(L)` is evaluated on the nodes, and its
/// coefficient sequence is truncated at `k`. For `w = |q|^2 `with `q` outer
/// of degree `<= k` this recovers `q` up to the phase normalization
/// `q(0) > 0`, with spectral accuracy in the grid size.
pub fn outer_from_magnitude(w: &GridSamples<f64>, k: usize) -> Result<Poly> {
    let m = w.size();
    if m < 4 || 2 * (k + 1) > m {
        return Err(Error::InvalidGrid {
            size: m,
            reason: "grid too small for the requested outer degree",
        });
    }
    for (j, &v) in w.values().iter().enumerate() {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::PaleyWienerViolation { node: j, value: v });
        }
    }

    // Cepstrum of the half-log magnitude.
    let mut buf: Vec<Complex64> = w
        .values()
        .iter()
        .map(|&v| Complex64::new(0.5 * v.ln(), 0.0))
        .collect();
    crate::grid::forward_fft(&mut buf);
    let scale = 1.0 / m as f64;

    // Analytic completion weights: 1 at n = 0, 2 on 0 < n < M/2, 1 at the
    // Nyquist index, 0 on the reflected half.
    let half = m / 2;
    for (n, c) in buf.iter_mut().enumerate() {
        let weight = match n {
            0 => 1.0,
            n if n < half => 2.0,
            n if n == half => 1.0,
            _ => 0.0,
        };
        *c *= scale * weight;
    }
    crate::grid::inverse_fft(&mut buf);
    for v in buf.iter_mut() {
        *v = v.exp();
    }
    let q = Poly::from_grid(&ScalarSamples::new(buf)?, k);
    let q0 = q.coeff(0);
    Ok(q.scale(q0.conj() / q0.norm()))
}

/// Default truncation degree for [`outer_from_magnitude`] when the data
/// comes from a polynomial of known degree.
pub fn default_cepstral_degree(source_degree: usize) -> usize {
    (4 * source_degree).max(64)
}

/// Boundary samples of the quotient `u = g / f` for a minimum-phase `f`
/// with the same gain as `g`; the result is unimodular up to rounding.
///
/// Errors: `NotMinimumPhase` if `f` has a zero strictly inside the disk,
/// `NotComparable` if the gains differ beyond the relative equal-gain
/// tolerance, `SingularOnCircle` if `f` vanishes at a node.
pub fn inner_quotient(g: &Poly, f: &Poly, m: usize) -> Result<ScalarSamples> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    for r in f.roots()? {
        if r.norm() <= 1.0 - BOUNDARY_SNAP {
            return Err(Error::NotMinimumPhase { zero: r });
        }
    }
    let f_vals = f.evaluate_on_grid(m)?;
    let g_vals = g.evaluate_on_grid(m)?;
    let scale = f_vals.sup_norm();
    let defect = f_vals
        .values()
        .iter()
        .zip(g_vals.values())
        .map(|(a, b)| (a.norm() - b.norm()).abs())
        .fold(0.0, f64::max)
        / scale;
    if defect > EQUAL_GAIN_TOL {
        return Err(Error::NotComparable {
            defect,
            tol: EQUAL_GAIN_TOL,
        });
    }
    let mut values = Vec::with_capacity(m);
    for (k, (a, b)) in f_vals.values().iter().zip(g_vals.values()).enumerate() {
        if *a == Complex64::ZERO {
            return Err(Error::SingularOnCircle {
                node: k,
                cond: f64::INFINITY,
            });
        }
        values.push(b / a);
    }
    ScalarSamples::new(values)
}

/// Largest deviation of the sample moduli from 1.
pub fn unitarity_defect(samples: &ScalarSamples) -> f64 {
    samples
        .values()
        .iter()
        .map(|v| (v.norm() - 1.0).abs())
        .fold(0.0, f64::max)
}

/// The two sides of the outer optimality bound
/// `|f(0)| <= exp(mean log |f|)`, evaluated on an `m`-point grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalityGap {
    /// `|f(0)|`.
    pub value_at_zero: f64,
    /// `exp` of the boundary mean of `log |f|`.
    pub geometric_mean_gain: f64,
}

impl OptimalityGap {
    /// Slack in the bound; nonnegative up to quadrature error, zero exactly
    /// for outer functions.
    pub fn gap(&self) -> f64 {
        self.geometric_mean_gain - self.value_at_zero
    }

    /// Whether equality holds within a relative tolerance.
    pub fn is_outer(&self, tol: f64) -> bool {
        self.gap().abs() <= tol * self.geometric_mean_gain
    }
}

/// Evaluates both sides of the outer optimality bound for `p`.
pub fn optimality_gap(p: &Poly, m: usize) -> Result<OptimalityGap> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let samples = p.evaluate_on_grid(m)?;
    let mut log_sum = 0.0;
    for (k, v) in samples.values().iter().enumerate() {
        let r = v.norm();
        if r == 0.0 {
            return Err(Error::LogDivergence { node: k });
        }
        log_sum += r.ln();
    }
    Ok(OptimalityGap {
        value_at_zero: p.coeff(0).norm(),
        geometric_mean_gain: (log_sum / m as f64).exp(),
    })
}

/// Discretized Paley-Wiener log integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaleyWienerReport {
    /// Mean of `log |p|` over the grid, with vanishing nodes clamped.
    pub mean_log_gain: f64,
    /// Number of nodes clamped at the underflow floor.
    pub clipped_nodes: usize,
}

/// Boundary mean of `log |p|`; finite for every nonzero polynomial, which is
/// the discrete shadow of the Paley-Wiener integrability of `log |f*|`.
pub fn paley_wiener_integral(p: &Poly, m: usize) -> Result<PaleyWienerReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    const FLOOR: f64 = 1e-300;
    let samples = p.evaluate_on_grid(m)?;
    let mut clipped = 0;
    let mut log_sum = 0.0;
    for v in samples.values() {
        let r = v.norm();
        if r < FLOOR {
            clipped += 1;
            log_sum += FLOOR.ln();
        } else {
            log_sum += r.ln();
        }
    }
    Ok(PaleyWienerReport {
        mean_log_gain: log_sum / m as f64,
        clipped_nodes: clipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sup_gain_defect(a: &Poly, b: &Poly, m: usize) -> f64 {
        let av = a.evaluate_on_grid(m).unwrap();
        let bv = b.evaluate_on_grid(m).unwrap();
        av.values()
            .iter()
            .zip(bv.values())
            .map(|(x, y)| (x.norm() - y.norm()).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn blaschke_rejects_exterior_zero() {
        assert!(matches!(
            BlaschkeProduct::new(vec![cx(1.0, 0.0)], 0.0),
            Err(Error::InvalidBlaschke { .. })
        ));
        assert!(BlaschkeProduct::new(vec![cx(0.99, 0.0)], 0.0).is_ok());
    }

    #[test]
    fn blaschke_is_unimodular_on_circle() {
        let b =
            BlaschkeProduct::new(vec![Complex64::ZERO, cx(0.5, 0.0), cx(0.3, -0.4)], 1.25).unwrap();
        let vals = b.evaluate_on_grid(32).unwrap();
        assert!(unitarity_defect(&vals) < 1e-12);
    }

    #[test]
    fn blaschke_factor_is_positive_at_origin() {
        let a = cx(0.3, -0.4);
        let b = BlaschkeProduct::new(vec![a], 0.0).unwrap();
        let v = b.eval(Complex64::ZERO);
        assert_relative_eq!(v.re, 0.5, epsilon = 1e-15);
        assert_relative_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn origin_zero_contributes_plain_z() {
        let b = BlaschkeProduct::new(vec![Complex64::ZERO], 0.0).unwrap();
        let z = cx(0.2, 0.7);
        assert_eq!(b.eval(z), z);
    }

    #[test]
    fn canonical_pair_reflects_exactly() {
        // 1 + 2z has its zero at -1/2; reflecting gives 2 + z.
        let q = minimum_phase_equivalent(&Poly::from_real(&[1.0, 2.0])).unwrap();
        assert_relative_eq!(q.coeff(0).re, 2.0, epsilon = 1e-12);
        assert_relative_eq!(q.coeff(1).re, 1.0, epsilon = 1e-12);
        assert_relative_eq!(q.coeff(0).im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn origin_zeros_drop_degree() {
        // z(2 + z) loses its delay factor.
        let q = minimum_phase_equivalent(&Poly::from_real(&[0.0, 2.0, 1.0])).unwrap();
        assert_eq!(q.degree(), Some(1));
        assert_relative_eq!(q.coeff(0).re, 2.0, epsilon = 1e-12);
        assert_relative_eq!(q.coeff(1).re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn outer_input_is_fixed_point() {
        let p = Poly::from_real(&[2.0, 1.0]);
        let q = minimum_phase_equivalent(&p).unwrap();
        assert_relative_eq!(q.coeff(0).re, 2.0, epsilon = 1e-12);
        assert_relative_eq!(q.coeff(1).re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn min_phase_preserves_gain() {
        let p = Poly::new(vec![
            cx(0.4, -0.3),
            cx(1.0, 0.5),
            cx(-0.7, 0.2),
            cx(0.3, 0.9),
        ]);
        let q = minimum_phase_equivalent(&p).unwrap();
        let defect = sup_gain_defect(&p, &q, 64);
        assert!(
            defect < 1e-12 * p.max_coeff_norm().max(1.0),
            "defect {defect}"
        );
        // All zeros of q are outside or on the circle.
        for r in q.roots().unwrap() {
            assert!(r.norm() >= 1.0 - 1e-7, "zero {r} inside the disk");
        }
    }

    #[test]
    fn boundary_zero_is_kept_on_circle() {
        // (z - 1)(2 + z) has a circle zero that must survive.
        let p = &Poly::from_real(&[-1.0, 1.0]) * &Poly::from_real(&[2.0, 1.0]);
        let q = minimum_phase_equivalent(&p).unwrap();
        assert_eq!(q.degree(), Some(2));
        assert!(sup_gain_defect(&p, &q, 64) < 1e-11);
        let mut mods: Vec<f64> = q.roots().unwrap().iter().map(|r| r.norm()).collect();
        mods.sort_by(f64::total_cmp);
        assert_relative_eq!(mods[0], 1.0, epsilon = 1e-9);
    }

    #[test]
    fn factorization_reconstructs_input() {
        // Mixed zeros: one interior, one exterior, plus a delay.
        let p = &Poly::from_real(&[0.0, 1.0, 2.0]) * &Poly::from_real(&[2.0, 1.0]);
        let fact = inner_outer_factorize(&p, 64).unwrap();
        assert_eq!(fact.inner.degree(), 2); // origin zero + reflected zero
        let recon = fact.evaluate_on_grid(64).unwrap();
        let p_vals = p.evaluate_on_grid(64).unwrap();
        let err = recon
            .values()
            .iter()
            .zip(p_vals.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(
            err < 1e-10 * p_vals.sup_norm(),
            "reconstruction error {err}"
        );
        // The outer part is positive at the origin.
        let q0 = fact.outer.coeff(0);
        assert!(q0.re > 0.0 && q0.im.abs() < 1e-14 * q0.re);
    }

    #[test]
    fn cepstral_recovery_of_canonical_outer() {
        let q = Poly::from_real(&[2.0, 1.0]);
        let w = q.evaluate_on_grid(256).unwrap().map(|v| v.norm_sqr());
        let got = outer_from_magnitude(&w, 64).unwrap();
        for n in 0..=64 {
            let want = q.coeff(n);
            assert!(
                (got.coeff(n) - want).norm() < 1e-10,
                "tap {n}: {} vs {}",
                got.coeff(n),
                want
            );
        }
    }

    #[test]
    fn cepstral_recovery_ignores_input_phase() {
        // |1 + 2z| = |2 + z| on the circle, so both give the outer 2 + z.
        let w = Poly::from_real(&[1.0, 2.0])
            .evaluate_on_grid(256)
            .unwrap()
            .map(|v| v.norm_sqr());
        let got = outer_from_magnitude(&w, 32).unwrap();
        assert_relative_eq!(got.coeff(0).re, 2.0, epsilon = 1e-10);
        assert_relative_eq!(got.coeff(1).re, 1.0, epsilon = 1e-10);
        assert!(got.coeff(2).norm() < 1e-10);
    }

    #[test]
    fn cepstral_rejects_bad_input() {
        let mut w = vec![1.0; 16];
        w[3] = 0.0;
        let w = GridSamples::new(w).unwrap();
        assert!(matches!(
            outer_from_magnitude(&w, 4),
            Err(Error::PaleyWienerViolation { node: 3, .. })
        ));
        let w = GridSamples::new(vec![1.0; 16]).unwrap();
        assert!(matches!(
            outer_from_magnitude(&w, 8),
            Err(Error::InvalidGrid { .. })
        ));
    }

    #[test]
    fn quotient_of_delayed_signal_is_z() {
        let f = Poly::from_real(&[2.0, 1.0]);
        let g = Poly::from_real(&[0.0, 2.0, 1.0]);
        let u = inner_quotient(&g, &f, 16).unwrap();
        for k in 0..16 {
            let want = u.node(k);
            assert!((u.values()[k] - want).norm() < 1e-13);
        }
        assert!(unitarity_defect(&u) < 1e-13);
    }

    #[test]
    fn quotient_rejects_gain_mismatch() {
        let f = Poly::from_real(&[2.0, 1.0]);
        let g = Poly::from_real(&[1.0, 1.0]);
        assert!(matches!(
            inner_quotient(&g, &f, 16),
            Err(Error::NotComparable { .. })
        ));
    }

    #[test]
    fn quotient_rejects_non_outer_denominator() {
        let f = Poly::from_real(&[1.0, 2.0]);
        assert!(matches!(
            inner_quotient(&f.clone(), &f, 16),
            Err(Error::NotMinimumPhase { .. })
        ));
    }

    #[test]
    fn optimality_gap_separates_outer_from_delayed() {
        let outer = optimality_gap(&Poly::from_real(&[2.0, 1.0]), 4096).unwrap();
        assert_relative_eq!(outer.value_at_zero, 2.0);
        assert_relative_eq!(outer.geometric_mean_gain, 2.0, epsilon = 1e-12);
        assert!(outer.is_outer(1e-10));

        let flipped = optimality_gap(&Poly::from_real(&[1.0, 2.0]), 4096).unwrap();
        assert_relative_eq!(flipped.value_at_zero, 1.0);
        assert_relative_eq!(flipped.geometric_mean_gain, 2.0, epsilon = 1e-12);
        assert!(!flipped.is_outer(1e-10));
        assert_relative_eq!(flipped.gap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn paley_wiener_mean_matches_closed_form() {
        let report = paley_wiener_integral(&Poly::from_real(&[2.0, 1.0]), 4096).unwrap();
        assert_relative_eq!(report.mean_log_gain, 2.0f64.ln(), epsilon = 1e-12);
        assert_eq!(report.clipped_nodes, 0);
    }

    #[test]
    fn paley_wiener_counts_vanishing_nodes() {
        // 1 - z vanishes exactly at node 0.
        let report = paley_wiener_integral(&Poly::from_real(&[1.0, -1.0]), 64).unwrap();
        assert_eq!(report.clipped_nodes, 1);
        assert!(report.mean_log_gain < -5.0);
    }
}
