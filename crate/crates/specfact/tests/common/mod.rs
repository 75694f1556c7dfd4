//! Shared oracles and helpers for the integration suites. Oracles are
//! deliberately naive (power sums, direct convolution, brute-force partial
//! sums) so they cannot share bugs with the library's FFT paths.

#![allow(dead_code)]

use std::path::PathBuf;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use specfact::poly::Poly;

/// Direct power-sum evaluation.
pub fn naive_eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(n, &c)| c * z.powu(n as u32))
        .sum()
}

/// Direct convolution of coefficient slices.
pub fn naive_convolve(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Brute-force partial energies.
pub fn brute_partials(coeffs: &[Complex64]) -> Vec<f64> {
    (0..coeffs.len())
        .map(|n| coeffs[..=n].iter().map(|c| c.norm_sqr()).sum())
        .collect()
}

/// Largest gain difference between two polynomials over `m` nodes, computed
/// by direct evaluation (no FFT).
pub fn naive_gain_defect(a: &Poly, b: &Poly, m: usize) -> f64 {
    (0..m)
        .map(|k| {
            let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64);
            (naive_eval(a.coeffs(), z).norm() - naive_eval(b.coeffs(), z).norm()).abs()
        })
        .fold(0.0, f64::max)
}

/// Seeded polynomial whose zero moduli avoid the annulus
/// `[1 - margin, 1 + margin]`, with bounded exterior moduli so coefficients
/// stay moderate.
pub fn margined_poly(rng: &mut ChaCha8Rng, degree: usize, margin: f64) -> Poly {
    let tau = std::f64::consts::TAU;
    let zeros: Vec<Complex64> = (0..degree)
        .map(|_| {
            let modulus = if rng.random_bool(0.5) {
                rng.random_range(0.10..(1.0 - margin))
            } else {
                rng.random_range((1.0 + margin)..1.40)
            };
            Complex64::from_polar(modulus, rng.random_range(0.0..tau))
        })
        .collect();
    let lead = Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..tau));
    Poly::from_roots(lead, &zeros)
}

/// Fresh scratch directory under the system temp dir.
pub fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("specfact-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("create scratch dir");
    dir
}
