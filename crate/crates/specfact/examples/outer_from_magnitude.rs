//! Recovering an outer filter from magnitude-only data.
//!
//! Given strictly positive samples w_j ~ |f(e^{i theta_j})|^2, the cepstral
//! construction exp(Schwarz integral of log w / 2) produces the unique outer
//! function with that gain, normalized positive at the origin. Phase
//! information in the data is irrelevant by design: any equal-gain input
//! yields the same outer filter.
//!
//! Run with: cargo run --example outer_from_magnitude

use num_complex::Complex64;
use specfact::poly::Poly;
use specfact::scalar::{default_cepstral_degree, minimum_phase_equivalent, outer_from_magnitude};

fn main() -> specfact::Result<()> {
    // An outer filter with a few spread-out exterior zeros.
    let q = Poly::from_roots(
        Complex64::new(0.8, 0.0),
        &[
            Complex64::new(1.3, 0.4),
            Complex64::new(-1.6, 0.2),
            Complex64::new(0.1, -1.5),
        ],
    );
    let q = {
        // Normalize q(0) > 0, matching the recovery convention.
        let q0 = q.coeff(0);
        q.scale(q0.conj() / q0.norm())
    };
    println!("target outer filter: q = {q}");

    // Magnitude-only boundary data.
    let m = 4096;
    let w = q.evaluate_on_grid(m)?.map(|v| v.norm_sqr());
    println!("data: {m} samples of |q|^2, phase discarded");

    let k = default_cepstral_degree(q.degree().unwrap_or(0));
    let recovered = outer_from_magnitude(&w, k)?;
    let err = (0..=k)
        .map(|n| (recovered.coeff(n) - q.coeff(n)).norm())
        .fold(0.0, f64::max);
    println!("recovered degree-{k} filter; max tap error = {err:.3e}");

    // Phase blindness: feeding the magnitude of a non-outer equal-gain
    // filter returns the same outer q.
    let delayed_flipped = {
        let with_delay = &Poly::monomial(Complex64::ONE, 2) * &q;
        let mut roots = with_delay.roots()?;
        // Flip one exterior zero inside at equal gain.
        for r in roots.iter_mut() {
            if r.norm() > 1.0 {
                *r = 1.0 / r.conj();
                break;
            }
        }
        Poly::from_roots(Complex64::new(2.1, 0.3), &roots)
    };
    let w2 = delayed_flipped.evaluate_on_grid(m)?.map(|v| v.norm_sqr());
    let outer2 = outer_from_magnitude(&w2, k)?;
    // Same shape up to the overall gain of the scrambled filter.
    let ratio = outer2.coeff(0).re / q.coeff(0).re;
    let err2 = (0..=k)
        .map(|n| (outer2.coeff(n) - q.coeff(n) * Complex64::from(ratio)).norm())
        .fold(0.0, f64::max)
        / ratio;
    println!("recovery from a delayed, zero-flipped equal-shape input: max tap error = {err2:.3e}");

    // Cross-check against root reflection on exact coefficients.
    let reflected = minimum_phase_equivalent(&delayed_flipped)?;
    println!("root-reflection agrees: {}", reflected);
    Ok(())
}
