//! Matrix spectral factorization by Bauer's block Toeplitz method.
//!
//! A uniformly positive definite density S = A A^H on the circle has an
//! outer factor F with F F^H = S, unique once F(0) is lower triangular with
//! positive diagonal. The certificate of outerness is the matrix analogue
//! of |f(0)| = exp(mean log |f|): equality of |det F(0)| with the geometric
//! mean of sqrt(det S).
//!
//! Run with: cargo run --example spectral_factorization

use nalgebra::DMatrix;
use num_complex::Complex64;
use specfact::matfact::{
    blaschke_potapov_poly, factorization_residual, outer_certificate, para_hermitian_product,
    random_projection, spectral_factor_outer,
};
use specfact::matpoly::MatrixPoly;
use specfact::poly::Poly;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> specfact::Result<()> {
    // A genuinely mixed 2x2 polynomial matrix: constant mixing around a
    // diagonal core with zeros on both sides of the circle.
    let t0 = MatrixPoly::constant(DMatrix::from_row_slice(
        2,
        2,
        &[cx(1.0, 0.0), cx(0.4, -0.2), cx(-0.3, 0.1), cx(1.2, 0.0)],
    ));
    let t1 = MatrixPoly::constant(DMatrix::from_row_slice(
        2,
        2,
        &[cx(0.9, 0.0), cx(0.0, 0.5), cx(0.2, 0.0), cx(1.1, -0.3)],
    ));
    let core = MatrixPoly::diagonal(&[
        Poly::from_real(&[1.0, 2.0]),      // zero at -1/2, inside
        Poly::from_real(&[3.0, 0.0, 1.2]), // zeros outside
    ])?;
    let a = t0.multiply(&core)?.multiply(&t1)?;
    println!("A has degree {:?}, dim {}", a.degree(), a.dim());

    // Sample the density and factor it.
    let m = 256;
    let s = para_hermitian_product(&a, m)?;
    println!(
        "S = A A^H on {m} nodes: min eigenvalue {:.4}, sup norm {:.4}",
        s.min_eigenvalue(),
        s.sup_norm()
    );

    let f = spectral_factor_outer(&s, a.degree().unwrap())?;
    let residual = factorization_residual(&f, &s)?;
    println!(
        "outer factor F of degree {:?}, residual {residual:.3e}",
        f.degree()
    );

    // Normalization: F(0) lower triangular, positive diagonal.
    let f0 = f.coeff(0);
    println!("F(0) =");
    for r in 0..2 {
        println!(
            "  [{:+.6} {:+.6}i,  {:+.6} {:+.6}i]",
            f0[(r, 0)].re,
            f0[(r, 0)].im,
            f0[(r, 1)].re,
            f0[(r, 1)].im
        );
    }

    // Outer certificate: equality for F...
    let cert = outer_certificate(&f, &s)?;
    println!(
        "outer certificate: |det F(0)| = {:.9}, geometric mean = {:.9} (gap {:.3e})",
        cert.det_at_origin,
        cert.geometric_mean,
        cert.gap()
    );
    assert!(cert.is_outer(1e-6));

    // ...and a visible deficit for the same density carried by a delayed
    // factor F * U with U a Blaschke-Potapov factor at the origin.
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
    let p = random_projection(&mut rng, 2, 1);
    let delayed = f.multiply(&blaschke_potapov_poly(&p)?)?;
    let cert_delayed = outer_certificate(&delayed, &s)?;
    println!(
        "delayed factor: |det G(0)| = {:.3e} < geometric mean = {:.9}",
        cert_delayed.det_at_origin, cert_delayed.geometric_mean
    );
    assert!(!cert_delayed.is_outer(1e-2));

    // Sanity check on a diagonal density: the factor is diagonal and each
    // entry is the scalar minimum-phase equivalent.
    let diag = MatrixPoly::diagonal(&[Poly::from_real(&[1.0, 2.0]), Poly::from_real(&[2.0, 1.0])])?;
    let s_diag = para_hermitian_product(&diag, 64)?;
    let f_diag = spectral_factor_outer(&s_diag, 1)?;
    println!("\ndiagonal density factors entrywise:");
    println!("  F[0][0] = {}", f_diag.entry(0, 0));
    println!("  F[1][1] = {}", f_diag.entry(1, 1));
    println!(
        "  off-diagonal sup tap = {:.3e}",
        f_diag
            .entry(0, 1)
            .max_coeff_norm()
            .max(f_diag.entry(1, 0).max_coeff_norm())
    );
    Ok(())
}
