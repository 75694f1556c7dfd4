//! Inner-outer factorization of a scalar polynomial.
//!
//! Every polynomial splits as p = B * q with B a finite Blaschke product
//! (the inner part: unimodular on the circle, carrying the interior zeros)
//! and q outer. The quotient of two equal-gain filters against the outer
//! reference is itself inner, which is how "all filters with this gain"
//! are parametrized.
//!
//! Run with: cargo run --example inner_outer

use num_complex::Complex64;
use specfact::poly::Poly;
use specfact::scalar::{inner_outer_factorize, inner_quotient, unitarity_defect};

fn main() -> specfact::Result<()> {
    // A filter with a delay, an interior zero and an exterior zero.
    let p = Poly::from_roots(
        Complex64::new(1.5, 0.0),
        &[
            Complex64::ZERO,
            Complex64::new(0.4, 0.3),
            Complex64::new(-1.8, 0.6),
        ],
    );
    println!("p = {p}");

    let m = 1024;
    let fact = inner_outer_factorize(&p, m)?;
    println!(
        "inner part: Blaschke product of degree {}",
        fact.inner.degree()
    );
    for z in fact.inner.zeros() {
        println!("  zero at {z} (|z| = {:.4})", z.norm());
    }
    println!(
        "  unimodular constant e^{{i phi}}, phi = {:.6}",
        fact.inner.phase()
    );
    println!("outer part: q = {}", fact.outer);

    // The Blaschke product is unimodular on the circle...
    let b_vals = fact.inner.evaluate_on_grid(m)?;
    println!(
        "sup | |B| - 1 | on the circle = {:.3e}",
        unitarity_defect(&b_vals)
    );

    // ...and the product B * q reproduces p itself, phase included.
    let recon = fact.evaluate_on_grid(m)?;
    let p_vals = p.evaluate_on_grid(m)?;
    let err = recon
        .values()
        .iter()
        .zip(p_vals.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("sup |B q - p| on the circle = {err:.3e}");

    // The quotient p / q against the outer part is exactly that inner
    // function, evaluated here on the grid.
    let u = inner_quotient(&p, &fact.outer, m)?;
    println!(
        "quotient u = p/q: sup | |u| - 1 | = {:.3e}",
        unitarity_defect(&u)
    );
    let b_err = u
        .values()
        .iter()
        .zip(b_vals.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("sup |u - B| on the circle = {b_err:.3e}");
    Ok(())
}
