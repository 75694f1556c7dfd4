//! The matrix energy delay theorem.
//!
//! For matrix transfer functions, "equal gain" means F F^H = G G^H on the
//! circle, and energy is measured in squared Frobenius norms of the Taylor
//! coefficients. The outer spectral factor again dominates every equal-gain
//! companion at all truncation lengths, and the quotient U = F^{-1} G is an
//! inner matrix function: unitary on the circle and analytic in the disk,
//! which the certificate checks numerically.
//!
//! Run with: cargo run --example matrix_energy_delay

use specfact::energy::{matrix_energy_curve, matrix_tolerance, verify_matrix_energy_delay};
use specfact::matfact::{generate_matrix_pair_case, inner_quotient_matrix};

fn main() -> specfact::Result<()> {
    // A seeded 3x3 pair: F the outer factor of a random density, G = F U Q
    // with two origin Blaschke-Potapov factors and a constant unitary.
    let case = generate_matrix_pair_case(2026, 3, 3, 2)?;
    println!(
        "F: degree {:?}, factorization residual {:.3e}",
        case.f.degree(),
        case.residual
    );
    println!("G = F U Q: degree {:?}", case.g.degree());

    let curve_f = matrix_energy_curve(&case.f);
    let curve_g = matrix_energy_curve(&case.g);
    println!("partial energies of F: {:?}", rounded(curve_f.partials()));
    println!("partial energies of G: {:?}", rounded(curve_g.partials()));

    let tol = matrix_tolerance(curve_f.total());
    let report = verify_matrix_energy_delay(&case.f, &case.g, tol)?;
    println!(
        "margins: {:?}\nmin margin = {:+.3e}, verdict {:?}",
        rounded(&report.margins()),
        report.min_margin,
        report.verdict
    );
    assert!(report.passed());

    // The quotient F^{-1} G is certified inner...
    let (_, cert) = inner_quotient_matrix(&case.f, &case.g, 512)?;
    println!(
        "quotient F^-1 G: unitarity defect {:.3e}, analytic defect {:.3e} -> {}",
        cert.max_unitarity_defect,
        cert.analytic_defect,
        if cert.passes() { "inner" } else { "NOT inner" }
    );
    assert!(cert.passes());

    // ...while the reversed quotient G^-1 F is unitary but anti-analytic:
    // its negative-frequency energy is exactly the delayed part.
    let (_, reversed) = inner_quotient_matrix(&case.g, &case.f, 512)?;
    println!(
        "reversed quotient: unitarity defect {:.3e}, analytic defect {:.3e} -> {}",
        reversed.max_unitarity_defect,
        reversed.analytic_defect,
        if reversed.passes() {
            "inner"
        } else {
            "NOT inner"
        }
    );
    assert!(!reversed.passes());

    // Swapping the theorem direction fails for the same reason.
    let swapped = verify_matrix_energy_delay(&case.g, &case.f, tol)?;
    println!(
        "swapped theorem direction: min margin {:+.3e}, verdict {:?}",
        swapped.min_margin, swapped.verdict
    );
    Ok(())
}

fn rounded(xs: &[f64]) -> Vec<f64> {
    xs.iter().map(|x| (x * 1e4).round() / 1e4).collect()
}
