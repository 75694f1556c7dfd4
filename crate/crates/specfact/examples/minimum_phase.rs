//! Minimum-phase construction for scalar filters.
//!
//! Starting from the pair 1 + 2z and 2 + z: both have the same gain
//! |1 + 2 e^{it}| = |2 + e^{it}| on the unit circle, but only 2 + z keeps
//! its zero outside the disk. Reflecting interior zeros across the circle
//! turns any polynomial into its outer (minimum-phase) equivalent, and the
//! outer one is singled out by equality in |f(0)| <= exp(mean log |f|).
//!
//! Run with: cargo run --example minimum_phase

use specfact::poly::Poly;
use specfact::scalar::{minimum_phase_equivalent, optimality_gap, paley_wiener_integral};

fn main() -> specfact::Result<()> {
    let p = Poly::from_real(&[1.0, 2.0]);
    println!("input filter:            p = {p}");
    println!("zeros of p:              {:?}", p.roots()?);

    // Reflect the interior zero -1/2 to its mirror -2.
    let q = minimum_phase_equivalent(&p)?;
    println!("minimum-phase equivalent q = {q}");
    println!("zeros of q:              {:?}", q.roots()?);

    // Same gain on the circle.
    let m = 4096;
    let pv = p.evaluate_on_grid(m)?;
    let qv = q.evaluate_on_grid(m)?;
    let gain_defect = pv
        .values()
        .iter()
        .zip(qv.values())
        .map(|(a, b)| (a.norm() - b.norm()).abs())
        .fold(0.0, f64::max);
    println!("sup | |p| - |q| | on the circle = {gain_defect:.3e}");

    // The outer optimality bound |f(0)| <= exp(mean log |f|) is strict for
    // p and an equality for q.
    let gp = optimality_gap(&p, m)?;
    let gq = optimality_gap(&q, m)?;
    println!(
        "p: |p(0)| = {:.6} vs geometric mean gain {:.6}  (gap {:.3e})",
        gp.value_at_zero,
        gp.geometric_mean_gain,
        gp.gap()
    );
    println!(
        "q: |q(0)| = {:.6} vs geometric mean gain {:.6}  (gap {:.3e})",
        gq.value_at_zero,
        gq.geometric_mean_gain,
        gq.gap()
    );
    assert!(!gp.is_outer(1e-10));
    assert!(gq.is_outer(1e-10));

    // The boundary log-gain is integrable for any nonzero polynomial, even
    // with zeros on the circle; here it is exactly log 2.
    let pw = paley_wiener_integral(&q, m)?;
    println!(
        "mean log |q| = {:.12} (log 2 = {:.12}), clipped nodes: {}",
        pw.mean_log_gain,
        2.0f64.ln(),
        pw.clipped_nodes
    );

    // A delay factor z drops out entirely: z (2 + z) -> 2 + z.
    let delayed = &Poly::monomial(1.0.into(), 1) * &q;
    let recovered = minimum_phase_equivalent(&delayed)?;
    println!("minimum-phase of z·({q}) = {recovered}");
    Ok(())
}
