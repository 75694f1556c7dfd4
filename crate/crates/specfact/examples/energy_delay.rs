//! Robinson's energy delay theorem, scalar form.
//!
//! Filters with the same boundary gain have the same total energy, but the
//! minimum-phase one concentrates it earliest: every partial sum
//! E_N = sum_{n<=N} |a_n|^2 of the outer filter dominates that of any
//! equal-gain companion.
//!
//! Run with: cargo run --example energy_delay

use specfact::energy::{
    delay_ordering, energy_curve, generate_equal_gain_pair, scalar_tolerance, verify_energy_delay,
};
use specfact::poly::Poly;

fn main() -> specfact::Result<()> {
    // The canonical pair: f = 2 + z is outer, g = 1 + 2z has the same gain.
    let f = Poly::from_real(&[2.0, 1.0]);
    let g = Poly::from_real(&[1.0, 2.0]);
    println!("f = {f}   g = {g}");
    println!("energy curve of f: {:?}", energy_curve(&f).partials());
    println!("energy curve of g: {:?}", energy_curve(&g).partials());

    let report = verify_energy_delay(&f, &g, scalar_tolerance(energy_curve(&f).total()))?;
    println!("margins E_f(N) - E_g(N): {:?}", report.margins());
    println!(
        "min margin = {}, total gap = {}, verdict: {:?}",
        report.min_margin, report.total_gap, report.verdict
    );

    // Swapping the roles must fail: the non-outer filter cannot dominate.
    let swapped = verify_energy_delay(&g, &f, scalar_tolerance(5.0))?;
    println!(
        "swapped direction: min margin = {}, verdict: {:?}",
        swapped.min_margin, swapped.verdict
    );

    // Random equal-gain pairs: an outer f against a companion with some
    // zeros reflected inside and a random phase. The margins stay
    // nonnegative for every seed and degree.
    println!("\nseeded pairs (degree, min relative margin):");
    for seed in 0..8u64 {
        let degree = 2 + (seed as usize) * 4;
        let (f, g) = generate_equal_gain_pair(seed, degree);
        let total = energy_curve(&f).total();
        let report = verify_energy_delay(&f, &g, scalar_tolerance(total))?;
        println!(
            "  seed {seed}: degree {degree:2}  margin {:+.3e}  verdict {:?}",
            report.min_margin / total,
            report.verdict
        );
        assert!(report.passed());
    }

    // Ordering a family of equal-gain filters from most to least
    // front-loaded puts the outer one first and the fully delayed one last.
    let delayed = &Poly::monomial(1.0.into(), 1) * &f;
    let family = vec![g.clone(), delayed, f.clone()];
    let order = delay_ordering(&family)?;
    println!("\ndelay ordering (most front-loaded first): {order:?}");
    assert_eq!(order[0], 2);
    Ok(())
}
