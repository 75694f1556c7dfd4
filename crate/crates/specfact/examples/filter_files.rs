//! The on-disk filter format and the sweep runner, as used by the CLI.
//!
//! Filters travel as small JSON files: a dimension, an optional label and
//! the taps as [re, im] pairs (row-major d x d blocks per tap for matrix
//! filters). The sweep runner generates seeded equal-gain pairs, verifies
//! the energy delay theorem on each, certifies matrix quotients, and
//! reports a JSON summary; the `specfact sweep` subcommand is a thin shell
//! around exactly this call.
//!
//! Run with: cargo run --example filter_files

use specfact::harness::{run_sweep, FilterFile, FilterKind, RunConfig};
use specfact::poly::Poly;

fn main() -> specfact::Result<()> {
    // A canonical filter file, byte-stable under parse/serialize.
    let file = FilterFile::from_poly(
        &Poly::from_real(&[2.0, 1.0]),
        Some("canonical outer".into()),
    );
    let text = file.to_canonical_string();
    println!("canonical filter file:\n{text}");
    let reparsed = FilterFile::parse(&text)?;
    assert_eq!(reparsed.to_canonical_string(), text);
    match reparsed.kind()? {
        FilterKind::Scalar(p) => println!("parsed back: {p}\n"),
        FilterKind::Matrix(_) => unreachable!("dim = 1"),
    }

    // A small sweep: 40 scalar pairs up to degree 12, 6 matrix pairs in
    // dimensions 2 and 3. Everything is derived from the base seed, so the
    // summary is reproducible bit for bit.
    let config = RunConfig {
        scalar_cases: 40,
        scalar_max_degree: 12,
        matrix_cases: 6,
        matrix_max_degree: 3,
        matrix_max_factors: 2,
        grid_size: 512,
        ..RunConfig::default()
    };
    let summary = run_sweep(&config);
    println!(
        "sweep summary:\n{}",
        serde_json::to_string_pretty(&summary)?
    );
    assert!(summary.all_passed(), "failures: {:?}", summary.failures);

    // Tightening the tolerance to zero asks for margins at the exact
    // rounding floor; the summary stays well-formed either way.
    let strict = RunConfig {
        tol: Some(0.0),
        ..config
    };
    let strict_summary = run_sweep(&strict);
    println!(
        "with tol = 0: {}/{} cases at the exact floor, worst relative margin {:+.3e}",
        strict_summary.passes, strict_summary.cases, strict_summary.min_margin_worst
    );
    Ok(())
}
