//! Finite sections of the weighted rotation, resolvent gaps and a
//! pseudospectrum scan written as CSV.
//!
//! Run with `cargo run --example pseudospectrum`.

use num_complex::Complex64;
use wro::classify::classify;
use wro::oracle::{adapted_radii, build_truncation, pseudospectrum_scan, resolvent_gap, truncation_rank};
use wro::weights::{RotationAngle, SpaceSpec, Weight};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = SpaceSpec::Bergman { p: 2.0 };
    let alpha = RotationAngle::golden();
    let w = Weight::from_real(&[-0.5, 1.0])?; // zero inside the disc

    let report = classify(&space, &w, &alpha.into())?;
    let radii = adapted_radii(&report.predicted_radii());
    println!("predicted radii {:?}\nscan radii {:?}", report.predicted_radii(), radii);

    // every section is triangular with |diagonal| = 1/2, so any rank loss comes
    // from singular values that are exponentially small in N
    for n in [32, 64, 128] {
        let t = build_truncation(&space, &w, &alpha, n)?;
        let inside = resolvent_gap(&t, Complex64::new(0.3, 0.1));
        let outside = resolvent_gap(&t, Complex64::new(2.0, 0.0));
        println!("N = {n:>3}: gap at 0.3+0.1i {inside:.3e}, gap at 2 {outside:.4}, rank {}", truncation_rank(&t)?);
    }

    let t = build_truncation(&space, &w, &alpha, 96)?;
    let grid = pseudospectrum_scan(&t, &radii, 32)?;
    let path = std::env::temp_dir().join("wro_pseudospectrum.csv");
    grid.write_csv(std::fs::File::create(&path)?)?;
    println!("{} samples written to {}", grid.samples.len(), path.display());
    Ok(())
}
