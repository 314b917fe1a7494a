//! Draw a spectral report with a pseudospectrum layer as SVG.
//!
//! Run with `cargo run --example plot_svg`.

use wro::classify::classify;
use wro::cli::render_svg;
use wro::oracle::{adapted_radii, build_truncation, pseudospectrum_scan};
use wro::weights::{RotationAngle, SpaceSpec, Weight};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = SpaceSpec::AnnulusHardy { inner_radius: 0.5, p: 2.0 };
    let w = Weight::from_real(&[-0.75, 1.0])?;
    let report = classify(&space, &w, &RotationAngle::golden().into())?;

    // the annulus has no matrix model; overlay the disc picture for the same weight
    let disc = SpaceSpec::HardyBanach;
    let t = build_truncation(&disc, &w, &RotationAngle::golden(), 64)?;
    let grid = pseudospectrum_scan(&t, &adapted_radii(&report.predicted_radii()), 48)?;

    let svg = render_svg(Some(&report), Some(&grid))?;
    let path = std::env::temp_dir().join("wro_annulus.svg");
    std::fs::write(&path, svg)?;
    println!("wrote {}", path.display());
    Ok(())
}
