//! Spectral reports for one weight on a range of spaces.
//!
//! Run with `cargo run --example classify_report`.

use wro::classify::{classify, invertibility_case, residual_index, SetName};
use wro::weights::{RotationAngle, SpaceSpec, Weight};

fn main() -> wro::Result<()> {
    let rotation = RotationAngle::golden().into();
    let spaces = [
        SpaceSpec::DiscAlgebra,
        SpaceSpec::Bergman { p: 2.0 },
        SpaceSpec::Bloch,
        SpaceSpec::EllOneA,
        SpaceSpec::AnnulusHardy { inner_radius: 0.5, p: 2.0 },
    ];
    for (label, coeffs) in [("z - 2", [-2.0, 1.0]), ("z - 1/2", [-0.5, 1.0]), ("z - 1", [-1.0, 1.0])] {
        let w = Weight::from_real(&coeffs)?;
        println!("== w = {label}  ({:?})", invertibility_case(&w)?);
        for space in &spaces {
            let r = classify(space, &w, &rotation)?;
            println!("  {}", space.name());
            for name in SetName::ALL {
                let e = r.get(name);
                println!("    {:<9} {:<40} [{}]", name.as_str(), describe(&e.status, &e.components), e.citation);
            }
            if let Ok(idx) = residual_index(space, &w, &rotation) {
                println!("    index on the residual disc: {}", serde_json::to_string(&idx).unwrap());
            }
            for flag in &r.open_flags {
                println!("    open: {} ({})", flag.problem, flag.aspect);
            }
        }
    }
    Ok(())
}

fn describe(status: &wro::classify::Status, set: &wro::classify::CircularSet) -> String {
    use wro::classify::Status;
    match status {
        Status::Exact => set.to_string(),
        Status::Bounds { lower, upper } => format!("between {lower} and {upper}"),
        Status::Unknown => "unknown".into(),
    }
}
