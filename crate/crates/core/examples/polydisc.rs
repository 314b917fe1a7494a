//! Weights of several variables on the polydisc algebra.
//!
//! Run with `cargo run --example polydisc`.

use num_complex::Complex64;
use wro::classify::{classify, polydisc::{lift, polydisc_invertible, torus_invertible}, SetName};
use wro::ergodic::torus_geometric_mean;
use wro::weights::{
    MultiPolynomial, NamedIrrational, RegularityTag, Rotation, RotationAngle, RotationVector,
    SpaceSpec, Weight,
};

fn main() -> wro::Result<()> {
    let c = |x: f64| Complex64::new(x, 0.0);
    // 3 - z1 - z2: invertible on the closed bidisc
    let p = MultiPolynomial::new(2, vec![(vec![0, 0], c(3.0)), (vec![1, 0], c(-1.0)), (vec![0, 1], c(-1.0))])?;
    let w = Weight::multivariate(p.clone(), [RegularityTag::DiscAlgebra])?;
    println!("torus invertible: {:?}  polydisc invertible: {:?}", torus_invertible(&p)?, polydisc_invertible(&p)?);
    println!("torus geometric mean: {:.10}", torus_geometric_mean(&w, 2)?);

    let rotation = Rotation::Vector(RotationVector::new(
        vec![RotationAngle::golden(), RotationAngle::Named(NamedIrrational::Sqrt2)],
        vec![],
    )?);
    let r = classify(&SpaceSpec::PolydiscAlgebra { dim: 2 }, &w, &rotation)?;
    println!("sigma = {}", r.get(SetName::Sigma).components);

    // a one-variable weight lifted to the bidisc
    let z_minus_half = Weight::from_real(&[-0.5, 1.0])?;
    let lifted = lift(&z_minus_half, 2)?;
    println!("lifted z - 1/2: polydisc invertible {:?}", polydisc_invertible(&lifted)?);
    let r = classify(&SpaceSpec::PolydiscAlgebra { dim: 2 }, &z_minus_half, &rotation)?;
    for name in SetName::ALL {
        println!("  {:<9} {}", name.as_str(), r.get(name).components);
    }
    Ok(())
}
