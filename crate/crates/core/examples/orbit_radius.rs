//! Orbit products along an irrational rotation, the approximate point
//! spectrum membership test and the spectral radius formula.
//!
//! Run with `cargo run --example orbit_radius`.

use num_complex::Complex64;
use wro::ergodic::{ap_membership, group_rotation_radius, orbit_products, polynomial_radius};
use wro::weights::{RotationAngle, Weight};

fn main() -> wro::Result<()> {
    let w = Weight::from_real(&[-2.0, 1.0])?; // z - 2
    let alpha = RotationAngle::golden();

    let orbit = orbit_products(&w, &alpha, 0.1, 4096)?;
    for n in [16, 256, 4096] {
        let g = (orbit.forward_logs[n - 1] / n as f64).exp();
        println!("|w_{n}(k)|^(1/{n}) = {g:.8}");
    }

    for lambda in [1.5, 2.0, 2.5] {
        let v = ap_membership(&w, &alpha, Complex64::new(lambda, 0.0), 2048, 1024)?;
        println!("lambda = {lambda}: {:?} (margin {:.3e})", v.verdict, v.margin);
    }

    let poly = w.as_polynomial().unwrap();
    println!("radius from roots: {}", polynomial_radius(poly)?);

    // a rotation by 1/3 of a turn averages |w| over three points
    let third = RotationAngle::root_of_unity(1, 3)?;
    println!("radius for the cube-root rotation: {:.12}", group_rotation_radius(&w, &third.into())?);
    println!("9^(1/3)                            {:.12}", 9f64.cbrt());
    Ok(())
}
