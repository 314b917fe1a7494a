//! Geometric means on circles of radius r, zero location and the
//! invertibility profile of a weight.
//!
//! Run with `cargo run --example geometric_mean`.

use num_complex::Complex64;
use wro::analysis::{
    factorization_summary, find_zeros, geometric_mean, geometric_mean_quadrature,
    invertibility_profile, winding_number,
};
use wro::poly::Polynomial;
use wro::weights::Weight;

fn main() -> wro::Result<()> {
    // zeros at 1/2, 2i and -3
    let roots = [Complex64::new(0.5, 0.0), Complex64::new(0.0, 2.0), Complex64::new(-3.0, 0.0)];
    let w = Weight::from_polynomial(Polynomial::from_roots(Complex64::new(1.0, 0.0), &roots))?;

    // r = 0.5 passes through a zero, where the trapezoid rule meets log 0
    println!("{:>6} {:>16} {:>16}", "r", "Jensen", "quadrature");
    for r in [0.25, 0.4, 0.75, 1.0] {
        println!(
            "{r:>6.2} {:>16.12} {:>16.12}",
            geometric_mean(&w, r)?,
            geometric_mean_quadrature(&w, r)?
        );
    }

    println!("zeros in the closed unit disc:");
    for (z, mult) in find_zeros(&w, 1.0)? {
        println!("  {z:.6} (multiplicity {mult})");
    }
    println!("winding number on the circle: {}", winding_number(&w)?);
    println!("{:?}", invertibility_profile(&w));

    let f = factorization_summary(&w)?;
    println!(
        "Blaschke degree {}  |outer(0)| {:.6}  singular part {:?}",
        f.blaschke_degree(),
        f.outer_value_mod,
        f.singular_part_present
    );
    Ok(())
}
