//! Explicit approximate eigenvectors: the residual of the smoothed peaking
//! construction at a point of the approximate point spectrum, and the
//! smoothing identity it is built on.
//!
//! Run with `cargo run --example residual`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use wro::oracle::{
    check_smoothing_identity, default_concentration, singular_sequence_residual,
    smoothing_deviation_shifted_exponents,
};
use wro::weights::{RotationAngle, SpaceSpec, Weight};

fn main() -> wro::Result<()> {
    let space = SpaceSpec::HardyBanach;
    let w = Weight::from_real(&[-1.0, 1.0])?; // z - 1, spectrum the closed unit disc
    let rotation = RotationAngle::golden().into();
    let lambda = Complex64::new(1.0, 0.0);

    for m in [4, 16, 64] {
        let n = default_concentration(m);
        let r = singular_sequence_residual(&space, &w, &rotation, lambda, m, n)?;
        println!("m = {m:>3}, n = {n:>6}: residual {:.4} at base point {:.6} turns", r.residual, r.witness_turns);
    }

    // the algebraic identity behind the construction, on a small random-ish matrix
    let t = DMatrix::from_fn(5, 5, |i, j| Complex64::new(((i * 7 + j * 3) % 5) as f64 / 10.0, (i as f64 - j as f64) / 20.0));
    for n in [1, 3, 6] {
        println!(
            "n = {n}: identity deviation {:.2e}, with the exponents shifted {:.2e}",
            check_smoothing_identity(&t, 0.5, n)?,
            smoothing_deviation_shifted_exponents(&t, 0.5, n)?
        );
    }
    Ok(())
}
