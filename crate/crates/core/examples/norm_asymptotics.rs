//! Norms of the peaking polynomials q_m = ((1 + z)/2)^m in the Bloch space and
//! in Bergman spaces, compared against closed forms.
//!
//! Run with `cargo run --release --example norm_asymptotics`.

use wro::oracle::{
    bergman2_norm_sq_closed_form, bloch_norm, bloch_norm_closed_form, norm_asymptotics,
    BLOCH_CONSTANT_CLAIM,
};
use wro::weights::SpaceSpec;

fn main() -> wro::Result<()> {
    println!("Bloch: numerical maximum vs closed form");
    for m in [1, 10, 100, 1000] {
        println!("  m = {m:>5}: {:.12} {:.12}", bloch_norm(m), bloch_norm_closed_form(m));
    }
    println!("  2/e = {:.12}; claimed constant for m * norm: {BLOCH_CONSTANT_CLAIM:.6}", 2.0 / std::f64::consts::E);

    for (space, label) in [(SpaceSpec::Bergman { p: 2.0 }, "Bergman p=2"), (SpaceSpec::Bergman { p: 4.0 }, "Bergman p=4")] {
        println!("{label}: scaled norms along a geometric ladder");
        for s in norm_asymptotics(&space, 4096)? {
            println!("  m = {:>5}: ||q_m||_p^p {:.6e}, m^(3/2) times that {:.8}", s.m, s.norm, s.scaled);
        }
    }
    println!("Bergman p=2 closed form for ||q_4096||^2: {:.6e}", bergman2_norm_sq_closed_form(4096));
    Ok(())
}
