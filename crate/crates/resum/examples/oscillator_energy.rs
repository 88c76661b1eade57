//! Computes the quartic-oscillator ground energy from its divergent
//! weak-coupling expansion and checks it against a matrix eigenvalue.
//!
//! The resummed order-249 series tracks the exact ground energy over five
//! decades of mass, weak and strong coupling alike; the independent check
//! diagonalizes the Hamiltonian in a scaled oscillator basis.
//!
//! Run with `cargo run --release --example oscillator_energy`.

use resum::engine::{approximant, find_stationary_points, select_x_star};
use resum::error::Result;
use resum::oracles::aho_ground_energy;
use resum::precision::Ctx;
use resum::report::format_number;
use resum::series::{anharmonic_series_from, cache_read};
use resum::transform::heaviside_transform;
use rug::Rational;
use std::path::Path;

fn main() -> Result<()> {
    let ctx = Ctx::new(80);
    let beta = Rational::from(2);
    let coeffs = cache_read(Path::new(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/anh_coeffs_249.txt"
    )))?;
    let series = anharmonic_series_from(&ctx, &coeffs, 249, &beta)?;
    let hs = heaviside_transform(&ctx, &series)?;
    let edge = select_x_star(&find_stationary_points(&ctx, &hs, None)?)?.clone();

    println!(
        "{:>8}  {:>26}  {:>26}  {:>10}",
        "m^2", "resummed", "eigenvalue", "rel err"
    );
    for m2s in ["0.01", "0.1", "1", "10", "100"] {
        let m2 = ctx.real(m2s);
        let r = approximant(&ctx, &series, &hs, &edge.x_star, &m2)?;
        let oracle = aho_ground_energy(&ctx, &m2, 25)?;
        let rel = ((r.total.clone() - &oracle.value) / &oracle.value).abs();
        println!(
            "{:>8}  {:>26}  {:>26}  {:>10}",
            m2s,
            format_number(&r.total, 22),
            format_number(&oracle.value, 22),
            format_number(&rel, 3)
        );
    }
    Ok(())
}
