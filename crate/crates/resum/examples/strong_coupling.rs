//! Expands the transformed oscillator series around its plateau edge and
//! reads off the strong-coupling Taylor coefficients.
//!
//! The value at the edge approximates the massless ground energy; the
//! first derivative vanishes there by construction, so the series starts
//! with a quadratic correction and converges for nearby couplings.
//!
//! Run with `cargo run --release --example strong_coupling`.

use resum::engine::{find_stationary_points, select_x_star, strong_coupling_expansion};
use resum::error::Result;
use resum::oracles::E0_EXACT;
use resum::precision::Ctx;
use resum::report::format_number;
use resum::series::{anharmonic_series_from, cache_read};
use resum::transform::heaviside_transform;
use rug::Rational;
use std::path::Path;

fn main() -> Result<()> {
    let ctx = Ctx::new(60);
    let beta = Rational::from(2);
    let coeffs = cache_read(Path::new(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/anh_coeffs_249.txt"
    )))?;
    let series = anharmonic_series_from(&ctx, &coeffs, 9, &beta)?;
    let hs = heaviside_transform(&ctx, &series)?;
    let edge = select_x_star(&find_stationary_points(&ctx, &hs, None)?)?.clone();

    let alphas = strong_coupling_expansion(&ctx, &hs, &edge.x_star, 4)?;
    println!("plateau edge x*   {}", format_number(&edge.x_star, 17));
    for (k, a) in alphas.iter().enumerate() {
        println!("alpha_{k}/{k}!        {}", format_number(a, 15));
    }

    let exact = ctx.real(E0_EXACT);
    let gap = (alphas[0].clone() - &exact).abs();
    println!();
    println!("massless energy   {}", format_number(&exact, 17));
    println!("edge value gap    {}", format_number(&gap, 3));

    // the edge is stationary: the suppressed first derivative
    let slope = hs.derivative(&ctx, 1).evaluate(&ctx, &edge.x_star)?.abs();
    println!("first derivative  {}", format_number(&slope, 3));
    Ok(())
}
