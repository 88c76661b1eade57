//! Counts stationary points of the transformed oscillator series as the
//! truncation order grows.
//!
//! Low truncations have a monotone transform with nothing to truncate at;
//! the first stationary point appears at order 11, even orders can carry
//! a minimum-maximum pair, and high odd orders grow extra inflection-like
//! roots ahead of the plateau edge. The edge is always the largest root.
//!
//! Run with `cargo run --release --example stationary_points`.

use resum::error::Result;
use resum::precision::Ctx;
use resum::report::format_number;
use resum::series::{anharmonic_series_from, cache_read};
use resum::transform::heaviside_transform;
use resum::engine::find_stationary_points;
use rug::Rational;
use std::path::Path;

fn main() -> Result<()> {
    let ctx = Ctx::new(80);
    let beta = Rational::from(2);
    let coeffs = cache_read(Path::new(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/anh_coeffs_249.txt"
    )))?;

    for order in [9u32, 11, 28, 101] {
        let series = anharmonic_series_from(&ctx, &coeffs, order, &beta)?;
        let hs = heaviside_transform(&ctx, &series)?;
        let points = find_stationary_points(&ctx, &hs, None)?;
        println!("order {order:>3}: {} stationary point(s)", points.len());
        for p in &points {
            println!(
                "    x* = {:<18} value = {:<20} residual {}",
                format_number(&p.x_star, 15),
                format_number(&p.value, 17),
                format_number(&p.residual, 3)
            );
        }
    }
    Ok(())
}
