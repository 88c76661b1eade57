//! Pushes the oscillator resummation to order 249 and recovers the
//! massless ground energy to ten digits.
//!
//! At this depth the transformed series develops three stationary points;
//! the plateau edge (the largest) sits near x* ≈ 3 and creeps outward
//! only slowly with the order, so the plateau stays narrow.
//!
//! Run with `cargo run --release --example large_order`.

use resum::engine::find_stationary_points;
use resum::error::Result;
use resum::oracles::E0_EXACT;
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
    let order = 249u32;
    let series = anharmonic_series_from(&ctx, &coeffs, order, &beta)?;
    let hs = heaviside_transform(&ctx, &series)?;

    let exact = ctx.real(E0_EXACT);
    println!("massless ground energy  {}", format_number(&exact, 22));
    println!();

    let points = find_stationary_points(&ctx, &hs, None)?;
    println!("{} stationary points at order {order}:", points.len());
    for p in &points {
        let gap = (p.value.clone() - &exact).abs();
        println!(
            "  x* = {:<14} value = {:<24} off by {}",
            format_number(&p.x_star, 12),
            format_number(&p.value, 22),
            format_number(&gap, 3)
        );
    }

    let edge = points.last().expect("largest stationary point");
    println!();
    println!("plateau edge  {}", format_number(&edge.x_star, 14));
    Ok(())
}
