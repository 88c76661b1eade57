//! Transforms a divergent partial sum and walks across its plateau.
//!
//! The order-7 weak-coupling expansion of the model integral diverges
//! factorially, yet its cut-off transform settles on a flat stretch whose
//! height approximates the zero-coupling limit Γ(1/4)/2 to five digits.
//!
//! Run with `cargo run --release --example transform_plateau`.

use resum::engine::{find_stationary_points, select_x_star};
use resum::error::Result;
use resum::precision::Ctx;
use resum::report::format_number;
use resum::series::{build_series, Model};
use resum::transform::heaviside_transform;
use rug::Rational;

fn main() -> Result<()> {
    let ctx = Ctx::new(40);
    let beta = Rational::from(2);
    let series = build_series(&ctx, Model::NonGaussian, 7, &beta)?;
    let hs = heaviside_transform(&ctx, &series)?;

    let exact = ctx.gamma(&ctx.real("0.25"))? / 2u32;
    println!("zero-coupling limit  {}", format_number(&exact, 20));
    println!();
    println!("{:>6}  {:>22}", "x", "transformed sum");
    for k in 1..=8u32 {
        let x = ctx.from_u64(k as u64) / 2u32;
        let v = hs.evaluate(&ctx, &x)?;
        println!("{:>6}  {:>22}", format_number(&x, 3), format_number(&v, 18));
    }

    let points = find_stationary_points(&ctx, &hs, None)?;
    let edge = select_x_star(&points)?;
    let value = hs.evaluate(&ctx, &edge.x_star)?;
    let gap = (value.clone() - &exact).abs();
    println!();
    println!("plateau edge x*      {}", format_number(&edge.x_star, 18));
    println!("value at the edge    {}", format_number(&value, 18));
    println!("distance from limit  {}", format_number(&gap, 4));
    Ok(())
}
