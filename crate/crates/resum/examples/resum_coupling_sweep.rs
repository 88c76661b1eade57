//! Resums the model integral across six decades of coupling and checks
//! every value against adaptive quadrature.
//!
//! The approximant splits into a perturbative part and a correction; the
//! two must re-add to the total exactly. At weak coupling the correction
//! is negligible, at strong coupling it carries everything.
//!
//! Run with `cargo run --release --example resum_coupling_sweep`.

use resum::engine::{approximant, find_stationary_points, select_x_star};
use resum::error::Result;
use resum::oracles::z_exact;
use resum::precision::Ctx;
use resum::report::format_number;
use resum::series::{build_series, Model};
use resum::transform::heaviside_transform;
use rug::Rational;

fn main() -> Result<()> {
    let ctx = Ctx::new(60);
    let beta = Rational::from(2);
    let series = build_series(&ctx, Model::NonGaussian, 15, &beta)?;
    let hs = heaviside_transform(&ctx, &series)?;
    let edge = select_x_star(&find_stationary_points(&ctx, &hs, None)?)?.clone();

    println!(
        "{:>8}  {:>24}  {:>24}  {:>10}",
        "m^2", "resummed", "quadrature", "rel err"
    );
    for m2s in ["0.01", "0.1", "1", "10", "100", "1000"] {
        let m2 = ctx.real(m2s);
        let r = approximant(&ctx, &series, &hs, &edge.x_star, &m2)?;
        let oracle = z_exact(&ctx, &m2)?;
        let rel = ((r.total.clone() - &oracle.value) / &oracle.value).abs();
        println!(
            "{:>8}  {:>24}  {:>24}  {:>10}",
            m2s,
            format_number(&r.total, 20),
            format_number(&oracle.value, 20),
            format_number(&rel, 3)
        );
    }

    let m2 = ctx.one();
    let r = approximant(&ctx, &series, &hs, &edge.x_star, &m2)?;
    let readd = (r.perturbative_part.clone() + &r.correction_part - &r.total).abs();
    println!();
    println!("split at m^2 = 1:");
    println!("  perturbative  {}", format_number(&r.perturbative_part, 20));
    println!("  correction    {}", format_number(&r.correction_part, 20));
    println!("  re-add error  {}", format_number(&readd, 3));
    Ok(())
}
