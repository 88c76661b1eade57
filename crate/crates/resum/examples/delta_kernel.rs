//! Shows the averaging-kernel reading of the transform at finite order.
//!
//! Term-wise, the transform acts on a power σ^ξ as a gamma-distributed
//! average that annihilates positive-integer powers exactly and tends to
//! the clean x^(-ξ)/Γ(1-ξ) replacement as the order grows. The kernel
//! concentrates in a relative window of width ~1/√order around its peak,
//! which is what turns the truncated sum into a local average.
//!
//! Run with `cargo run --release --example delta_kernel`.

use resum::delta::{dn_on_power, dn_vs_heaviside, kernel_mass};
use resum::error::Result;
use resum::precision::Ctx;
use resum::report::format_number;
use resum::series::Model;
use rug::Rational;

fn main() -> Result<()> {
    let ctx = Ctx::new(60);
    let order = 51u32;
    let omega2 = ctx.from_u64(order as u64);

    println!("power action at order {order}:");
    for (xi, label) in [
        (Rational::from(1), "1  "),
        (Rational::from((1, 2)), "1/2"),
        (Rational::from((-1, 2)), "-1/2"),
    ] {
        let action = dn_on_power(&ctx, order, &omega2, &xi)?;
        println!("  xi = {label}  ->  {}", format_number(&action, 15));
    }

    let mode = ctx.one();
    let half_width = ctx.from_u64(order as u64).sqrt().recip() * 3u32;
    let lo = mode.clone() * (ctx.one() - &half_width);
    let hi = mode.clone() * (ctx.one() + &half_width);
    let mass = kernel_mass(&ctx, order, &omega2, &lo, &hi)?;
    println!();
    println!(
        "kernel mass in [{}, {}]  =  {}",
        format_number(&lo, 5),
        format_number(&hi, 5),
        format_number(&mass, 8)
    );

    println!();
    println!("term-wise average against the transform (integral model):");
    for n in [11u32, 31, 51] {
        let om2 = ctx.from_u64(n as u64);
        let (lhs, rhs, reldiff) = dn_vs_heaviside(&ctx, n, &om2, Model::NonGaussian, None)?;
        println!(
            "  order {n:>2}: averaged {}  transformed {}  reldiff {}",
            format_number(&lhs, 16),
            format_number(&rhs, 16),
            format_number(&reldiff, 3)
        );
    }
    Ok(())
}
