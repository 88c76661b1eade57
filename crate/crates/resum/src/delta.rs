//! The averaging operator D_N behind the transform: its exact action on
//! powers, the Gamma-density kernel it converges to, and the numerical
//! bridge from term-wise averaging to the transformed series.
//!
//! D_N applied to (Ω²)^ξ gives the exact product (1−ξ)(2−ξ)⋯(N−ξ)/N! times
//! (Ω²)^ξ, which for large N behaves as (N/Ω²)^(−ξ)/Γ(1−ξ): term-wise
//! averaging of a truncated series therefore reproduces its transform
//! evaluated at x = N/Ω². Everything here is diagnostic; tolerances on the
//! asymptotic agreements are deliberately loose because the statements are
//! large-N ones. Only the massless series (σ = 0) enters.
//!
//! # Example
//! ```
//! use resum::precision::Ctx;
//! use resum::delta::dn_on_power;
//! use rug::Rational;
//!
//! let ctx = Ctx::new(40);
//! // a positive-integer power is annihilated exactly
//! let v = dn_on_power(&ctx, 12, &ctx.from_u64(3), &Rational::from(1)).unwrap();
//! assert!(v.is_zero());
//! ```

use crate::error::{Error, Result};
use crate::precision::{fmt_short, Ctx};
use crate::series::{anharmonic_series_from, build_series, Model};
use crate::transform::heaviside_transform;
use rug::{Float, Rational};

/// One sample of the averaging kernel Δ_{N,Ω²}(t) = (Ω²)^(N+1) t^N e^(−Ω²t)/N!.
///
/// The kernel is a Gamma density: nonnegative, unit mass, maximal at
/// t = N/Ω², with standard deviation/mean = 1/√(N+1).
#[derive(Debug, Clone)]
pub struct DeltaKernelSample {
    pub n: u32,
    pub omega2: Float,
    pub t: Float,
    pub value: Float,
}

fn check_positive(context: &'static str, name: &str, v: &Float) -> Result<()> {
    if v.is_sign_positive() && !v.is_zero() {
        Ok(())
    } else {
        Err(Error::Domain {
            context,
            detail: format!("{name} = {} must be positive", fmt_short(v)),
        })
    }
}

/// D_N applied to (Ω²)^ξ: the exact value (Ω²)^ξ · Π_{k=1..N} (k − ξ) / N!.
///
/// Positive-integer ξ ≤ N is annihilated exactly (the factor k = ξ
/// vanishes); ξ = 0 gives 1; for large N the value approaches
/// (Ω²/N)^ξ/Γ(1−ξ). The rational prefactor is computed exactly.
pub fn dn_on_power(ctx: &Ctx, n: u32, omega2: &Float, xi: &Rational) -> Result<Float> {
    if n < 1 {
        return Err(Error::Domain {
            context: "dn_on_power",
            detail: format!("N = {n} must be at least 1"),
        });
    }
    check_positive("dn_on_power", "omega2", omega2)?;
    let mut ratio = Rational::from(1);
    for k in 1..=n {
        ratio *= Rational::from(k) - xi;
        ratio /= Rational::from(k);
    }
    if ratio == 0 {
        return Ok(ctx.zero());
    }
    let power = ctx.powr(omega2, xi)?;
    Ok(ctx.from_rational(&ratio) * power)
}

/// The kernel value at t, evaluated in log space to stay finite at large N.
pub fn delta_kernel(ctx: &Ctx, n: u32, omega2: &Float, t: &Float) -> Result<DeltaKernelSample> {
    check_positive("delta_kernel", "omega2", omega2)?;
    check_positive("delta_kernel", "t", t)?;
    let g = ctx.guard(0);
    let ln_om2 = Float::with_val(g.bits(), omega2.ln_ref());
    let ln_t = Float::with_val(g.bits(), t.ln_ref());
    let ln_fact = g.ln_gamma(&g.from_u64(n as u64 + 1))?;
    let ln_v = ln_om2 * (n + 1) + ln_t * n - Float::with_val(g.bits(), omega2 * t) - ln_fact;
    Ok(DeltaKernelSample {
        n,
        omega2: omega2.clone(),
        t: t.clone(),
        value: ctx.settle(ln_v.exp()),
    })
}

/// Kernel mass on [t_lo, t_hi] via regularized incomplete gammas; t_lo is
/// clamped to 0. The total mass is exactly 1.
pub fn kernel_mass(ctx: &Ctx, n: u32, omega2: &Float, t_lo: &Float, t_hi: &Float) -> Result<Float> {
    check_positive("kernel_mass", "omega2", omega2)?;
    if t_hi < t_lo {
        return Err(Error::Domain {
            context: "kernel_mass",
            detail: "t_hi must be at least t_lo".into(),
        });
    }
    let g = ctx.guard(0);
    let p = g.from_u64(n as u64 + 1);
    let total = g.gamma(&p)?;
    let hi = Float::with_val(g.bits(), omega2 * t_hi);
    let mut mass = g.lower_incomplete_gamma(&p, &hi)?;
    if t_lo.is_sign_positive() && !t_lo.is_zero() {
        let lo = Float::with_val(g.bits(), omega2 * t_lo);
        mass -= g.lower_incomplete_gamma(&p, &lo)?;
    }
    Ok(ctx.settle(mass / total))
}

/// Term-wise averaging versus the transform: lhs applies D_N to each term
/// of the order-N series; rhs evaluates the transformed series at
/// x = N/Ω². Both converge to the same number as N grows at fixed N/Ω²;
/// returns (lhs, rhs, |lhs − rhs|/|rhs|).
///
/// N must be odd so x = N/Ω² can sit on a plateau.
pub fn dn_vs_heaviside(
    ctx: &Ctx,
    n: u32,
    omega2: &Float,
    model: Model,
    anh_coeffs: Option<&[Rational]>,
) -> Result<(Float, Float, Float)> {
    if n % 2 == 0 {
        return Err(Error::Domain {
            context: "dn_vs_heaviside",
            detail: format!("N = {n} must be odd"),
        });
    }
    check_positive("dn_vs_heaviside", "omega2", omega2)?;
    let beta = Rational::from(2);
    let series = match (model, anh_coeffs) {
        (Model::Anharmonic, Some(coeffs)) => anharmonic_series_from(ctx, coeffs, n, &beta)?,
        _ => build_series(ctx, model, n, &beta)?,
    };
    let hs = heaviside_transform(ctx, &series)?;
    let x = ctx.from_u64(n as u64) / omega2;
    let rhs = hs.evaluate(ctx, &x)?;
    let mut lhs = ctx.zero();
    for term in &series.terms {
        lhs += term.coeff.clone() * dn_on_power(ctx, n, omega2, &term.exponent)?;
    }
    let reldiff = Float::with_val(ctx.bits(), &lhs - &rhs).abs() / rhs.clone().abs();
    Ok((lhs, rhs, reldiff))
}
