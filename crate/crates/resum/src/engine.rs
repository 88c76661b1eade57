//! Stationary-point selection, the cut-off Laplace approximant, correction
//! diagnostics, convergence scaling, remainder bounds, and β-scans.
//!
//! The transformed series f̂_N(x) is reliable up to the largest root x* of
//! its derivative (the plateau edge). The approximant reconstructs f(σ) for
//! every σ from the plateau value and incomplete-gamma tail corrections:
//!
//! ```text
//! f_N(σ, x*) = e^(−σx*) f̂_N(x*) + Σ_n c_n γ(p_n+1, σx*) σ^(−p_n)
//! ```
//!
//! which splits exactly into the bare truncated series plus a correction
//! (upper-gamma) part.
//!
//! # Example
//! ```no_run
//! use resum::precision::Ctx;
//! use resum::series::{build_series, Model};
//! use resum::transform::heaviside_transform;
//! use resum::engine::{find_stationary_points, select_x_star};
//! use rug::Rational;
//!
//! let ctx = Ctx::new(60);
//! let s = build_series(&ctx, Model::NonGaussian, 15, &Rational::from(2)).unwrap();
//! let hs = heaviside_transform(&ctx, &s).unwrap();
//! let points = find_stationary_points(&ctx, &hs, None).unwrap();
//! let edge = select_x_star(&points).unwrap();
//! println!("plateau edge at x* = {}", edge.x_star);
//! ```

use crate::error::{Error, Result};
use crate::precision::{fmt_short, Ctx};
use crate::series::{
    anharmonic_series_from, beta_admissible, build_series, Model, PerturbationSeries,
};
use crate::transform::{heaviside_transform, HeavisideSeries};
use rug::{Float, Rational};

/// Bisection iteration cap per bracketed root.
const MAX_BISECT: usize = 400;

/// Newton polish steps after bisection.
const NEWTON_STEPS: usize = 4;

/// Points per unit order on the bracketing grid.
const GRID_PER_ORDER: usize = 64;

/// Relative bracket width at which bisection stops.
const BISECT_REL_WIDTH: &str = "1e-35";

/// A root of the transformed series' first derivative.
#[derive(Debug, Clone)]
pub struct StationaryPoint {
    pub x_star: Float,
    /// f̂_N at the root (plateau value).
    pub value: Float,
    /// 0-based rank among the roots, ascending in x.
    pub index: usize,
    /// |f̂_N'(x*)| after refinement.
    pub residual: Float,
    /// Enclosing interval with a derivative sign change (or the sampling
    /// cell, for a flagged tangency).
    pub bracket: (Float, Float),
    /// True when the derivative touched zero without changing sign.
    pub tangency: bool,
}

/// The approximant value with its exact decomposition.
#[derive(Debug, Clone)]
pub struct ApproximantResult {
    /// σ = (m²)^(β/2).
    pub sigma: Float,
    pub total: Float,
    /// Bare truncated series Σ a_n σ^(ξ_n) (over transformable terms).
    pub perturbative_part: Float,
    /// total − perturbative: the upper-incomplete-gamma tail restoration.
    pub correction_part: Float,
}

/// One β-scan row; `point` is None when neither parity has a root.
#[derive(Debug, Clone)]
pub struct BetaScanRow {
    pub beta: Rational,
    /// Which order in {N−1, N} produced the root.
    pub n_used: Option<u32>,
    pub point: Option<StationaryPoint>,
    /// β sits exactly on the model's convergence boundary.
    pub boundary: bool,
}

/// Finds all roots of f̂_N' on (10⁻⁴, x_max], ascending.
///
/// Default x_max is 2N/3 + 5 (the plateau-edge scaling plus margin). The
/// derivative is sampled on a geometric grid of 64·N points using one
/// multiplication per term per step; sign changes are bisected to relative
/// width 10⁻³⁵ and Newton-polished with the exact second derivative. An
/// empty result is normal (no plateau at this order/parity), not an error.
pub fn find_stationary_points(
    ctx: &Ctx,
    hs: &HeavisideSeries,
    x_max: Option<&Float>,
) -> Result<Vec<StationaryPoint>> {
    let order = hs.order.max(1) as usize;
    let xmax = match x_max {
        Some(x) => x.clone(),
        None => ctx.from_u64(2 * order as u64) / 3u32 + 5u32,
    };
    if !(xmax.is_sign_positive() && !xmax.is_zero()) {
        return Err(Error::Domain {
            context: "find_stationary_points",
            detail: "x_max must be positive".into(),
        });
    }
    let d1 = hs.derivative(ctx, 1);
    if d1.terms.is_empty() {
        return Ok(Vec::new());
    }
    let d2 = hs.derivative(ctx, 2);

    let grid = GRID_PER_ORDER * order;
    let x0 = ctx.real("1e-4");
    let ln_ratio = Float::with_val(ctx.bits(), (xmax.clone() / &x0).ln_ref()) / grid as u32;
    let ln_x0 = Float::with_val(ctx.bits(), x0.ln_ref());

    // Per-term geometric-step multipliers: term_n(x·r) = term_n(x) · r^p_n.
    let mut values: Vec<Float> = Vec::with_capacity(d1.terms.len());
    let mut mults: Vec<Float> = Vec::with_capacity(d1.terms.len());
    for (coeff, power) in &d1.terms {
        let pf = ctx.from_rational(power);
        values.push(coeff.clone() * Float::with_val(ctx.bits(), &pf * &ln_x0).exp());
        mults.push((pf * &ln_ratio).exp());
    }
    let eps = Float::with_val(ctx.bits(), 1) >> (ctx.bits() - 1);

    let mut out = Vec::new();
    let mut x_prev = x0.clone();
    let mut v_prev: Option<Float> = None;
    let mut noise_prev = ctx.zero();
    // cells (x_lo, x_hi, lo_sign) to refine; tangency cells carry lo_sign 0
    let mut cells: Vec<(Float, Float, i32)> = Vec::new();
    for j in 0..=grid {
        if j > 0 {
            for (v, m) in values.iter_mut().zip(mults.iter()) {
                *v *= m;
            }
        }
        let x = (ln_x0.clone() + ln_ratio.clone() * j as u32).exp();
        let mut sum = ctx.zero();
        let mut comp = ctx.zero();
        let mut mag = ctx.zero();
        for v in &values {
            mag += Float::with_val(ctx.bits(), v.abs_ref());
            let new_sum = Float::with_val(ctx.bits(), &sum + v);
            if sum.clone().abs() >= v.clone().abs() {
                comp += (sum - &new_sum) + v;
            } else {
                comp += (v.clone() - &new_sum) + &sum;
            }
            sum = new_sum;
        }
        let v = sum + comp;
        // accumulated recurrence drift after j steps plus summation floor
        let noise = mag * &eps * (j as u32 + 2);
        if let Some(prev) = &v_prev {
            let prev_sign = float_sign(prev);
            let cur_sign = float_sign(&v);
            if prev_sign != 0 && cur_sign != 0 && prev_sign != cur_sign {
                cells.push((x_prev.clone(), x.clone(), prev_sign));
            } else if cur_sign != 0
                && prev_sign == cur_sign
                && prev.clone().abs() <= noise_prev
                && j >= 2
            {
                // the previous sample was numerically zero with no sign
                // change around it: a tangency cell
                cells.push((x_prev.clone(), x.clone(), 0));
            } else if prev_sign == 0 {
                cells.push((x_prev.clone(), x.clone(), 0));
            }
        }
        x_prev = x;
        v_prev = Some(v);
        noise_prev = noise;
    }

    let width_stop = ctx.real(BISECT_REL_WIDTH);
    for (lo0, hi0, lo_sign) in cells {
        let point = if lo_sign == 0 {
            // tangency: report the cell midpoint without refinement
            let mid = (lo0.clone() + &hi0) / 2u32;
            let residual = d1.evaluate(ctx, &mid)?.abs();
            StationaryPoint {
                value: hs.evaluate(ctx, &mid)?,
                x_star: mid,
                index: 0,
                residual,
                bracket: (lo0, hi0),
                tangency: true,
            }
        } else {
            refine_root(ctx, &d1, &d2, hs, lo0, hi0, lo_sign, &width_stop)?
        };
        out.push(point);
    }
    out.sort_by(|a, b| a.x_star.partial_cmp(&b.x_star).unwrap());
    for (i, p) in out.iter_mut().enumerate() {
        p.index = i;
    }
    Ok(out)
}

fn float_sign(v: &Float) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_sign_positive() {
        1
    } else {
        -1
    }
}

/// Bisection to relative width, then clamped Newton with the exact second
/// derivative; falls back to the bisection midpoint if Newton leaves the
/// bracket (pair births make f̂'' nearly vanish between close roots).
fn refine_root(
    ctx: &Ctx,
    d1: &HeavisideSeries,
    d2: &HeavisideSeries,
    hs: &HeavisideSeries,
    mut lo: Float,
    mut hi: Float,
    lo_sign: i32,
    width_stop: &Float,
) -> Result<StationaryPoint> {
    let bracket = (lo.clone(), hi.clone());
    let mut converged = false;
    for _ in 0..MAX_BISECT {
        let mid = Float::with_val(ctx.bits(), &lo + &hi) / 2u32;
        let vm = d1.evaluate(ctx, &mid)?;
        let sm = float_sign(&vm);
        if sm == 0 {
            lo = mid.clone();
            hi = mid;
            converged = true;
            break;
        }
        if sm == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
        let width = Float::with_val(ctx.bits(), &hi - &lo);
        if width < Float::with_val(ctx.bits(), &hi * width_stop) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::RootRefinement {
            bracket: (fmt_short(&bracket.0), fmt_short(&bracket.1)),
        });
    }
    let mut x = Float::with_val(ctx.bits(), &lo + &hi) / 2u32;
    for _ in 0..NEWTON_STEPS {
        let f = d1.evaluate(ctx, &x)?;
        let fp = d2.evaluate(ctx, &x)?;
        if fp.is_zero() {
            break;
        }
        let next = x.clone() - f / fp;
        if next <= bracket.0 || next >= bracket.1 {
            break;
        }
        x = next;
    }
    let residual = d1.evaluate(ctx, &x)?.abs();
    Ok(StationaryPoint {
        value: hs.evaluate(ctx, &x)?,
        x_star: x,
        index: 0,
        residual,
        bracket,
        tangency: false,
    })
}

/// The plateau edge: the stationary point with maximal x*.
pub fn select_x_star(points: &[StationaryPoint]) -> Result<&StationaryPoint> {
    points.last().ok_or(Error::NoStationaryPoint)
}

/// Evaluates the cut-off Laplace approximant at coupling m².
///
/// σ = (m²)^(β/2) with β from the series; at β = 2, σ = m² exactly.
/// m² ≤ 0 returns the σ = 0 limit: the plateau value itself, with the
/// whole value carried in the correction part (the bare series has no
/// finite σ → 0 limit).
///
/// Terms the transform dropped (positive-integer powers of σ) belong to
/// neither part: their image is exactly zero.
pub fn approximant(
    ctx: &Ctx,
    series: &PerturbationSeries,
    hs: &HeavisideSeries,
    x_star: &Float,
    m2: &Float,
) -> Result<ApproximantResult> {
    let plateau = hs.evaluate(ctx, x_star)?;
    if !(m2.is_sign_positive() && !m2.is_zero()) {
        return Ok(ApproximantResult {
            sigma: ctx.zero(),
            total: plateau.clone(),
            perturbative_part: ctx.zero(),
            correction_part: plateau,
        });
    }
    let half_beta = Rational::from((1, 2)) * series.beta.clone();
    let sigma = ctx.powr(m2, &half_beta)?;
    let sx = Float::with_val(ctx.bits(), &sigma * x_star);
    let boundary = Float::with_val(ctx.bits(), (-sx.clone()).exp()) * &plateau;

    let mut total = boundary.clone();
    let mut pert = ctx.zero();
    let mut corr = boundary;
    for (coeff, power) in &hs.terms {
        let p_plus_1 = ctx.from_rational(&(power.clone() + Rational::from(1)));
        let scale = coeff.clone() * ctx.powr(&sigma, &-power.clone())?;
        let lower = ctx.lower_incomplete_gamma(&p_plus_1, &sx)?;
        let upper = ctx.upper_incomplete_gamma(&p_plus_1, &sx)?;
        total += scale.clone() * lower;
        // a_n σ^ξ_n = c_n Γ(p_n+1) σ^(−p_n): the bare series term
        pert += scale.clone() * ctx.gamma(&p_plus_1)?;
        corr -= scale * upper;
    }
    Ok(ApproximantResult { sigma, total, perturbative_part: pert, correction_part: corr })
}

/// Derivatives [b_1 … b_{i_max}] of f̂_N at x*; b_1 vanishes at a true
/// stationary point.
pub fn correction_coefficients(
    ctx: &Ctx,
    hs: &HeavisideSeries,
    x_star: &Float,
    i_max: u32,
) -> Result<Vec<Float>> {
    let mut out = Vec::with_capacity(i_max as usize);
    let mut d = hs.clone();
    for _ in 1..=i_max {
        d = d.derivative(ctx, 1);
        out.push(d.evaluate(ctx, x_star)?);
    }
    Ok(out)
}

/// Small-σ Taylor coefficients [α_0, α_1/1!, …, α_K/K!] recovered from the
/// plateau; partial sums Σ_k (α_k/k!) σ^k approximate f(σ) at small σ.
pub fn strong_coupling_expansion(
    ctx: &Ctx,
    hs: &HeavisideSeries,
    x_star: &Float,
    k_max: u32,
) -> Result<Vec<Float>> {
    let mut out = Vec::with_capacity(k_max as usize + 1);
    let mut factorial = ctx.one();
    for k in 0..=k_max {
        if k > 0 {
            factorial *= ctx.from_u64(k as u64);
        }
        out.push(hs.alpha_k(ctx, x_star, k)? / &factorial);
    }
    Ok(out)
}

/// Per-order plateau-edge scaling (N, x*², x*²/N) at β = 2.
///
/// For the integral model the ratio drifts toward its large-N limit just
/// below 0.28 (the 1/3 of the leading Stirling estimate overshoots).
pub fn scaling_diagnostic(
    ctx: &Ctx,
    model: Model,
    orders: &[u32],
    anh_coeffs: Option<&[Rational]>,
) -> Result<Vec<(u32, Float, Float)>> {
    let mut prev: Option<u32> = None;
    for &n in orders {
        if n % 2 == 0 {
            return Err(Error::Config { message: format!("order {n} is even") });
        }
        if let Some(p) = prev {
            if n <= p {
                return Err(Error::Config { message: "orders must ascend".into() });
            }
        }
        prev = Some(n);
    }
    let beta = Rational::from(2);
    let mut out = Vec::with_capacity(orders.len());
    for &n in orders {
        let series = match (model, anh_coeffs) {
            (Model::Anharmonic, Some(coeffs)) => anharmonic_series_from(ctx, coeffs, n, &beta)?,
            _ => build_series(ctx, model, n, &beta)?,
        };
        let hs = heaviside_transform(ctx, &series)?;
        let points = find_stationary_points(ctx, &hs, None)?;
        let edge = select_x_star(&points)?;
        let x2 = Float::with_val(ctx.bits(), edge.x_star.square_ref());
        let ratio = x2.clone() / ctx.from_u64(n as u64);
        out.push((n, x2, ratio));
    }
    Ok(out)
}

/// Tail-size check for the integral model at odd N: compares the actual
/// plateau-edge truncation gap |Ẑ_ref(x*) − Ẑ_N(x*)| (reference sum at
/// order 4N; the transformed series converges everywhere) against the
/// closed-form bound (e/3)^(5/4)/(√(8π)(1 − e/3)) · N^(−5/4) (e/3)^N.
pub fn remainder_bound_check(ctx: &Ctx, n: u32) -> Result<(Float, Float, bool)> {
    if n % 2 == 0 {
        return Err(Error::Config { message: format!("order {n} is even") });
    }
    let beta = Rational::from(2);
    let series = build_series(ctx, Model::NonGaussian, n, &beta)?;
    let hs = heaviside_transform(ctx, &series)?;
    let points = find_stationary_points(ctx, &hs, None)?;
    let edge = select_x_star(&points)?;

    let ref_series = build_series(ctx, Model::NonGaussian, 4 * n, &beta)?;
    let ref_hs = heaviside_transform(ctx, &ref_series)?;
    let reference = ref_hs.evaluate(ctx, &edge.x_star)?;
    let actual = (reference - &edge.value).abs();

    let e = ctx.one().exp();
    let e_third = e / 3u32;
    let front = ctx.powf(&e_third, &ctx.real("1.25"))?;
    let pi8 = Float::with_val(ctx.bits(), rug::float::Constant::Pi) * 8u32;
    let denom = pi8.sqrt() * (ctx.one() - &e_third);
    let n_f = ctx.from_u64(n as u64);
    let bound = front / denom
        * ctx.powf(&n_f, &ctx.real("-1.25"))?
        * ctx.powf(&e_third, &n_f)?;
    let ok = actual <= bound;
    Ok((bound, actual, ok))
}

/// Per-β largest stationary point at order N' ∈ {N−1, N}.
///
/// Root existence alternates with order parity, and the two models peel
/// off opposite members: the scan tries the even member first, then the
/// odd one, reporting which was used. A β on the model's convergence
/// boundary is flagged; a β with no root at either parity yields an empty
/// row rather than an error.
pub fn beta_scan(
    ctx: &Ctx,
    model: Model,
    n: u32,
    betas: &[Rational],
    anh_coeffs: Option<&[Rational]>,
) -> Result<Vec<BetaScanRow>> {
    if n == 0 {
        return Err(Error::Config { message: "order 0 has no plateau".into() });
    }
    let (even_n, odd_n) = if n % 2 == 0 { (n, n - 1) } else { (n - 1, n) };
    let mut out = Vec::with_capacity(betas.len());
    for beta in betas {
        let boundary = !beta_admissible(model, beta)?;
        let mut row = BetaScanRow { beta: beta.clone(), n_used: None, point: None, boundary };
        for cand in [even_n, odd_n] {
            let series = match (model, anh_coeffs) {
                (Model::Anharmonic, Some(coeffs)) => {
                    anharmonic_series_from(ctx, coeffs, cand, beta)?
                }
                _ => build_series(ctx, model, cand, beta)?,
            };
            let hs = heaviside_transform(ctx, &series)?;
            let points = find_stationary_points(ctx, &hs, None)?;
            if let Ok(edge) = select_x_star(&points) {
                row.n_used = Some(cand);
                row.point = Some(edge.clone());
                break;
            }
        }
        out.push(row);
    }
    Ok(out)
}
