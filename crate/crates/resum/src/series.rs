//! Perturbation-series models: exact coefficient generation and bookkeeping.
//!
//! Two built-in divergent weak-coupling expansions are provided, both with
//! the coupling fixed to 1 so the expansion parameter is a pure mass power:
//!
//! * `NonGaussian`: the one-dimensional integral Z = ∫ e^(−m²q²−q⁴) dq,
//!   with a_n = (−1)^n Γ(2n+1/2)/n! against σ^(−(4n+1)/β),
//! * `Anharmonic`: the quartic-oscillator ground-state energy, with exact
//!   rational coefficients A_n from a Rayleigh–Schrödinger recursion
//!   against σ^(−(3n−1)/β),
//!
//! where σ = m^β and β is the transform variable choice (default 2).
//!
//! # Example
//! ```
//! use resum::series::anharmonic_coefficients;
//! use rug::Rational;
//!
//! let a = anharmonic_coefficients(2);
//! assert_eq!(a[2], Rational::from((-21, 8)));
//! ```

use crate::error::{Error, Result};
use crate::precision::Ctx;
use rug::{Float, Integer, Rational};
use std::fmt;
use std::path::Path;

/// Which divergent series a [`PerturbationSeries`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Z(m) = ∫ e^(−m²q²−q⁴) dq: coefficients (−1)^n Γ(2n+1/2)/n!.
    NonGaussian,
    /// Quartic-oscillator ground-state energy: exact rational A_n.
    Anharmonic,
    /// Caller-supplied terms; exempt from built-in exponent bookkeeping.
    Custom,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::NonGaussian => write!(f, "nongaussian"),
            Model::Anharmonic => write!(f, "anharmonic"),
            Model::Custom => write!(f, "custom"),
        }
    }
}

/// One term `coeff · σ^exponent` of a weak-coupling expansion.
#[derive(Debug, Clone)]
pub struct PowerTerm {
    pub coeff: Float,
    /// Exact power of σ, e.g. −(3n−1)/β for the oscillator.
    pub exponent: Rational,
}

/// A truncated series Σ_n coeff_n σ^(ξ_n) in σ = m^β.
#[derive(Debug, Clone)]
pub struct PerturbationSeries {
    /// Exactly order+1 terms for the built-in models, ascending in n.
    pub terms: Vec<PowerTerm>,
    pub model: Model,
    /// Top retained index N (terms n = 0..N inclusive).
    pub order: u32,
    /// σ = m^β; β > 0.
    pub beta: Rational,
}

impl PerturbationSeries {
    /// Evaluates the truncated sum at a given σ > 0.
    ///
    /// The series is asymptotic: for small σ the value is dominated by
    /// its leading terms before the factorial growth takes over.
    pub fn evaluate(&self, ctx: &Ctx, sigma: &Float) -> Result<Float> {
        let mut sum = ctx.zero();
        for t in &self.terms {
            sum += t.coeff.clone() * ctx.powr(sigma, &t.exponent)?;
        }
        Ok(sum)
    }
}

/// Largest admissible β per model: the transformed series stops converging
/// for all x beyond it (NonGaussian 4, Anharmonic 3).
pub fn beta_limit(model: Model) -> Option<Rational> {
    match model {
        Model::NonGaussian => Some(Rational::from(4)),
        Model::Anharmonic => Some(Rational::from(3)),
        Model::Custom => None,
    }
}

/// Validates β for a model: Ok(true) means admissible interior, Ok(false)
/// means exactly on the convergence boundary (allowed, caller may warn).
pub fn beta_admissible(model: Model, beta: &Rational) -> Result<bool> {
    if *beta <= 0 {
        return Err(Error::Config { message: format!("beta = {beta} must be positive") });
    }
    match beta_limit(model) {
        Some(limit) if *beta > limit => Err(Error::Config {
            message: format!("beta = {beta} exceeds the {model} transform limit {limit}"),
        }),
        Some(limit) => Ok(*beta != limit),
        None => Ok(true),
    }
}

/// Exact quartic-oscillator ground-state coefficients A_0..A_n.
///
/// Recursion over even-polynomial corrections P_k(q) = Σ_i c_{k,i} q^(2i)
/// to the Gaussian ground state: matching powers in the Schrödinger
/// equation gives, per order k,
///
/// ```text
/// c_{k,2k} = −c_{k−1,2k−2}/(4k)
/// 2i·c_{k,i} = (i+1)(2i+1)c_{k,i+1} − c_{k−1,i−2} + Σ_{j=1}^{k−1} A_j c_{k−j,i}
/// A_k = −c_{k,1}
/// ```
///
/// entirely in exact rationals; A_249 carries ~750-digit numerators.
pub fn anharmonic_coefficients(n: u32) -> Vec<Rational> {
    anharmonic_coefficients_with_progress(n, |_| {})
}

/// Same as [`anharmonic_coefficients`] with a per-order progress callback
/// (called with k after A_k is computed); used by the CLI slow path.
pub fn anharmonic_coefficients_with_progress(
    n: u32,
    mut progress: impl FnMut(u32),
) -> Vec<Rational> {
    let n = n as usize;
    let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
    a.push(Rational::from((1, 2)));
    let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::from(1)]];
    for k in 1..=n {
        let mut cur = vec![Rational::new(); 2 * k + 1];
        cur[2 * k] = -(rows[k - 1][2 * k - 2].clone() / Rational::from(4 * k as u64));
        for i in (1..2 * k).rev() {
            let mut s = Rational::from(((i + 1) * (2 * i + 1)) as u64) * &cur[i + 1];
            if i >= 2 {
                s -= &rows[k - 1][i - 2];
            }
            for j in 1..k {
                let rj = &rows[k - j];
                if i < rj.len() {
                    s += a[j].clone() * &rj[i];
                }
            }
            cur[i] = s / Rational::from(2 * i as u64);
        }
        a.push(-cur[1].clone());
        rows.push(cur);
        progress(k as u32);
    }
    a
}

/// Integral-model coefficients a_0..a_n with a_n = (−1)^n Γ(2n+1/2)/n!.
pub fn nongaussian_coefficients(ctx: &Ctx, n: u32) -> Result<Vec<Float>> {
    let mut out = Vec::with_capacity(n as usize + 1);
    // Γ(2n+1/2) by the recurrence from Γ(1/2) = √π; n! likewise: exact
    // integer/half-integer ladders avoid n+1 full gamma evaluations.
    let mut gam = ctx.gamma(&ctx.real("0.5"))?;
    let mut fact = ctx.one();
    for k in 0..=n {
        if k > 0 {
            // Γ(2k+1/2) = (2k−3/2)(2k−1/2)... step twice from Γ(2(k−1)+1/2)
            let lo = ctx.from_i64(2 * k as i64 - 2) + ctx.real("0.5");
            let hi = ctx.from_i64(2 * k as i64 - 1) + ctx.real("0.5");
            gam *= lo * hi;
            fact *= ctx.from_u64(k as u64);
        }
        let mut c = gam.clone() / &fact;
        if k % 2 == 1 {
            c = -c;
        }
        out.push(c);
    }
    Ok(out)
}

/// Builds the truncated series for a built-in model at top index `order`.
///
/// Exponents: ξ_n = −(4n+1)/β (NonGaussian), ξ_n = −(3n−1)/β (Anharmonic;
/// note ξ_0 = +1/β). Evaluation at σ = m^β is β-independent for fixed m.
pub fn build_series(
    ctx: &Ctx,
    model: Model,
    order: u32,
    beta: &Rational,
) -> Result<PerturbationSeries> {
    match model {
        Model::NonGaussian => {
            let coeffs = nongaussian_coefficients(ctx, order)?;
            let terms = coeffs
                .into_iter()
                .enumerate()
                .map(|(n, coeff)| PowerTerm {
                    coeff,
                    exponent: -(Rational::from(4 * n as u64 + 1) / beta.clone()),
                })
                .collect();
            let _ = beta_admissible(model, beta)?;
            Ok(PerturbationSeries { terms, model, order, beta: beta.clone() })
        }
        Model::Anharmonic => {
            let coeffs = anharmonic_coefficients(order);
            anharmonic_series_from(ctx, &coeffs, order, beta)
        }
        Model::Custom => Err(Error::Config {
            message: "custom series must be constructed term by term".into(),
        }),
    }
}

/// Builds the oscillator series from precomputed exact coefficients
/// (the cache fast path; `coeffs` must cover indices 0..=order).
pub fn anharmonic_series_from(
    ctx: &Ctx,
    coeffs: &[Rational],
    order: u32,
    beta: &Rational,
) -> Result<PerturbationSeries> {
    if coeffs.len() < order as usize + 1 {
        return Err(Error::Config {
            message: format!(
                "need {} coefficients for order {order}, got {}",
                order + 1,
                coeffs.len()
            ),
        });
    }
    let _ = beta_admissible(Model::Anharmonic, beta)?;
    let terms = coeffs[..=order as usize]
        .iter()
        .enumerate()
        .map(|(n, a)| PowerTerm {
            coeff: ctx.from_rational(a),
            exponent: -(Rational::from(3 * n as i64 - 1) / beta.clone()),
        })
        .collect();
    Ok(PerturbationSeries { terms, model: Model::Anharmonic, order, beta: beta.clone() })
}

/// Writes exact coefficients as "n numerator/denominator" lines.
pub fn cache_write(path: &Path, coeffs: &[Rational]) -> Result<()> {
    let mut body = String::new();
    for (n, c) in coeffs.iter().enumerate() {
        body.push_str(&format!("{} {}/{}\n", n, c.numer(), c.denom()));
    }
    std::fs::write(path, body)?;
    Ok(())
}

/// Reads a coefficient cache written by [`cache_write`].
///
/// Lines must be "n num/den" with n equal to the 0-based position;
/// any malformed or out-of-sequence line is reported by 1-based number.
pub fn cache_read(path: &Path) -> Result<Vec<Rational>> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let bad = |content: &str| Error::CacheParse { line: lineno, content: content.into() };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (n_str, frac) = line.split_once(' ').ok_or_else(|| bad(line))?;
        let n: usize = n_str.parse().map_err(|_| bad(line))?;
        if n != out.len() {
            return Err(bad(line));
        }
        let (num, den) = frac.split_once('/').unwrap_or((frac, "1"));
        let num: Integer = num.parse().map_err(|_| bad(line))?;
        let den: Integer = den.parse().map_err(|_| bad(line))?;
        if den <= 0 {
            return Err(bad(line));
        }
        out.push(Rational::from((num, den)));
    }
    Ok(out)
}
