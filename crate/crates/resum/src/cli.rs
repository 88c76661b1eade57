//! Command implementations behind the `resum` binary: reference tables,
//! figure datasets, β-scans, the high-order census, and kernel
//! diagnostics. Each command builds a [`Report`] from library calls; the
//! binary renders it.
//!
//! Reference-table commands fix their own model and exponent (that is
//! what makes them reproductions); custom runs go through the scan and
//! kernel commands, which honor the configured model.

use crate::delta::{delta_kernel, dn_on_power, dn_vs_heaviside, kernel_mass};
use crate::engine::{
    approximant, beta_scan, find_stationary_points, select_x_star, strong_coupling_expansion,
    StationaryPoint,
};
use crate::error::{Error, Result};
use crate::oracles::{aho_ground_energy, z_exact, E0_EXACT};
use crate::precision::Ctx;
use crate::series::{
    anharmonic_coefficients_with_progress, anharmonic_series_from, beta_admissible, build_series,
    cache_read, cache_write, Model, PerturbationSeries,
};
use crate::transform::{heaviside_transform, HeavisideSeries};
use crate::report::{reliable_digits, Cell, Report, RunConfig, Table};
use rug::{Float, Rational};
use std::path::Path;

/// Display cap for curve samples; tables use the precision-derived cap.
const CURVE_DIGITS: usize = 20;

/// Parses a model name; reference tables ignore this and pick their own.
pub fn parse_model(s: &str) -> Result<Model> {
    match s.to_ascii_lowercase().as_str() {
        "nongaussian" | "non-gaussian" | "integral" => Ok(Model::NonGaussian),
        "anharmonic" | "oscillator" => Ok(Model::Anharmonic),
        other => Err(Error::Config {
            message: format!("unknown model '{other}' (expected nongaussian or anharmonic)"),
        }),
    }
}

/// Parses an exponent given as integer ("2"), fraction ("19/10"), or
/// decimal ("1.9") into an exact rational.
pub fn parse_beta(s: &str) -> Result<Rational> {
    let bad = |detail: String| Error::Config { message: detail };
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad(format!("bad beta '{s}'")))?;
        let d: i64 = den.trim().parse().map_err(|_| bad(format!("bad beta '{s}'")))?;
        if d == 0 {
            return Err(bad(format!("bad beta '{s}': zero denominator")));
        }
        return Ok(Rational::from((n, d)));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let digits = frac.len() as u32;
        if digits > 18 || frac.chars().any(|c| !c.is_ascii_digit()) {
            return Err(bad(format!("bad beta '{s}'")));
        }
        let neg = int.starts_with('-');
        let int_part: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| bad(format!("bad beta '{s}'")))?
        };
        let frac_part: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad(format!("bad beta '{s}'")))?
        };
        let den = 10i64.pow(digits.min(18));
        let mut num = int_part.abs() * den + frac_part;
        if neg || int_part < 0 {
            num = -num;
        }
        return Ok(Rational::from((num, den)));
    }
    let n: i64 = t.parse().map_err(|_| bad(format!("bad beta '{s}'")))?;
    Ok(Rational::from(n))
}

/// Parses a numeric argument at the working precision.
pub fn parse_real(ctx: &Ctx, s: &str) -> Result<Float> {
    match Float::parse(s.trim()) {
        Ok(p) => Ok(Float::with_val(ctx.bits(), p)),
        Err(_) => Err(Error::Config { message: format!("bad numeric argument '{s}'") }),
    }
}

fn warn_if_boundary(model: Model, beta: &Rational) -> Result<()> {
    if !beta_admissible(model, beta)? {
        eprintln!(
            "warning: beta = {beta} sits on the {model} convergence boundary; \
             results degrade there"
        );
    }
    Ok(())
}

/// Oscillator coefficients for orders 0..=order, from the configured
/// cache, the bundled data file, or a fresh recursion (slow path).
pub fn load_anh_coefficients(cfg: &RunConfig, order: u32) -> Result<Vec<Rational>> {
    let needed = order as usize + 1;
    if let Some(path) = &cfg.cache_path {
        if path.exists() {
            let coeffs = cache_read(path)?;
            if coeffs.len() >= needed {
                return Ok(coeffs);
            }
            eprintln!(
                "cache {} holds {} orders, need {}; regenerating",
                path.display(),
                coeffs.len(),
                needed
            );
        }
    } else {
        let bundled = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/anh_coeffs_249.txt");
        if bundled.exists() {
            if let Ok(coeffs) = cache_read(&bundled) {
                if coeffs.len() >= needed {
                    return Ok(coeffs);
                }
            }
        }
    }
    eprintln!("generating oscillator coefficients to order {order} (this can take a while)");
    let coeffs = anharmonic_coefficients_with_progress(order, |k| {
        if k % 25 == 0 && k > 0 {
            eprintln!("  recursion at order {k}/{order}");
        }
    });
    if let Some(path) = &cfg.cache_path {
        cache_write(path, &coeffs)?;
        eprintln!("cache written to {}", path.display());
    }
    Ok(coeffs)
}

/// Re-checks the precision floor once a command has resolved its
/// default order; high orders need the deeper floor.
fn validate_effective_order(cfg: &RunConfig, order: u32) -> Result<()> {
    let mut eff = cfg.clone();
    eff.order = order;
    eff.validate()
}

fn build_for(
    ctx: &Ctx,
    model: Model,
    order: u32,
    beta: &Rational,
    coeffs: Option<&[Rational]>,
) -> Result<(PerturbationSeries, HeavisideSeries)> {
    let series = match (model, coeffs) {
        (Model::Anharmonic, Some(c)) => anharmonic_series_from(ctx, c, order, beta)?,
        _ => build_series(ctx, model, order, beta)?,
    };
    let hs = heaviside_transform(ctx, &series)?;
    Ok((series, hs))
}

fn largest_root(ctx: &Ctx, hs: &HeavisideSeries) -> Result<StationaryPoint> {
    let points = find_stationary_points(ctx, hs, None)?;
    Ok(select_x_star(&points)?.clone())
}

/// Digits of the root location supported by the local curvature: the
/// uncertainty is (residual + derivative noise)/|f̂''(x*)|.
fn x_star_digits(ctx: &Ctx, hs: &HeavisideSeries, p: &StationaryPoint, cap: usize) -> usize {
    let d1 = hs.derivative(ctx, 1);
    let d2 = d1.derivative(ctx, 1);
    let noise = match d1.evaluate_tracked(ctx, &p.x_star) {
        Ok((_, err)) => err,
        Err(_) => return 1,
    };
    let curv = match d2.evaluate(ctx, &p.x_star) {
        Ok(v) => v.abs(),
        Err(_) => return 1,
    };
    if curv.is_zero() {
        return 1;
    }
    let dx = (p.residual.clone() + noise) / curv;
    reliable_digits(ctx, &p.x_star, &dx).min(cap)
}

fn tracked_cell(ctx: &Ctx, hs: &HeavisideSeries, x: &Float, cap: usize) -> Result<Cell> {
    let (v, err) = hs.evaluate_tracked(ctx, x)?;
    let digits = reliable_digits(ctx, &v, &err).min(cap);
    Ok(Cell::number(&v, digits))
}

/// Reproduces one of the four reference tables.
pub fn cmd_table(which: u8, cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    match which {
        1 => table_plateau_integral(cfg),
        2 => table_coupling_integral(cfg),
        3 => table_strong_coupling_oscillator(cfg),
        4 => table_coupling_oscillator(cfg),
        other => Err(Error::Config { message: format!("no table {other} (expected 1-4)") }),
    }
}

/// Table 1 data: plateau value and squared edge for odd orders 1..15.
fn table_plateau_integral(cfg: &RunConfig) -> Result<Report> {
    let ctx = cfg.ctx();
    let beta = Rational::from(2);
    let cap = ctx.digits().saturating_sub(12) as usize;
    let mut n_col = Vec::new();
    let mut val_col = Vec::new();
    let mut xsq_col = Vec::new();
    for n in (1..=15u32).step_by(2) {
        let (_, hs) = build_for(&ctx, Model::NonGaussian, n, &beta, None)?;
        let edge = largest_root(&ctx, &hs)?;
        let xd = x_star_digits(&ctx, &hs, &edge, cap);
        let x2 = Float::with_val(ctx.bits(), edge.x_star.square_ref());
        n_col.push(Cell::integer(n as u64));
        val_col.push(tracked_cell(&ctx, &hs, &edge.x_star, cap)?);
        xsq_col.push(Cell::number(&x2, xd));
    }
    let mut t = Table::new("plateau_edge_integral");
    t.add_column("n", n_col);
    t.add_column("zhat_at_edge", val_col);
    t.add_column("x_star_sq", xsq_col);
    Ok(Report::single(t))
}

/// Table 2 data: resummed Z at order 15 against the quadrature oracle.
fn table_coupling_integral(cfg: &RunConfig) -> Result<Report> {
    let ctx = cfg.ctx();
    let beta = Rational::from(2);
    let order = if cfg.order > 0 { cfg.order } else { 15 };
    validate_effective_order(cfg, order)?;
    let cap = ctx.digits().saturating_sub(12) as usize;
    let (series, hs) = build_for(&ctx, Model::NonGaussian, order, &beta, None)?;
    let edge = largest_root(&ctx, &hs)?;
    let default_m2 = ["0.01", "0.1", "1", "3", "6", "10", "100"];
    let m2_list: Vec<Float> = if cfg.m2_list.is_empty() {
        default_m2.iter().map(|s| ctx.real(s)).collect()
    } else {
        cfg.m2_list.clone()
    };
    let mut m2_col = Vec::new();
    let mut resummed = Vec::new();
    let mut exact = Vec::new();
    for m2 in &m2_list {
        let r = approximant(&ctx, &series, &hs, &edge.x_star, m2)?;
        let oracle = z_exact(&ctx, m2)?;
        let od = reliable_digits(&ctx, &oracle.value, &oracle.error_estimate).min(cap);
        m2_col.push(Cell::number(m2, 8.min(cap)));
        resummed.push(Cell::number(&r.total, cap));
        exact.push(Cell::number(&oracle.value, od));
    }
    let mut t = Table::new("coupling_sweep_integral");
    t.add_column("m2", m2_col);
    t.add_column("resummed", resummed);
    t.add_column("exact", exact);
    Ok(Report::single(t))
}

/// Table 3 data: leading strong-coupling Taylor entries at low odd orders.
fn table_strong_coupling_oscillator(cfg: &RunConfig) -> Result<Report> {
    let ctx = cfg.ctx();
    let beta = Rational::from(2);
    let cap = ctx.digits().saturating_sub(12) as usize;
    let coeffs = load_anh_coefficients(cfg, 9)?;
    let mut cols: Vec<Vec<Cell>> = vec![Vec::new(); 7];
    for n in (1..=9u32).step_by(2) {
        let (_, hs) = build_for(&ctx, Model::Anharmonic, n, &beta, Some(&coeffs))?;
        let edge = largest_root(&ctx, &hs)?;
        let alphas = strong_coupling_expansion(&ctx, &hs, &edge.x_star, 4)?;
        let xd = x_star_digits(&ctx, &hs, &edge, cap);
        cols[0].push(Cell::integer(n as u64));
        for (k, a) in alphas.iter().enumerate() {
            cols[k + 1].push(Cell::number(a, cap));
        }
        cols[6].push(Cell::number(&edge.x_star, xd));
    }
    let mut t = Table::new("strong_coupling_oscillator");
    let names = ["n", "value", "alpha1", "alpha2", "alpha3", "alpha4", "x_star"];
    for (name, col) in names.iter().zip(cols) {
        t.add_column(*name, col);
    }
    Ok(Report::single(t))
}

/// Table 4 data: resummed ground energy at order 249 against the eigen
/// oracle.
fn table_coupling_oscillator(cfg: &RunConfig) -> Result<Report> {
    let ctx = cfg.ctx();
    let beta = Rational::from(2);
    let order = if cfg.order > 0 { cfg.order } else { 249 };
    validate_effective_order(cfg, order)?;
    let cap = ctx.digits().saturating_sub(12) as usize;
    let coeffs = load_anh_coefficients(cfg, order)?;
    let (series, hs) = build_for(&ctx, Model::Anharmonic, order, &beta, Some(&coeffs))?;
    let edge = largest_root(&ctx, &hs)?;
    let oracle_digits = 25u32.min(ctx.digits().saturating_sub(10));
    let default_m2 = ["0.001", "0.01", "0.1", "1", "10", "100", "1000"];
    let m2_list: Vec<Float> = if cfg.m2_list.is_empty() {
        default_m2.iter().map(|s| ctx.real(s)).collect()
    } else {
        cfg.m2_list.clone()
    };
    let mut m2_col = Vec::new();
    let mut resummed = Vec::new();
    let mut eigen = Vec::new();
    for m2 in &m2_list {
        let r = approximant(&ctx, &series, &hs, &edge.x_star, m2)?;
        let oracle = aho_ground_energy(&ctx, m2, oracle_digits)?;
        let od = reliable_digits(&ctx, &oracle.value, &oracle.error_estimate).min(cap);
        m2_col.push(Cell::number(m2, 8.min(cap)));
        resummed.push(Cell::number(&r.total, cap));
        eigen.push(Cell::number(&oracle.value, od));
    }
    let mut t = Table::new("coupling_sweep_oscillator");
    t.add_column("m2", m2_col);
    t.add_column("resummed", resummed);
    t.add_column("eigen", eigen);
    Ok(Report::single(t))
}

/// Emits the dataset behind one of the five reference figures.
pub fn cmd_figure(which: u8, cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    match which {
        1 => figure_low_order_transforms(cfg),
        2 => figure_energy_ratio(cfg),
        3 => figure_high_order_transform(cfg),
        4 => figure_beta_family_integral(cfg),
        5 => figure_beta_family_oscillator(cfg),
        other => Err(Error::Config { message: format!("no figure {other} (expected 1-5)") }),
    }
}

fn rational_grid(ctx: &Ctx, step: (i64, i64), from: i64, to: i64) -> Vec<(Rational, Float)> {
    (from..=to)
        .map(|k| {
            let r = Rational::from((k * step.0, step.1));
            let f = ctx.from_rational(&r);
            (r, f)
        })
        .collect()
}

/// Figure 1 data: transformed integral series at orders 1, 4, 7.
fn figure_low_order_transforms(cfg: &RunConfig) -> Result<Report> {
    let ctx = cfg.ctx();
    let beta = Rational::from(2);
    let grid = rational_grid(&ctx, (1, 20), 1, 80);
    let mut t = Table::new("transform_low_orders_integral");
    t.add_column("x", grid.iter().map(|(_, x)| Cell::number(x, 6)).collect());
    for n in [1u32, 4, 7] {
        let (_, hs) = build_for(&ctx, Model::NonGaussian, n, &beta, None)?;
        let mut col = Vec::new();
        for (_, x) in &grid {
            col.push(tracked_cell(&ctx, &hs, x, CURVE_DIGITS)?);
        }
        t.add_column(format!("zhat_n{n}"), col);
    }
    Ok(Report::single(t))
}

/// Figure 2 data: resummed/eigen energy ratio at orders 1 and 5 over a
/// coupling grid.
fn figure_energy_ratio(cfg: &RunConfig) -> Result<Report> {
    let ctx = cfg.ctx();
    let beta = Rational::from(2);
    let cap = CURVE_DIGITS;
    let m2_list: Vec<Float> = if cfg.m2_list.is_empty() {
        // four points per decade from 0.01 to 100
        (0i64..=16)
            .map(|i| {
                let e = ctx.from_i64(i - 8) / 4u32;
                ctx.powf(&ctx.from_u64(10), &e)
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        cfg.m2_list.clone()
    };
    let oracle_digits = 20u32.min(ctx.digits().saturating_sub(10));
    let mut t = Table::new("energy_ratio_oscillator");
    t.add_column("m2", m2_list.iter().map(|m| Cell::number(m, 8)).collect());
    let coeffs = load_anh_coefficients(cfg, 5)?;
    for n in [1u32, 5] {
        let (series, hs) = build_for(&ctx, Model::Anharmonic, n, &beta, Some(&coeffs))?;
        let edge = largest_root(&ctx, &hs)?;
        let mut col = Vec::new();
        for m2 in &m2_list {
            let r = approximant(&ctx, &series, &hs, &edge.x_star, m2)?;
            let oracle = aho_ground_energy(&ctx, m2, oracle_digits)?;
            let ratio = r.total.clone() / &oracle.value;
            let od = reliable_digits(&ctx, &oracle.value, &oracle.error_estimate);
            col.push(Cell::number(&ratio, od.min(cap)));
        }
        t.add_column(format!("ratio_n{n}"), col);
    }
    Ok(Report::single(t))
}

/// Figure 3 data: the order-249 transformed oscillator series across its
/// plateau and breakdown.
fn figure_high_order_transform(cfg: &RunConfig) -> Result<Report> {
    let ctx = cfg.ctx();
    let beta = Rational::from(2);
    let order = if cfg.order > 0 { cfg.order } else { 249 };
    validate_effective_order(cfg, order)?;
    let coeffs = load_anh_coefficients(cfg, order)?;
    let (_, hs) = build_for(&ctx, Model::Anharmonic, order, &beta, Some(&coeffs))?;
    let grid = rational_grid(&ctx, (1, 20), 3, 68);
    let mut t = Table::new("transform_high_order_oscillator");
    t.add_column("x", grid.iter().map(|(_, x)| Cell::number(x, 6)).collect());
    let mut col = Vec::new();
    for (_, x) in &grid {
        col.push(tracked_cell(&ctx, &hs, x, CURVE_DIGITS)?);
    }
    t.add_column("ehat", col);
    Ok(Report::single(t))
}

fn beta_label(beta: &Rational) -> String {
    if beta.is_integer() {
        beta.numer().to_string()
    } else {
        let f = beta.to_f64();
        format!("{f}")
    }
}

/// Figure 4 data: the transformed integral series at order 100 for a
/// family of exponents.
fn figure_beta_family_integral(cfg: &RunConfig) -> Result<Report> {
    let ctx = cfg.ctx();
    let order = if cfg.order > 0 { cfg.order } else { 100 };
    let betas: Vec<Rational> =
        [(1i64, 1i64), (3, 2), (2, 1), (5, 2), (3, 1)].iter().map(|&p| Rational::from(p)).collect();
    let grid = rational_grid(&ctx, (1, 5), 1, 80);
    let mut t = Table::new("transform_beta_family_integral");
    t.add_column("x", grid.iter().map(|(_, x)| Cell::number(x, 6)).collect());
    for beta in &betas {
        warn_if_boundary(Model::NonGaussian, beta)?;
        let (_, hs) = build_for(&ctx, Model::NonGaussian, order, beta, None)?;
        let mut col = Vec::new();
        for (_, x) in &grid {
            col.push(tracked_cell(&ctx, &hs, x, CURVE_DIGITS)?);
        }
        t.add_column(format!("zhat_beta_{}", beta_label(beta)), col);
    }
    Ok(Report::single(t))
}

/// Figure 5 data: the order-249 transformed oscillator series for a
/// family of exponents.
fn figure_beta_family_oscillator(cfg: &RunConfig) -> Result<Report> {
    let ctx = cfg.ctx();
    let order = if cfg.order > 0 { cfg.order } else { 249 };
    validate_effective_order(cfg, order)?;
    let coeffs = load_anh_coefficients(cfg, order)?;
    let betas: Vec<Rational> =
        [(1i64, 1i64), (3, 2), (2, 1), (5, 2), (3, 1)].iter().map(|&p| Rational::from(p)).collect();
    let grid = rational_grid(&ctx, (1, 20), 3, 80);
    let mut t = Table::new("transform_beta_family_oscillator");
    t.add_column("x", grid.iter().map(|(_, x)| Cell::number(x, 6)).collect());
    for beta in &betas {
        warn_if_boundary(Model::Anharmonic, beta)?;
        let (_, hs) = build_for(&ctx, Model::Anharmonic, order, beta, Some(&coeffs))?;
        let mut col = Vec::new();
        for (_, x) in &grid {
            col.push(tracked_cell(&ctx, &hs, x, CURVE_DIGITS)?);
        }
        t.add_column(format!("ehat_beta_{}", beta_label(beta)), col);
    }
    Ok(Report::single(t))
}

/// Scans transform exponents and reports each plateau against the exact
/// zero-coupling limit.
pub fn cmd_betascan(cfg: &RunConfig, betas: &[Rational]) -> Result<Report> {
    cfg.validate()?;
    let ctx = cfg.ctx();
    let cap = ctx.digits().saturating_sub(12) as usize;
    let order = if cfg.order > 0 {
        cfg.order
    } else {
        match cfg.model {
            Model::NonGaussian => 100,
            _ => 249,
        }
    };
    validate_effective_order(cfg, order)?;
    let coeffs = match cfg.model {
        Model::Anharmonic => Some(load_anh_coefficients(cfg, order)?),
        _ => None,
    };
    for beta in betas {
        warn_if_boundary(cfg.model, beta)?;
    }
    let oracle = match cfg.model {
        Model::NonGaussian => ctx.gamma(&ctx.real("0.25"))? / 2u32,
        _ => ctx.real(E0_EXACT),
    };
    let rows = beta_scan(&ctx, cfg.model, order, betas, coeffs.as_deref())?;
    let mut beta_col = Vec::new();
    let mut n_col = Vec::new();
    let mut x_col = Vec::new();
    let mut v_col = Vec::new();
    let mut err_col = Vec::new();
    for row in &rows {
        beta_col.push(Cell::text(row.beta.to_string()));
        match (&row.n_used, &row.point) {
            (Some(n), Some(p)) => {
                let (_, hs) =
                    build_for(&ctx, cfg.model, *n, &row.beta, coeffs.as_deref())?;
                let xd = x_star_digits(&ctx, &hs, p, cap);
                n_col.push(Cell::integer(*n as u64));
                x_col.push(Cell::number(&p.x_star, xd.min(CURVE_DIGITS)));
                v_col.push(tracked_cell(&ctx, &hs, &p.x_star, cap)?);
                let gap = Float::with_val(ctx.bits(), &p.value - &oracle).abs();
                err_col.push(Cell::number(&gap, 8));
            }
            _ => {
                n_col.push(Cell::text(""));
                x_col.push(Cell::text(""));
                v_col.push(Cell::text(""));
                err_col.push(Cell::text(""));
            }
        }
    }
    let mut t = Table::new(format!("beta_scan_{}", cfg.model));
    t.add_column("beta", beta_col);
    t.add_column("n_used", n_col);
    t.add_column("x_star", x_col);
    t.add_column("value", v_col);
    t.add_column("abs_err", err_col);
    Ok(Report::single(t))
}

/// High-order oscillator diagnostics: stationary-point census, milestone
/// orders, and edge-derivative coefficients at selected orders.
pub fn cmd_largeorder(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    if cfg.order > 249 {
        return Err(Error::Config {
            message: format!("largeorder supports orders up to 249, got {}", cfg.order),
        });
    }
    let ctx = cfg.ctx();
    let beta = Rational::from(2);
    let top = if cfg.order > 0 { cfg.order } else { 249 };
    validate_effective_order(cfg, top)?;
    let coeffs = load_anh_coefficients(cfg, top)?;
    let cap = ctx.digits().saturating_sub(12) as usize;

    let mut census = Table::new("stationary_census_oscillator");
    let mut n_col = Vec::new();
    let mut count_col = Vec::new();
    let mut roots_col = Vec::new();
    let mut value_col = Vec::new();
    let mut ratio_col = Vec::new();
    let mut first_root: Option<u32> = None;
    let mut first_odd_multi: Option<u32> = None;
    let mut edges: Vec<(u32, HeavisideSeries, StationaryPoint)> = Vec::new();
    for n in 1..=top {
        let (_, hs) = build_for(&ctx, Model::Anharmonic, n, &beta, Some(&coeffs))?;
        let points = find_stationary_points(&ctx, &hs, None)?;
        n_col.push(Cell::integer(n as u64));
        count_col.push(Cell::integer(points.len() as u64));
        if points.is_empty() {
            roots_col.push(Cell::text(""));
            value_col.push(Cell::text(""));
            ratio_col.push(Cell::text(""));
            continue;
        }
        if first_root.is_none() {
            first_root = Some(n);
        }
        if n % 2 == 1 && points.len() > 1 && first_odd_multi.is_none() {
            first_odd_multi = Some(n);
        }
        let list: Vec<String> =
            points.iter().map(|p| crate::report::format_number(&p.x_star, 12)).collect();
        roots_col.push(Cell::text(list.join(" ")));
        let edge = points.last().unwrap().clone();
        value_col.push(tracked_cell(&ctx, &hs, &edge.x_star, 13)?);
        let x2 = Float::with_val(ctx.bits(), edge.x_star.square_ref());
        ratio_col.push(Cell::number(&(x2 / ctx.from_u64(n as u64)), 12));
        if [28, 101, 249].contains(&n) {
            edges.push((n, hs, edge));
        }
    }
    census.add_column("n", n_col);
    census.add_column("points", count_col);
    census.add_column("x_stars", roots_col);
    census.add_column("value_at_edge", value_col);
    census.add_column("xsq_over_n", ratio_col);

    let mut milestones = Table::new("census_milestones");
    let mut label_col = Vec::new();
    let mut order_col = Vec::new();
    if let Some(n) = first_root {
        label_col.push(Cell::text("first order with a stationary point"));
        order_col.push(Cell::integer(n as u64));
    }
    if let Some(n) = first_odd_multi {
        label_col.push(Cell::text("first odd order with more than one stationary point"));
        order_col.push(Cell::integer(n as u64));
    }
    milestones.add_column("milestone", label_col);
    milestones.add_column("order", order_col);

    let mut corrections = Table::new("edge_derivatives");
    let mut cols: Vec<Vec<Cell>> = vec![Vec::new(); 8];
    for (n, hs, edge) in &edges {
        cols[0].push(Cell::integer(*n as u64));
        let mut d = hs.clone();
        for i in 1..=7usize {
            d = d.derivative(&ctx, 1);
            let (v, err) = d.evaluate_tracked(&ctx, &edge.x_star)?;
            let digits = reliable_digits(&ctx, &v, &err).min(cap).min(12);
            cols[i].push(Cell::number(&v, digits));
        }
    }
    corrections.add_column("n", cols[0].clone());
    for (i, col) in cols.iter().enumerate().skip(1) {
        corrections.add_column(format!("b{i}"), col.clone());
    }

    Ok(Report { tables: vec![census, milestones, corrections] })
}

/// Averaging-kernel diagnostics: exact power action against its limit
/// form, the kernel profile and window mass, and term-wise averaging
/// against the transform.
pub fn cmd_kernel(cfg: &RunConfig, n: u32, omega2: Option<&str>) -> Result<Report> {
    cfg.validate()?;
    if n < 1 {
        return Err(Error::Config { message: "kernel order must be at least 1".into() });
    }
    let ctx = cfg.ctx();
    let om2 = match omega2 {
        Some(s) => parse_real(&ctx, s)?,
        None => ctx.from_u64(n as u64),
    };
    if !(om2.is_finite() && om2.is_sign_positive() && !om2.is_zero()) {
        return Err(Error::Config { message: "omega2 must be positive".into() });
    }

    let mut power = Table::new("power_action");
    let xis = ["1", "0", "1/2", "-1/2", "-3/2"];
    let mut xi_col = Vec::new();
    let mut act_col = Vec::new();
    let mut lim_col = Vec::new();
    let mut ratio_col = Vec::new();
    for xs in xis {
        let xi = parse_beta(xs)?;
        let action = dn_on_power(&ctx, n, &om2, &xi)?;
        xi_col.push(Cell::text(xs));
        // limit form (Ω²/N)^ξ / Γ(1−ξ); a positive-integer ξ hits the
        // Γ pole, so both sides are exactly zero
        let one_minus = Rational::from(1) - &xi;
        if one_minus <= 0 && one_minus.is_integer() {
            act_col.push(Cell::number(&action, 1));
            lim_col.push(Cell::text("0"));
            ratio_col.push(Cell::text(""));
            continue;
        }
        let base = om2.clone() / ctx.from_u64(n as u64);
        let limit = ctx.powr(&base, &xi)? / ctx.gamma(&ctx.from_rational(&one_minus))?;
        let ratio = action.clone() / &limit;
        act_col.push(Cell::number(&action, CURVE_DIGITS));
        lim_col.push(Cell::number(&limit, CURVE_DIGITS));
        ratio_col.push(Cell::number(&ratio, 10));
    }
    power.add_column("xi", xi_col);
    power.add_column("action", act_col);
    power.add_column("limit_form", lim_col);
    power.add_column("ratio", ratio_col);

    let mut profile = Table::new("kernel_profile");
    let mode = ctx.from_u64(n as u64) / &om2;
    let mut t_col = Vec::new();
    let mut v_col = Vec::new();
    for factor in ["0.5", "0.8", "0.95", "1", "1.05", "1.2", "1.5", "2"] {
        let t = mode.clone() * ctx.real(factor);
        let sample = delta_kernel(&ctx, n, &om2, &t)?;
        t_col.push(Cell::number(&t, 8));
        v_col.push(Cell::number(&sample.value, CURVE_DIGITS));
    }
    profile.add_column("t", t_col);
    profile.add_column("density", v_col);

    let mut window = Table::new("window_mass");
    let rel = ctx.from_u64(n as u64).sqrt().recip() * 3u32;
    let lo = mode.clone() * (ctx.one() - &rel);
    let hi = mode.clone() * (ctx.one() + &rel);
    let mass = kernel_mass(&ctx, n, &om2, &lo.clone().max(&ctx.zero()), &hi)?;
    window.add_column("t_lo", vec![Cell::number(&lo, 8)]);
    window.add_column("t_hi", vec![Cell::number(&hi, 8)]);
    window.add_column("mass", vec![Cell::number(&mass, 10)]);

    let mut avg = Table::new("averaging_vs_transform");
    let x_target = mode.clone();
    let n_odd = if n % 2 == 0 { n.saturating_sub(1).max(1) } else { n };
    let ladder: Vec<u32> = [n_odd.saturating_sub(40), n_odd.saturating_sub(20), n_odd]
        .iter()
        .copied()
        .filter(|&k| k >= 11 && k % 2 == 1)
        .collect();
    let coeffs = match cfg.model {
        Model::Anharmonic if !ladder.is_empty() => {
            Some(load_anh_coefficients(cfg, *ladder.last().unwrap())?)
        }
        _ => None,
    };
    let mut n_col = Vec::new();
    let mut lhs_col = Vec::new();
    let mut rhs_col = Vec::new();
    let mut diff_col = Vec::new();
    for k in ladder {
        let om2_k = ctx.from_u64(k as u64) / &x_target;
        let (lhs, rhs, reldiff) =
            dn_vs_heaviside(&ctx, k, &om2_k, cfg.model, coeffs.as_deref())?;
        n_col.push(Cell::integer(k as u64));
        lhs_col.push(Cell::number(&lhs, CURVE_DIGITS));
        rhs_col.push(Cell::number(&rhs, CURVE_DIGITS));
        diff_col.push(Cell::number(&reldiff, 8));
    }
    avg.add_column("n", n_col);
    avg.add_column("averaged", lhs_col);
    avg.add_column("transformed", rhs_col);
    avg.add_column("reldiff", diff_col);

    Ok(Report { tables: vec![power, profile, window, avg] })
}
