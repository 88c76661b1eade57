//! End-to-end checks of the resummation pipeline against pinned reference
//! digits. Each test prints one `criterion N: PASS (...)` or
//! `criterion N: FAIL (...)` line; FAIL lines carry per-cell diagnostics.
//!
//! Matching rules: a value "matches the printed digits" when it lies
//! within 1.5 units in the last printed decimal place (absorbing
//! truncate-versus-round in the reference); "matches to d significant
//! digits" means within 1.5 units in the d-th significant digit of the
//! reference.

use resum::delta::{delta_kernel, dn_vs_heaviside, kernel_mass};
use resum::engine::{
    approximant, beta_scan, correction_coefficients, find_stationary_points,
    remainder_bound_check, scaling_diagnostic, select_x_star, strong_coupling_expansion,
    StationaryPoint,
};
use resum::oracles::{aho_ground_energy, pinned_constants, z_exact, E0_EXACT};
use resum::precision::Ctx;
use resum::series::{anharmonic_series_from, build_series, cache_read, Model, PerturbationSeries};
use resum::transform::{heaviside_transform, HeavisideSeries};
use rug::{Float, Rational};
use std::path::Path;
use std::sync::OnceLock;
use std::time::Instant;

const WORK_DIGITS: u32 = 80;

/// State shared across criteria: the order-249 oscillator transform with
/// its stationary points, the order-15 integral transform with its edge,
/// and the exact coefficient table, built once per process.
struct Shared {
    ctx: Ctx,
    coeffs: Vec<Rational>,
    coeff_seconds: f64,
    osc_series: PerturbationSeries,
    osc_hs: HeavisideSeries,
    osc_points: Vec<StationaryPoint>,
    root_seconds: f64,
    int15_series: PerturbationSeries,
    int15_hs: HeavisideSeries,
    int15_edge: StationaryPoint,
}

static SHARED: OnceLock<Shared> = OnceLock::new();

fn shared() -> &'static Shared {
    SHARED.get_or_init(|| {
        let ctx = Ctx::new(WORK_DIGITS);
        let beta = Rational::from(2);

        let t0 = Instant::now();
        let cache = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/anh_coeffs_249.txt");
        let coeffs = cache_read(&cache).expect("bundled coefficient cache");
        let coeff_seconds = t0.elapsed().as_secs_f64();

        let osc_series =
            anharmonic_series_from(&ctx, &coeffs, 249, &beta).expect("oscillator series");
        let osc_hs = heaviside_transform(&ctx, &osc_series).expect("oscillator transform");
        let t1 = Instant::now();
        let osc_points = find_stationary_points(&ctx, &osc_hs, None).expect("oscillator roots");
        let root_seconds = t1.elapsed().as_secs_f64();

        let int15_series =
            build_series(&ctx, Model::NonGaussian, 15, &beta).expect("integral series");
        let int15_hs = heaviside_transform(&ctx, &int15_series).expect("integral transform");
        let pts = find_stationary_points(&ctx, &int15_hs, None).expect("integral roots");
        let int15_edge = select_x_star(&pts).expect("integral edge").clone();

        Shared {
            ctx,
            coeffs,
            coeff_seconds,
            osc_series,
            osc_hs,
            osc_points,
            root_seconds,
            int15_series,
            int15_hs,
            int15_edge,
        }
    })
}

/// One unit in the last printed decimal place of a reference literal.
fn printed_ulp(c: &Ctx, printed: &str) -> Float {
    let body = printed.trim().trim_start_matches('-');
    let (mantissa, exp) = match body.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().expect("exponent")),
        None => (body, 0),
    };
    let decimals = mantissa.split_once('.').map_or(0, |(_, frac)| frac.len() as i32);
    c.real(&format!("1e{}", exp - decimals))
}

/// Within 1.5 units in the last printed decimal place.
fn within_printed(c: &Ctx, ours: &Float, printed: &str) -> bool {
    let target = c.real(printed);
    let tol = printed_ulp(c, printed) * 1.5f64;
    Float::with_val(c.bits(), ours - &target).abs() <= tol
}

/// Within 1.5 units in the `sig`-th significant digit of `reference`.
fn within_sig(c: &Ctx, ours: &Float, reference: &Float, sig: i32) -> bool {
    let e = reference.clone().abs().log10().floor().to_f64() as i32;
    let tol = c.real(&format!("1.5e{}", e - sig + 1));
    Float::with_val(c.bits(), ours - reference).abs() <= tol
}

fn show(v: &Float) -> String {
    format!("{v:.19e}")
}

fn conclude(criterion: u32, failures: Vec<String>, pass_detail: String) {
    if failures.is_empty() {
        println!("criterion {criterion}: PASS ({pass_detail})");
    } else {
        let msg = failures.join("; ");
        println!("criterion {criterion}: FAIL ({msg})");
        panic!("criterion {criterion}: {msg}");
    }
}

/// Plateau value and edge location of the integral model, orders 1..15.
#[test]
fn criterion_01_integral_plateau_table() {
    let c = Ctx::new(WORK_DIGITS);
    let beta = Rational::from(2);
    const ROWS: [(u32, &str, &str); 8] = [
        (1, "1.6", "1"),
        (3, "1.7313594", "1.5960716"),
        (5, "1.7765256", "2.1806071"),
        (7, "1.7955618", "2.7590027"),
        (9, "1.8043006", "3.3335514"),
        (11, "1.8085078", "3.9054517"),
        (13, "1.8105959", "4.4754119"),
        (15, "1.8116546", "5.0438870"),
    ];
    let t0 = Instant::now();
    let mut failures = Vec::new();
    for (n, value_ref, xsq_ref) in ROWS {
        let series = build_series(&c, Model::NonGaussian, n, &beta).expect("series");
        let hs = heaviside_transform(&c, &series).expect("transform");
        let points = find_stationary_points(&c, &hs, None).expect("roots");
        let edge = select_x_star(&points).expect("edge");
        let xsq = Float::with_val(c.bits(), edge.x_star.square_ref());
        if !within_printed(&c, &edge.value, value_ref) {
            failures.push(format!("N={n} value {} vs pinned {value_ref}", show(&edge.value)));
        }
        if !within_printed(&c, &xsq, xsq_ref) {
            failures.push(format!("N={n} x*^2 {} vs pinned {xsq_ref}", show(&xsq)));
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    if elapsed >= 10.0 {
        failures.push(format!("runtime {elapsed:.1}s exceeds 10s"));
    }
    conclude(1, failures, format!("8 rows match printed digits in {elapsed:.2}s"));
}

/// Resummed integral at order 15 against 18-digit pins, plus the
/// quadrature oracle against the pinned closed-form column.
#[test]
fn criterion_02_integral_resummation_table() {
    let s = shared();
    let c = &s.ctx;
    const ROWS: [(&str, &str, &str); 7] = [
        ("0.01", "1.80557702921362946", "1.806700454307384679"),
        ("0.1", "1.75281762908207768", "1.753725831772014832"),
        ("1", "1.36831695165151724", "1.368426855735508774"),
        ("3", "0.96173724333279584", "0.961738333157472108"),
        ("6", "0.710038679143677110", "0.710038680405132855"),
        ("10", "0.556465718382570615", "0.556465718382772753"),
        ("100", "0.177232097497741759", "0.177232097497741761"),
    ];
    let t0 = Instant::now();
    let mut failures = Vec::new();
    for (m2_str, total_ref, exact_ref) in ROWS {
        let m2 = c.real(m2_str);
        let r = approximant(c, &s.int15_series, &s.int15_hs, &s.int15_edge.x_star, &m2)
            .expect("approximant");
        if !within_printed(c, &r.total, total_ref) {
            failures.push(format!("m2={m2_str} total {} vs pinned {total_ref}", show(&r.total)));
        }
        let oracle = z_exact(c, &m2).expect("quadrature oracle");
        let exact = c.real(exact_ref);
        if !within_sig(c, &oracle.value, &exact, 15) {
            failures.push(format!(
                "m2={m2_str} oracle {} vs pinned {exact_ref} (15-digit rule)",
                show(&oracle.value)
            ));
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    if elapsed >= 60.0 {
        failures.push(format!("runtime {elapsed:.1}s exceeds 60s"));
    }
    conclude(2, failures, format!("7 rows and oracle column match in {elapsed:.2}s"));
}

/// Oscillator plateau, strong-coupling coefficients, and edge for the
/// first five odd orders, 15 pinned digits per cell.
#[test]
fn criterion_03_oscillator_strong_coupling_table() {
    let s = shared();
    let c = &s.ctx;
    let beta = Rational::from(2);
    const ROWS: [(u32, [&str; 6]); 5] = [
        (1, [
            "0.738558766382022", "0.121215344755496", "-0.004420970641441",
            "0.0002176764415436", "-0.000010207418675", "0.328248340614232",
        ]),
        (3, [
            "0.686283726385561", "0.134984882799344", "-0.006437328047158",
            "0.0004280233911678", "-0.000027447789756", "0.448360373271548",
        ]),
        (5, [
            "0.674564660427775", "0.139821127686036", "-0.007465973798930",
            "0.0005773467460109", "-0.000044015663387", "0.549152913559036",
        ]),
        (7, [
            "0.670682699394559", "0.141853009994811", "-0.008005281363443",
            "0.0006739106832314", "-0.000057114935211", "0.636621775859320",
        ]),
        (9, [
            "0.669175108154224", "0.142780937393257", "-0.008293166786158",
            "0.0007338756445212", "-0.000066541377300", "0.713814879924458",
        ]),
    ];
    let mut failures = Vec::new();
    for (n, refs) in ROWS {
        let series = anharmonic_series_from(c, &s.coeffs, n, &beta).expect("series");
        let hs = heaviside_transform(c, &series).expect("transform");
        let points = find_stationary_points(c, &hs, None).expect("roots");
        let edge = select_x_star(&points).expect("edge");
        let alphas = strong_coupling_expansion(c, &hs, &edge.x_star, 4).expect("expansion");
        let cells: [(&str, &Float); 6] = [
            ("value", &edge.value),
            ("alpha1", &alphas[1]),
            ("alpha2", &alphas[2]),
            ("alpha3", &alphas[3]),
            ("alpha4", &alphas[4]),
            ("x_star", &edge.x_star),
        ];
        for ((name, ours), printed) in cells.iter().zip(refs.iter()) {
            if !within_printed(c, ours, printed) {
                failures.push(format!("N={n} {name} {} vs pinned {printed}", show(ours)));
            }
        }
    }
    conclude(3, failures, "5 rows x 6 columns match 15 pinned digits".to_string());
}

/// The three stationary points of the order-249 oscillator transform
/// against 12-digit pins (10-significant-digit rule), the gap between the
/// edge value and the exact ground energy, and the runtime budgets.
#[test]
fn criterion_04_oscillator_stationary_points() {
    let s = shared();
    let c = &s.ctx;
    const X_REF: [&str; 3] = ["1.139689002700", "2.069065340532", "2.987637042160"];
    const V_REF: [&str; 3] = ["0.667975902279", "0.667986268727", "0.667986259143"];
    let mut failures = Vec::new();
    if s.osc_points.len() != 3 {
        failures.push(format!("expected 3 stationary points, found {}", s.osc_points.len()));
    } else {
        for (i, point) in s.osc_points.iter().enumerate() {
            let x_ref = c.real(X_REF[i]);
            let v_ref = c.real(V_REF[i]);
            if !within_sig(c, &point.x_star, &x_ref, 10) {
                let mut note = format!(
                    "point {} location {} vs pinned {} (10-digit rule)",
                    i + 1,
                    show(&point.x_star),
                    X_REF[i]
                );
                if let Some(stray) = matching_lower_order_root(s, &x_ref) {
                    note.push_str(&format!(
                        "; the pinned location coincides with the order-248 transform's \
                         root at {} while every order-249 derivative root is accounted for",
                        show(&stray)
                    ));
                }
                failures.push(note);
            }
            if !within_sig(c, &point.value, &v_ref, 10) {
                failures.push(format!(
                    "point {} value {} vs pinned {} (10-digit rule)",
                    i + 1,
                    show(&point.value),
                    V_REF[i]
                ));
            }
        }
        let e0 = c.real(E0_EXACT);
        let gap = Float::with_val(c.bits(), &e0 - &s.osc_points[2].value);
        if !(gap > c.real("1.0e-11") && gap < c.real("1.45e-11")) {
            failures.push(format!("edge-value gap to exact energy {} not near 1.2e-11", show(&gap)));
        }
    }
    if s.coeff_seconds >= 1800.0 {
        failures.push(format!("coefficient load {:.1}s exceeds 30min", s.coeff_seconds));
    }
    if s.root_seconds >= 300.0 {
        failures.push(format!("root finding {:.1}s exceeds 5min", s.root_seconds));
    }
    conclude(
        4,
        failures,
        format!(
            "3 points match 10 digits, gap near 1.2e-11, roots in {:.1}s",
            s.root_seconds
        ),
    );
}

/// Looks for a stationary point of the order-248 transform matching a
/// pinned location the order-249 transform cannot reproduce.
fn matching_lower_order_root(s: &Shared, x_ref: &Float) -> Option<Float> {
    let c = &s.ctx;
    let beta = Rational::from(2);
    let series = anharmonic_series_from(c, &s.coeffs, 248, &beta).ok()?;
    let hs = heaviside_transform(c, &series).ok()?;
    let points = find_stationary_points(c, &hs, None).ok()?;
    points
        .into_iter()
        .find(|p| within_sig(c, &p.x_star, x_ref, 10))
        .map(|p| p.x_star)
}

/// Resummed oscillator energy at order 249 against 17-digit pins, plus
/// the eigensolver oracle against the pinned exact column.
#[test]
fn criterion_05_oscillator_resummation_table() {
    let s = shared();
    let c = &s.ctx;
    const ROWS: [(&str, &str, &str); 7] = [
        ("0.001", "0.66812991929974827", "0.66812991931241042"),
        ("0.01", "0.66942208503810206", "0.66942208505040309"),
        ("0.1", "0.68226767187380087", "0.68226767188301217"),
        ("1", "0.80377065123375873", "0.80377065123427376"),
        ("10", "1.64938954183035211", "1.64938954183035211"),
        ("100", "5.00747395574729234", "5.00747395574729234"),
        ("1000", "15.8121382178529", "15.8121382178529"),
    ];
    let edge = select_x_star(&s.osc_points).expect("edge");
    let mut failures = Vec::new();
    for (m2_str, total_ref, exact_ref) in ROWS {
        let m2 = c.real(m2_str);
        let r = approximant(c, &s.osc_series, &s.osc_hs, &edge.x_star, &m2).expect("approximant");
        if !within_printed(c, &r.total, total_ref) {
            failures.push(format!("m2={m2_str} total {} vs pinned {total_ref}", show(&r.total)));
        }
        let oracle = aho_ground_energy(c, &m2, 25).expect("eigensolver oracle");
        if !within_printed(c, &oracle.value, exact_ref) {
            failures.push(format!(
                "m2={m2_str} oracle {} vs pinned {exact_ref}",
                show(&oracle.value)
            ));
        }
    }
    conclude(5, failures, "7 rows and oracle column match printed digits".to_string());
}

/// Derivatives of the order-249 transform at its edge: the first vanishes
/// to 1e-20 and the next six match 6 significant digits.
#[test]
fn criterion_06_edge_derivatives() {
    let s = shared();
    let c = &s.ctx;
    const B_REF: [&str; 6] = [
        "8.259931e-10",
        "-8.27746e-9",
        "5.094257e-7",
        "4.804239e-5",
        "6.054357e-3",
        "7.451039e-1",
    ];
    let edge = select_x_star(&s.osc_points).expect("edge");
    let bs = correction_coefficients(c, &s.osc_hs, &edge.x_star, 7).expect("derivatives");
    let mut failures = Vec::new();
    let b1 = bs[0].clone().abs();
    if b1 > c.real("1e-20") {
        failures.push(format!("b1 magnitude {} exceeds 1e-20", show(&bs[0])));
    }
    for (i, printed) in B_REF.iter().enumerate() {
        let ours = &bs[i + 1];
        let reference = c.real(printed);
        if !within_sig(c, ours, &reference, 6) {
            failures.push(format!("b{} {} vs pinned {printed} (6-digit rule)", i + 2, show(ours)));
        }
    }
    conclude(6, failures, "b1 vanishes, b2..b7 match 6 significant digits".to_string());
}

/// Both variable-power scans: every pinned line's order, edge location,
/// and plateau value, and the argmin of the oracle deviation at the
/// canonical power in each scan.
#[test]
fn criterion_07_beta_scans() {
    let s = shared();
    let c = &s.ctx;
    let mut failures = Vec::new();

    // Location cells pin either printed digits or a printed interval.
    enum XPin {
        Printed(&'static str),
        Range(&'static str, &'static str),
    }
    let check_x = |ours: &Float, pin: &XPin| -> Option<String> {
        match pin {
            XPin::Printed(p) => (!within_printed(c, ours, p))
                .then(|| format!("x {} vs pinned {p}", show(ours))),
            XPin::Range(lo, hi) => {
                let inside = *ours >= c.real(lo) && *ours <= c.real(hi);
                (!inside).then(|| format!("x {} outside pinned [{lo}, {hi}]", show(ours)))
            }
        }
    };

    let constants = pinned_constants(c).expect("constants");
    let scans: [(&str, Model, u32, &Float, Vec<(&str, Rational, u32, XPin, &str)>); 2] = [
        (
            "integral",
            Model::NonGaussian,
            100,
            &constants["Z0_EXACT"],
            vec![
                ("3/2", Rational::from((3, 2)), 100, XPin::Printed("15.037"), "1.8169575"),
                ("17/10", Rational::from((17, 10)), 100, XPin::Printed("10.336"), "1.81926459"),
                ("19/10", Rational::from((19, 10)), 100, XPin::Printed("7.1806"), "1.81719914639"),
                ("2", Rational::from(2), 99, XPin::Printed("5.34"), "1.812804954110934"),
                ("21/10", Rational::from((21, 10)), 99, XPin::Printed("5.043"), "1.8051679"),
            ],
        ),
        (
            "oscillator",
            Model::Anharmonic,
            249,
            &constants["E0_EXACT"],
            vec![
                ("17/10", Rational::from((17, 10)), 248, XPin::Range("6.53", "6.57"), "0.6655"),
                ("9/5", Rational::from((9, 5)), 248, XPin::Range("5.1257", "5.1260"), "0.665514724"),
                ("19/10", Rational::from((19, 10)), 248, XPin::Printed("4.0185"), "0.666234824085"),
                ("2", Rational::from(2), 248, XPin::Printed("2.98685"), "0.667986259143255939"),
                ("21/10", Rational::from((21, 10)), 249, XPin::Printed("2.5012"), "0.67107970759"),
            ],
        ),
    ];

    for (label, model, top, oracle, pins) in scans {
        let betas: Vec<Rational> = pins.iter().map(|(_, b, _, _, _)| b.clone()).collect();
        let coeffs = (model == Model::Anharmonic).then_some(s.coeffs.as_slice());
        let rows = beta_scan(c, model, top, &betas, coeffs).expect("scan");
        let mut best: Option<(usize, Float)> = None;
        for (i, ((beta_str, _, n_ref, x_pin, v_ref), row)) in pins.iter().zip(rows.iter()).enumerate()
        {
            let point = row.point.as_ref().expect("every scanned power has a plateau");
            if row.n_used != Some(*n_ref) {
                failures.push(format!(
                    "{label} beta={beta_str} used order {:?} vs pinned {n_ref}",
                    row.n_used
                ));
            }
            if let Some(msg) = check_x(&point.x_star, x_pin) {
                failures.push(format!("{label} beta={beta_str} {msg}"));
            }
            if !within_printed(c, &point.value, v_ref) {
                failures.push(format!(
                    "{label} beta={beta_str} value {} vs pinned {v_ref}",
                    show(&point.value)
                ));
            }
            let dev = Float::with_val(c.bits(), &point.value - oracle).abs();
            if best.as_ref().map_or(true, |(_, d)| dev < *d) {
                best = Some((i, dev));
            }
        }
        let (argmin, _) = best.expect("nonempty scan");
        if pins[argmin].0 != "2" {
            failures.push(format!(
                "{label} scan: oracle deviation minimized at beta={} instead of 2",
                pins[argmin].0
            ));
        }
    }
    conclude(
        7,
        failures,
        "10 scan lines match pinned digits; beta=2 is the argmin in both scans".to_string(),
    );
}

/// Plateau-edge scaling of the integral model and the remainder bound.
#[test]
fn criterion_08_plateau_scaling() {
    let c = Ctx::new(WORK_DIGITS);
    let mut failures = Vec::new();
    let third = c.real("1") / 3u32;
    let rows = scaling_diagnostic(&c, Model::NonGaussian, &[99, 199], None).expect("scaling");
    for (n, _, ratio) in &rows {
        let dev = Float::with_val(c.bits(), ratio - &third).abs();
        if dev > c.real("0.05") {
            failures.push(format!(
                "N={n} edge ratio {} deviates from 1/3 by more than 0.05",
                show(ratio)
            ));
        }
    }
    for n in (1..=31).step_by(2) {
        let (actual, bound, ok) = remainder_bound_check(&c, n).expect("remainder check");
        if !ok {
            failures.push(format!(
                "N={n} remainder {} exceeds bound {}",
                show(&actual),
                show(&bound)
            ));
        }
    }
    conclude(8, failures, "edge ratios near 1/3 and remainder bound holds to N=31".to_string());
}

/// Deterministic 64-bit mixer driving the randomized invariants.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }

    fn below(&mut self, n: u32) -> u32 {
        (self.next() % u64::from(n)) as u32
    }
}

/// Randomized invariants on a fixed seed: the incomplete-gamma split, the
/// approximant decomposition, bare-series recovery, the zeroth
/// strong-coupling coefficient, kernel normalization and mode, and the
/// kernel-versus-transform agreement at order 51.
#[test]
fn criterion_09_randomized_invariants() {
    let s = shared();
    let c = Ctx::new(50);
    let beta = Rational::from(2);
    let mut rng = Lcg(0x5eed_5eed_5eed_5eed);
    let mut failures = Vec::new();
    let real = |v: f64| c.real(&format!("{v:.17e}"));

    for case in 0..100 {
        let p = real(rng.uniform(-0.9, 40.0)) + 1u32;
        let z = real(rng.uniform(1e-3, 50.0));
        let lower = c.lower_incomplete_gamma(&p, &z).expect("lower");
        let upper = c.upper_incomplete_gamma(&p, &z).expect("upper");
        let whole = c.gamma(&p).expect("gamma");
        let rel = ((Float::with_val(c.bits(), &lower + &upper) - &whole) / &whole).abs();
        if rel > real(1e-40) {
            failures.push(format!("gamma split case {case} off by {}", show(&rel)));
        }
    }

    let mut edges: std::collections::BTreeMap<u32, (PerturbationSeries, HeavisideSeries, Float)> =
        std::collections::BTreeMap::new();
    let mut edge_for = |n: u32| -> (PerturbationSeries, HeavisideSeries, Float) {
        edges
            .entry(n)
            .or_insert_with(|| {
                let series = build_series(&c, Model::NonGaussian, n, &beta).expect("series");
                let hs = heaviside_transform(&c, &series).expect("transform");
                let points = find_stationary_points(&c, &hs, None).expect("roots");
                let edge = select_x_star(&points).expect("edge").x_star.clone();
                (series, hs, edge)
            })
            .clone()
    };

    for case in 0..50 {
        let n = 2 * rng.below(8) + 1;
        let m2 = real(10f64.powf(rng.uniform(-3.0, 2.0)));
        let (series, hs, edge) = edge_for(n);
        let r = approximant(&c, &series, &hs, &edge, &m2).expect("approximant");
        let lhs = Float::with_val(c.bits(), &r.perturbative_part + &r.correction_part);
        let diff = (lhs - &r.total).abs();
        let scale = r
            .perturbative_part
            .clone()
            .abs()
            .max(&r.total.clone().abs())
            .max(&c.one());
        if diff > scale * real(1e-40) {
            failures.push(format!("decomposition case {case} (N={n}) off by {}", show(&diff)));
        }
    }

    for case in 0..10 {
        let n = 2 * rng.below(8) + 1;
        let m2 = real(rng.uniform(0.5, 20.0));
        let (series, hs, _) = edge_for(n);
        let p_top = real(f64::from(4 * n + 1) / 2.0);
        let x_big = (real(200.0) + p_top * 5u32) / &m2;
        let r = approximant(&c, &series, &hs, &x_big, &m2).expect("approximant");
        let bare = series.evaluate(&c, &m2).expect("bare series");
        let diff = Float::with_val(c.bits(), &r.total - &bare).abs();
        let scale = bare.clone().abs().max(&c.one());
        if diff > scale * real(1e-25) {
            failures.push(format!("recovery case {case} (N={n}) off by {}", show(&diff)));
        }
    }

    for _ in 0..5 {
        let n = 2 * rng.below(7) + 1;
        let (_, hs, edge) = edge_for(n);
        let plateau = hs.evaluate(&c, &edge).expect("plateau");
        let alpha0 = hs.alpha_k(&c, &edge, 0).expect("alpha0");
        let diff = Float::with_val(c.bits(), &alpha0 - &plateau).abs();
        if diff > plateau.clone().abs() * real(1e-44) {
            failures.push(format!("alpha0 differs from plateau at N={n}"));
        }
    }

    for case in 0..10 {
        let n = 1 + rng.below(300);
        let omega2 = real(10f64.powf(rng.uniform(-1.0, 2.0)));
        let t_hi = c.from_u64(u64::from(5 * (n + 1) + 50)) / &omega2;
        let mass = kernel_mass(&c, n, &omega2, &c.zero(), &t_hi).expect("mass");
        let defect = (mass - 1u32).abs();
        if defect > real(1e-18) {
            failures.push(format!("kernel mass case {case} (N={n}) defect {}", show(&defect)));
        }
        let mode = c.from_u64(u64::from(n)) / &omega2;
        let at_mode = delta_kernel(&c, n, &omega2, &mode).expect("kernel").value;
        for shift in [0.99f64, 1.01] {
            let t = mode.clone() * real(shift);
            let off = delta_kernel(&c, n, &omega2, &t).expect("kernel").value;
            if at_mode <= off {
                failures.push(format!("kernel case {case} (N={n}) not peaked at N/omega2"));
            }
        }
    }

    let c60 = Ctx::new(60);
    let omega2 = c60.from_u64(51);
    for (model, coeffs) in [
        (Model::NonGaussian, None),
        (Model::Anharmonic, Some(s.coeffs.as_slice())),
    ] {
        let (_, _, rel) = dn_vs_heaviside(&c60, 51, &omega2, model, coeffs).expect("agreement");
        if rel >= c60.real("1e-2") {
            failures.push(format!("{model} kernel average off by {} at order 51", show(&rel)));
        }
    }

    conclude(9, failures, "175 seeded cases and the order-51 agreement hold".to_string());
}

/// Strong-coupling coefficients of the integral model at order 15 against
/// the pinned digits, and their deviation from the closed-form limit
/// growing with the coefficient index.
#[test]
fn criterion_10_strong_coupling_expansion() {
    let s = shared();
    let c = &s.ctx;
    const ALPHA_REF: [&str; 5] = ["1.811655", "-0.609988", "0.223363", "-0.074001", "0.022042"];
    let alphas = strong_coupling_expansion(c, &s.int15_hs, &s.int15_edge.x_star, 4)
        .expect("expansion");
    let mut failures = Vec::new();
    let mut prev_rel: Option<Float> = None;
    let mut factorial = c.one();
    for (k, printed) in ALPHA_REF.iter().enumerate() {
        if !within_printed(c, &alphas[k], printed) {
            failures.push(format!("alpha{k} {} vs pinned {printed}", show(&alphas[k])));
        }
        // Closed-form limit: (-1)^k Gamma(k/2 + 1/4) / (2 k!).
        if k > 0 {
            factorial *= c.from_u64(k as u64);
        }
        let arg = c.real(&format!("{}", k as f64 / 2.0 + 0.25));
        let mut exact = c.gamma(&arg).expect("gamma") / 2u32 / &factorial;
        if k % 2 == 1 {
            exact = -exact;
        }
        let rel = (Float::with_val(c.bits(), &alphas[k] - &exact) / &exact).abs();
        if let Some(prev) = &prev_rel {
            if rel <= *prev {
                failures.push(format!(
                    "deviation from the closed form shrank at k={k}: {} after {}",
                    show(&rel),
                    show(prev)
                ));
            }
        }
        prev_rel = Some(rel);
    }
    conclude(
        10,
        failures,
        "5 coefficients match pinned digits; closed-form deviation grows with k".to_string(),
    );
}
