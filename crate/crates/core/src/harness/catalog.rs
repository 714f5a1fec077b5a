use rand::Rng;
use serde_json::json;

use super::{Check, ExperimentConfig, ExperimentKind, JobReport, Plot, Table};
use crate::convex::{BodySpec, ConvexBody, SimplexVariant};
use crate::covariogram::{covariogram_body, covariogram_body_with, difference_quotient};
use crate::error::{Error, Result};
use crate::harness::CaseSpec;
use crate::inequalities::{
    check_chain, check_rs_body, check_rs_multi, check_rs_single, check_tangent_bound, check_zhang_body,
    check_zhang_fn, random_log_concave_1d, Status,
};
use crate::lcfun::{FunctionSpec, LogConcaveFunction, Profile, ProfileKind, Support};
use crate::mellin::{g_functional, i_p, mellin, MellinProfile, RadialProfile};
use crate::mvector::MVector;
use crate::numerics::special::{binomial, factorial, ln_gamma};
use crate::numerics::{monte_carlo_box, monte_carlo_mean};
use crate::projection::ProjectionGauge;
use crate::starbody::{ball_body_radial, directions, radial_mean_body_fn, CovSource, CovariogramRay};

/// Exponent used to approach the `p → −1` endpoint of the chain.
const NEAR_ENDPOINT: f64 = -0.99;
const DEFAULT_MELLIN_GRID: [f64; 10] = [-0.9, -0.5, -0.2, 0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0];

fn simplex(dim: usize, variant: SimplexVariant) -> BodySpec {
    BodySpec::Simplex { dim, variant }
}

fn cube(dim: usize) -> BodySpec {
    BodySpec::Cube { dim, half_width: 1.0 }
}

fn ball(dim: usize) -> BodySpec {
    BodySpec::Ball { dim, radius: 1.0 }
}

fn func(profile: ProfileKind, s_or_p: Option<f64>, body: BodySpec) -> FunctionSpec {
    FunctionSpec { profile, s_or_p, body, shift: None, amplitude: 1.0 }
}

fn exp_simplex() -> FunctionSpec {
    func(ProfileKind::Exponential, None, simplex(1, SimplexVariant::Corner))
}

fn gaussian_interval() -> FunctionSpec {
    func(ProfileKind::Gaussian, None, cube(1))
}

fn case(function: FunctionSpec, theta: &[f64]) -> CaseSpec {
    CaseSpec { function, theta: theta.to_vec(), m: None }
}

fn with_order(function: FunctionSpec, m: usize) -> CaseSpec {
    CaseSpec { function, theta: Vec::new(), m: Some(m) }
}

/// The built-in experiments, one per acceptance criterion, in order.
pub fn catalog() -> Vec<ExperimentConfig> {
    use ExperimentKind::*;
    let corner1 = simplex(1, SimplexVariant::Corner);
    let corner2 = simplex(2, SimplexVariant::Corner);
    let centered2 = simplex(2, SimplexVariant::Centered);
    let mut out = Vec::new();

    let mut c = ExperimentConfig::new("classical_formula", ClassicalFormula);
    c.bodies = vec![centered2.clone(), cube(2)];
    c.samples = 1_000_000;
    c.seed = 1;
    out.push(c);

    let mut c = ExperimentConfig::new("covariogram_mass", CovariogramMass);
    c.bodies = vec![cube(2)];
    c.seed = 2;
    out.push(c);

    let mut c = ExperimentConfig::new("rogers_shephard_bodies", RogersShephardBodies);
    c.bodies = vec![corner2.clone(), corner1.clone()];
    c.orders = vec![1, 2];
    c.seed = 3;
    out.push(c);

    let mut c = ExperimentConfig::new("zhang_functional", ZhangFunctional);
    c.functions = vec![exp_simplex(), gaussian_interval()];
    c.orders = vec![1, 2];
    c.directions = 256;
    c.seed = 4;
    out.push(c);

    let mut c = ExperimentConfig::new("matheron", Matheron);
    c.cases = vec![
        case(exp_simplex(), &[1.0]),
        case(exp_simplex(), &[0.6, -0.8]),
        case(func(ProfileKind::Power, Some(1.0), simplex(1, SimplexVariant::Corner)), &[-1.0]),
        case(func(ProfileKind::Gaussian, None, centered2.clone()), &[0.6, 0.8]),
        case(func(ProfileKind::Indicator, None, corner2.clone()), &[0.5, 0.5, -0.5, 0.5]),
    ];
    c.seed = 5;
    out.push(c);

    let mut c = ExperimentConfig::new("chain", Chain);
    c.functions = vec![exp_simplex(), gaussian_interval(), func(ProfileKind::Gaussian, None, centered2.clone())];
    c.bodies = vec![corner1.clone()];
    c.orders = vec![1, 2];
    c.p_grid = vec![-0.5, 0.0, 1.0, 2.0, 5.0];
    c.directions = 8;
    c.seed = 6;
    out.push(c);

    let mut c = ExperimentConfig::new("mellin_suite", MellinSuite);
    c.p_grid = DEFAULT_MELLIN_GRID.to_vec();
    out.push(c);

    let mut c = ExperimentConfig::new("scaling_laws", ScalingLaws);
    c.bodies = vec![corner1.clone(), centered2.clone()];
    c.orders = vec![1, 2];
    c.p_grid = vec![1.0, 2.0];
    c.directions = 8;
    c.seed = 8;
    out.push(c);

    let mut c = ExperimentConfig::new("rogers_shephard_functional", RogersShephardFunctional);
    c.cases = vec![
        with_order(func(ProfileKind::Indicator, None, corner1.clone()), 2),
        with_order(func(ProfileKind::Indicator, None, ball(2)), 1),
        with_order(exp_simplex(), 1),
    ];
    c.random_families = 10;
    c.samples = 50_000;
    c.seed = 9;
    out.push(c);

    let mut c = ExperimentConfig::new("support_identity", SupportIdentity);
    c.functions = vec![func(ProfileKind::Indicator, None, corner1)];
    c.orders = vec![1, 2];
    c.p_grid = vec![200.0];
    c.directions = 64;
    c.seed = 10;
    out.push(c);

    let mut c = ExperimentConfig::new("zhang_petty_bodies", ZhangPettyBodies);
    c.bodies = vec![
        corner2,
        cube(2),
        ball(2),
        BodySpec::RandomPolygon { points: 7, seed: 1 },
        BodySpec::RandomPolygon { points: 9, seed: 2 },
        BodySpec::RandomPolygon { points: 12, seed: 3 },
    ];
    c.orders = vec![1, 2];
    c.directions = 20_000;
    c.seed = 11;
    out.push(c);

    for c in &mut out {
        c.description = Some(c.experiment.describe().to_string());
    }
    out
}

fn body_label(b: &BodySpec) -> String {
    match b {
        BodySpec::Simplex { dim, variant } => {
            format!("simplex{dim}_{}", if *variant == SimplexVariant::Corner { "corner" } else { "centered" })
        }
        BodySpec::Cube { dim, .. } => format!("cube{dim}"),
        BodySpec::Ball { dim, .. } => format!("ball{dim}"),
        BodySpec::Vertices { dim, vertices } => format!("polytope{dim}_{}v", vertices.len()),
        BodySpec::Halfspaces { dim, halfspaces } => format!("polytope{dim}_{}h", halfspaces.len()),
        BodySpec::RandomPolygon { points, seed } => format!("random_polygon_{points}_{seed}"),
    }
}

fn fn_label(f: &FunctionSpec) -> String {
    let kind = serde_json::to_value(f.profile).unwrap();
    let param = f.s_or_p.map(|v| format!("({v})")).unwrap_or_default();
    format!("{}{param}_{}", kind.as_str().unwrap(), body_label(&f.body))
}

fn is_simplex(k: &ConvexBody) -> bool {
    k.is_polytope() && k.vertices().is_some_and(|v| v.len() == k.dim() + 1)
}

/// `f = A e^{−‖x − x′‖_Δ}`: the equality family for the functional Zhang
/// inequality and the chain.
fn is_exp_simplex(f: &LogConcaveFunction) -> bool {
    *f.profile() == Profile::Exponential && is_simplex(f.body())
}

pub fn run_job(c: &ExperimentConfig) -> Result<JobReport> {
    c.validate()?;
    let mut r = JobReport::new(c);
    use ExperimentKind::*;
    match c.experiment {
        ClassicalFormula => classical_formula(c, &mut r)?,
        CovariogramMass => covariogram_mass(c, &mut r)?,
        RogersShephardBodies => rogers_shephard_bodies(c, &mut r)?,
        ZhangFunctional => zhang_functional(c, &mut r)?,
        Matheron => matheron(c, &mut r)?,
        Chain => chain(c, &mut r)?,
        MellinSuite => mellin_suite(c, &mut r)?,
        ScalingLaws => scaling_laws(c, &mut r)?,
        RogersShephardFunctional => rogers_shephard_functional(c, &mut r)?,
        SupportIdentity => support_identity(c, &mut r)?,
        ZhangPettyBodies => zhang_petty_bodies(c, &mut r)?,
        TangentBound => tangent_bound(c, &mut r)?,
    }
    Ok(r)
}

/// Relative tolerance for a volume that may itself be a Monte Carlo estimate.
fn volume_tol(base: f64, vol: &crate::numerics::Estimate) -> f64 {
    base.max(3.0 * vol.std_error / vol.value)
}

fn classical_formula(c: &ExperimentConfig, r: &mut JobReport) -> Result<()> {
    let mut table = Table::new("masses", &["body", "n", "volume", "closed_form", "monte_carlo", "monte_carlo_err"]);
    for (i, spec) in c.bodies.iter().enumerate() {
        let k = spec.build()?;
        let n = k.dim();
        let label = body_label(spec);
        let vol = k.volume();
        let f = LogConcaveFunction::centered(Profile::Exponential, k.clone())?;
        let closed = f.mass()?.value / factorial(n);
        // Laplace proposal with scale b ≥ √n·R decays slower than f.
        let b = (n as f64).sqrt() * k.circumradius();
        let norm = (2.0 * b).powi(n as i32);
        let mc = monte_carlo_mean(c.samples, c.seed.wrapping_add(i as u64), |rng| {
            let mut x = [0.0; 3];
            let mut l1 = 0.0;
            for xi in x.iter_mut().take(n) {
                let u: f64 = rng.random();
                let e = -b * (1.0 - u).ln();
                *xi = if rng.random::<bool>() { e } else { -e };
                l1 += e;
            }
            f.eval(&x[..n]) * norm * (l1 / b).exp()
        })
        .scale(1.0 / factorial(n));
        r.checks.push(Check::relative(format!("closed_form[{label}]"), closed, vol.value, volume_tol(1e-9, &vol)));
        r.checks.push(Check::relative(format!("monte_carlo[{label}]"), mc.value, vol.value, volume_tol(5e-3, &vol)));
        table.push(vec![i as f64, n as f64, vol.value, closed, mc.value, mc.std_error]);
    }
    r.tables.push(table);
    Ok(())
}

fn covariogram_mass(c: &ExperimentConfig, r: &mut JobReport) -> Result<()> {
    let mut table = Table::new("masses", &["body", "m", "integral", "integral_err", "target"]);
    for (i, spec) in c.bodies.iter().enumerate() {
        let k = spec.build()?;
        let n = k.dim();
        let vol = k.volume();
        for &m in &c.orders {
            let (lo, hi) = k.bounding_box();
            let w: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| b - a).collect();
            let lo_box: Vec<f64> = (0..n * m).map(|j| -w[j % n]).collect();
            let hi_box: Vec<f64> = (0..n * m).map(|j| w[j % n]).collect();
            let est = monte_carlo_box(&lo_box, &hi_box, c.samples, c.seed, |x| {
                let x = MVector::new(n, x.to_vec()).unwrap();
                if n <= 2 {
                    covariogram_body(&k, &x).value
                } else {
                    covariogram_body_with(&k, &x, 500, c.seed ^ 0x5eed).value
                }
            });
            let target = vol.value.powi(m as i32 + 1);
            let label = body_label(spec);
            r.checks.push(Check::relative(format!("mass[{label}, m={m}]"), est.value, target, volume_tol(1e-2, &vol)));
            table.push(vec![i as f64, m as f64, est.value, est.std_error, target]);
        }
    }
    r.tables.push(table);
    Ok(())
}

fn rogers_shephard_bodies(c: &ExperimentConfig, r: &mut JobReport) -> Result<()> {
    for spec in &c.bodies {
        let k = spec.build()?;
        for &m in &c.orders {
            let v = check_rs_body(&k, m, c.samples, c.seed)?;
            if is_simplex(&k) {
                let n = k.dim();
                let ratio = v.lhs.value / k.volume().value.powi(m as i32);
                let tol = if v.lhs.std_error == 0.0 { 1e-9 } else { 5e-3 };
                let label = body_label(spec);
                r.checks.push(Check::relative(
                    format!("ratio[{label}, m={m}]"),
                    ratio,
                    binomial((n * (m + 1)) as f64, n as f64),
                    tol,
                ));
            }
            r.verdicts.push(v);
        }
    }
    Ok(())
}

fn zhang_functional(c: &ExperimentConfig, r: &mut JobReport) -> Result<()> {
    for spec in &c.functions {
        let f = spec.build()?;
        let n = f.dim();
        let label = fn_label(spec);
        for &m in &c.orders {
            let d = n * m;
            let v = check_zhang_fn(&f, m, c.directions, c.seed)?;
            // Only the two-point rule on the line is exact; both sides share
            // directions, so their agreement is exact in every dimension.
            let tol = if d == 1 { 1e-6 } else { 1e-2 };
            let vol = f.body().volume().value;
            let moment = f.profile().neg_derivative_moment((n * (m + 1)) as f64)?;
            let closed = f.amplitude() * moment * vol.powi(m as i32 + 1) / factorial(d);
            r.checks.push(Check::relative(format!("lhs_closed_form[{label}, m={m}]"), v.lhs.value, closed, tol));
            if is_exp_simplex(&f) {
                r.checks.push(Check::relative(format!("equality[{label}, m={m}]"), v.rhs.value, v.lhs.value, 1e-6));
            } else {
                r.checks.push(Check::holds(format!("strict[{label}, m={m}]"), v.status == Status::Holds));
            }
            r.verdicts.push(v);
        }
    }
    Ok(())
}

fn matheron(c: &ExperimentConfig, r: &mut JobReport) -> Result<()> {
    let (h1, h2) = (1e-3, 1e-4);
    let mut table = Table::new("slopes", &["case", "target", "quotient_h1", "quotient_h2", "richardson"]);
    for (i, cs) in c.cases.iter().enumerate() {
        let f = cs.function.build()?;
        let n = f.dim();
        let m = cs.order(n);
        let theta = MVector::new(n, cs.theta.clone())?;
        let target = -ProjectionGauge::for_function(&f, m)?.gauge(&theta);
        let d1 = difference_quotient(&f, &theta, h1)?;
        let d2 = difference_quotient(&f, &theta, h2)?;
        let rich = (10.0 * d2 - d1) / 9.0;
        let label = format!("{i}:{}, m={m}", fn_label(&cs.function));
        r.checks.push(Check::relative(format!("richardson[{label}]"), rich, target, 1e-5));
        let (e1, e2) = (d1 - target, d2 - target);
        let floor = 1e-9 * target.abs();
        if e1.abs() <= floor && e2.abs() <= floor {
            // g is affine along the ray near the origin.
            r.checks.push(Check::at_most(format!("quotient_error[{label}]"), e1.abs().max(e2.abs()), floor));
        } else {
            r.checks.push(Check::between(format!("error_ratio[{label}]"), e1 / e2, Some(8.0), Some(12.0)));
        }
        table.push(vec![i as f64, target, d1, d2, rich]);
    }
    r.tables.push(table);
    Ok(())
}

fn chain(c: &ExperimentConfig, r: &mut JobReport) -> Result<()> {
    let functions: Vec<(String, LogConcaveFunction)> =
        c.functions.iter().map(|s| Ok((fn_label(s), s.build()?))).collect::<Result<_>>()?;
    let bodies: Vec<(String, ConvexBody)> =
        c.bodies.iter().map(|s| Ok((body_label(s), s.build()?))).collect::<Result<_>>()?;
    let mut sources: Vec<(String, CovSource<'_>, bool, f64)> = Vec::new();
    for (label, f) in &functions {
        sources.push((label.clone(), CovSource::Function(f), is_exp_simplex(f), 0.0));
    }
    for (label, k) in &bodies {
        sources.push((label.clone(), CovSource::Body(k), is_simplex(k), 1.0 / k.dim() as f64));
    }
    for (label, source, equality, s) in sources {
        let n = match source {
            CovSource::Function(f) => f.dim(),
            CovSource::Body(k) => k.dim(),
        };
        for &m in &c.orders {
            let report = check_chain(source, m, &c.p_grid, c.directions, c.seed)?;
            let tag = format!("{label}, m={m}");
            if equality {
                let dev = report
                    .normalized
                    .iter()
                    .flat_map(|row| row.iter().map(move |v| (v / row[0] - 1.0).abs()))
                    .fold(0.0, f64::max);
                r.checks.push(Check::at_most(format!("constant[{tag}]"), dev, 1e-6));
            } else {
                let strict = report.verdicts.iter().all(|v| v.status == Status::Holds);
                r.checks.push(Check::holds(format!("strictly_decreasing[{tag}]"), strict));
            }
            let mut near_dev: f64 = 0.0;
            let mut end_dev: f64 = 0.0;
            for (i, dir) in report.directions.iter().enumerate() {
                let theta = MVector::new(n, dir.clone())?;
                let ray = CovariogramRay::new(source, &theta)?;
                let near = g_functional(&ray, NEAR_ENDPOINT, s)?;
                let end = report.normalized[i][0];
                near_dev = near_dev.max((near / end - 1.0).abs());
                if let CovSource::Function(f) = source {
                    let direct = f.mass()?.value / ProjectionGauge::for_function(f, m)?.gauge(&theta);
                    end_dev = end_dev.max((direct / end - 1.0).abs());
                }
            }
            r.checks.push(Check::at_most(format!("endpoint_limit[{tag}]"), near_dev, 1e-2));
            if matches!(source, CovSource::Function(_)) {
                r.checks.push(Check::at_most(format!("endpoint_formula[{tag}]"), end_dev, 1e-9));
            }
            let mut header = vec!["p".to_string()];
            header.extend((0..report.directions.len()).map(|i| format!("direction_{i}")));
            let mut table = Table { name: format!("normalized_{tag}"), header, rows: Vec::new() };
            let mut plot = Plot::new(&format!("chain_{tag}"), &format!("normalized radii, {tag}"), "p", "G(p)");
            for (j, &p) in report.grid.iter().enumerate() {
                let mut row = vec![p];
                row.extend(report.normalized.iter().map(|d| d[j]));
                table.push(row);
            }
            for (i, row) in report.normalized.iter().enumerate().take(8) {
                plot.series(format!("direction {i}"), report.grid.iter().copied().zip(row.iter().copied()).collect());
            }
            r.tables.push(table);
            r.plots.push(plot);
            r.verdicts.extend(report.verdicts);
        }
    }
    Ok(())
}

fn mellin_suite(c: &ExperimentConfig, r: &mut JobReport) -> Result<()> {
    let mut grid = if c.p_grid.is_empty() { DEFAULT_MELLIN_GRID.to_vec() } else { c.p_grid.clone() };
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let profiles: Vec<(&str, MellinProfile, f64)> = vec![
        ("exponential", MellinProfile::closed(Profile::Exponential), 0.0),
        ("gaussian", MellinProfile::closed(Profile::Gaussian), 0.0),
        ("power(s=1)", MellinProfile::closed(Profile::power(1.0)?), 1.0),
    ];
    let mut table = Table::new("mellin", &["p", "i_exponential", "i_gaussian", "i_power", "g_exponential", "g_gaussian", "g_power"]);
    let mut i_plot = Plot::new("i_p", "I_p of closed-form profiles", "p", "I_p");
    let mut g_plot = Plot::new("g_curves", "normalized G(p)", "p", "G(p)");
    let mut columns = Vec::new();
    for (name, psi, s) in &profiles {
        let is: Vec<f64> = grid.iter().map(|&p| i_p(psi, p)).collect::<Result<_>>()?;
        let gs: Vec<f64> = grid.iter().map(|&p| g_functional(psi, p, *s)).collect::<Result<_>>()?;
        let worst_step = is.windows(2).map(|w| w[1] / w[0] - 1.0).fold(f64::INFINITY, f64::min);
        r.checks.push(Check::at_least(format!("monotone[{name}]"), worst_step, -1e-9));
        if *name != "gaussian" {
            let dev = gs.iter().map(|g| (g - 1.0).abs()).fold(0.0, f64::max);
            r.checks.push(Check::at_most(format!("berwald_equality[{name}, s={s}]"), dev, 1e-9));
        }
        i_plot.series(*name, grid.iter().copied().zip(is.iter().copied()).collect());
        g_plot.series(*name, grid.iter().copied().zip(gs.iter().copied()).collect());
        columns.push((is, gs));
    }
    for (j, &p) in grid.iter().enumerate() {
        let mut row = vec![p];
        row.extend(columns.iter().map(|c| c.0[j]));
        row.extend(columns.iter().map(|c| c.1[j]));
        table.push(row);
    }

    let radius = 1.5;
    let indicator = MellinProfile::scaled(Profile::Indicator, 1.0, radius)?;
    for p in [50.0, 200.0] {
        let v = i_p(&indicator, p)?;
        r.checks.push(Check::at_most(format!("finite_support[p={p}]"), (v - radius).abs(), radius * f64::ln(p) / p));
    }

    let gaussian = MellinProfile::closed(Profile::Gaussian);
    let mut normalized = Vec::new();
    for p in [20.0, 50.0, 100.0] {
        let m = mellin(&gaussian, p)?;
        normalized.push(((p.ln() + m.ln() - ln_gamma(p + 1.0)) / p).exp());
    }
    let step = normalized.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
    r.checks.push(Check::at_least("gaussian_normalized_decreasing", step, f64::MIN_POSITIVE));

    for (name, psi, _) in &profiles {
        let errs: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&q| Ok((q * mellin(psi, q)? - psi.at_zero()).abs()))
            .collect::<Result<_>>()?;
        for (q, e) in [1e-2, 1e-3, 1e-4].iter().zip(&errs) {
            r.checks.push(Check::at_most(format!("fractional_limit[{name}, q={q}]"), *e, 10.0 * q));
        }
        for w in errs.windows(2) {
            r.checks.push(Check::between(format!("fractional_rate[{name}]"), w[0] / w[1], Some(8.0), Some(12.0)));
        }
    }
    r.tables.push(table);
    r.plots.push(i_plot);
    r.plots.push(g_plot);
    Ok(())
}

fn scaling_laws(c: &ExperimentConfig, r: &mut JobReport) -> Result<()> {
    let mut table = Table::new(
        "ratios",
        &["n", "m", "p", "direction", "rho_body", "rho_exponential", "rho_gaussian", "rho_pfamily", "rho_pfamily_negative"],
    );
    let negative_p = -0.5;
    for spec in &c.bodies {
        let k = spec.build()?;
        let n = k.dim();
        let nf = n as f64;
        let exp = LogConcaveFunction::centered(Profile::Exponential, k.clone())?;
        let gauss = LogConcaveFunction::centered(Profile::Gaussian, k.clone())?;
        let pneg = LogConcaveFunction::centered(Profile::PFamily { p: negative_p, n }, k.clone())?;
        for &m in &c.orders {
            let (dirs, _) = directions(n * m, c.directions, c.seed)?;
            for &p in c.p_grid.iter().filter(|p| **p > 0.0) {
                let pfam = LogConcaveFunction::centered(Profile::PFamily { p, n }, k.clone())?;
                let exp_target = ((ln_gamma(nf + p + 1.0) - ln_gamma(nf + 1.0)) / p).exp();
                let gauss_target =
                    std::f64::consts::SQRT_2 * ((ln_gamma(1.0 + (nf + p) / 2.0) - ln_gamma(1.0 + nf / 2.0)) / p).exp();
                let pfam_target = (1.0 + p / nf).powf(1.0 / p);
                let mut devs = [0.0f64; 4];
                for (i, dir) in dirs.iter().enumerate() {
                    let theta = MVector::new(n, dir.clone())?;
                    let radial = |src: CovSource<'_>, q: f64| -> Result<f64> {
                        ball_body_radial(&CovariogramRay::new(src, &theta)?, q)
                    };
                    let body = radial(CovSource::Body(&k), p)?;
                    let e = radial(CovSource::Function(&exp), p)?;
                    let g = radial(CovSource::Function(&gauss), p)?;
                    let f = radial(CovSource::Function(&pfam), p)?;
                    let body_neg = radial(CovSource::Body(&k), negative_p)?;
                    let f_neg = radial(CovSource::Function(&pneg), negative_p)?;
                    for (slot, ratio, target) in [
                        (0, e / body, exp_target),
                        (1, g / body, gauss_target),
                        (2, f / body, pfam_target),
                        (3, f_neg / body_neg, 1.0),
                    ] {
                        devs[slot] = devs[slot].max((ratio / target - 1.0).abs());
                    }
                    table.push(vec![nf, m as f64, p, i as f64, body, e, g, f, f_neg]);
                }
                let tag = format!("{}, m={m}, p={p}", body_label(spec));
                r.checks.push(Check::at_most(format!("exponential[{tag}]"), devs[0], 1e-2));
                r.checks.push(Check::at_most(format!("gaussian[{tag}]"), devs[1], 1e-2));
                r.checks.push(Check::at_most(format!("pfamily[{tag}]"), devs[2], 1e-2));
                r.checks.push(Check::at_most(format!("pfamily_negative[{tag}, q={negative_p}]"), devs[3], 1e-2));
            }
        }
    }
    r.tables.push(table);
    Ok(())
}

fn rogers_shephard_functional(c: &ExperimentConfig, r: &mut JobReport) -> Result<()> {
    for cs in &c.cases {
        let f = cs.function.build()?;
        let m = cs.order(f.dim());
        let v = check_rs_single(&f, m, c.samples, c.seed)?;
        let tag = format!("{}, m={m}", fn_label(&cs.function));
        if *f.profile() == Profile::Indicator && is_simplex(f.body()) {
            r.checks.push(Check::relative(format!("equality[{tag}]"), v.lhs.value, v.rhs.value, 1e-2));
        } else {
            r.checks.push(Check::holds(format!("strict[{tag}]"), v.status == Status::Holds));
        }
        r.verdicts.push(v);
    }
    for k in 0..c.random_families as u64 {
        let fs: Vec<LogConcaveFunction> = (0..3)
            .map(|j| random_log_concave_1d(c.seed.wrapping_mul(1000).wrapping_add(3 * k + j)))
            .collect::<Result<_>>()?;
        r.verdicts.push(check_rs_multi(&fs, c.samples, c.seed.wrapping_add(k))?);
    }
    Ok(())
}

fn support_identity(c: &ExperimentConfig, r: &mut JobReport) -> Result<()> {
    let grid = if c.p_grid.is_empty() { vec![200.0] } else { c.p_grid.clone() };
    for spec in &c.functions {
        let f = spec.build()?;
        let supp = match f.support() {
            Support::Compact(s) => s,
            Support::Cone => return Err(Error::UnboundedBody(format!("{} has unbounded support", fn_label(spec)))),
        };
        for &m in &c.orders {
            for &p in &grid {
                let table = radial_mean_body_fn(&f, m, p, c.directions, c.seed)?;
                let mut out = Table::new(&format!("radial_{}_m{m}_p{p}", fn_label(spec)), &["direction", "rho_radial_mean", "rho_difference"]);
                let mut dev: f64 = 0.0;
                let mut inside = true;
                for (i, &rho) in table.rho.iter().enumerate() {
                    let d = supp.dm_radial(&table.direction(i));
                    dev = dev.max((rho / d - 1.0).abs());
                    inside &= rho <= d * (1.0 + 1e-9);
                    out.push(vec![i as f64, rho, d]);
                }
                let tag = format!("{}, m={m}, p={p}", fn_label(spec));
                r.checks.push(Check::at_most(format!("support_gap[{tag}]"), dev, 5e-2));
                r.checks.push(Check::holds(format!("inside_difference_body[{tag}]"), inside));
                let mut plot = Plot::new(&format!("radial_m{m}_p{p}"), &format!("radial functions, {tag}"), "direction index", "rho");
                plot.series(format!("R_{p}"), out.rows.iter().map(|row| (row[0], row[1])).collect());
                plot.series("D^m(supp f)", out.rows.iter().map(|row| (row[0], row[2])).collect());
                r.plots.push(plot);
                r.tables.push(out);
            }
        }
    }
    Ok(())
}

fn zhang_petty_bodies(c: &ExperimentConfig, r: &mut JobReport) -> Result<()> {
    let mut table = Table::new("volumes", &["body", "m", "product", "product_err", "zhang_constant", "ball_value"]);
    for (i, spec) in c.bodies.iter().enumerate() {
        let k = spec.build()?;
        for &m in &c.orders {
            let (lower, upper) = check_zhang_body(&k, m, c.directions, c.seed)?;
            let tag = format!("{}, m={m}", body_label(spec));
            if is_simplex(&k) {
                r.checks.push(Check::relative(format!("zhang_equality[{tag}]"), lower.rhs.value, lower.lhs.value, 1e-2));
            } else {
                r.checks.push(Check::holds(format!("zhang_strict[{tag}]"), lower.status == Status::Holds));
            }
            table.push(vec![i as f64, m as f64, lower.rhs.value, lower.rhs.std_error, lower.lhs.value, upper.rhs.value]);
            r.verdicts.push(lower);
            r.verdicts.push(upper);
        }
    }
    r.tables.push(table);
    Ok(())
}

fn tangent_bound(c: &ExperimentConfig, r: &mut JobReport) -> Result<()> {
    for cs in &c.cases {
        let f = cs.function.build()?;
        let n = f.dim();
        let m = cs.order(n);
        let mut v = check_tangent_bound(&f, m, &[MVector::new(n, cs.theta.clone())?])?;
        v.inputs = json!({"case": cs, "m": m});
        r.verdicts.push(v);
    }
    Ok(())
}
