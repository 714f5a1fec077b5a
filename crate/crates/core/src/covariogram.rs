//! Higher-order covariograms of bodies and of profile functions.

use crate::convex::{clip_polygon, polygon_area, BodyKind, ConvexBody};
use crate::error::{Error, Result};
use crate::lcfun::{LogConcaveFunction, Support};
use crate::mvector::MVector;
use crate::numerics::{
    integrate_1d, monte_carlo_box, Endpoint, Estimate, Limit, QuadratureConfig, Tail,
};

/// Monte Carlo samples for three-dimensional body covariograms.
pub const BODY_SAMPLES: usize = 200_000;
const BODY_SEED: u64 = 0xc0a1;
/// Relative truncation level for direct Monte Carlo integration.
pub const TRUNCATION_EPS: f64 = 1e-12;

/// How `g_{f,m}` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CovMethod {
    /// One-dimensional integral over the level sets.
    LevelSet,
    /// Uniform sampling of `min_i f(y − x_i)` over a truncation box.
    DirectMc { samples: usize, seed: u64 },
}

impl CovMethod {
    /// Direct Monte Carlo with the default budget for `R^{nm}`.
    pub fn direct_default(nm: usize, seed: u64) -> Self {
        let samples = if nm <= 4 { 200_000 } else { 1_000_000 };
        CovMethod::DirectMc { samples, seed }
    }
}

fn quad_config() -> QuadratureConfig {
    QuadratureConfig { rel_tol: 1e-10, abs_tol: 1e-14, max_subdivisions: 4000, endpoint: Endpoint::Regular }
}

/// `g_{K,m}(x̄) = vol_n(K ∩ ⋂_i (x_i + K))`.
pub fn covariogram_body(k: &ConvexBody, x: &MVector) -> Estimate {
    covariogram_body_with(k, x, BODY_SAMPLES, BODY_SEED)
}

/// As [`covariogram_body`], with an explicit Monte Carlo budget for the
/// paths that sample.
pub fn covariogram_body_with(k: &ConvexBody, x: &MVector, samples: usize, seed: u64) -> Estimate {
    assert_eq!(k.dim(), x.n(), "block dimension must match the body");
    match (k.kind(), k.dim()) {
        (BodyKind::Polytope, 1) => {
            let v = k.vertices().unwrap();
            let (a, b) = (v[0][0], v[1][0]);
            let hi = x.blocks().map(|xi| xi[0]).fold(0.0, f64::max);
            let lo = x.blocks().map(|xi| xi[0]).fold(0.0, f64::min);
            Estimate::exact(((b + lo) - (a + hi)).max(0.0))
        }
        (BodyKind::Polytope, 2) => {
            let mut poly: Vec<[f64; 2]> = k.vertices().unwrap().iter().map(|p| [p[0], p[1]]).collect();
            for xi in x.blocks() {
                for h in k.halfspaces() {
                    let a = [h.normal[0], h.normal[1]];
                    poly = clip_polygon(&poly, a, h.offset + a[0] * xi[0] + a[1] * xi[1]);
                    if poly.len() < 3 {
                        return Estimate::exact(0.0);
                    }
                }
            }
            Estimate::exact(polygon_area(&poly))
        }
        (BodyKind::Polytope, _) => {
            let (mut lo, mut hi) = k.bounding_box();
            for xi in x.blocks() {
                for c in 0..lo.len() {
                    lo[c] = lo[c].max(lo[c] + xi[c]);
                    hi[c] = hi[c].min(hi[c] + xi[c]);
                }
            }
            if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
                return Estimate::exact(0.0);
            }
            monte_carlo_box(&lo, &hi, samples, seed, |y| {
                let inside = k.contains(y)
                    && x.blocks().all(|xi| {
                        let z: Vec<f64> = y.iter().zip(xi).map(|(a, b)| a - b).collect();
                        k.contains(&z)
                    });
                if inside {
                    1.0
                } else {
                    0.0
                }
            })
        }
        _ => match k.intersect_translates(x) {
            None => Estimate::exact(0.0),
            Some(body) => body.volume_with(samples, seed),
        },
    }
}

/// Whether `x̄ ∈ D^m K`.
pub fn dm_support_membership(k: &ConvexBody, x: &MVector) -> bool {
    k.intersect_translates(x).is_some()
}

/// Whether `x̄ ∈ D^m(supp f) = supp g_{f,m}`; always true for unbounded support.
pub fn fn_dm_support_membership(f: &LogConcaveFunction, x: &MVector) -> bool {
    match f.support() {
        Support::Compact(s) => dm_support_membership(&s, x),
        Support::Cone => true,
    }
}

/// Radial function of `D^m(supp f)` in direction `θ̄`; `∞` for unbounded support.
pub fn support_radial(f: &LogConcaveFunction, theta: &MVector) -> f64 {
    match f.support() {
        Support::Compact(s) => s.dm_radial(theta),
        Support::Cone => f64::INFINITY,
    }
}

/// `g_{f,m}(x̄) = ∫ min_{0≤i≤m} f(y − x_i) dy`.
pub fn covariogram_fn(f: &LogConcaveFunction, x: &MVector, method: CovMethod) -> Result<Estimate> {
    if x.n() != f.dim() {
        return Err(Error::InvalidDimension(x.n()));
    }
    match method {
        CovMethod::LevelSet => levelset(f, x),
        CovMethod::DirectMc { samples, seed } => direct_mc(f, x, samples, seed),
    }
}

fn accept_noisy(r: Result<Estimate>) -> Result<Estimate> {
    match r {
        Err(Error::QuadratureFailure { best, .. }) => Ok(best),
        other => other,
    }
}

/// Level-set route: with `t = A·φ(r)`,
/// `g_{f,m}(x̄) = ∫_{r_0}^∞ A(−φ′(r)) r^n g_{K,m}(x̄/r) dr` plus jump terms,
/// where `r_0 = ‖x̄‖_{D^m K}`.
fn levelset(f: &LogConcaveFunction, x: &MVector) -> Result<Estimate> {
    let mass = f.mass()?;
    if x.is_zero() {
        return Ok(mass);
    }
    let k = f.body();
    let n = f.dim() as i32;
    let prof = *f.profile();
    let amp = f.amplitude();
    let noisy = k.dim() == 3 || matches!(k.kind(), BodyKind::BallIntersection { .. });
    let rho = k.dm_radial(x);
    let r0 = if rho.is_finite() { 1.0 / rho } else { 0.0 };
    let gk = |r: f64| {
        if r <= r0 {
            return 0.0;
        }
        covariogram_body(k, &x.scaled(1.0 / r)).value * r.powi(n)
    };
    let h = |r: f64| amp * prof.neg_derivative(r) * gk(r);
    let mut cfg = quad_config();
    // Near the edge of the support g is tiny; measure the error against g(0).
    cfg.abs_tol = cfg.abs_tol.max(1e-13 * mass.value);
    if noisy {
        cfg = cfg.with_tolerances(1e-4, 1e-10);
        cfg.max_subdivisions = 200;
    }
    let run = |r: Result<Estimate>| if noisy { accept_noisy(r) } else { r };

    let support = prof.support_radius();
    let mut total = Estimate::exact(0.0);
    if r0 < support {
        let part = if let Some((end, e)) = prof.right_singularity() {
            let mid = 0.5 * (r0 + end);
            let left = run(integrate_1d(h, r0, Limit::Finite(mid), &cfg))?;
            let right = run(integrate_1d(
                |u| amp * prof.neg_derivative_before_end(u) * gk(end - u),
                0.0,
                Limit::Finite(end - mid),
                &cfg.with_endpoint(Endpoint::PowerSingularity(e)),
            ))?;
            left.add(right)
        } else if support.is_finite() {
            run(integrate_1d(h, r0, Limit::Finite(support), &cfg))?
        } else {
            let c = match prof.left_singularity() {
                Some(e) if r0 == 0.0 => cfg.with_endpoint(Endpoint::PowerSingularity(e)),
                _ => cfg,
            };
            run(integrate_1d(h, r0, Limit::Infinite(Tail::Doubling { first_width: r0.max(1.0) }), &c))?
        };
        total = total.add(part);
    }
    for (a, jump) in prof.atoms() {
        if a > r0 {
            total = total.add(Estimate::exact(amp * jump * gk(a)));
        }
    }
    if noisy {
        // Body covariograms carry Monte Carlo error proportional to their size.
        let rel = covariogram_body(k, &MVector::zero(k.dim(), 1));
        let rel = if rel.value > 0.0 { rel.std_error / rel.value } else { 0.0 };
        total = total.add(Estimate::new(0.0, rel * total.value.abs() + 0.0, 0));
    }
    Ok(total)
}

fn direct_mc(f: &LogConcaveFunction, x: &MVector, samples: usize, seed: u64) -> Result<Estimate> {
    let (mut lo, mut hi) = f.truncation_box(TRUNCATION_EPS);
    let (lo0, hi0) = (lo.clone(), hi.clone());
    for xi in x.blocks() {
        for c in 0..lo.len() {
            lo[c] = lo[c].max(lo0[c] + xi[c]);
            hi[c] = hi[c].min(hi0[c] + xi[c]);
        }
    }
    if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
        return Ok(Estimate::exact(0.0));
    }
    let n = f.dim();
    Ok(monte_carlo_box(&lo, &hi, samples, seed, |y| {
        let mut v = f.eval(y);
        let mut z = [0.0f64; 3];
        for xi in x.blocks() {
            if v == 0.0 {
                break;
            }
            for c in 0..n {
                z[c] = y[c] - xi[c];
            }
            v = v.min(f.eval(&z[..n]));
        }
        v
    }))
}

/// One-sided difference quotient `(g_{f,m}(hθ̄) − g_{f,m}(ō))/h` by the
/// level-set route.
pub fn difference_quotient(f: &LogConcaveFunction, theta: &MVector, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidStep(h));
    }
    let g0 = levelset(f, &MVector::zero(theta.n(), theta.m()))?.value;
    let gh = levelset(f, &theta.scaled(h))?.value;
    Ok((gh - g0) / h)
}

/// Radial derivative of `g_{f,m}` at `0⁺` along `θ̄`: Richardson combination
/// of the difference quotients at `h` and `h/10`.
pub fn cov_radial_derivative(f: &LogConcaveFunction, theta: &MVector, h: f64) -> Result<f64> {
    let coarse = difference_quotient(f, theta, h)?;
    let fine = difference_quotient(f, theta, h / 10.0)?;
    Ok((10.0 * fine - coarse) / 9.0)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::convex::SimplexVariant;
    use crate::lcfun::Profile;

    fn mv(n: usize, v: &[f64]) -> MVector {
        MVector::new(n, v.to_vec()).unwrap()
    }

    fn unit() -> ConvexBody {
        ConvexBody::simplex(1, SimplexVariant::Corner).unwrap()
    }

    #[test]
    fn body_examples() {
        assert_eq!(covariogram_body(&unit(), &mv(1, &[0.5])).value, 0.5);
        assert_eq!(covariogram_body(&unit(), &mv(1, &[0.5, -0.25])).value, 0.25);
        let sq = ConvexBody::cube(2, 1.0).unwrap();
        assert!((covariogram_body(&sq, &mv(2, &[1.0, 1.0])).value - 1.0).abs() < 1e-15);
        let disk = ConvexBody::ball(2, 1.0).unwrap();
        let lens = covariogram_body(&disk, &mv(2, &[0.0, 1.0])).value;
        assert!((lens - (2.0 * std::f64::consts::PI / 3.0 - 3f64.sqrt() / 2.0)).abs() < 1e-14);
    }

    #[test]
    fn cube_covariogram_in_3d() {
        let c = ConvexBody::cube(3, 1.0).unwrap();
        let g = covariogram_body(&c, &mv(3, &[1.0, 0.5, 0.0]));
        assert!((g.value - 1.0 * 1.5 * 2.0).abs() < 1e-12);
    }

    #[test]
    fn support_membership() {
        assert!(dm_support_membership(&unit(), &mv(1, &[0.5, -0.25])));
        assert!(!dm_support_membership(&unit(), &mv(1, &[1.5])));
    }

    #[test]
    fn second_order_difference_interval_area() {
        // Oracle: brute-force grid count of {|x1|,|x2| ≤ 1, |x1 − x2| ≤ 1}.
        let n = 1000;
        let mut count = 0usize;
        for i in 0..n {
            for j in 0..n {
                let x1 = -1.0 + 2.0 * (i as f64 + 0.5) / n as f64;
                let x2 = -1.0 + 2.0 * (j as f64 + 0.5) / n as f64;
                if dm_support_membership(&unit(), &mv(1, &[x1, x2])) {
                    count += 1;
                }
            }
        }
        let area = 4.0 * count as f64 / (n * n) as f64;
        assert!((area - 3.0).abs() < 0.01, "{area}");
    }

    fn exp_simplex() -> LogConcaveFunction {
        LogConcaveFunction::centered(Profile::Exponential, unit()).unwrap()
    }

    #[test]
    fn function_examples() {
        let g = covariogram_fn(&exp_simplex(), &mv(1, &[0.7]), CovMethod::LevelSet).unwrap();
        assert!((g.value - (-0.7f64).exp()).abs() < 1e-12);
        let sym = LogConcaveFunction::centered(Profile::Exponential, ConvexBody::cube(1, 1.0).unwrap()).unwrap();
        let g = covariogram_fn(&sym, &mv(1, &[1.0]), CovMethod::LevelSet).unwrap();
        assert!((g.value - 2.0 * (-0.5f64).exp()).abs() < 1e-12);
        let mc = covariogram_fn(&sym, &mv(1, &[1.0]), CovMethod::direct_default(1, 5)).unwrap();
        assert!(mc.agrees_with(&g, 3.0, 0.0), "{mc:?} vs {g:?}");
        let at0 = covariogram_fn(&sym, &mv(1, &[0.0, 0.0]), CovMethod::LevelSet).unwrap();
        assert_eq!(at0.value, sym.mass().unwrap().value);
    }

    #[test]
    fn power_profile_with_singular_derivative() {
        // s = 2: φ(t) = (1 − t)^{1/2}; compare with direct Monte Carlo.
        let f = LogConcaveFunction::centered(Profile::Power { s: 2.0 }, ConvexBody::cube(1, 1.0).unwrap()).unwrap();
        let x = mv(1, &[0.6]);
        let ls = covariogram_fn(&f, &x, CovMethod::LevelSet).unwrap();
        let mc = covariogram_fn(&f, &x, CovMethod::DirectMc { samples: 400_000, seed: 9 }).unwrap();
        assert!(mc.agrees_with(&ls, 3.0, 0.0), "{mc:?} vs {ls:?}");
    }

    #[test]
    fn matheron_slopes() {
        let e1 = mv(1, &[1.0]);
        let d = cov_radial_derivative(&exp_simplex(), &e1, 1e-3).unwrap();
        assert!((d + 1.0).abs() < 1e-6, "{d}");
        let chi = LogConcaveFunction::centered(Profile::Indicator, unit()).unwrap();
        assert!((cov_radial_derivative(&chi, &e1, 1e-3).unwrap() + 1.0).abs() < 1e-9);
        let sq = LogConcaveFunction::centered(Profile::Indicator, ConvexBody::cube(2, 1.0).unwrap()).unwrap();
        let d = cov_radial_derivative(&sq, &mv(2, &[1.0, 0.0]), 1e-3).unwrap();
        assert!((d + 2.0).abs() < 1e-9, "{d}");
        assert!(matches!(cov_radial_derivative(&chi, &e1, 0.0), Err(Error::InvalidStep(_))));
    }

    fn sample_functions() -> Vec<LogConcaveFunction> {
        let tri = ConvexBody::simplex(2, SimplexVariant::Centered).unwrap();
        vec![
            LogConcaveFunction::new(Profile::Gaussian, ConvexBody::cube(1, 1.0).unwrap(), vec![0.3], 1.0).unwrap(),
            LogConcaveFunction::new(Profile::Exponential, unit(), vec![0.0], 2.0).unwrap(),
            LogConcaveFunction::new(Profile::Exponential, tri.clone(), vec![0.0, 0.0], 1.0).unwrap(),
            LogConcaveFunction::new(Profile::Power { s: 0.5 }, tri, vec![0.1, 0.0], 1.0).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn even_for_first_order(which in 0usize..4, a in -1.5f64..1.5, b in -1.5f64..1.5) {
            let f = &sample_functions()[which];
            let n = f.dim();
            let x = mv(n, &[a, b][..n]);
            let y = x.scaled(-1.0);
            let gx = covariogram_fn(f, &x, CovMethod::LevelSet).unwrap();
            let gy = covariogram_fn(f, &y, CovMethod::LevelSet).unwrap();
            prop_assert!(gx.agrees_with(&gy, 3.0, 1e-10));
        }

        #[test]
        fn translation_invariant(which in 0usize..4, a in -1.0f64..1.0, b in -1.0f64..1.0, s in -2.0f64..2.0) {
            let f = &sample_functions()[which];
            let n = f.dim();
            let x = mv(n, &[a, b, b, a][..2 * n]);
            let g = covariogram_fn(f, &x, CovMethod::LevelSet).unwrap();
            let moved = f.translate(&vec![s; n]);
            let gm = covariogram_fn(&moved, &x, CovMethod::LevelSet).unwrap();
            prop_assert!(g.agrees_with(&gm, 3.0, 1e-10));
        }

        #[test]
        fn midpoint_log_concave(which in 0usize..4, p in prop::array::uniform4(-1.0f64..1.0), q in prop::array::uniform4(-1.0f64..1.0)) {
            let f = &sample_functions()[which];
            let n = f.dim();
            let x = mv(n, &p[..2 * n]);
            let y = mv(n, &q[..2 * n]);
            let mid = MVector::new(n, x.as_slice().iter().zip(y.as_slice()).map(|(a, b)| 0.5 * (a + b)).collect()).unwrap();
            let gx = covariogram_fn(f, &x, CovMethod::LevelSet).unwrap().value;
            let gy = covariogram_fn(f, &y, CovMethod::LevelSet).unwrap().value;
            let gm = covariogram_fn(f, &mid, CovMethod::LevelSet).unwrap().value;
            prop_assert!(gm >= (gx * gy).sqrt() * (1.0 - 1e-9) - 1e-12);
        }
    }
}
