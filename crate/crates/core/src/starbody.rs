//! Star bodies sampled along directions: Ball bodies of covariograms, radial
//! mean bodies `R_p^m`, their limits at `p = −1` and `p = ∞`, and volumes.

use std::fmt::Write as _;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convex::ConvexBody;
use crate::covariogram::{covariogram_body, covariogram_fn, support_radial, CovMethod};
use crate::error::{Error, Result};
use crate::lcfun::LogConcaveFunction;
use crate::mellin::{i_p, RadialProfile};
use crate::mvector::MVector;
use crate::numerics::{integrate_1d, sphere_lattice_2d, sphere_sample, unit_sphere_area, Endpoint, Estimate, Limit, QuadratureConfig, Tail};
use crate::projection::ProjectionGauge;

/// How the directions of a table cover the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectionDesign {
    /// `{+1, −1}` in dimension one.
    Pair,
    /// Equally spaced points on the circle.
    Lattice,
    /// Uniform random antithetic pairs.
    Antithetic,
}

/// Directions on `S^{d−1}`: exact pair for `d = 1`, a rotated lattice for
/// `d = 2`, antithetic random samples otherwise.
pub fn directions(d: usize, count: usize, seed: u64) -> Result<(Vec<Vec<f64>>, DirectionDesign)> {
    match d {
        0 => Err(Error::InvalidDimension(0)),
        1 => Ok((vec![vec![1.0], vec![-1.0]], DirectionDesign::Pair)),
        2 => {
            let count = count.max(4).div_ceil(2) * 2;
            Ok((sphere_lattice_2d(count, 0.5), DirectionDesign::Lattice))
        }
        _ => {
            let count = count.max(2).div_ceil(2) * 2;
            Ok((sphere_sample(d, count, seed)?, DirectionDesign::Antithetic))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableMeta {
    pub n: usize,
    pub m: usize,
    pub p: Option<f64>,
    pub source: String,
    pub seed: u64,
    pub design: DirectionDesign,
}

/// Radial function of a star body in `R^{nm}` sampled along directions.
#[derive(Debug, Clone, PartialEq)]
pub struct StarBodyTable {
    pub meta: TableMeta,
    pub directions: Vec<Vec<f64>>,
    pub rho: Vec<f64>,
    pub sigma: Vec<f64>,
}

impl StarBodyTable {
    /// Evaluates `radial(θ̄) = (ρ, σ)` on the directions chosen by [`directions`].
    pub fn build<F>(n: usize, m: usize, count: usize, seed: u64, source: &str, p: Option<f64>, radial: F) -> Result<Self>
    where
        F: Fn(&MVector) -> Result<(f64, f64)> + Sync,
    {
        let (dirs, design) = directions(n * m, count, seed)?;
        let values: Vec<(f64, f64)> = dirs
            .par_iter()
            .map(|d| radial(&MVector::new(n, d.clone())?))
            .collect::<Result<_>>()?;
        let (rho, sigma) = values.into_iter().unzip();
        Ok(Self { meta: TableMeta { n, m, p, source: source.to_string(), seed, design }, directions: dirs, rho, sigma })
    }

    pub fn dim(&self) -> usize {
        self.meta.n * self.meta.m
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn direction(&self, i: usize) -> MVector {
        MVector::new(self.meta.n, self.directions[i].clone()).unwrap()
    }

    /// CSV with a `# {metadata}` first line and columns
    /// `theta_1, …, theta_d, rho, sigma` at 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# {}", serde_json::to_string(&self.meta).unwrap()).unwrap();
        let cols: Vec<String> = (1..=self.dim()).map(|i| format!("theta_{i}")).collect();
        writeln!(out, "{},rho,sigma", cols.join(",")).unwrap();
        for ((d, r), s) in self.directions.iter().zip(&self.rho).zip(&self.sigma) {
            let mut row: Vec<String> = d.iter().map(|x| format!("{x:.16e}")).collect();
            row.push(format!("{r:.16e}"));
            row.push(format!("{s:.16e}"));
            writeln!(out, "{}", row.join(",")).unwrap();
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let head = lines.next().and_then(|l| l.strip_prefix("# ")).ok_or_else(|| Error::Config("missing metadata line".into()))?;
        let meta: TableMeta = serde_json::from_str(head)?;
        lines.next();
        let d = meta.n * meta.m;
        let (mut directions, mut rho, mut sigma) = (Vec::new(), Vec::new(), Vec::new());
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let v: Vec<f64> = line
                .split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|e| Error::Config(format!("bad number {x:?}: {e}"))))
                .collect::<Result<_>>()?;
            if v.len() != d + 2 {
                return Err(Error::Config(format!("expected {} columns, found {}", d + 2, v.len())));
            }
            directions.push(v[..d].to_vec());
            rho.push(v[d]);
            sigma.push(v[d + 1]);
        }
        Ok(Self { meta, directions, rho, sigma })
    }
}

/// `∫_{S^{d−1}} v` from values at the directions of a table with the given
/// design; the error is the sampling error of the design.
pub fn sphere_integral(design: DirectionDesign, d: usize, values: &[f64]) -> Estimate {
    let area = unit_sphere_area(d);
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let sampling = match design {
        DirectionDesign::Pair => 0.0,
        DirectionDesign::Lattice => {
            // Every other node forms a lattice of half the size.
            let half = values.iter().step_by(2).sum::<f64>() / values.iter().step_by(2).count() as f64;
            area * (mean - half).abs()
        }
        DirectionDesign::Antithetic => {
            let pairs: Vec<f64> = values.chunks(2).map(|c| c.iter().sum::<f64>() / c.len() as f64).collect();
            let np = pairs.len() as f64;
            if np < 2.0 {
                0.0
            } else {
                let var = pairs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (np - 1.0);
                area * (var / np).sqrt()
            }
        }
    };
    Estimate::new(area * mean, sampling, values.len())
}

/// `vol_d(L) = (1/d) ∫_{S^{d−1}} ρ_L^d`, from the table's directions.
pub fn star_volume(table: &StarBodyTable) -> Result<Estimate> {
    if table.is_empty() {
        return Err(Error::Domain("empty star-body table".into()));
    }
    if table.rho.iter().any(|r| !r.is_finite()) {
        return Err(Error::UnboundedBody("infinite radial value".into()));
    }
    let d = table.dim();
    let pw: Vec<f64> = table.rho.iter().map(|r| r.powi(d as i32)).collect();
    let base = sphere_integral(table.meta.design, d, &pw).scale(1.0 / d as f64);
    // Per-direction errors propagate through d(ρ^d) = dρ^{d−1}σ.
    let grad: Vec<f64> = table.rho.iter().zip(&table.sigma).map(|(r, s)| r.powi(d as i32 - 1) * s).collect();
    let propagated = sphere_integral(table.meta.design, d, &grad).value;
    Ok(Estimate::new(base.value, base.std_error + propagated, table.len()))
}

/// Covariogram of a function or a body restricted to a ray.
#[derive(Debug, Clone, Copy)]
pub enum CovSource<'a> {
    Function(&'a LogConcaveFunction),
    Body(&'a ConvexBody),
}

/// `r ↦ g(r θ̄)` as a profile for the Mellin machinery.
pub struct CovariogramRay<'a> {
    source: CovSource<'a>,
    theta: MVector,
    g0: f64,
    slope: f64,
    support: f64,
    noisy: bool,
    delta: OnceLock<f64>,
}

impl<'a> CovariogramRay<'a> {
    pub fn new(source: CovSource<'a>, theta: &MVector) -> Result<Self> {
        let theta = theta.normalized().ok_or_else(|| Error::Domain("zero direction".into()))?;
        let (g0, gauge, support, noisy) = match source {
            CovSource::Function(f) => (
                f.mass()?.value,
                ProjectionGauge::for_function(f, theta.m())?,
                support_radial(f, &theta),
                f.dim() == 3,
            ),
            CovSource::Body(k) => (k.volume().value, ProjectionGauge::for_body(k, theta.m())?, k.dm_radial(&theta), k.dim() == 3),
        };
        let slope = gauge.gauge(&theta);
        Ok(Self { source, theta, g0, slope, support, noisy, delta: OnceLock::new() })
    }

    pub fn theta(&self) -> &MVector {
        &self.theta
    }

    pub fn try_value(&self, r: f64) -> Result<f64> {
        if r >= self.support {
            return Ok(0.0);
        }
        let x = self.theta.scaled(r);
        Ok(match self.source {
            CovSource::Function(f) => covariogram_fn(f, &x, CovMethod::LevelSet)?.value,
            CovSource::Body(k) => covariogram_body(k, &x).value,
        })
    }

    /// First radius where `g` drops below `0.99·g(0)`, by bisection below the
    /// tangent-line bound.
    fn drop_radius(&self) -> f64 {
        let target = 0.99 * self.g0;
        let mut hi = (-(0.99f64).ln()) * self.g0 / self.slope;
        if !hi.is_finite() {
            hi = self.support.min(1.0);
        }
        hi = hi.min(self.support);
        let mut lo = 0.0;
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if self.value(mid) < target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }
}

impl RadialProfile for CovariogramRay<'_> {
    fn value(&self, t: f64) -> f64 {
        self.try_value(t).unwrap_or(f64::NAN)
    }

    fn at_zero(&self) -> f64 {
        self.g0
    }

    fn support_radius(&self) -> f64 {
        self.support
    }

    fn slope_at_zero(&self) -> f64 {
        self.slope
    }

    fn linearize_below(&self) -> Option<f64> {
        Some(*self.delta.get_or_init(|| 1e-3 * self.drop_radius()))
    }

    fn quadrature(&self) -> QuadratureConfig {
        let rel = if self.noisy { 1e-3 } else { 1e-10 };
        QuadratureConfig { rel_tol: rel, abs_tol: 1e-300, max_subdivisions: 2000, endpoint: Endpoint::Regular }
    }
}

/// Radial function of the Ball body `K_p(g)` along the ray `ψ`, with
/// `p = −1` and `p = ∞` read as the limiting bodies.
pub fn ball_body_radial(psi: &dyn RadialProfile, p: f64) -> Result<f64> {
    if p == f64::INFINITY {
        return Ok(psi.support_radius());
    }
    if p == -1.0 {
        return limit_body_minus1(psi);
    }
    i_p(psi, p)
}

/// `ρ_{K̃_{−1}(g)} = g(0)/(−∂_r g(0⁺))`.
pub fn limit_body_minus1(psi: &dyn RadialProfile) -> Result<f64> {
    let slope = psi.slope_at_zero();
    if !(slope > 0.0) {
        return Err(Error::UnboundedBody("flat covariogram at the origin".into()));
    }
    Ok(psi.at_zero() / slope)
}

/// Independent route for `p > 0`: `ρ^p = (1/g(0)) ∫ (−∂_r g) r^p dr` with a
/// central-difference derivative.
pub fn radial_from_derivative(psi: &dyn RadialProfile, p: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::Domain("the derivative route needs p > 0".into()));
    }
    let r = psi.support_radius();
    let h = 1e-5 * if r.is_finite() { r } else { 1.0 };
    let d = |t: f64| {
        let lo = (t - h).max(0.0);
        let hi = if r.is_finite() { (t + h).min(r) } else { t + h };
        (psi.value(lo) - psi.value(hi)) / (hi - lo) * t.powf(p)
    };
    let cfg = QuadratureConfig::default().with_tolerances(1e-8, 1e-14);
    let limit = if r.is_finite() { Limit::Finite(r) } else { Limit::Infinite(Tail::Doubling { first_width: 1.0 }) };
    let v = integrate_1d(d, 0.0, limit, &cfg)?.value;
    Ok((v / psi.at_zero()).powf(1.0 / p))
}

fn radial_table(source: CovSource<'_>, n: usize, m: usize, p: f64, count: usize, seed: u64, name: &str) -> Result<StarBodyTable> {
    StarBodyTable::build(n, m, count, seed, name, Some(p), |theta| {
        let ray = CovariogramRay::new(source, theta)?;
        Ok((ball_body_radial(&ray, p)?, 0.0))
    })
}

/// `R_p^m f`: the Ball body of `g_{f,m}` normalized by `‖f‖_1`.
pub fn radial_mean_body_fn(f: &LogConcaveFunction, m: usize, p: f64, count: usize, seed: u64) -> Result<StarBodyTable> {
    let name = format!("R_p^m f, f = {}", f.profile().name());
    radial_table(CovSource::Function(f), f.dim(), m, p, count, seed, &name)
}

/// `R_p^m K = K_p(g_{K,m})`.
pub fn radial_mean_body_body(k: &ConvexBody, m: usize, p: f64, count: usize, seed: u64) -> Result<StarBodyTable> {
    radial_table(CovSource::Body(k), k.dim(), m, p, count, seed, "R_p^m K")
}
