//! Executable verdicts for the Rogers–Shephard and Zhang type inequalities,
//! the tangent-line bound for covariograms and the radial mean body chain.

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::convex::{BodyKind, ConvexBody};
use crate::covariogram::{covariogram_fn, dm_support_membership, CovMethod, TRUNCATION_EPS};
use crate::error::{Error, Result};
use crate::lcfun::{LogConcaveFunction, Profile, Support};
use crate::mellin::{g_endpoint, g_functional};
use crate::mvector::MVector;
use crate::numerics::special::{binomial, factorial};
use crate::numerics::{
    integrate_1d, maximize_logconcave, monte_carlo_box, stream_rng, Estimate, Limit, QuadratureConfig,
};
use crate::projection::{ppb_volume_body, ProjectionGauge};
use crate::starbody::{ball_body_radial, directions, sphere_integral, CovSource, CovariogramRay};

/// Relative slack below which a closed-form margin counts as equality.
pub const EQUALITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    HoldsWithEquality,
    ViolatedBeyond3Sigma,
}

/// Outcome of checking `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub lhs: Estimate,
    pub rhs: Estimate,
    /// `rhs − lhs`.
    pub margin: f64,
    /// Standard error of the margin.
    pub sigma: f64,
    pub equality_tol: f64,
    pub status: Status,
    pub inputs: Value,
}

impl Verdict {
    /// Margin error from independent errors on both sides.
    pub fn new(name: &str, lhs: Estimate, rhs: Estimate, inputs: Value) -> Self {
        let sigma = lhs.std_error.hypot(rhs.std_error);
        Self::with_sigma(name, lhs, rhs, sigma, inputs)
    }

    /// Margin error supplied by the caller, for correlated sides.
    pub fn with_sigma(name: &str, lhs: Estimate, rhs: Estimate, sigma: f64, inputs: Value) -> Self {
        let margin = rhs.value - lhs.value;
        let equality_tol = EQUALITY_TOL * rhs.value.abs().max(1.0);
        let status = if margin.abs() <= (3.0 * sigma).max(equality_tol) {
            Status::HoldsWithEquality
        } else if margin < -3.0 * sigma {
            Status::ViolatedBeyond3Sigma
        } else {
            Status::Holds
        };
        Self { name: name.to_string(), lhs, rhs, margin, sigma, equality_tol, status, inputs }
    }

    pub fn is_violated(&self) -> bool {
        self.status == Status::ViolatedBeyond3Sigma
    }

    pub const CSV_HEADER: &'static str = "name,lhs,lhs_err,rhs,rhs_err,margin,sigma,status";

    pub fn csv_row(&self) -> String {
        let status = serde_json::to_value(self.status).unwrap();
        format!(
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            self.name.replace(',', ";"),
            self.lhs.value,
            self.lhs.std_error,
            self.rhs.value,
            self.rhs.std_error,
            self.margin,
            self.sigma,
            status.as_str().unwrap()
        )
    }
}

pub fn describe_body(k: &ConvexBody) -> Value {
    match k.kind() {
        BodyKind::Polytope => json!({"kind": "polytope", "dim": k.dim(), "vertices": k.vertices()}),
        BodyKind::Ball { center, radius } => json!({"kind": "ball", "center": center, "radius": radius}),
        BodyKind::BallIntersection { centers, radius } => {
            json!({"kind": "ball_intersection", "centers": centers, "radius": radius})
        }
    }
}

pub fn describe_fn(f: &LogConcaveFunction) -> Value {
    json!({
        "profile": f.profile().name(),
        "body": describe_body(f.body()),
        "shift": f.shift(),
        "amplitude": f.amplitude(),
    })
}

/// `vol_{nm}(D^m K) ≤ binom(n(m+1), n)·vol_n(K)^m`.
///
/// For `m = 1` and polytopes in the plane or on the line `DK` is built
/// exactly; otherwise `D^m K` is sampled inside the product of `DK` boxes.
pub fn check_rs_body(k: &ConvexBody, m: usize, samples: usize, seed: u64) -> Result<Verdict> {
    let n = k.dim();
    let vol = k.volume();
    let rhs = Estimate::new(binomial((n * (m + 1)) as f64, n as f64) * vol.value.powi(m as i32), 0.0, 0)
        .add(Estimate::new(0.0, m as f64 * vol.value.powi(m as i32 - 1) * vol.std_error, 0));
    let exact = m == 1 && (k.is_polytope() && n <= 2 || matches!(k.kind(), BodyKind::Ball { .. }));
    let lhs = if exact {
        k.difference_body()?.volume()
    } else {
        if n * m > 8 {
            return Err(Error::InvalidDimension(n * m));
        }
        let (lo, hi) = k.bounding_box();
        let w: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| b - a).collect();
        let lo_box: Vec<f64> = (0..n * m).map(|i| -w[i % n]).collect();
        let hi_box: Vec<f64> = (0..n * m).map(|i| w[i % n]).collect();
        monte_carlo_box(&lo_box, &hi_box, samples, seed, |x| {
            if dm_support_membership(k, &MVector::new(n, x.to_vec()).unwrap()) {
                1.0
            } else {
                0.0
            }
        })
    };
    let inputs = json!({"body": describe_body(k), "m": m, "samples": samples, "seed": seed});
    Ok(Verdict::new(&format!("rogers_shephard_body(n={n}, m={m})"), lhs, rhs, inputs))
}

/// Per-direction integrands on a common direction set; returns the two
/// sphere integrals and the error of their difference.
fn paired_integrals(
    design: crate::starbody::DirectionDesign,
    d: usize,
    left: &[f64],
    right: &[f64],
) -> (Estimate, Estimate, f64) {
    let a = sphere_integral(design, d, left);
    let b = sphere_integral(design, d, right);
    let diff: Vec<f64> = right.iter().zip(left).map(|(r, l)| r - l).collect();
    (a, b, sphere_integral(design, d, &diff).std_error)
}

/// `(1/(nm)!) ∫ g_{f,m} ≤ ‖f‖_1^{nm+1} vol_{nm}(Π^{∘,m}⟨f⟩)`.
///
/// Both sides are integrated in polar coordinates over the same directions:
/// `∫ g_{f,m} = ‖f‖_1 vol(R^m_{nm} f)`, so the left integrand along `θ̄` is
/// `‖f‖_1 ρ_{R_{nm}^m f}(θ̄)^{nm}/(nm)!` and the right one
/// `‖f‖_1^{nm+1} ‖θ̄‖^{−nm}_{Π^{∘,m}⟨f⟩}`, each divided by `nm`.
pub fn check_zhang_fn(f: &LogConcaveFunction, m: usize, count: usize, seed: u64) -> Result<Verdict> {
    let n = f.dim();
    let d = n * m;
    let mass = f.mass()?.value;
    let gauge = ProjectionGauge::for_function(f, m)?;
    let (dirs, design) = directions(d, count, seed)?;
    let mut left = Vec::with_capacity(dirs.len());
    let mut right = Vec::with_capacity(dirs.len());
    let fact = factorial(d);
    for dir in &dirs {
        let theta = MVector::new(n, dir.clone())?;
        let ray = CovariogramRay::new(CovSource::Function(f), &theta)?;
        let rho = ball_body_radial(&ray, d as f64)?;
        left.push(mass * rho.powi(d as i32) / fact / d as f64);
        right.push(mass.powi(d as i32 + 1) / gauge.gauge(&theta).powi(d as i32) / d as f64);
    }
    let (lhs, rhs, sigma) = paired_integrals(design, d, &left, &right);
    let inputs = json!({"function": describe_fn(f), "m": m, "directions": dirs.len(), "seed": seed});
    Ok(Verdict::with_sigma(&format!("zhang_functional(n={n}, m={m})"), lhs, rhs, sigma, inputs))
}

/// The two sides of `binom(n(m+1), n)/n^{nm} ≤ vol(Π^{∘,m}K)·vol(K)^{m(n−1)} ≤
/// vol(Π^{∘,m}B)·vol(B)^{m(n−1)}`, as `(lower, upper)` verdicts.
pub fn check_zhang_body(k: &ConvexBody, m: usize, count: usize, seed: u64) -> Result<(Verdict, Verdict)> {
    let n = k.dim();
    let e = (m * (n - 1)) as i32;
    let vk = k.volume();
    let pk = ppb_volume_body(k, m, count, seed)?;
    let lhs_k = pk.scale(vk.value.powi(e));
    let ball = ConvexBody::ball(n, 1.0)?;
    let pb = ppb_volume_body(&ball, m, count, seed)?;
    let ball_value = pb.scale(ball.volume().value.powi(e));
    let constant = binomial((n * (m + 1)) as f64, n as f64) / (n as f64).powi((n * m) as i32);
    let inputs = json!({"body": describe_body(k), "m": m, "directions": count, "seed": seed});
    let lower = Verdict::new(&format!("zhang_body(n={n}, m={m})"), Estimate::exact(constant), lhs_k, inputs.clone());
    let upper = Verdict::new(&format!("petty_body(n={n}, m={m})"), lhs_k, ball_value, inputs);
    Ok((lower, upper))
}

/// `g_{f,m}(x̄) ≤ ‖f‖_1 exp(−‖x̄‖_{Π^{∘,m}⟨f⟩}/‖f‖_1)` at every point; the
/// verdict reports the point with the smallest relative margin.
pub fn check_tangent_bound(f: &LogConcaveFunction, m: usize, points: &[MVector]) -> Result<Verdict> {
    if points.is_empty() {
        return Err(Error::Domain("no points to check".into()));
    }
    let mass = f.mass()?.value;
    let gauge = ProjectionGauge::for_function(f, m)?;
    let mut worst: Option<(f64, Estimate, Estimate, usize)> = None;
    for (i, x) in points.iter().enumerate() {
        let g = covariogram_fn(f, x, CovMethod::LevelSet)?;
        let bound = mass * (-gauge.gauge(x) / mass).exp();
        let rel = (bound - g.value) / mass;
        if worst.as_ref().is_none_or(|w| rel < w.0) {
            worst = Some((rel, g, Estimate::exact(bound), i));
        }
    }
    let (_, lhs, rhs, i) = worst.unwrap();
    let inputs = json!({"function": describe_fn(f), "m": m, "point": points[i].as_slice(), "points": points.len()});
    Ok(Verdict::new(&format!("tangent_bound(n={}, m={m})", f.dim()), lhs, rhs, inputs))
}

/// Normalized radii `G(p) = binom_gen(p, s)^{1/p} ρ_{R_p^m}(θ̄)` along each
/// direction, with `s = 0` for functions and `s = 1/n` for bodies, and the
/// resulting per-pair verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    /// Exponents in increasing order, starting with the endpoint `−1`.
    pub grid: Vec<f64>,
    pub directions: Vec<Vec<f64>>,
    /// `normalized[i][j]` belongs to direction `i` and exponent `grid[j]`.
    pub normalized: Vec<Vec<f64>>,
    pub verdicts: Vec<Verdict>,
}

/// Relative error budget assigned to each normalized radius.
const RADIUS_REL_ERR: f64 = 1e-9;

pub fn check_chain(source: CovSource<'_>, m: usize, grid: &[f64], count: usize, seed: u64) -> Result<ChainReport> {
    let (n, s, what) = match source {
        CovSource::Function(f) => (f.dim(), 0.0, describe_fn(f)),
        CovSource::Body(k) => (k.dim(), 1.0 / k.dim() as f64, describe_body(k)),
    };
    let mut ps: Vec<f64> = grid.iter().copied().filter(|&p| p > -1.0 && p.is_finite()).collect();
    ps.sort_by(f64::total_cmp);
    ps.dedup();
    let mut full = vec![-1.0];
    full.extend(&ps);
    let (dirs, _) = directions(n * m, count, seed)?;
    let mut normalized = Vec::with_capacity(dirs.len());
    for dir in &dirs {
        let ray = CovariogramRay::new(source, &MVector::new(n, dir.clone())?)?;
        let mut row = vec![g_endpoint(&ray, s)?];
        for &p in &ps {
            row.push(g_functional(&ray, p, s)?);
        }
        normalized.push(row);
    }
    let mut verdicts = Vec::new();
    for j in 0..full.len() - 1 {
        let (i, _) = normalized
            .iter()
            .enumerate()
            .map(|(i, row)| (i, (row[j] - row[j + 1]) / row[j]))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let lo = normalized[i][j + 1];
        let hi = normalized[i][j];
        let inputs = json!({"source": what, "m": m, "p": full[j + 1], "q": full[j], "direction": dirs[i]});
        verdicts.push(Verdict::new(
            &format!("chain(p={} vs {}, m={m})", full[j + 1], full[j]),
            Estimate::new(lo, RADIUS_REL_ERR * lo, 0),
            Estimate::new(hi, RADIUS_REL_ERR * hi, 0),
            inputs,
        ));
    }
    Ok(ChainReport { grid: full, directions: dirs, normalized, verdicts })
}

/// Concave slack of `y ∈ supp f`: positive inside, negative outside.
fn support_slack(f: &LogConcaveFunction, y: &[f64]) -> f64 {
    match f.support() {
        Support::Compact(s) => body_slack(&s, y),
        Support::Cone => {
            let z: Vec<f64> = y.iter().zip(f.shift()).map(|(a, b)| a - b).collect();
            f.body()
                .halfspaces()
                .iter()
                .filter(|h| h.offset.abs() <= 1e-12)
                .map(|h| -h.normal.iter().zip(&z).map(|(a, b)| a * b).sum::<f64>())
                .fold(f64::INFINITY, f64::min)
        }
    }
}

fn body_slack(s: &ConvexBody, y: &[f64]) -> f64 {
    let dist = |c: &[f64]| c.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    match s.kind() {
        BodyKind::Polytope => s
            .halfspaces()
            .iter()
            .map(|h| h.offset - h.normal.iter().zip(y).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::INFINITY, f64::min),
        BodyKind::Ball { center, radius } => radius - dist(center),
        BodyKind::BallIntersection { centers, radius } => {
            centers.iter().map(|c| radius - dist(c)).fold(f64::INFINITY, f64::min)
        }
    }
}

fn check_family(fs: &[LogConcaveFunction], x: &MVector) -> Result<usize> {
    let n = fs.first().ok_or_else(|| Error::Domain("empty family".into()))?.dim();
    if fs.len() < 2 || x.m() != fs.len() - 1 || x.n() != n || fs.iter().any(|f| f.dim() != n) {
        return Err(Error::InvalidDimension(n));
    }
    Ok(n)
}

/// `z ↦ f_0(z) Π_{i≥1} f_i(z − x_i)`.
fn product_at(fs: &[LogConcaveFunction], x: &MVector, z: &[f64], buf: &mut Vec<f64>) -> f64 {
    let mut v = fs[0].eval(z);
    for (f, xi) in fs[1..].iter().zip(x.blocks()) {
        if v == 0.0 {
            return 0.0;
        }
        buf.clear();
        buf.extend(z.iter().zip(xi).map(|(a, b)| a - b));
        v *= f.eval(buf);
    }
    v
}

/// Interval where the product is positive in dimension one, clamped to the
/// truncation boxes when unbounded; `None` if empty.
fn feasible_interval(fs: &[LogConcaveFunction], x: &MVector) -> Option<(f64, f64)> {
    let offsets: Vec<f64> = std::iter::once(0.0).chain(x.blocks().map(|b| b[0])).collect();
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    let (mut tlo, mut thi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (f, o) in fs.iter().zip(&offsets) {
        let (a, b) = support_interval(f);
        lo = lo.max(a + o);
        hi = hi.min(b + o);
        let (ta, tb) = f.truncation_box(TRUNCATION_EPS);
        tlo = tlo.min(ta[0] + o);
        thi = thi.max(tb[0] + o);
    }
    let (lo, hi) = (lo.max(tlo), hi.min(thi));
    if lo > hi {
        None
    } else {
        Some((lo, hi))
    }
}

fn support_interval(f: &LogConcaveFunction) -> (f64, f64) {
    match f.support() {
        Support::Compact(s) => {
            let (lo, hi) = s.bounding_box();
            (lo[0], hi[0])
        }
        Support::Cone => {
            let (lo, hi) = f.body().bounding_box();
            let c = f.shift()[0];
            let a = if lo[0] < 0.0 { f64::NEG_INFINITY } else { c };
            let b = if hi[0] > 0.0 { f64::INFINITY } else { c };
            (a, b)
        }
    }
}

/// `(f̄)_{⋆m}(x̄) = sup_z f_0(z) Π_{i≥1} f_i(z − x_i)`.
pub fn sup_convolution(fs: &[LogConcaveFunction], x: &MVector) -> Result<f64> {
    let n = check_family(fs, x)?;
    let mut buf = Vec::with_capacity(n);
    if n == 1 {
        let Some((a, b)) = feasible_interval(fs, x) else { return Ok(0.0) };
        // Golden-section search on the unimodal log of the product.
        let mut buf2 = Vec::with_capacity(1);
        let h = |z: f64, buf: &mut Vec<f64>| product_at(fs, x, &[z], buf);
        let (mut lo, mut hi) = (a, b);
        let phi = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = hi - phi * (hi - lo);
        let mut x2 = lo + phi * (hi - lo);
        let (mut f1, mut f2) = (h(x1, &mut buf), h(x2, &mut buf2));
        for _ in 0..120 {
            if hi - lo <= 1e-15 * (1.0 + lo.abs().max(hi.abs())) {
                break;
            }
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = h(x2, &mut buf2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = h(x1, &mut buf);
            }
        }
        let ends = h(a, &mut buf).max(h(b, &mut buf));
        return Ok(f1.max(f2).max(ends));
    }
    let offsets: Vec<Vec<f64>> = std::iter::once(vec![0.0; n]).chain(x.blocks().map(|b| b.to_vec())).collect();
    let slack = |z: &[f64]| {
        fs.iter()
            .zip(&offsets)
            .map(|(f, o)| {
                let y: Vec<f64> = z.iter().zip(o).map(|(a, b)| a - b).collect();
                support_slack(f, &y)
            })
            .fold(f64::INFINITY, f64::min)
    };
    let mut z0 = vec![0.0; n];
    for (f, o) in fs.iter().zip(&offsets) {
        for c in 0..n {
            z0[c] += (f.shift()[c] + o[c]) / fs.len() as f64;
        }
    }
    if slack(&z0).is_finite() {
        let best = maximize_logconcave(|z| slack(z).exp(), &z0, 1e-9)?;
        if best.value.ln() < -1e-12 {
            return Ok(0.0);
        }
        z0 = best.point;
    }
    match maximize_logconcave(|z| product_at(fs, x, z, &mut Vec::with_capacity(n)), &z0, 1e-9) {
        Ok(m) => Ok(m.value),
        Err(Error::ZeroFunctionRegion) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// `(f̄)_{⊕m}(x̄) = ∫ f_0(z) Π_{i≥1} f_i(z − x_i) dz`: quadrature in dimension
/// one, Monte Carlo over the intersected truncation boxes otherwise.
pub fn int_convolution(fs: &[LogConcaveFunction], x: &MVector, samples: usize, seed: u64) -> Result<Estimate> {
    let n = check_family(fs, x)?;
    if n == 1 {
        let Some((a, b)) = feasible_interval(fs, x) else { return Ok(Estimate::exact(0.0)) };
        let mut pts = vec![a];
        pts.push(fs[0].shift()[0]);
        pts.extend(fs[1..].iter().zip(x.blocks()).map(|(f, xi)| f.shift()[0] + xi[0]));
        pts.push(b);
        pts.retain(|&p| p >= a && p <= b);
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let cfg = QuadratureConfig::default().with_tolerances(1e-10, 1e-14);
        let mut total = Estimate::exact(0.0);
        for w in pts.windows(2) {
            let piece = integrate_1d(|z| product_at(fs, x, &[z], &mut Vec::with_capacity(1)), w[0], Limit::Finite(w[1]), &cfg)?;
            total = total.add(piece);
        }
        return Ok(total);
    }
    let (mut lo, mut hi) = fs[0].truncation_box(TRUNCATION_EPS);
    for (f, xi) in fs[1..].iter().zip(x.blocks()) {
        let (a, b) = f.truncation_box(TRUNCATION_EPS);
        for c in 0..n {
            lo[c] = lo[c].max(a[c] + xi[c]);
            hi[c] = hi[c].min(b[c] + xi[c]);
        }
    }
    if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
        return Ok(Estimate::exact(0.0));
    }
    Ok(monte_carlo_box(&lo, &hi, samples, seed, |z| product_at(fs, x, z, &mut Vec::with_capacity(n))))
}

/// Box containing the support of `x̄ ↦ (f̄)_{⋆m}(x̄)` up to truncation.
fn star_box(fs: &[LogConcaveFunction]) -> (Vec<f64>, Vec<f64>) {
    let n = fs[0].dim();
    let (lo0, hi0) = fs[0].truncation_box(TRUNCATION_EPS);
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for f in &fs[1..] {
        let (a, b) = f.truncation_box(TRUNCATION_EPS);
        for c in 0..n {
            lo.push(lo0[c] - b[c]);
            hi.push(hi0[c] - a[c]);
        }
    }
    (lo, hi)
}

/// `‖(f̄)_{⋆m}‖_1` by Monte Carlo over the product box.
pub fn star_norm(fs: &[LogConcaveFunction], samples: usize, seed: u64) -> Result<Estimate> {
    let n = fs[0].dim();
    let (lo, hi) = star_box(fs);
    if lo.len() > 8 {
        return Err(Error::InvalidDimension(lo.len()));
    }
    let failure = std::sync::Mutex::new(None);
    let est = monte_carlo_box(&lo, &hi, samples, seed, |x| {
        match sup_convolution(fs, &MVector::new(n, x.to_vec()).unwrap()) {
            Ok(v) => v,
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                0.0
            }
        }
    });
    match failure.into_inner().unwrap() {
        Some(e) => Err(e),
        None => Ok(est),
    }
}

/// `‖(f̄)_{⊕m}‖_∞`, maximizing over `x̄` from `ō` and from the mode differences.
pub fn oplus_sup(fs: &[LogConcaveFunction], samples: usize, seed: u64) -> Result<f64> {
    let n = fs[0].dim();
    let m = fs.len() - 1;
    let objective = |x: &[f64]| {
        int_convolution(fs, &MVector::new(n, x.to_vec()).unwrap(), samples, seed).map(|e| e.value.max(0.0)).unwrap_or(0.0)
    };
    let zero = vec![0.0; n * m];
    let modes: Vec<f64> = fs[1..].iter().flat_map(|f| fs[0].shift().iter().zip(f.shift()).map(|(a, b)| a - b)).collect();
    let start = if objective(&modes) > objective(&zero) { modes } else { zero };
    Ok(maximize_logconcave(objective, &start, 1e-9)?.value)
}

/// `‖(f̄)_{⊕m}‖_∞ ‖(f̄)_{⋆m}‖_1 ≤ binom(n(m+1), n) Π_i ‖f_i‖_∞ ‖f_i‖_1`.
pub fn check_rs_multi(fs: &[LogConcaveFunction], samples: usize, seed: u64) -> Result<Verdict> {
    let m = fs.len().checked_sub(1).filter(|&m| m > 0).ok_or_else(|| Error::Domain("need at least two functions".into()))?;
    check_family(fs, &MVector::zero(fs[0].dim(), m))?;
    let n = fs[0].dim();
    let sup = oplus_sup(fs, samples, seed)?;
    let star = star_norm(fs, samples, seed)?;
    let lhs = star.scale(sup);
    let mut rhs = Estimate::exact(binomial((n * (m + 1)) as f64, n as f64));
    for f in fs {
        rhs = rhs.scale(f.sup_norm() * f.mass()?.value);
    }
    let inputs = json!({
        "functions": fs.iter().map(describe_fn).collect::<Vec<_>>(),
        "samples": samples,
        "seed": seed,
    });
    Ok(Verdict::new(&format!("rogers_shephard_multi(n={n}, m={m})"), lhs, rhs, inputs))
}

/// `(f, f(−·), …, f(−·))` with `m` reflected copies.
pub fn reflected_family(f: &LogConcaveFunction, m: usize) -> Vec<LogConcaveFunction> {
    let r = f.reflect();
    std::iter::once(f.clone()).chain(std::iter::repeat_n(r, m)).collect()
}

/// `‖(f̄)_{⋆m}‖_1 ≤ binom(n(m+1), n) ‖f‖_∞^m ‖f‖_{1/m}` for
/// `f̄ = (f, f(−·), …, f(−·))`.
pub fn check_rs_single(f: &LogConcaveFunction, m: usize, samples: usize, seed: u64) -> Result<Verdict> {
    let n = f.dim();
    let fs = reflected_family(f, m);
    let lhs = star_norm(&fs, samples, seed)?;
    let rhs = f
        .lp_norm(1.0 / m as f64)?
        .scale(binomial((n * (m + 1)) as f64, n as f64) * f.sup_norm().powi(m as i32));
    let inputs = json!({"function": describe_fn(f), "m": m, "samples": samples, "seed": seed});
    Ok(Verdict::new(&format!("rogers_shephard_single(n={n}, m={m})"), lhs, rhs, inputs))
}

/// A random log-concave function on the line: profile, interval containing
/// the origin, shift and amplitude all drawn from `seed`.
pub fn random_log_concave_1d(seed: u64) -> Result<LogConcaveFunction> {
    let mut rng = stream_rng(seed, 0x1c);
    let profile = match rng.random_range(0..4) {
        0 => Profile::Exponential,
        1 => Profile::Gaussian,
        2 => Profile::Power { s: rng.random_range(0.3..2.0) },
        _ => Profile::Indicator,
    };
    let a: f64 = rng.random_range(0.0..1.5);
    let b: f64 = rng.random_range(0.2..1.5);
    let body = ConvexBody::from_vertices(&[vec![-a], vec![b]])?;
    let shift = rng.random_range(-1.0..1.0);
    let amplitude = rng.random_range(0.5..2.0);
    LogConcaveFunction::new(profile, body, vec![shift], amplitude)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::SimplexVariant;

    fn unit() -> ConvexBody {
        ConvexBody::simplex(1, SimplexVariant::Corner).unwrap()
    }

    fn chi(k: ConvexBody) -> LogConcaveFunction {
        LogConcaveFunction::centered(Profile::Indicator, k).unwrap()
    }

    fn mv(n: usize, v: &[f64]) -> MVector {
        MVector::new(n, v.to_vec()).unwrap()
    }

    #[test]
    fn status_rules() {
        let v = Verdict::new("x", Estimate::exact(1.0), Estimate::exact(1.0 + 1e-9), Value::Null);
        assert_eq!(v.status, Status::HoldsWithEquality);
        let v = Verdict::new("x", Estimate::new(1.0, 0.1, 10), Estimate::exact(1.2), Value::Null);
        assert_eq!(v.status, Status::HoldsWithEquality);
        let v = Verdict::new("x", Estimate::new(1.0, 0.01, 10), Estimate::exact(1.2), Value::Null);
        assert_eq!(v.status, Status::Holds);
        let v = Verdict::new("x", Estimate::new(1.5, 0.01, 10), Estimate::exact(1.2), Value::Null);
        assert_eq!(v.status, Status::ViolatedBeyond3Sigma);
        assert!(v.csv_row().ends_with("violated_beyond3_sigma") || v.csv_row().contains("violated"));
    }

    #[test]
    fn rs_body_examples() {
        let tri = ConvexBody::simplex(2, SimplexVariant::Corner).unwrap();
        let v = check_rs_body(&tri, 1, 0, 0).unwrap();
        assert!((v.lhs.value - 3.0).abs() < 1e-12 && v.status == Status::HoldsWithEquality);
        let v = check_rs_body(&unit(), 2, 200_000, 1).unwrap();
        assert_eq!(v.status, Status::HoldsWithEquality, "{v:?}");
        let v = check_rs_body(&ConvexBody::ball(2, 1.0).unwrap(), 1, 0, 0).unwrap();
        let pi = std::f64::consts::PI;
        assert!((v.lhs.value - 4.0 * pi).abs() < 1e-12 && (v.rhs.value - 6.0 * pi).abs() < 1e-12);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn zhang_functional_examples() {
        let f = LogConcaveFunction::centered(Profile::Exponential, unit()).unwrap();
        let v = check_zhang_fn(&f, 1, 2, 0).unwrap();
        assert!((v.lhs.value - 2.0).abs() < 1e-8 && (v.rhs.value - 2.0).abs() < 1e-12, "{v:?}");
        assert_eq!(v.status, Status::HoldsWithEquality);
        let v = check_zhang_fn(&f, 2, 256, 0).unwrap();
        assert!((v.lhs.value - 3.0).abs() < 1e-3 && v.status == Status::HoldsWithEquality, "{v:?}");
        let g = LogConcaveFunction::centered(Profile::Gaussian, ConvexBody::cube(1, 1.0).unwrap()).unwrap();
        let v = check_zhang_fn(&g, 1, 2, 0).unwrap();
        assert_eq!(v.status, Status::Holds);
        assert!(v.margin > 3.0 * v.sigma);
    }

    #[test]
    fn tangent_bound_examples() {
        let f = LogConcaveFunction::centered(Profile::Exponential, unit()).unwrap();
        let v = check_tangent_bound(&f, 1, &[mv(1, &[0.7])]).unwrap();
        assert_eq!(v.status, Status::HoldsWithEquality);
        let v = check_tangent_bound(&chi(unit()), 1, &[mv(1, &[0.5])]).unwrap();
        assert!((v.lhs.value - 0.5).abs() < 1e-12 && (v.rhs.value - (-0.5f64).exp()).abs() < 1e-12);
        assert_eq!(v.status, Status::Holds);
        let v = check_tangent_bound(&chi(unit()), 2, &[MVector::zero(1, 2)]).unwrap();
        assert_eq!(v.status, Status::HoldsWithEquality);
    }

    #[test]
    fn convolution_examples() {
        let c = chi(unit());
        let fs = reflected_family(&c, 2);
        assert_eq!(sup_convolution(&fs, &mv(1, &[0.5, -0.5])).unwrap(), 0.0);
        assert_eq!(sup_convolution(&fs, &mv(1, &[0.5, 0.25])).unwrap(), 1.0);
        let lap = LogConcaveFunction::centered(Profile::Exponential, ConvexBody::cube(1, 1.0).unwrap()).unwrap();
        let pair = vec![lap.clone(), lap];
        let v = int_convolution(&pair, &mv(1, &[0.0]), 0, 0).unwrap();
        assert!((v.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sup_convolution_in_the_plane() {
        let disk = chi(ConvexBody::ball(2, 1.0).unwrap());
        let fs = reflected_family(&disk, 1);
        assert_eq!(sup_convolution(&fs, &mv(2, &[1.5, 0.0])).unwrap(), 1.0);
        assert_eq!(sup_convolution(&fs, &mv(2, &[1.5, 1.5])).unwrap(), 0.0);
        // Oracle: for exponential-simplex inputs the supremum is e^{-x} on x ≥ 0.
        let tri = ConvexBody::simplex(2, SimplexVariant::Corner).unwrap();
        let f = LogConcaveFunction::centered(Profile::Exponential, tri).unwrap();
        let fs = reflected_family(&f, 1);
        let v = sup_convolution(&fs, &mv(2, &[0.2, 0.3])).unwrap();
        assert!((v - (-0.5f64).exp()).abs() < 1e-8, "{v}");
    }

    #[test]
    fn rs_single_examples() {
        let v = check_rs_single(&chi(unit()), 2, 200_000, 3).unwrap();
        assert!((v.lhs.value - 3.0).abs() < 0.03 && v.status == Status::HoldsWithEquality, "{v:?}");
        let f = LogConcaveFunction::centered(Profile::Exponential, unit()).unwrap();
        let v = check_rs_single(&f, 1, 100_000, 3).unwrap();
        assert_eq!(v.status, Status::Holds, "{v:?}");
        assert!((v.rhs.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rs_multi_indicators() {
        let c = chi(unit());
        let fs = vec![c.clone(), c];
        let v = check_rs_multi(&fs, 100_000, 5).unwrap();
        assert!((v.rhs.value - 2.0).abs() < 1e-12);
        assert_eq!(v.status, Status::HoldsWithEquality, "{v:?}");
    }

    #[test]
    fn chain_for_interval_is_flat() {
        let report = check_chain(CovSource::Body(&unit()), 1, &[-0.5, 0.0, 1.0, 2.0, 5.0], 2, 0).unwrap();
        for row in &report.normalized {
            assert!(row.iter().all(|v| (v - 1.0).abs() < 1e-6), "{row:?}");
        }
        assert!(report.verdicts.iter().all(|v| v.status == Status::HoldsWithEquality));
    }
}
