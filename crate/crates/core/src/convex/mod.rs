//! Convex bodies in dimensions one to three: polytopes in halfspace form,
//! Euclidean balls and intersections of equal-radius balls.

pub mod lp;
mod geometry;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mvector::MVector;
use crate::numerics::{monte_carlo_box, special, sphere_lattice_2d, sphere_sample, stream_rng, Estimate};

pub use geometry::{clip_polygon, polygon_area};
pub(crate) use geometry::convex_hull_2d;
use geometry::{dot, minimal_enclosing_radius, norm};
use lp::LpOutcome;

/// Intersections whose inscribed radius falls below this are reported empty.
pub const EMPTY_MARGIN: f64 = 1e-10;
/// Monte Carlo samples for three-dimensional volumes.
pub const VOLUME_SAMPLES: usize = 400_000;
const VOLUME_SEED: u64 = 0x766f6c;
/// Sphere nodes standing in for the boundary of a ball.
pub const BALL_NODES: usize = 10_000;
const LP_CAP: f64 = 1e9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Halfspace {
    pub fn new(normal: Vec<f64>, offset: f64) -> Self {
        Self { normal, offset }
    }

    fn value(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) - self.offset
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum BodyKind {
    Polytope,
    Ball { center: Vec<f64>, radius: f64 },
    /// Common part of balls with equal radius.
    BallIntersection { centers: Vec<Vec<f64>>, radius: f64 },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimplexVariant {
    /// `conv{o, e_1, …, e_n}`
    #[default]
    Corner,
    /// Corner simplex translated so its centroid is the origin.
    Centered,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub area: f64,
    pub point: Vec<f64>,
}

/// Outer unit normals and `(n-1)`-dimensional measures of the boundary pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct FacetData {
    pub facets: Vec<Facet>,
}

impl FacetData {
    /// `Σ area_F · n_F`, which vanishes for a closed surface.
    pub fn weighted_normal_sum(&self) -> Vec<f64> {
        let n = self.facets.first().map_or(0, |f| f.normal.len());
        let mut s = vec![0.0; n];
        for f in &self.facets {
            s.iter_mut().zip(&f.normal).for_each(|(a, b)| *a += f.area * b);
        }
        s
    }

    pub fn total_area(&self) -> f64 {
        self.facets.iter().map(|f| f.area).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBody {
    dim: usize,
    halfspaces: Vec<Halfspace>,
    vertices: Option<Vec<Vec<f64>>>,
    kind: BodyKind,
}

fn check_dim(n: usize) -> Result<()> {
    if (1..=3).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidDimension(n))
    }
}

/// Volume of the unit ball in `R^n`.
pub fn unit_ball_volume(n: usize) -> f64 {
    std::f64::consts::PI.powf(n as f64 / 2.0) / special::gamma(n as f64 / 2.0 + 1.0)
}

/// Volume of the intersection of two balls of radius `r` whose centers are `d` apart.
pub fn lens_volume(n: usize, r: f64, d: f64) -> f64 {
    if d >= 2.0 * r {
        return 0.0;
    }
    match n {
        1 => 2.0 * r - d,
        2 => 2.0 * r * r * (d / (2.0 * r)).acos() - 0.5 * d * (4.0 * r * r - d * d).sqrt(),
        3 => std::f64::consts::PI / 12.0 * (4.0 * r + d) * (2.0 * r - d).powi(2),
        _ => f64::NAN,
    }
}

impl ConvexBody {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> Option<&[Vec<f64>]> {
        self.vertices.as_deref()
    }

    pub fn kind(&self) -> &BodyKind {
        &self.kind
    }

    pub fn is_polytope(&self) -> bool {
        matches!(self.kind, BodyKind::Polytope)
    }

    pub fn simplex(n: usize, variant: SimplexVariant) -> Result<Self> {
        check_dim(n)?;
        let mut pts = vec![vec![0.0; n]];
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            pts.push(e);
        }
        if variant == SimplexVariant::Centered {
            let c = 1.0 / (n as f64 + 1.0);
            pts.iter_mut().for_each(|p| p.iter_mut().for_each(|v| *v -= c));
        }
        Self::from_vertices(&pts)
    }

    pub fn cube(n: usize, half_width: f64) -> Result<Self> {
        check_dim(n)?;
        if !(half_width > 0.0) {
            return Err(Error::DegenerateBody(format!("cube half-width {half_width}")));
        }
        let mut hs = Vec::with_capacity(2 * n);
        for i in 0..n {
            for s in [-1.0, 1.0] {
                let mut a = vec![0.0; n];
                a[i] = s;
                hs.push(Halfspace::new(a, half_width));
            }
        }
        Self::from_halfspaces(hs)
    }

    pub fn ball(n: usize, radius: f64) -> Result<Self> {
        Self::ball_at(vec![0.0; n], radius)
    }

    pub fn ball_at(center: Vec<f64>, radius: f64) -> Result<Self> {
        let n = center.len();
        check_dim(n)?;
        if !(radius > 0.0) {
            return Err(Error::DegenerateBody(format!("ball radius {radius}")));
        }
        if n == 1 {
            // A one-dimensional ball is an interval; keep it a polytope so
            // facets and projections are exact.
            return Self::from_vertices(&[vec![center[0] - radius], vec![center[0] + radius]]);
        }
        Ok(Self { dim: n, halfspaces: Vec::new(), vertices: None, kind: BodyKind::Ball { center, radius } })
    }

    /// Convex hull of a point cloud.
    pub fn from_vertices(points: &[Vec<f64>]) -> Result<Self> {
        let n = points.first().map_or(0, Vec::len);
        check_dim(n)?;
        if points.iter().any(|p| p.len() != n) {
            return Err(Error::InvalidDimension(n));
        }
        match n {
            1 => {
                let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
                let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
                if hi - lo <= 1e-12 * (1.0 + hi.abs().max(lo.abs())) {
                    return Err(Error::DegenerateBody("interval has empty interior".into()));
                }
                Ok(Self {
                    dim: 1,
                    halfspaces: vec![Halfspace::new(vec![-1.0], -lo), Halfspace::new(vec![1.0], hi)],
                    vertices: Some(vec![vec![lo], vec![hi]]),
                    kind: BodyKind::Polytope,
                })
            }
            2 => {
                let hull = geometry::convex_hull_2d(points);
                if hull.len() < 3 || polygon_area(&hull) <= 1e-14 {
                    return Err(Error::DegenerateBody("points are collinear".into()));
                }
                let mut hs = Vec::with_capacity(hull.len());
                for i in 0..hull.len() {
                    let p = hull[i];
                    let q = hull[(i + 1) % hull.len()];
                    let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
                    let len = dx.hypot(dy);
                    let a = vec![dy / len, -dx / len];
                    let b = a[0] * p[0] + a[1] * p[1];
                    hs.push(Halfspace::new(a, b));
                }
                Ok(Self {
                    dim: 2,
                    halfspaces: hs,
                    vertices: Some(hull.iter().map(|p| p.to_vec()).collect()),
                    kind: BodyKind::Polytope,
                })
            }
            _ => {
                let scale = 1.0 + points.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
                let tol = 1e-10 * scale;
                let mut hs: Vec<Halfspace> = Vec::new();
                for i in 0..points.len() {
                    for j in i + 1..points.len() {
                        for k in j + 1..points.len() {
                            let u: Vec<f64> = (0..3).map(|c| points[j][c] - points[i][c]).collect();
                            let v: Vec<f64> = (0..3).map(|c| points[k][c] - points[i][c]).collect();
                            let mut a = geometry::cross(&u, &v);
                            let len = norm(&a);
                            if len <= 1e-12 * scale * scale {
                                continue;
                            }
                            a.iter_mut().for_each(|x| *x /= len);
                            let b = dot(&a, &points[i]);
                            let above = points.iter().any(|p| dot(&a, p) > b + tol);
                            let below = points.iter().any(|p| dot(&a, p) < b - tol);
                            let h = match (above, below) {
                                (false, true) => Halfspace::new(a, b),
                                (true, false) => Halfspace::new(a.iter().map(|x| -x).collect(), -b),
                                _ => continue,
                            };
                            if !hs.iter().any(|g| geometry::same_plane(g, &h, tol)) {
                                hs.push(h);
                            }
                        }
                    }
                }
                if hs.len() < 4 {
                    return Err(Error::DegenerateBody("points do not span R^3".into()));
                }
                Self::from_halfspaces(hs)
            }
        }
    }

    /// Polytope `{x : ⟨a_i, x⟩ ≤ b_i}`. Normals are rescaled to unit length and
    /// redundant constraints dropped.
    pub fn from_halfspaces(halfspaces: Vec<Halfspace>) -> Result<Self> {
        let n = halfspaces.first().map_or(0, |h| h.normal.len());
        check_dim(n)?;
        let mut hs = Vec::with_capacity(halfspaces.len());
        for h in halfspaces {
            if h.normal.len() != n {
                return Err(Error::InvalidDimension(h.normal.len()));
            }
            let len = norm(&h.normal);
            if len == 0.0 {
                if h.offset < 0.0 {
                    return Err(Error::DegenerateBody("infeasible constraint".into()));
                }
                continue;
            }
            hs.push(Halfspace::new(h.normal.iter().map(|x| x / len).collect(), h.offset / len));
        }
        match chebyshev_center(&hs, n) {
            None => return Err(Error::DegenerateBody("empty intersection".into())),
            Some((_, r)) if r <= EMPTY_MARGIN => {
                return Err(Error::DegenerateBody("intersection has empty interior".into()))
            }
            Some((_, r)) if r >= LP_CAP * 0.5 => return Err(Error::DegenerateBody("unbounded".into())),
            Some(_) => {}
        }
        for i in 0..n {
            for s in [-1.0, 1.0] {
                let mut c = vec![0.0; n];
                c[i] = s;
                let a: Vec<Vec<f64>> = hs.iter().map(|h| h.normal.clone()).collect();
                let b: Vec<f64> = hs.iter().map(|h| h.offset).collect();
                if lp::maximize_free(&c, &a, &b) == LpOutcome::Unbounded {
                    return Err(Error::DegenerateBody("unbounded direction".into()));
                }
            }
        }
        let vertices = geometry::enumerate_vertices(&hs, n);
        let scale = 1.0 + vertices.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        let tol = 1e-9 * scale;
        let mut kept: Vec<Halfspace> = Vec::new();
        for h in hs {
            let touching = vertices.iter().filter(|v| h.value(v).abs() <= tol).count();
            if touching >= n && !kept.iter().any(|g| geometry::same_plane(g, &h, tol)) {
                kept.push(h);
            }
        }
        Ok(Self { dim: n, halfspaces: kept, vertices: Some(vertices), kind: BodyKind::Polytope })
    }

    pub fn translate(&self, v: &[f64]) -> Self {
        let shift = |p: &Vec<f64>| -> Vec<f64> { p.iter().zip(v).map(|(a, b)| a + b).collect() };
        Self {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace::new(h.normal.clone(), h.offset + dot(&h.normal, v)))
                .collect(),
            vertices: self.vertices.as_ref().map(|vs| vs.iter().map(shift).collect()),
            kind: match &self.kind {
                BodyKind::Polytope => BodyKind::Polytope,
                BodyKind::Ball { center, radius } => BodyKind::Ball { center: shift(center), radius: *radius },
                BodyKind::BallIntersection { centers, radius } => {
                    BodyKind::BallIntersection { centers: centers.iter().map(shift).collect(), radius: *radius }
                }
            },
        }
    }

    /// Dilation `tK` about the origin, `t > 0`.
    pub fn scale(&self, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("scale factor {t} must be positive")));
        }
        let mul = |p: &Vec<f64>| -> Vec<f64> { p.iter().map(|a| a * t).collect() };
        Ok(Self {
            dim: self.dim,
            halfspaces: self.halfspaces.iter().map(|h| Halfspace::new(h.normal.clone(), h.offset * t)).collect(),
            vertices: self.vertices.as_ref().map(|vs| vs.iter().map(mul).collect()),
            kind: match &self.kind {
                BodyKind::Polytope => BodyKind::Polytope,
                BodyKind::Ball { center, radius } => BodyKind::Ball { center: mul(center), radius: radius * t },
                BodyKind::BallIntersection { centers, radius } => {
                    BodyKind::BallIntersection { centers: centers.iter().map(mul).collect(), radius: radius * t }
                }
            },
        })
    }

    /// Point reflection `−K`.
    pub fn reflect(&self) -> Self {
        let neg = |p: &Vec<f64>| -> Vec<f64> { p.iter().map(|a| -a).collect() };
        Self {
            dim: self.dim,
            halfspaces: self.halfspaces.iter().map(|h| Halfspace::new(neg(&h.normal), h.offset)).collect(),
            vertices: self.vertices.as_ref().map(|vs| {
                let mut r: Vec<Vec<f64>> = vs.iter().map(neg).collect();
                if self.dim == 1 {
                    r.reverse();
                }
                r
            }),
            kind: match &self.kind {
                BodyKind::Polytope => BodyKind::Polytope,
                BodyKind::Ball { center, radius } => BodyKind::Ball { center: neg(center), radius: *radius },
                BodyKind::BallIntersection { centers, radius } => {
                    BodyKind::BallIntersection { centers: centers.iter().map(neg).collect(), radius: *radius }
                }
            },
        }
    }

    fn ball_centers(&self) -> Option<(Vec<Vec<f64>>, f64)> {
        match &self.kind {
            BodyKind::Polytope => None,
            BodyKind::Ball { center, radius } => Some((vec![center.clone()], *radius)),
            BodyKind::BallIntersection { centers, radius } => Some((centers.clone(), *radius)),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self.ball_centers() {
            None => self.halfspaces.iter().all(|h| h.value(x) <= 1e-12 * (1.0 + h.offset.abs())),
            Some((cs, r)) => cs.iter().all(|c| geometry::dist(c, x) <= r * (1.0 + 1e-12)),
        }
    }

    fn origin_slack(&self) -> f64 {
        match self.ball_centers() {
            None => self.halfspaces.iter().map(|h| h.offset).fold(f64::INFINITY, f64::min),
            Some((cs, r)) => cs.iter().map(|c| r - norm(c)).fold(f64::INFINITY, f64::min),
        }
    }

    /// Minkowski functional `inf{t > 0 : x ∈ tK}`; `+∞` when no dilate contains `x`.
    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        let slack = self.origin_slack();
        if slack < -1e-12 {
            return Err(Error::OriginNotContained);
        }
        if x.iter().all(|v| *v == 0.0) {
            return Ok(0.0);
        }
        match self.ball_centers() {
            None => {
                let xn = norm(x);
                let mut g = 0.0f64;
                for h in &self.halfspaces {
                    let ax = dot(&h.normal, x);
                    if h.offset > 1e-14 {
                        g = g.max(ax / h.offset);
                    } else if ax > 1e-14 * xn {
                        return Ok(f64::INFINITY);
                    }
                }
                Ok(g)
            }
            Some((cs, r)) => {
                let mut g = 0.0f64;
                for c in &cs {
                    g = g.max(ball_gauge(c, r, x));
                }
                Ok(g)
            }
        }
    }

    /// Radial function `1 / gauge`; requires the origin in the interior.
    pub fn radial(&self, x: &[f64]) -> Result<f64> {
        if self.origin_slack() <= 1e-14 {
            return Err(Error::OriginNotInterior);
        }
        Ok(1.0 / self.gauge(x)?)
    }

    /// Support function `sup_{y∈K} ⟨y, u⟩`. Exact for polytopes and balls; for
    /// ball intersections the minimum of the individual supports, an upper bound.
    pub fn support(&self, u: &[f64]) -> f64 {
        match &self.kind {
            BodyKind::Polytope => self
                .vertices
                .as_ref()
                .expect("polytopes carry vertices")
                .iter()
                .map(|v| dot(v, u))
                .fold(f64::NEG_INFINITY, f64::max),
            BodyKind::Ball { center, radius } => dot(center, u) + radius * norm(u),
            BodyKind::BallIntersection { centers, radius } => centers
                .iter()
                .map(|c| dot(c, u) + radius * norm(u))
                .fold(f64::INFINITY, f64::min),
        }
    }

    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.dim;
        let mut lo = vec![0.0; n];
        let mut hi = vec![0.0; n];
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            hi[i] = self.support(&e);
            e[i] = -1.0;
            lo[i] = -self.support(&e);
        }
        (lo, hi)
    }

    /// Largest distance from the origin to a point of `K`.
    pub fn circumradius(&self) -> f64 {
        match &self.kind {
            BodyKind::Polytope => {
                self.vertices.as_ref().unwrap().iter().map(|v| norm(v)).fold(0.0, f64::max)
            }
            _ => {
                let (lo, hi) = self.bounding_box();
                lo.iter().zip(&hi).map(|(a, b)| a.abs().max(b.abs()).powi(2)).sum::<f64>().sqrt()
            }
        }
    }

    pub fn volume(&self) -> Estimate {
        self.volume_with(VOLUME_SAMPLES, VOLUME_SEED)
    }

    /// Volume; `samples` and `seed` only matter on the Monte Carlo paths.
    pub fn volume_with(&self, samples: usize, seed: u64) -> Estimate {
        match &self.kind {
            BodyKind::Ball { radius, .. } => Estimate::exact(unit_ball_volume(self.dim) * radius.powi(self.dim as i32)),
            BodyKind::BallIntersection { centers, radius } if centers.len() == 2 => {
                Estimate::exact(lens_volume(self.dim, *radius, geometry::dist(&centers[0], &centers[1])))
            }
            BodyKind::Polytope if self.dim == 1 => {
                let v = self.vertices.as_ref().unwrap();
                Estimate::exact(v[1][0] - v[0][0])
            }
            BodyKind::Polytope if self.dim == 2 => {
                let v: Vec<[f64; 2]> = self.vertices.as_ref().unwrap().iter().map(|p| [p[0], p[1]]).collect();
                Estimate::exact(polygon_area(&v))
            }
            _ => {
                let (lo, hi) = self.bounding_box();
                monte_carlo_box(&lo, &hi, samples, seed, |x| if self.contains(x) { 1.0 } else { 0.0 })
            }
        }
    }

    /// Boundary pieces with unit outer normals. Balls return a quadrature
    /// surrogate of `BALL_NODES` sphere nodes with equal weights.
    pub fn facets(&self) -> Result<FacetData> {
        let n = self.dim;
        match &self.kind {
            BodyKind::Ball { center, radius } => {
                let nodes = if n == 2 {
                    sphere_lattice_2d(BALL_NODES, 0.5)
                } else {
                    sphere_sample(n, BALL_NODES, VOLUME_SEED)?
                };
                let w = crate::numerics::unit_sphere_area(n) * radius.powi(n as i32 - 1) / nodes.len() as f64;
                Ok(FacetData {
                    facets: nodes
                        .into_iter()
                        .map(|u| Facet {
                            point: center.iter().zip(&u).map(|(c, x)| c + radius * x).collect(),
                            normal: u,
                            area: w,
                        })
                        .collect(),
                })
            }
            BodyKind::BallIntersection { .. } => {
                Err(Error::DegenerateBody("facet data is not available for ball intersections".into()))
            }
            BodyKind::Polytope => {
                let verts = self.vertices.as_ref().unwrap();
                let facets = match n {
                    1 => vec![
                        Facet { normal: vec![-1.0], area: 1.0, point: verts[0].clone() },
                        Facet { normal: vec![1.0], area: 1.0, point: verts[1].clone() },
                    ],
                    2 => (0..verts.len())
                        .map(|i| {
                            let p = &verts[i];
                            let q = &verts[(i + 1) % verts.len()];
                            let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
                            let len = dx.hypot(dy);
                            Facet {
                                normal: vec![dy / len, -dx / len],
                                area: len,
                                point: vec![0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])],
                            }
                        })
                        .collect(),
                    _ => {
                        let scale = 1.0 + self.circumradius();
                        self.halfspaces
                            .iter()
                            .map(|h| {
                                let on: Vec<&Vec<f64>> =
                                    verts.iter().filter(|v| h.value(v).abs() <= 1e-9 * scale).collect();
                                let (area, point) = geometry::planar_polygon_area(&on, &h.normal);
                                Facet { normal: h.normal.clone(), area, point }
                            })
                            .collect()
                    }
                };
                Ok(FacetData { facets })
            }
        }
    }

    /// `K ∩ ⋂_i (x_i + K)`, or `None` when its inscribed radius is below
    /// [`EMPTY_MARGIN`].
    pub fn intersect_translates(&self, x: &MVector) -> Option<ConvexBody> {
        assert_eq!(x.n(), self.dim, "block dimension must match the body");
        if let Some((cs, r)) = self.ball_centers() {
            let mut centers: Vec<Vec<f64>> = cs.clone();
            for xi in x.blocks() {
                for c in &cs {
                    let t: Vec<f64> = c.iter().zip(xi).map(|(a, b)| a + b).collect();
                    if !centers.iter().any(|d| geometry::dist(d, &t) <= 1e-15 * (1.0 + r)) {
                        centers.push(t);
                    }
                }
            }
            if minimal_enclosing_radius(&centers) > r - EMPTY_MARGIN {
                return None;
            }
            return Some(if centers.len() == 1 {
                Self {
                    dim: self.dim,
                    halfspaces: Vec::new(),
                    vertices: None,
                    kind: BodyKind::Ball { center: centers.pop().unwrap(), radius: r },
                }
            } else {
                Self {
                    dim: self.dim,
                    halfspaces: Vec::new(),
                    vertices: None,
                    kind: BodyKind::BallIntersection { centers, radius: r },
                }
            });
        }
        if self.dim == 1 {
            let v = self.vertices.as_ref().unwrap();
            let (mut lo, mut hi) = (v[0][0], v[1][0]);
            for xi in x.blocks() {
                lo = lo.max(v[0][0] + xi[0]);
                hi = hi.min(v[1][0] + xi[0]);
            }
            if hi - lo <= 2.0 * EMPTY_MARGIN {
                return None;
            }
            return Self::from_vertices(&[vec![lo], vec![hi]]).ok();
        }
        let mut hs = self.halfspaces.clone();
        for xi in x.blocks() {
            for h in &self.halfspaces {
                hs.push(Halfspace::new(h.normal.clone(), h.offset + dot(&h.normal, xi)));
            }
        }
        Self::from_halfspaces(hs).ok()
    }

    /// Radial function of the m-th order difference body
    /// `D^m K = {x̄ : K ∩ ⋂(x_i + K) ≠ ∅}` in direction `θ̄`.
    pub fn dm_radial(&self, theta: &MVector) -> f64 {
        assert_eq!(theta.n(), self.dim, "block dimension must match the body");
        if self.dim == 1 && self.is_polytope() {
            let v = self.vertices.as_ref().unwrap();
            let width = v[1][0] - v[0][0];
            let hi = theta.blocks().map(|b| b[0]).fold(0.0, f64::max);
            let lo = theta.blocks().map(|b| b[0]).fold(0.0, f64::min);
            return if hi - lo > 0.0 { width / (hi - lo) } else { f64::INFINITY };
        }
        if let Some((cs, r)) = self.ball_centers() {
            // Bisection on the enclosing-ball radius of the translated centers.
            let radius_at = |t: f64| {
                let mut pts = cs.clone();
                for th in theta.blocks() {
                    for c in &cs {
                        pts.push(c.iter().zip(th).map(|(a, b)| a + t * b).collect());
                    }
                }
                minimal_enclosing_radius(&pts)
            };
            let (mut lo, mut hi) = (0.0, 4.0 * r / theta.norm().max(1e-300));
            if radius_at(hi) <= r {
                return f64::INFINITY;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if radius_at(mid) <= r {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        // max t s.t. y ∈ K and y − tθ_i ∈ K.
        let n = self.dim;
        let mut a = Vec::new();
        let mut b = Vec::new();
        for h in &self.halfspaces {
            let mut row = h.normal.clone();
            row.push(0.0);
            a.push(row);
            b.push(h.offset);
        }
        for th in theta.blocks() {
            for h in &self.halfspaces {
                let mut row = h.normal.clone();
                row.push(-dot(&h.normal, th));
                a.push(row);
                b.push(h.offset);
            }
        }
        let mut cap = vec![0.0; n + 1];
        cap[n] = 1.0;
        a.push(cap.clone());
        b.push(LP_CAP);
        let mut neg = vec![0.0; n + 1];
        neg[n] = -1.0;
        a.push(neg);
        b.push(0.0);
        match lp::maximize_free(&cap, &a, &b) {
            LpOutcome::Optimal { value, .. } if value < 0.5 * LP_CAP => value,
            _ => f64::INFINITY,
        }
    }

    /// Difference body `DK = K + (−K)`.
    pub fn difference_body(&self) -> Result<ConvexBody> {
        match &self.kind {
            BodyKind::Polytope => {
                let v = self.vertices.as_ref().unwrap();
                let mut pts = Vec::with_capacity(v.len() * v.len());
                for p in v {
                    for q in v {
                        pts.push(p.iter().zip(q).map(|(a, b)| a - b).collect());
                    }
                }
                Self::from_vertices(&pts)
            }
            BodyKind::Ball { radius, .. } => Self::ball(self.dim, 2.0 * radius),
            BodyKind::BallIntersection { .. } => {
                Err(Error::DegenerateBody("difference body of a ball intersection".into()))
            }
        }
    }

    /// Inscribed-ball center and radius.
    pub fn chebyshev_center(&self) -> (Vec<f64>, f64) {
        match self.ball_centers() {
            Some((cs, r)) => {
                let n = self.dim;
                let c: Vec<f64> = (0..n).map(|i| cs.iter().map(|p| p[i]).sum::<f64>() / cs.len() as f64).collect();
                let slack = cs.iter().map(|p| r - geometry::dist(p, &c)).fold(f64::INFINITY, f64::min);
                (c, slack.max(0.0))
            }
            None => chebyshev_center(&self.halfspaces, self.dim).expect("valid polytope"),
        }
    }
}

fn ball_gauge(c: &[f64], r: f64, x: &[f64]) -> f64 {
    // Smallest t > 0 with |x − t c| = t r.
    let xc = dot(x, c);
    let xx = dot(x, x);
    let k = r * r - dot(c, c);
    if k.abs() <= 1e-14 * r * r {
        return if xc > 0.0 { xx / (2.0 * xc) } else { f64::INFINITY };
    }
    let disc = (xc * xc + k * xx).max(0.0).sqrt();
    // Positive root (disc − xc)/k, rationalized when xc > 0.
    if xc <= 0.0 {
        (disc - xc) / k
    } else {
        xx / (disc + xc)
    }
}

/// Center and radius of the largest inscribed ball, or `None` if infeasible.
fn chebyshev_center(hs: &[Halfspace], n: usize) -> Option<(Vec<f64>, f64)> {
    let mut a: Vec<Vec<f64>> = hs
        .iter()
        .map(|h| {
            let mut row = h.normal.clone();
            row.push(1.0);
            row
        })
        .collect();
    let mut b: Vec<f64> = hs.iter().map(|h| h.offset).collect();
    let mut cap = vec![0.0; n + 1];
    cap[n] = 1.0;
    a.push(cap.clone());
    b.push(LP_CAP);
    match lp::maximize_free(&cap, &a, &b) {
        LpOutcome::Optimal { x, value } => Some((x[..n].to_vec(), value)),
        _ => None,
    }
}

/// Random convex polygon: hull of `points` uniform points on the unit circle,
/// recentred at its vertex average.
pub fn random_polygon(points: usize, seed: u64) -> Result<ConvexBody> {
    let mut rng = stream_rng(seed, 0);
    let pts: Vec<Vec<f64>> = (0..points.max(3))
        .map(|_| {
            let a = rng.random::<f64>() * std::f64::consts::TAU;
            vec![a.cos(), a.sin()]
        })
        .collect();
    let hull = ConvexBody::from_vertices(&pts)?;
    let v = hull.vertices().unwrap();
    let c: Vec<f64> = (0..2).map(|i| -v.iter().map(|p| p[i]).sum::<f64>() / v.len() as f64).collect();
    Ok(hull.translate(&c))
}

/// JSON description of a body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodySpec {
    Simplex {
        dim: usize,
        #[serde(default)]
        variant: SimplexVariant,
    },
    Cube {
        dim: usize,
        #[serde(default = "one")]
        half_width: f64,
    },
    Ball {
        dim: usize,
        #[serde(default = "one")]
        radius: f64,
    },
    Vertices {
        dim: usize,
        vertices: Vec<Vec<f64>>,
    },
    Halfspaces {
        dim: usize,
        halfspaces: Vec<Halfspace>,
    },
    RandomPolygon {
        points: usize,
        seed: u64,
    },
}

fn one() -> f64 {
    1.0
}

impl BodySpec {
    pub fn build(&self) -> Result<ConvexBody> {
        let checked = |dim: usize, body: ConvexBody| {
            if body.dim() == dim {
                Ok(body)
            } else {
                Err(Error::Config(format!("declared dim {dim} but body has dim {}", body.dim())))
            }
        };
        match self {
            BodySpec::Simplex { dim, variant } => ConvexBody::simplex(*dim, *variant),
            BodySpec::Cube { dim, half_width } => ConvexBody::cube(*dim, *half_width),
            BodySpec::Ball { dim, radius } => ConvexBody::ball(*dim, *radius),
            BodySpec::Vertices { dim, vertices } => checked(*dim, ConvexBody::from_vertices(vertices)?),
            BodySpec::Halfspaces { dim, halfspaces } => {
                checked(*dim, ConvexBody::from_halfspaces(halfspaces.clone())?)
            }
            BodySpec::RandomPolygon { points, seed } => random_polygon(*points, *seed),
        }
    }
}
