//! Gauges of the `m`-th order polar projection bodies `Π^{∘,m}K` and
//! `Π^{∘,m}⟨f⟩`, and the volumes of their unit balls.

use crate::convex::{BodyKind, ConvexBody, FacetData};
use crate::error::{Error, Result};
use crate::lcfun::LogConcaveFunction;
use crate::mvector::MVector;
use crate::numerics::Estimate;
use crate::starbody::{star_volume, StarBodyTable};

/// `h_{C_{−θ̄}}(u) = max_i ⟨u, θ_i⟩₋`.
pub fn cone_support(theta: &MVector, u: &[f64]) -> f64 {
    theta
        .blocks()
        .map(|t| -t.iter().zip(u).map(|(a, b)| a * b).sum::<f64>())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone)]
enum Surface {
    Facets(FacetData),
    /// Disk of the given radius: the surface integral of a support function is
    /// a perimeter.
    Disk(f64),
    /// Ball in `R^3` at `m = 1`: the projection is a disk.
    Ball3(f64),
}

/// The gauge `θ̄ ↦ factor · Σ_F area_F · h_{C_{−θ̄}}(n_F)` on `R^{nm}`.
#[derive(Debug, Clone)]
pub struct ProjectionGauge {
    n: usize,
    m: usize,
    factor: f64,
    surface: Surface,
}

/// `vol_{n−1}`-weighted level-set factor `∫_0^{‖f‖_∞} r(t)^{n−1} dt` with
/// `r(t)` the level-set scale, so that `‖·‖_{Π^{∘,m}⟨f⟩} = factor·‖·‖_{Π^{∘,m}K}`.
pub fn level_set_factor(f: &LogConcaveFunction) -> Result<f64> {
    let k = f.dim() as f64 - 1.0;
    Ok(f.amplitude() * f.profile().neg_derivative_moment(k)?)
}

impl ProjectionGauge {
    pub fn for_body(k: &ConvexBody, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let n = k.dim();
        let surface = match (k.kind(), n, m) {
            (BodyKind::Ball { radius, .. }, 2, _) => Surface::Disk(*radius),
            (BodyKind::Ball { radius, .. }, 3, 1) => Surface::Ball3(*radius),
            _ => Surface::Facets(k.facets()?),
        };
        Ok(Self { n, m, factor: 1.0, surface })
    }

    pub fn for_function(f: &LogConcaveFunction, m: usize) -> Result<Self> {
        let mut g = Self::for_body(f.body(), m)?;
        g.factor = level_set_factor(f)?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn gauge(&self, theta: &MVector) -> f64 {
        assert_eq!((theta.n(), theta.m()), (self.n, self.m), "direction has the wrong shape");
        let raw = match &self.surface {
            Surface::Facets(data) => data.facets.iter().map(|f| f.area * cone_support(theta, &f.normal)).sum(),
            Surface::Disk(r) => {
                // ∫_{S^1} h_P = perimeter of P = conv{o, −θ_1, …, −θ_m}.
                let mut pts: Vec<Vec<f64>> = theta.blocks().map(|t| vec![-t[0], -t[1]]).collect();
                pts.push(vec![0.0, 0.0]);
                r * hull_perimeter(&pts)
            }
            Surface::Ball3(r) => std::f64::consts::PI * r * r * theta.norm(),
        };
        self.factor * raw
    }

    /// Volume of the unit ball of the gauge, by polar coordinates over `count`
    /// directions.
    pub fn volume(&self, count: usize, seed: u64) -> Result<Estimate> {
        let table = StarBodyTable::build(self.n, self.m, count, seed, "polar projection", None, |theta| {
            let g = self.gauge(theta);
            if g > 0.0 {
                Ok((1.0 / g, 0.0))
            } else {
                Err(Error::UnboundedBody("projection gauge vanishes in some direction".into()))
            }
        })?;
        star_volume(&table)
    }
}

fn hull_perimeter(pts: &[Vec<f64>]) -> f64 {
    let hull = crate::convex::convex_hull_2d(pts);
    match hull.len() {
        0 | 1 => 0.0,
        2 => 2.0 * (hull[0][0] - hull[1][0]).hypot(hull[0][1] - hull[1][1]),
        k => (0..k).map(|i| (hull[i][0] - hull[(i + 1) % k][0]).hypot(hull[i][1] - hull[(i + 1) % k][1])).sum(),
    }
}

/// `‖θ̄‖_{Π^{∘,m}K}`.
pub fn ppb_gauge_body(k: &ConvexBody, theta: &MVector) -> Result<f64> {
    Ok(ProjectionGauge::for_body(k, theta.m())?.gauge(theta))
}

/// `‖θ̄‖_{Π^{∘,m}⟨f⟩} = ∫_0^{‖f‖_∞} ‖θ̄‖_{Π^{∘,m}{f ≥ t}} dt`.
pub fn ppb_gauge_fn(f: &LogConcaveFunction, theta: &MVector) -> Result<f64> {
    Ok(ProjectionGauge::for_function(f, theta.m())?.gauge(theta))
}

/// `vol_{nm}(Π^{∘,m}K)`.
pub fn ppb_volume_body(k: &ConvexBody, m: usize, count: usize, seed: u64) -> Result<Estimate> {
    ProjectionGauge::for_body(k, m)?.volume(count, seed)
}

/// `vol_{nm}(Π^{∘,m}⟨f⟩)`.
pub fn ppb_volume_fn(f: &LogConcaveFunction, m: usize, count: usize, seed: u64) -> Result<Estimate> {
    ProjectionGauge::for_function(f, m)?.volume(count, seed)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::convex::{random_polygon, SimplexVariant};
    use crate::lcfun::Profile;

    fn mv(n: usize, v: &[f64]) -> MVector {
        MVector::new(n, v.to_vec()).unwrap()
    }

    fn unit() -> ConvexBody {
        ConvexBody::simplex(1, SimplexVariant::Corner).unwrap()
    }

    #[test]
    fn cone_support_examples() {
        let e1 = mv(2, &[1.0, 0.0]);
        assert_eq!(cone_support(&e1, &[-1.0, 0.0]), 1.0);
        assert_eq!(cone_support(&e1, &[1.0, 0.0]), 0.0);
        assert_eq!(cone_support(&mv(2, &[1.0, 0.0, -1.0, 0.0]), &[1.0, 0.0]), 1.0);
        assert_eq!(cone_support(&mv(2, &[0.6, 0.8, 1.0, 0.0]), &[-1.0, 0.0]), 1.0);
    }

    #[test]
    fn body_gauges() {
        let cube = ConvexBody::cube(2, 1.0).unwrap();
        assert!((ppb_gauge_body(&cube, &mv(2, &[1.0, 0.0])).unwrap() - 2.0).abs() < 1e-14);
        for (a, b) in [(0.3, -0.7), (-1.0, -2.0), (0.5, 0.25)] {
            let g = ppb_gauge_body(&unit(), &mv(1, &[a, b])).unwrap();
            let oracle = f64::max(f64::max(a, b), 0.0) + f64::max(f64::max(-a, -b), 0.0);
            assert!((g - oracle).abs() < 1e-15);
        }
        let disk = ConvexBody::ball(2, 1.0).unwrap();
        for k in 0..8 {
            let a = 0.7 * k as f64;
            assert!((ppb_gauge_body(&disk, &mv(2, &[a.cos(), a.sin()])).unwrap() - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn disk_closed_form_matches_facet_surrogate() {
        let disk = ConvexBody::ball(2, 1.3).unwrap();
        let surrogate = ProjectionGauge { n: 2, m: 2, factor: 1.0, surface: Surface::Facets(disk.facets().unwrap()) };
        let exact = ProjectionGauge::for_body(&disk, 2).unwrap();
        let th = mv(2, &[0.3, -0.5, 0.6, 0.55]);
        assert!((surrogate.gauge(&th) - exact.gauge(&th)).abs() < 1e-6);
    }

    #[test]
    fn function_gauges() {
        let exp = LogConcaveFunction::centered(Profile::Exponential, unit()).unwrap();
        for s in [1.0, -1.0] {
            assert!((ppb_gauge_fn(&exp, &mv(1, &[s])).unwrap() - 1.0).abs() < 1e-15);
        }
        let cube = ConvexBody::cube(2, 1.0).unwrap();
        let f = LogConcaveFunction::centered(Profile::Exponential, cube.clone()).unwrap();
        assert!((ppb_gauge_fn(&f, &mv(2, &[1.0, 0.0])).unwrap() - 2.0).abs() < 1e-14);
        let chi = LogConcaveFunction::centered(Profile::Indicator, cube).unwrap();
        assert!((ppb_gauge_fn(&chi, &mv(2, &[1.0, 0.0])).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn volumes() {
        let exp = LogConcaveFunction::centered(Profile::Exponential, unit()).unwrap();
        assert!((ppb_volume_fn(&exp, 1, 2, 0).unwrap().value - 2.0).abs() < 1e-15);
        let v = ppb_volume_body(&unit(), 2, 4096, 0).unwrap();
        assert!((v.value - 3.0).abs() < 1e-5, "{v:?}");
        let disk = ppb_volume_body(&ConvexBody::ball(2, 1.0).unwrap(), 1, 256, 0).unwrap();
        assert!((disk.value - std::f64::consts::PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn halving_identity_for_polygons() {
        for seed in 0..10 {
            let k = random_polygon(7, seed).unwrap();
            let data = k.facets().unwrap();
            let a = 0.37 * seed as f64;
            let th = [a.cos(), a.sin()];
            let abs: f64 = data.facets.iter().map(|f| f.area * (f.normal[0] * th[0] + f.normal[1] * th[1]).abs()).sum();
            let g = ppb_gauge_body(&k, &mv(2, &th)).unwrap();
            assert!((g - 0.5 * abs).abs() < 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn positive_and_homogeneous(seed in 0u64..1000, v in prop::array::uniform4(-2.0f64..2.0), t in 0.01f64..20.0) {
            let k = random_polygon(6, seed).unwrap();
            let th = mv(2, &v);
            prop_assume!(th.norm() > 1e-3);
            let g = ppb_gauge_body(&k, &th).unwrap();
            let gt = ppb_gauge_body(&k, &th.scaled(t)).unwrap();
            prop_assert!(g > 0.0);
            prop_assert!((gt - t * g).abs() <= 1e-12 * (1.0 + t * g));
        }
    }
}
