//! Log-concave functions of the form `f(x) = A·φ(‖x − x′‖_K)`.

use serde::{Deserialize, Serialize};

use crate::convex::{BodySpec, ConvexBody};
use crate::error::{Error, Result};
use crate::numerics::{special, Estimate, TailBound};

/// One-variable profile `φ` on `[0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    /// `e^{-t}`
    Exponential,
    /// `e^{-t²/2}`
    Gaussian,
    /// `(1 − t)_+^{1/s}`, `s > 0`
    Power { s: f64 },
    /// `χ_{[0,1]}(t)`
    Indicator,
    /// `e^{-(n/|p|)(t^{|p|} − 1)}` for `p ≠ 0` and `t^{-n}` for `p = 0`.
    PFamily { p: f64, n: usize },
}

impl Profile {
    pub fn power(s: f64) -> Result<Self> {
        if s > 0.0 {
            Ok(Profile::Power { s })
        } else {
            Err(Error::Domain(format!("power profile needs s > 0, got {s}")))
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        if t == f64::INFINITY {
            return 0.0;
        }
        match *self {
            Profile::Exponential => (-t).exp(),
            Profile::Gaussian => (-0.5 * t * t).exp(),
            Profile::Power { s } => {
                if t < 1.0 {
                    (1.0 - t).powf(1.0 / s)
                } else {
                    0.0
                }
            }
            Profile::Indicator => {
                if t <= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Profile::PFamily { p, n } => {
                let n = n as f64;
                if p == 0.0 {
                    t.powf(-n)
                } else {
                    let q = p.abs();
                    (-(n / q) * (t.powf(q) - 1.0)).exp()
                }
            }
        }
    }

    /// `φ(t) − φ(0)` without cancellation for small `t`.
    pub fn value_minus_at_zero(&self, t: f64) -> f64 {
        match *self {
            Profile::Exponential => (-t).exp_m1(),
            Profile::Gaussian => (-0.5 * t * t).exp_m1(),
            Profile::Power { s } if t < 1.0 => ((-t).ln_1p() / s).exp_m1(),
            Profile::PFamily { p, n } if p != 0.0 => {
                let q = p.abs();
                let n = n as f64;
                let phi0 = (n / q).exp();
                phi0 * (-(n / q) * t.powf(q)).exp_m1()
            }
            _ => self.value(t) - self.at_zero(),
        }
    }

    /// `φ(0⁺)`, the maximum of the profile.
    pub fn at_zero(&self) -> f64 {
        match *self {
            Profile::PFamily { p, n } => {
                if p == 0.0 {
                    f64::INFINITY
                } else {
                    (n as f64 / p.abs()).exp()
                }
            }
            _ => 1.0,
        }
    }

    /// Absolutely continuous part of `−φ′(t)`.
    pub fn neg_derivative(&self, t: f64) -> f64 {
        match *self {
            Profile::Exponential => (-t).exp(),
            Profile::Gaussian => t * (-0.5 * t * t).exp(),
            Profile::Power { s } => {
                if t < 1.0 {
                    (1.0 - t).powf(1.0 / s - 1.0) / s
                } else {
                    0.0
                }
            }
            Profile::Indicator => 0.0,
            Profile::PFamily { p, n } => {
                let n = n as f64;
                if p == 0.0 {
                    n * t.powf(-n - 1.0)
                } else {
                    n * t.powf(p.abs() - 1.0) * self.value(t)
                }
            }
        }
    }

    /// Downward jumps `(location, size)`.
    pub fn atoms(&self) -> Vec<(f64, f64)> {
        match self {
            Profile::Indicator => vec![(1.0, 1.0)],
            _ => Vec::new(),
        }
    }

    /// Right derivative of `−φ` at zero.
    pub fn slope_at_zero(&self) -> f64 {
        match *self {
            Profile::Exponential => 1.0,
            Profile::Gaussian | Profile::Indicator => 0.0,
            Profile::Power { s } => 1.0 / s,
            Profile::PFamily { p, n } => {
                let q = p.abs();
                if p == 0.0 || q < 1.0 {
                    f64::INFINITY
                } else if q == 1.0 {
                    n as f64 * self.at_zero()
                } else {
                    0.0
                }
            }
        }
    }

    /// Radius beyond which `φ` vanishes (`∞` if never).
    pub fn support_radius(&self) -> f64 {
        match self {
            Profile::Power { .. } | Profile::Indicator => 1.0,
            _ => f64::INFINITY,
        }
    }

    /// Singularity of `−φ′` at the right end of its support, as
    /// `(location, exponent)` with `−φ′(t) ~ (location − t)^exponent`.
    pub fn right_singularity(&self) -> Option<(f64, f64)> {
        match *self {
            Profile::Power { s } if s > 1.0 => Some((1.0, 1.0 / s - 1.0)),
            _ => None,
        }
    }

    /// `−φ′(a − u)` for the right singularity at `a`, computed from `u`
    /// so that small `u` keeps full precision.
    pub fn neg_derivative_before_end(&self, u: f64) -> f64 {
        match (*self, self.right_singularity()) {
            (Profile::Power { s }, _) if u > 0.0 && u <= 1.0 => u.powf(1.0 / s - 1.0) / s,
            (_, Some((a, _))) => self.neg_derivative(a - u),
            _ => 0.0,
        }
    }

    /// Exponent `e` with `−φ′(t) ~ t^e` near zero when `e < 0`.
    pub fn left_singularity(&self) -> Option<f64> {
        match *self {
            Profile::PFamily { p, .. } if p != 0.0 && p.abs() < 1.0 => Some(p.abs() - 1.0),
            _ => None,
        }
    }

    /// Bound `φ(t) ≤ scale·exp(−rate·t^power)` for profiles with unbounded support.
    pub fn tail_bound(&self) -> Option<TailBound> {
        match *self {
            Profile::Exponential => Some(TailBound { scale: 1.0, rate: 1.0, power: 1.0 }),
            Profile::Gaussian => Some(TailBound { scale: 1.0, rate: 0.5, power: 2.0 }),
            Profile::PFamily { p, n } if p != 0.0 => {
                let q = p.abs();
                let c = n as f64 / q;
                Some(TailBound { scale: c.exp(), rate: c, power: q })
            }
            _ => None,
        }
    }

    /// `sup{r ≥ 0 : φ(r) ≥ t}`; negative when `t > φ(0)`.
    pub fn level_radius(&self, t: f64) -> f64 {
        if t > self.at_zero() {
            return -1.0;
        }
        if t <= 0.0 {
            return self.support_radius();
        }
        match *self {
            Profile::Exponential => -t.ln(),
            Profile::Gaussian => (-2.0 * t.ln()).sqrt(),
            Profile::Power { s } => 1.0 - t.powf(s),
            Profile::Indicator => 1.0,
            Profile::PFamily { p, n } => {
                let n = n as f64;
                if p == 0.0 {
                    t.powf(-1.0 / n)
                } else {
                    let q = p.abs();
                    (1.0 - (q / n) * t.ln()).powf(1.0 / q)
                }
            }
        }
    }

    /// `∫_0^∞ φ(t)^q t^k dt`.
    pub fn moment_pow(&self, k: f64, q: f64) -> Result<f64> {
        if !(k > -1.0) || !(q > 0.0) {
            return Err(Error::NonIntegrable(format!("moment k = {k}, power q = {q}")));
        }
        let g = special::gamma;
        Ok(match *self {
            Profile::Exponential => g(k + 1.0) / q.powf(k + 1.0),
            Profile::Gaussian => 2f64.powf((k - 1.0) / 2.0) * g((k + 1.0) / 2.0) / q.powf((k + 1.0) / 2.0),
            Profile::Power { s } => special::beta(k + 1.0, q / s + 1.0),
            Profile::Indicator => 1.0 / (k + 1.0),
            Profile::PFamily { p, n } => {
                if p == 0.0 {
                    return Err(Error::NonIntegrable("the p = 0 profile t^{-n} has no finite moments".into()));
                }
                let e = p.abs();
                let c = q * n as f64 / e;
                c.exp() / e * (1.0 / c).powf((k + 1.0) / e) * g((k + 1.0) / e)
            }
        })
    }

    /// `M_k = ∫_0^∞ φ(t) t^k dt`.
    pub fn moment(&self, k: f64) -> Result<f64> {
        self.moment_pow(k, 1.0)
    }

    /// `∫_0^∞ (−φ′(t)) t^k dt`, including jumps; equals `k·M_{k−1}` for `k > 0`.
    pub fn neg_derivative_moment(&self, k: f64) -> Result<f64> {
        if k == 0.0 {
            return Ok(self.at_zero());
        }
        Ok(k * self.moment(k - 1.0)?)
    }

    /// Gauge radius `t` past which `φ(t)·(1+t)^{k+1}` stays below `eps·φ(0)`.
    pub fn cutoff(&self, eps: f64, k: usize) -> f64 {
        let r = self.support_radius();
        if r.is_finite() {
            return r;
        }
        let phi0 = self.at_zero();
        let mut t = 1.0;
        while self.value(t) * (1.0 + t).powi(k as i32 + 1) > eps * phi0 && t < 1e6 {
            t *= 1.25;
        }
        t
    }

    pub fn name(&self) -> String {
        match self {
            Profile::Exponential => "exponential".into(),
            Profile::Gaussian => "gaussian".into(),
            Profile::Power { s } => format!("power(s={s})"),
            Profile::Indicator => "indicator".into(),
            Profile::PFamily { p, n } => format!("pfamily(p={p}, n={n})"),
        }
    }
}

/// Support of a profile function relative to its shift.
#[derive(Debug, Clone, PartialEq)]
pub enum Support {
    /// `x′ + R·K` with `R` the profile's support radius.
    Compact(ConvexBody),
    /// `x′ + cone(K)`, the whole space when the origin is interior to `K`.
    Cone,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogConcaveFunction {
    profile: Profile,
    body: ConvexBody,
    shift: Vec<f64>,
    amplitude: f64,
}

impl LogConcaveFunction {
    pub fn new(profile: Profile, body: ConvexBody, shift: Vec<f64>, amplitude: f64) -> Result<Self> {
        if shift.len() != body.dim() {
            return Err(Error::InvalidDimension(shift.len()));
        }
        if !(amplitude > 0.0 && amplitude.is_finite()) {
            return Err(Error::Domain(format!("amplitude {amplitude} must be positive")));
        }
        if let Profile::PFamily { n, .. } = profile {
            if n != body.dim() {
                return Err(Error::Domain(format!("pfamily built for n = {n} on a body of dim {}", body.dim())));
            }
        }
        body.gauge(&vec![0.0; body.dim()])?;
        Ok(Self { profile, body, shift, amplitude })
    }

    /// `A·φ(‖x‖_K)` with no shift.
    pub fn centered(profile: Profile, body: ConvexBody) -> Result<Self> {
        let n = body.dim();
        Self::new(profile, body, vec![0.0; n], 1.0)
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    pub fn shift(&self) -> &[f64] {
        &self.shift
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    /// `‖f‖_∞ = A·φ(0)`.
    pub fn sup_norm(&self) -> f64 {
        self.amplitude * self.profile.at_zero()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let y: Vec<f64> = x.iter().zip(&self.shift).map(|(a, b)| a - b).collect();
        let g = self.body.gauge(&y).expect("origin checked at construction");
        self.amplitude * self.profile.value(g)
    }

    /// `f(−·)`.
    pub fn reflect(&self) -> Self {
        Self {
            profile: self.profile,
            body: self.body.reflect(),
            shift: self.shift.iter().map(|v| -v).collect(),
            amplitude: self.amplitude,
        }
    }

    pub fn translate(&self, v: &[f64]) -> Self {
        let mut g = self.clone();
        g.shift.iter_mut().zip(v).for_each(|(a, b)| *a += b);
        g
    }

    /// `‖f‖_1 = A·vol(K)·n·M_{n−1}`.
    pub fn mass(&self) -> Result<Estimate> {
        self.lp_norm(1.0)
    }

    /// `‖f‖_q = (∫ f^q)^{1/q}`.
    pub fn lp_norm(&self, q: f64) -> Result<Estimate> {
        if !(q > 0.0) {
            return Err(Error::Domain(format!("norm exponent {q} must be positive")));
        }
        let n = self.dim() as f64;
        let m = self.profile.moment_pow(n - 1.0, q)?;
        let integral = self.body.volume().scale(self.amplitude.powf(q) * n * m);
        Ok(if q == 1.0 { integral } else { integral.powf(1.0 / q) })
    }

    /// Superlevel set `{f ≥ t}`, or `None` above the maximum.
    pub fn level_set(&self, t: f64) -> Option<ConvexBody> {
        if !(t > 0.0) || t > self.sup_norm() {
            return None;
        }
        let s = self.profile.level_radius(t / self.amplitude);
        if !(s > 0.0) || !s.is_finite() {
            return None;
        }
        Some(self.body.scale(s).ok()?.translate(&self.shift))
    }

    pub fn support(&self) -> Support {
        let r = self.profile.support_radius();
        if r.is_finite() {
            Support::Compact(self.body.scale(r).expect("positive radius").translate(&self.shift))
        } else {
            Support::Cone
        }
    }

    /// Box outside which `f` (weighted by the volume growth) is negligible at
    /// relative level `eps`.
    pub fn truncation_box(&self, eps: f64) -> (Vec<f64>, Vec<f64>) {
        let t = self.profile.cutoff(eps, self.dim());
        let (lo, hi) = self.body.bounding_box();
        (
            lo.iter().zip(&self.shift).map(|(a, c)| c + t * a).collect(),
            hi.iter().zip(&self.shift).map(|(a, c)| c + t * a).collect(),
        )
    }

    /// Constants `(a, b, power)` with `f(x) ≤ a·exp(−b·|x|^power)`; `power = 1`
    /// for every genuinely log-concave profile.
    pub fn coercivity(&self) -> TailBound {
        let radius = self.body.circumradius();
        let shift = self.shift.iter().map(|v| v * v).sum::<f64>().sqrt();
        match self.profile.tail_bound() {
            None => {
                // Compact support of Euclidean radius ≤ shift + radius.
                let reach = shift + radius * self.profile.support_radius();
                TailBound { scale: self.sup_norm() * reach.exp(), rate: 1.0, power: 1.0 }
            }
            Some(tb) => {
                if tb.power >= 1.0 {
                    // t^q ≥ t − 1 for q ≥ 1 and t ≥ 0; gauge ≥ |x − x′|/radius.
                    let b = tb.rate / radius;
                    let extra = if tb.power > 1.0 { tb.rate } else { 0.0 };
                    TailBound {
                        scale: self.amplitude * tb.scale * (extra + b * shift).exp(),
                        rate: b,
                        power: 1.0,
                    }
                } else {
                    let b = tb.rate / radius.powf(tb.power);
                    TailBound {
                        scale: self.amplitude * tb.scale * (b * shift.powf(tb.power)).exp(),
                        rate: b,
                        power: tb.power,
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    Exponential,
    Gaussian,
    Power,
    Indicator,
    Pfamily,
}

/// JSON description of a function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    pub profile: ProfileKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_or_p: Option<f64>,
    pub body: BodySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<f64>>,
    #[serde(default = "unit")]
    pub amplitude: f64,
}

fn unit() -> f64 {
    1.0
}

impl FunctionSpec {
    pub fn build(&self) -> Result<LogConcaveFunction> {
        let body = self.body.build()?;
        let n = body.dim();
        let need = |what: &str| {
            self.s_or_p.ok_or_else(|| Error::Config(format!("profile {what} needs s_or_p")))
        };
        let profile = match self.profile {
            ProfileKind::Exponential => Profile::Exponential,
            ProfileKind::Gaussian => Profile::Gaussian,
            ProfileKind::Indicator => Profile::Indicator,
            ProfileKind::Power => Profile::power(need("power")?)?,
            ProfileKind::Pfamily => Profile::PFamily { p: need("pfamily")?, n },
        };
        let shift = self.shift.clone().unwrap_or_else(|| vec![0.0; n]);
        LogConcaveFunction::new(profile, body, shift, self.amplitude)
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::convex::SimplexVariant;
    use crate::numerics::{integrate_1d, Limit, QuadratureConfig, Tail};

    fn unit_interval() -> ConvexBody {
        ConvexBody::simplex(1, SimplexVariant::Corner).unwrap()
    }

    fn exp_simplex_1d() -> LogConcaveFunction {
        LogConcaveFunction::centered(Profile::Exponential, unit_interval()).unwrap()
    }

    #[test]
    fn evaluation() {
        let f = exp_simplex_1d();
        assert_eq!(f.eval(&[1.0]), (-1.0f64).exp());
        assert_eq!(f.eval(&[-0.5]), 0.0);
        let g = LogConcaveFunction::centered(Profile::Gaussian, ConvexBody::cube(1, 1.0).unwrap()).unwrap();
        assert!((g.eval(&[2.0]) - (-2.0f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn masses() {
        let f = exp_simplex_1d();
        assert!((f.mass().unwrap().value - 1.0).abs() < 1e-14);
        let chi = LogConcaveFunction::centered(Profile::Indicator, ConvexBody::cube(2, 1.0).unwrap()).unwrap();
        assert!((chi.mass().unwrap().value - 4.0).abs() < 1e-14);
        let p0 = LogConcaveFunction::centered(Profile::PFamily { p: 0.0, n: 1 }, ConvexBody::cube(1, 1.0).unwrap())
            .unwrap();
        assert!(matches!(p0.mass(), Err(Error::NonIntegrable(_))));
    }

    #[test]
    fn level_sets() {
        let f = exp_simplex_1d();
        let l = f.level_set((-1.0f64).exp()).unwrap();
        assert!((l.vertices().unwrap()[1][0] - 1.0).abs() < 1e-15);
        assert!(f.level_set(1.5).is_none());
        let g = LogConcaveFunction::centered(Profile::Gaussian, ConvexBody::ball(2, 1.0).unwrap()).unwrap();
        match g.level_set((-2.0f64).exp()).unwrap().kind() {
            crate::convex::BodyKind::Ball { radius, .. } => assert!((radius - 2.0).abs() < 1e-15),
            k => panic!("{k:?}"),
        }
        let k = ConvexBody::cube(2, 1.0).unwrap();
        let chi = LogConcaveFunction::centered(Profile::Indicator, k.clone()).unwrap();
        assert_eq!(chi.level_set(0.5).unwrap(), k);
    }

    #[test]
    fn lp_norms() {
        let chi = LogConcaveFunction::centered(Profile::Indicator, unit_interval()).unwrap();
        assert!((chi.lp_norm(0.5).unwrap().value - 1.0).abs() < 1e-14);
        // (∫_0^∞ e^{-x/2} dx)^2 = 4
        assert!((exp_simplex_1d().lp_norm(0.5).unwrap().value - 4.0).abs() < 1e-12);
        let f = exp_simplex_1d();
        assert_eq!(f.lp_norm(1.0).unwrap(), f.mass().unwrap());
    }

    #[test]
    fn moments_match_quadrature() {
        let cfg = QuadratureConfig::default().with_tolerances(1e-12, 1e-14);
        let profiles = [
            Profile::Exponential,
            Profile::Gaussian,
            Profile::Power { s: 0.5 },
            Profile::Power { s: 2.0 },
            Profile::Indicator,
            Profile::PFamily { p: 1.5, n: 2 },
            Profile::PFamily { p: -2.0, n: 1 },
        ];
        for prof in profiles {
            for k in [0.0, 1.0, 2.5] {
                let lim = if prof.support_radius().is_finite() {
                    Limit::Finite(1.0)
                } else {
                    Limit::Infinite(Tail::Doubling { first_width: 2.0 })
                };
                let num = integrate_1d(|t| prof.value(t) * t.powf(k), 0.0, lim, &cfg).unwrap();
                let exact = prof.moment(k).unwrap();
                assert!((num.value - exact).abs() < 1e-9 * exact, "{} k={k}: {} vs {exact}", prof.name(), num.value);
                if k > 0.0 && prof.right_singularity().is_none() && prof.atoms().is_empty() {
                    let dm = prof.neg_derivative_moment(k).unwrap();
                    let num = integrate_1d(|t| prof.neg_derivative(t) * t.powf(k), 0.0, lim, &cfg).unwrap();
                    assert!((num.value - dm).abs() < 1e-8 * dm, "{} k={k}", prof.name());
                }
            }
        }
    }

    #[test]
    fn classical_formula_on_triangle() {
        let k = ConvexBody::simplex(2, SimplexVariant::Centered).unwrap();
        let f = LogConcaveFunction::centered(Profile::Exponential, k.clone()).unwrap();
        let lhs = f.mass().unwrap().value / 2.0;
        assert!((lhs - k.volume().value).abs() < 1e-12);
    }

    #[test]
    fn derivative_before_end_matches_direct_form() {
        let prof = Profile::Power { s: 1.8 };
        for u in [0.5, 0.1, 1e-3] {
            let direct = prof.neg_derivative(1.0 - u);
            assert!((prof.neg_derivative_before_end(u) / direct - 1.0).abs() < 1e-12);
        }
        let tiny = 1e-12;
        assert!((prof.neg_derivative_before_end(tiny) - tiny.powf(1.0 / 1.8 - 1.0) / 1.8).abs() == 0.0);
    }

    #[test]
    fn spec_round_trip() {
        let spec: FunctionSpec = serde_json::from_str(
            r#"{"profile":"power","s_or_p":0.5,"body":{"kind":"cube","dim":1},"shift":[0.25],"amplitude":2}"#,
        )
        .unwrap();
        let f = spec.build().unwrap();
        assert_eq!(f.eval(&[0.25]), 2.0);
        assert!(serde_json::from_str::<FunctionSpec>(r#"{"profile":"power","body":{"kind":"cube","dim":1},"x":1}"#)
            .is_err());
        let missing: FunctionSpec =
            serde_json::from_str(r#"{"profile":"power","body":{"kind":"cube","dim":1}}"#).unwrap();
        assert!(matches!(missing.build(), Err(Error::Config(_))));
    }

    fn lc_functions() -> Vec<LogConcaveFunction> {
        let tri = ConvexBody::simplex(2, SimplexVariant::Centered).unwrap();
        let disk = ConvexBody::ball_at(vec![0.2, -0.1], 1.0).unwrap();
        vec![
            LogConcaveFunction::new(Profile::Exponential, tri.clone(), vec![0.3, 0.1], 2.0).unwrap(),
            LogConcaveFunction::new(Profile::Gaussian, disk.clone(), vec![0.0, 0.0], 1.0).unwrap(),
            LogConcaveFunction::new(Profile::Power { s: 0.5 }, tri, vec![-0.2, 0.0], 1.0).unwrap(),
            LogConcaveFunction::new(Profile::PFamily { p: 2.0, n: 2 }, disk, vec![0.0, 0.5], 0.5).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(250))]

        #[test]
        fn eval_is_log_concave(
            which in 0usize..4,
            x in prop::array::uniform2(-3.0f64..3.0),
            y in prop::array::uniform2(-3.0f64..3.0),
            lam in 0.0f64..1.0,
        ) {
            let f = &lc_functions()[which];
            let z = [(1.0 - lam) * x[0] + lam * y[0], (1.0 - lam) * x[1] + lam * y[1]];
            let lhs = f.eval(&z);
            let rhs = f.eval(&x).powf(1.0 - lam) * f.eval(&y).powf(lam);
            prop_assert!(lhs >= rhs - 1e-12);
        }

        #[test]
        fn level_sets_nest(which in 0usize..4, a in 0.01f64..1.0, b in 0.01f64..1.0, dir in 0.0f64..6.3) {
            let f = &lc_functions()[which];
            let (hi, lo) = (a.max(b) * f.sup_norm(), a.min(b) * f.sup_norm());
            let (small, big) = (f.level_set(hi), f.level_set(lo));
            if let (Some(s), Some(g)) = (small, big) {
                let u = [dir.cos(), dir.sin()];
                prop_assert!(s.support(&u) <= g.support(&u) + 1e-12);
            }
        }

        #[test]
        fn coercivity_bound_holds(which in 0usize..4, x in prop::array::uniform2(-20.0f64..20.0)) {
            let f = &lc_functions()[which];
            let tb = f.coercivity();
            let r = (x[0] * x[0] + x[1] * x[1]).sqrt();
            prop_assert!(f.eval(&x) <= tb.scale * (-tb.rate * r.powf(tb.power)).exp() * (1.0 + 1e-12));
        }
    }
}
