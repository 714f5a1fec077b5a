use serde::{Deserialize, Serialize};

use super::Estimate;
use crate::error::{Error, Result};

/// Behaviour of the integrand at the left endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Endpoint {
    Regular,
    /// Integrand behaves like `(t - a)^exponent` near `a`, with `exponent ∈ (-1, 0]`.
    PowerSingularity(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub endpoint: Endpoint,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-8, abs_tol: 1e-12, max_subdivisions: 2000, endpoint: Endpoint::Regular }
    }
}

impl QuadratureConfig {
    pub fn with_endpoint(mut self, endpoint: Endpoint) -> Self {
        self.endpoint = endpoint;
        self
    }

    pub fn with_tolerances(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::Domain("quadrature tolerances must be positive".into()));
        }
        if let Endpoint::PowerSingularity(e) = self.endpoint {
            if !(e > -1.0 && e <= 0.0) {
                return Err(Error::Domain(format!("singularity exponent {e} outside (-1, 0]")));
            }
        }
        Ok(())
    }
}

/// Coercivity bound `|φ(t)| ≤ scale · exp(-rate · t^power)` used to truncate
/// infinite integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailBound {
    pub scale: f64,
    pub rate: f64,
    pub power: f64,
}

impl TailBound {
    pub fn exponential(scale: f64, rate: f64) -> Self {
        Self { scale, rate, power: 1.0 }
    }

    /// First point past which the bound drops below `threshold`.
    pub fn truncation_point(&self, threshold: f64) -> f64 {
        if self.scale <= threshold {
            return 0.0;
        }
        ((self.scale / threshold).ln() / self.rate).powf(1.0 / self.power)
    }
}

/// How an infinite upper limit is handled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Tail {
    /// Truncate where the bound falls below `abs_tol / 10`.
    Bound(TailBound),
    /// Integrate blocks of doubling width until two consecutive blocks are
    /// negligible. For decaying integrands without a closed-form bound.
    Doubling { first_width: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Limit {
    Finite(f64),
    Infinite(Tail),
}

// Gauss–Kronrod 7/15 nodes and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..3 {
        let k = 2 * j + 1;
        let dx = half * XGK[k];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[k] = f1;
        fv2[k] = f2;
        resg += WG[j] * (f1 + f2);
        resk += WGK[k] * (f1 + f2);
        resabs += WGK[k] * (f1.abs() + f2.abs());
    }
    for j in 0..4 {
        let k = 2 * j;
        let dx = half * XGK[k];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[k] = f1;
        fv2[k] = f2;
        resk += WGK[k] * (f1 + f2);
        resabs += WGK[k] * (f1.abs() + f2.abs());
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for k in 0..7 {
        resasc += WGK[k] * ((fv1[k] - reskh).abs() + (fv2[k] - reskh).abs());
    }
    let width = half.abs();
    let value = resk * half;
    resabs *= width;
    resasc *= width;
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    if !value.is_finite() {
        error = f64::INFINITY;
    }
    Panel { a, b, value, error }
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate::exact(0.0));
    }
    let mut panels = vec![gk15(f, a, b)];
    let mut evaluations = 15;
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let target = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if error <= target && total.is_finite() {
            return Ok(Estimate::new(total, error, evaluations));
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, p)| if p.error > acc.1 { (i, p.error) } else { acc });
        let p = &panels[worst];
        let mid = 0.5 * (p.a + p.b);
        let too_narrow = mid <= p.a.min(p.b) || mid >= p.a.max(p.b);
        if panels.len() >= cfg.max_subdivisions || too_narrow || !error.is_finite() || !total.is_finite() {
            let best = Estimate::new(
                total,
                if error.is_finite() { error } else { f64::MAX },
                evaluations,
            );
            let reason = if too_narrow {
                "interval too narrow to subdivide".to_string()
            } else if !error.is_finite() || !total.is_finite() {
                "non-finite integrand".to_string()
            } else {
                format!("{} subdivisions exhausted", cfg.max_subdivisions)
            };
            return Err(Error::QuadratureFailure { best, reason });
        }
        let (pa, pb) = (p.a, p.b);
        panels[worst] = gk15(f, pa, mid);
        panels.push(gk15(f, mid, pb));
        evaluations += 30;
    }
}

fn finite_with_endpoint<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    match cfg.endpoint {
        Endpoint::PowerSingularity(e) if e < 0.0 && b > a => {
            // t = a + u^{1/(1+e)} absorbs the (t - a)^e factor.
            let k = 1.0 / (1.0 + e);
            let g = |u: f64| {
                if u <= 0.0 {
                    return 0.0;
                }
                let t = a + u.powf(k);
                f(t) * k * u.powf(k - 1.0)
            };
            adaptive(&g, 0.0, (b - a).powf(1.0 + e), cfg)
        }
        _ => adaptive(f, a, b, cfg),
    }
}

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]`, where `b` may be
/// infinite.
pub fn integrate_1d<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: Limit,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    cfg.validate()?;
    match b {
        Limit::Finite(b) => finite_with_endpoint(&f, a, b, cfg),
        Limit::Infinite(Tail::Bound(bound)) => {
            let t = bound.truncation_point(cfg.abs_tol / 10.0).max(a);
            finite_with_endpoint(&f, a, t, cfg)
        }
        Limit::Infinite(Tail::Doubling { first_width }) => {
            let mut lo = a;
            let mut width = first_width.max(f64::EPSILON);
            let mut total = finite_with_endpoint(&f, lo, lo + width, cfg)?;
            let block_cfg = QuadratureConfig { endpoint: Endpoint::Regular, ..*cfg };
            lo += width;
            let mut quiet = 0;
            for _ in 0..80 {
                width *= 2.0;
                let block = adaptive(&f, lo, lo + width, &block_cfg)?;
                lo += width;
                total = Estimate::new(
                    total.value + block.value,
                    total.std_error + block.std_error,
                    total.samples + block.samples,
                );
                let target = cfg.abs_tol.max(cfg.rel_tol * total.value.abs());
                if block.value.abs() <= 0.1 * target {
                    quiet += 1;
                    if quiet >= 2 {
                        return Ok(total);
                    }
                } else {
                    quiet = 0;
                }
            }
            Err(Error::QuadratureFailure { best: total, reason: "tail did not decay".into() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn linear_on_unit_interval() {
        let r = integrate_1d(|t| t, 0.0, Limit::Finite(1.0), &cfg()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-14);
    }

    #[test]
    fn exponential_tail_by_bound() {
        let tail = Tail::Bound(TailBound::exponential(1.0, 1.0));
        let r = integrate_1d(|t| (-t).exp(), 0.0, Limit::Infinite(tail), &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn exponential_tail_by_doubling() {
        let tail = Tail::Doubling { first_width: 1.0 };
        let r = integrate_1d(|t| (-t).exp(), 0.0, Limit::Infinite(tail), &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn inverse_sqrt_singularity_matches_fixed_grid_oracle() {
        // Oracle: u = sqrt(t) turns ∫ e^{-t} t^{-1/2} dt into 2∫ e^{-u²} du,
        // evaluated by a composite Simpson rule on a fine grid.
        let n = 200_000;
        let upper = 12.0;
        let h = upper / n as f64;
        let g = |u: f64| 2.0 * (-u * u).exp();
        let mut s = g(0.0) + g(upper);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * g(i as f64 * h);
        }
        let oracle = s * h / 3.0;
        assert!((oracle - std::f64::consts::PI.sqrt()).abs() < 1e-12);

        let c = cfg().with_endpoint(Endpoint::PowerSingularity(-0.5));
        let tail = Tail::Bound(TailBound::exponential(1.0, 1.0));
        let r = integrate_1d(|t| (-t).exp() / t.sqrt(), 0.0, Limit::Infinite(tail), &c).unwrap();
        assert!((r.value - oracle).abs() < 1e-8, "{} vs {}", r.value, oracle);
    }

    #[test]
    fn polynomials_up_to_degree_ten_are_exact() {
        for deg in 0..=10 {
            let exact = (2.0f64.powi(deg + 1) - (-1.0f64).powi(deg + 1)) / (deg + 1) as f64;
            let r = integrate_1d(|t| t.powi(deg), -1.0, Limit::Finite(2.0), &cfg()).unwrap();
            assert!(((r.value - exact) / exact).abs() < 1e-12, "degree {deg}");
        }
    }

    #[test]
    fn failure_carries_best_estimate() {
        let c = QuadratureConfig { max_subdivisions: 3, ..cfg() };
        let err = integrate_1d(|t| if t < 0.3 { 0.0 } else { 1.0 }, 0.0, Limit::Finite(1.0), &c)
            .unwrap_err();
        match err {
            Error::QuadratureFailure { best, .. } => assert!((best.value - 0.7).abs() < 0.05),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn rejects_bad_exponent() {
        let c = cfg().with_endpoint(Endpoint::PowerSingularity(-1.5));
        assert!(integrate_1d(|t| t, 0.0, Limit::Finite(1.0), &c).is_err());
    }
}
