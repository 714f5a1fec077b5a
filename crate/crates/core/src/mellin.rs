//! Mellin transforms of one-variable profiles, the moments `I_p`, and the
//! Mellin–Berwald functional `G_ψ`.

use crate::error::{Error, Result};
use crate::lcfun::Profile;
use crate::numerics::special::{digamma, gamma, ln_gamma, EULER_GAMMA};
use crate::numerics::{integrate_1d, Endpoint, Estimate, Limit, QuadratureConfig, Tail};

/// Values of `p` closer than this to zero use the `p = 0` branch.
pub const ZERO_BAND: f64 = 1e-6;
/// Relative agreement required between the direct and derivative forms.
pub const BRANCH_TOL: f64 = 1e-6;

/// A nonnegative profile `ψ` on `[0, ∞)`, bounded, with maximum at `0⁺`.
pub trait RadialProfile {
    fn value(&self, t: f64) -> f64;

    /// `ψ(0⁺)`.
    fn at_zero(&self) -> f64;

    /// `ψ(t) − ψ(0⁺)`, ideally free of cancellation.
    fn value_minus_at_zero(&self, t: f64) -> f64 {
        self.value(t) - self.at_zero()
    }

    /// Whether [`RadialProfile::neg_derivative`] is available.
    fn has_derivative(&self) -> bool {
        false
    }

    /// Absolutely continuous part of `−ψ′(t)`.
    fn neg_derivative(&self, _t: f64) -> f64 {
        f64::NAN
    }

    /// Downward jumps `(location, size)`.
    fn atoms(&self) -> Vec<(f64, f64)> {
        Vec::new()
    }

    /// Points where `ψ` has kinks worth splitting the quadrature at.
    fn breaks(&self) -> Vec<f64> {
        Vec::new()
    }

    fn support_radius(&self) -> f64 {
        f64::INFINITY
    }

    /// `−ψ′(0⁺)`.
    fn slope_at_zero(&self) -> f64;

    /// Exponent `e` with `ψ(0) − ψ(t) ~ t^e` as `t → 0⁺`.
    fn small_t_exponent(&self) -> f64 {
        1.0
    }

    /// `(location, exponent)` of an integrable blow-up of `−ψ′` at the right.
    fn right_singularity(&self) -> Option<(f64, f64)> {
        None
    }

    /// If set, `ψ` is replaced by its tangent line `ψ(0) − slope·t` on `[0, δ]`
    /// in the `p < 0` branches.
    fn linearize_below(&self) -> Option<f64> {
        None
    }

    fn analytic_mellin(&self, _p: f64) -> Option<f64> {
        None
    }

    fn quadrature(&self) -> QuadratureConfig {
        QuadratureConfig { rel_tol: 1e-11, abs_tol: 1e-300, max_subdivisions: 4000, endpoint: Endpoint::Regular }
    }
}

/// Closed-form profiles `t ↦ A·φ(t/λ)` and tabulated piecewise-linear ones.
#[derive(Debug, Clone, PartialEq)]
pub enum MellinProfile {
    Closed { profile: Profile, amplitude: f64, scale: f64 },
    /// Linear interpolation through `(t_i, v_i)` with `t_0 = 0`, zero after the last node.
    Table { t: Vec<f64>, v: Vec<f64> },
}

impl MellinProfile {
    pub fn closed(profile: Profile) -> Self {
        MellinProfile::Closed { profile, amplitude: 1.0, scale: 1.0 }
    }

    pub fn scaled(profile: Profile, amplitude: f64, scale: f64) -> Result<Self> {
        if !(amplitude > 0.0 && scale > 0.0) {
            return Err(Error::Domain("amplitude and scale must be positive".into()));
        }
        if matches!(profile, Profile::PFamily { p, .. } if p == 0.0) {
            return Err(Error::Domain("the p = 0 family member is unbounded".into()));
        }
        Ok(MellinProfile::Closed { profile, amplitude, scale })
    }

    /// Table kind; values must be nonnegative and non-increasing.
    pub fn table(t: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        let ok = t.len() == v.len()
            && t.len() >= 2
            && t[0] == 0.0
            && t.windows(2).all(|w| w[1] > w[0])
            && v.windows(2).all(|w| w[1] <= w[0])
            && v.iter().all(|&x| x >= 0.0)
            && v[0] > 0.0;
        if ok {
            Ok(MellinProfile::Table { t, v })
        } else {
            Err(Error::Domain("table must start at 0 with increasing nodes and non-increasing values".into()))
        }
    }
}

/// `∫_0^∞ t^{p−1} φ(t) dt` for `p > 0`, continued to `p ∈ (−1, 0)` with `φ(0)`
/// subtracted; `None` where the transform diverges.
pub fn profile_mellin(profile: &Profile, p: f64) -> Option<f64> {
    if p == 0.0 || p <= -1.0 {
        return None;
    }
    match *profile {
        Profile::Exponential => Some(gamma(p)),
        Profile::Gaussian => Some(2f64.powf(p / 2.0 - 1.0) * gamma(p / 2.0)),
        Profile::Power { s } => {
            let b = 1.0 / s + 1.0;
            Some((ln_gamma(b) - ln_gamma(p + b)).exp() * gamma(p))
        }
        Profile::Indicator => Some(1.0 / p),
        Profile::PFamily { p: q, n } => {
            let e = q.abs();
            if q == 0.0 || p <= -e {
                return None;
            }
            let c = n as f64 / e;
            Some(c.exp() / e * c.powf(-p / e) * gamma(p / e))
        }
    }
}

impl RadialProfile for MellinProfile {
    fn value(&self, t: f64) -> f64 {
        match self {
            MellinProfile::Closed { profile, amplitude, scale } => amplitude * profile.value(t / scale),
            MellinProfile::Table { t: ts, v } => {
                if t >= *ts.last().unwrap() {
                    return if t == *ts.last().unwrap() { *v.last().unwrap() } else { 0.0 };
                }
                let i = ts.partition_point(|&x| x <= t) - 1;
                let w = (t - ts[i]) / (ts[i + 1] - ts[i]);
                v[i] + w * (v[i + 1] - v[i])
            }
        }
    }

    fn at_zero(&self) -> f64 {
        match self {
            MellinProfile::Closed { profile, amplitude, .. } => amplitude * profile.at_zero(),
            MellinProfile::Table { v, .. } => v[0],
        }
    }

    fn value_minus_at_zero(&self, t: f64) -> f64 {
        match self {
            MellinProfile::Closed { profile, amplitude, scale } => amplitude * profile.value_minus_at_zero(t / scale),
            MellinProfile::Table { .. } => self.value(t) - self.at_zero(),
        }
    }

    fn has_derivative(&self) -> bool {
        true
    }

    fn neg_derivative(&self, t: f64) -> f64 {
        match self {
            MellinProfile::Closed { profile, amplitude, scale } => amplitude / scale * profile.neg_derivative(t / scale),
            MellinProfile::Table { t: ts, v } => {
                if t >= *ts.last().unwrap() {
                    return 0.0;
                }
                let i = ts.partition_point(|&x| x <= t) - 1;
                (v[i] - v[i + 1]) / (ts[i + 1] - ts[i])
            }
        }
    }

    fn atoms(&self) -> Vec<(f64, f64)> {
        match self {
            MellinProfile::Closed { profile, amplitude, scale } => {
                profile.atoms().into_iter().map(|(a, j)| (a * scale, j * amplitude)).collect()
            }
            MellinProfile::Table { t, v } => {
                let last = *v.last().unwrap();
                if last > 0.0 {
                    vec![(*t.last().unwrap(), last)]
                } else {
                    Vec::new()
                }
            }
        }
    }

    fn breaks(&self) -> Vec<f64> {
        match self {
            MellinProfile::Closed { .. } => Vec::new(),
            MellinProfile::Table { t, .. } => t[1..].to_vec(),
        }
    }

    fn support_radius(&self) -> f64 {
        match self {
            MellinProfile::Closed { profile, scale, .. } => profile.support_radius() * scale,
            MellinProfile::Table { t, .. } => *t.last().unwrap(),
        }
    }

    fn slope_at_zero(&self) -> f64 {
        match self {
            MellinProfile::Closed { profile, amplitude, scale } => amplitude / scale * profile.slope_at_zero(),
            MellinProfile::Table { .. } => self.neg_derivative(0.0),
        }
    }

    fn small_t_exponent(&self) -> f64 {
        match self {
            MellinProfile::Closed { profile, .. } => match *profile {
                Profile::Gaussian => 2.0,
                Profile::Indicator => f64::INFINITY,
                Profile::PFamily { p, .. } => p.abs(),
                _ => 1.0,
            },
            MellinProfile::Table { v, .. } => {
                if v[1] == v[0] {
                    f64::INFINITY
                } else {
                    1.0
                }
            }
        }
    }

    fn right_singularity(&self) -> Option<(f64, f64)> {
        match self {
            MellinProfile::Closed { profile, scale, .. } => profile.right_singularity().map(|(a, e)| (a * scale, e)),
            MellinProfile::Table { .. } => None,
        }
    }

    fn analytic_mellin(&self, p: f64) -> Option<f64> {
        match self {
            MellinProfile::Closed { profile, amplitude, scale } => {
                profile_mellin(profile, p).map(|m| amplitude * scale.powf(p) * m)
            }
            MellinProfile::Table { .. } => None,
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(p > -1.0) {
        return Err(Error::Domain(format!("Mellin transform needs p > -1, got {p}")));
    }
    Ok(())
}

/// Integrates `f` over `[lo, ∞)` or `[lo, last break]`, splitting at `breaks`.
/// `left` is the singular exponent at `lo`; `right` marks a blow-up at one of
/// the breaks.
fn integrate_pieces<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    breaks: &[f64],
    left: f64,
    right: Option<(f64, f64)>,
    tail: bool,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let mut pts = vec![lo];
    pts.extend(breaks.iter().copied().filter(|&b| b > lo && b.is_finite()));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let first = if left < 0.0 { cfg.with_endpoint(Endpoint::PowerSingularity(left.max(-0.999_999))) } else { *cfg };
    let mut total = Estimate::exact(0.0);
    for (i, w) in pts.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let c = if i == 0 { first } else { *cfg };
        match right {
            Some((loc, e)) if (loc - b).abs() <= 1e-14 * loc.abs().max(1.0) && e < 0.0 => {
                let mid = 0.5 * (a + b);
                total = total.add(integrate_1d(f, a, Limit::Finite(mid), &c)?);
                let rev = cfg.with_endpoint(Endpoint::PowerSingularity(e));
                total = total.add(integrate_1d(|u| f(b - u), 0.0, Limit::Finite(b - mid), &rev)?);
            }
            _ => total = total.add(integrate_1d(f, a, Limit::Finite(b), &c)?),
        }
    }
    if tail {
        let last = *pts.last().unwrap();
        let c = if pts.len() == 1 { first } else { *cfg };
        let width = if last > 0.0 { last } else { 1.0 };
        total = total.add(integrate_1d(f, last, Limit::Infinite(Tail::Doubling { first_width: width }), &c)?);
    }
    Ok(total)
}

/// Scale `T` at which `t^p ψ(t)` peaks, found by golden-section search on the log.
fn peak_scale(psi: &dyn RadialProfile, p: f64) -> f64 {
    let r = psi.support_radius();
    if r.is_finite() {
        return r;
    }
    let h = |t: f64| p * t.ln() + psi.value(t).ln();
    let mut hi = 1.0;
    while h(2.0 * hi) > h(hi) && hi < 1e12 {
        hi *= 2.0;
    }
    hi *= 2.0;
    let mut lo = 0.0;
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let x1 = hi - phi * (hi - lo);
        let x2 = lo + phi * (hi - lo);
        if h(x1) < h(x2) {
            lo = x1;
        } else {
            hi = x2;
        }
    }
    0.5 * (lo + hi)
}

/// `ψ(0) − ψ(t)` lies below `ψ(0)/2` on `[0, L)`.
fn half_radius(psi: &dyn RadialProfile) -> f64 {
    let r = psi.support_radius();
    if r.is_finite() {
        return r;
    }
    let half = 0.5 * psi.at_zero();
    let mut t = 1.0;
    while psi.value(t) > half && t < 1e12 {
        t *= 2.0;
    }
    while psi.value(0.5 * t) <= half && t > 1e-12 {
        t *= 0.5;
    }
    t
}

/// `(ln M, estimate relative error)` by the direct form for `p > 0`.
fn direct_positive(psi: &dyn RadialProfile, p: f64) -> Result<(f64, f64)> {
    let cfg = psi.quadrature();
    let scale = if p > 8.0 { peak_scale(psi, p) } else { 1.0 };
    let r = psi.support_radius() / scale;
    let mut breaks: Vec<f64> = psi.atoms().iter().map(|(a, _)| a / scale).collect();
    breaks.extend(psi.breaks().iter().map(|b| b / scale));
    if r.is_finite() {
        breaks.push(r);
    } else {
        breaks.push(1.0);
    }
    let f = |u: f64| if u <= 0.0 { 0.0 } else { (u.ln() * (p - 1.0)).exp() * psi.value(scale * u) };
    let est = if p < 1.0 {
        // Peel off ψ(0)·b^p/p on the first piece so only the milder
        // t^{p−1}(ψ − ψ(0)) remains near zero.
        breaks.sort_by(f64::total_cmp);
        let b = breaks[0];
        let g = |u: f64| if u <= 0.0 { 0.0 } else { (u.ln() * (p - 1.0)).exp() * psi.value_minus_at_zero(scale * u) };
        let left = (p + psi.small_t_exponent() - 1.0).min(0.0);
        let head = integrate_pieces(&g, 0.0, &[b], left, None, false, &cfg)?
            .add(Estimate::exact(psi.at_zero() * b.powf(p) / p));
        head.add(integrate_pieces(&f, b, &breaks, 0.0, None, !r.is_finite(), &cfg)?)
    } else {
        integrate_pieces(&f, 0.0, &breaks, 0.0, None, !r.is_finite(), &cfg)?
    };
    Ok((p * scale.ln() + est.value.ln(), est.std_error / est.value))
}

/// `ln M` by the derivative form for `p > 0`.
fn derivative_positive(psi: &dyn RadialProfile, p: f64) -> Result<f64> {
    let cfg = psi.quadrature();
    let scale = if p > 8.0 { peak_scale(psi, p) } else { 1.0 };
    let r = psi.support_radius() / scale;
    let mut breaks: Vec<f64> = psi.atoms().iter().map(|(a, _)| a / scale).collect();
    breaks.extend(psi.breaks().iter().map(|b| b / scale));
    breaks.push(if r.is_finite() { r } else { 1.0 });
    let right = psi.right_singularity().map(|(a, e)| (a / scale, e));
    if let Some((a, _)) = right {
        breaks.push(a);
    }
    let f = |u: f64| if u <= 0.0 { 0.0 } else { scale * (u.ln() * p).exp() * psi.neg_derivative(scale * u) };
    let left = (p + psi.small_t_exponent() - 1.0).min(0.0);
    let mut s = integrate_pieces(&f, 0.0, &breaks, left, right, !r.is_finite(), &cfg)?.value;
    for (a, j) in psi.atoms() {
        s += j * (a / scale).powf(p);
    }
    Ok(s.ln() + p * scale.ln() - p.ln())
}

/// Direct form for `p ∈ (−1, 0)`.
fn direct_negative(psi: &dyn RadialProfile, p: f64) -> Result<f64> {
    let cfg = psi.quadrature();
    let e0 = psi.small_t_exponent();
    if p + e0 <= 0.0 {
        return Err(Error::NonIntegrable(format!("Mellin transform diverges at p = {p}")));
    }
    let psi0 = psi.at_zero();
    let big_l = half_radius(psi);
    let mut breaks: Vec<f64> = psi.atoms().iter().map(|(a, _)| *a).filter(|&a| a < big_l).collect();
    breaks.extend(psi.breaks().into_iter().filter(|&b| b < big_l));
    breaks.push(big_l);
    let f = |t: f64| if t <= 0.0 { 0.0 } else { (t.ln() * (p - 1.0)).exp() * psi.value_minus_at_zero(t) };
    let (lo, mut head) = match psi.linearize_below() {
        Some(d) if d < big_l => (d, -psi.slope_at_zero() * d.powf(p + 1.0) / (p + 1.0)),
        _ => (0.0, 0.0),
    };
    let left = if lo > 0.0 { 0.0 } else { (p + e0 - 1.0).min(0.0) };
    head += integrate_pieces(&f, lo, &breaks, left, None, false, &cfg)?.value;
    if psi.support_radius().is_finite() {
        // ψ vanishes past L, leaving only the subtracted constant.
        return Ok(head + psi0 * big_l.powf(p) / p);
    }
    let g = |t: f64| (t.ln() * (p - 1.0)).exp() * psi.value(t);
    let tail = integrate_1d(g, big_l, Limit::Infinite(Tail::Doubling { first_width: big_l }), &cfg)?.value;
    Ok(head + tail + psi0 * big_l.powf(p) / p)
}

/// Derivative form `(1/p)[∫(−ψ′)t^p dt + Σ jump·a^p]`, any `p ∈ (−1, 0)`.
fn derivative_negative(psi: &dyn RadialProfile, p: f64) -> Result<f64> {
    let cfg = psi.quadrature();
    let e0 = psi.small_t_exponent();
    let r = psi.support_radius();
    let mut breaks: Vec<f64> = psi.atoms().iter().map(|(a, _)| *a).collect();
    breaks.extend(psi.breaks());
    breaks.push(if r.is_finite() { r } else { half_radius(psi) });
    let right = psi.right_singularity();
    if let Some((a, _)) = right {
        breaks.push(a);
    }
    let f = |t: f64| if t <= 0.0 { 0.0 } else { (t.ln() * p).exp() * psi.neg_derivative(t) };
    let (lo, mut s) = match psi.linearize_below() {
        Some(d) => (d, psi.slope_at_zero() * d.powf(p + 1.0) / (p + 1.0)),
        None => (0.0, 0.0),
    };
    let left = if lo > 0.0 { 0.0 } else { (p + e0 - 1.0).min(0.0) };
    s += integrate_pieces(&f, lo, &breaks, left, right, !r.is_finite(), &cfg)?.value;
    for (a, j) in psi.atoms() {
        s += j * a.powf(p);
    }
    Ok(s / p)
}

fn agree(direct: f64, derivative: f64) -> Result<()> {
    if (direct - derivative).abs() <= BRANCH_TOL * direct.abs().max(derivative.abs()) {
        Ok(())
    } else {
        Err(Error::BranchDisagreement { direct, derivative })
    }
}

/// `ln |M(ψ)(p)|`, cross-checked between both forms when `−ψ′` is available.
fn log_abs_mellin(psi: &dyn RadialProfile, p: f64) -> Result<f64> {
    check_p(p)?;
    if p.abs() < ZERO_BAND {
        return Err(Error::Domain("the Mellin transform has a pole at p = 0".into()));
    }
    if p > 0.0 {
        let (direct, _) = direct_positive(psi, p)?;
        if psi.has_derivative() {
            let deriv = derivative_positive(psi, p)?;
            // Compare on the linear scale: ln M agrees to ε ⇔ M agrees to ~ε relative.
            if (direct - deriv).abs() > BRANCH_TOL {
                return Err(Error::BranchDisagreement { direct: direct.exp(), derivative: deriv.exp() });
            }
        }
        Ok(direct)
    } else {
        let direct = direct_negative(psi, p)?;
        if psi.has_derivative() {
            agree(direct, derivative_negative(psi, p)?)?;
        }
        if !(direct < 0.0) {
            return Err(Error::NonIntegrable(format!("Mellin value {direct} at p = {p} has the wrong sign")));
        }
        Ok((-direct).ln())
    }
}

/// `M(ψ)(p)`: `∫_0^∞ t^{p−1}ψ(t) dt` for `p > 0` and
/// `∫_0^∞ t^{p−1}(ψ(t) − ψ(0)) dt` for `p ∈ (−1, 0)`.
pub fn mellin(psi: &dyn RadialProfile, p: f64) -> Result<f64> {
    let l = log_abs_mellin(psi, p)?;
    Ok(if p > 0.0 { l.exp() } else { -l.exp() })
}

/// `ln I_0 = (1/ψ(0)) ∫_0^∞ ln t · (−dψ(t))`, computed by parts as
/// `ln L + (1/ψ(0))[∫_0^L (ψ − ψ(0))/t dt + ∫_L^∞ ψ/t dt]`.
fn log_i0(psi: &dyn RadialProfile) -> Result<f64> {
    let cfg = psi.quadrature();
    let psi0 = psi.at_zero();
    let big_l = half_radius(psi);
    let e0 = psi.small_t_exponent();
    let mut breaks: Vec<f64> = psi.atoms().iter().map(|(a, _)| *a).filter(|&a| a < big_l).collect();
    breaks.extend(psi.breaks().into_iter().filter(|&b| b < big_l));
    breaks.push(big_l);
    let f = |t: f64| if t <= 0.0 { 0.0 } else { psi.value_minus_at_zero(t) / t };
    let (lo, mut s) = match psi.linearize_below() {
        Some(d) if d < big_l => (d, -psi.slope_at_zero() * d),
        _ => (0.0, 0.0),
    };
    let left = if lo > 0.0 { 0.0 } else { (e0 - 1.0).min(0.0) };
    s += integrate_pieces(&f, lo, &breaks, left, None, false, &cfg)?.value;
    if !psi.support_radius().is_finite() {
        let g = |t: f64| psi.value(t) / t;
        s += integrate_1d(g, big_l, Limit::Infinite(Tail::Doubling { first_width: big_l }), &cfg)?.value;
    }
    let by_parts = big_l.ln() + s / psi0;
    if psi.has_derivative() && psi.linearize_below().is_none() {
        let r = psi.support_radius();
        let mut breaks: Vec<f64> = psi.atoms().iter().map(|(a, _)| *a).collect();
        breaks.extend(psi.breaks());
        breaks.push(if r.is_finite() { r } else { big_l });
        let right = psi.right_singularity();
        if let Some((a, _)) = right {
            breaks.push(a);
        }
        let h = |t: f64| if t <= 0.0 { 0.0 } else { t.ln() * psi.neg_derivative(t) };
        let mut d = integrate_pieces(&h, 0.0, &breaks, 0.0, right, !r.is_finite(), &cfg)?.value;
        for (a, j) in psi.atoms() {
            d += j * a.ln();
        }
        let d = d / psi0;
        if (by_parts - d).abs() > BRANCH_TOL {
            return Err(Error::BranchDisagreement { direct: by_parts.exp(), derivative: d.exp() });
        }
    }
    Ok(by_parts)
}

/// `ln I_p(ψ)`.
pub fn log_i_p(psi: &dyn RadialProfile, p: f64) -> Result<f64> {
    check_p(p)?;
    if p.abs() < ZERO_BAND {
        return log_i0(psi);
    }
    let lm = log_abs_mellin(psi, p)?;
    Ok((p.abs().ln() + lm - psi.at_zero().ln()) / p)
}

/// `I_p(ψ) = (p·M(ψ/‖ψ‖_∞)(p))^{1/p}`, with the logarithmic moment at `p = 0`.
pub fn i_p(psi: &dyn RadialProfile, p: f64) -> Result<f64> {
    Ok(log_i_p(psi, p)?.exp())
}

/// Generalized binomial coefficient `Γ(p + 1/s + 1)/(Γ(p + 1)Γ(1/s + 1))`,
/// and `1/Γ(p + 1)` at `s = 0`.
pub fn binom_gen(p: f64, s: f64) -> f64 {
    ln_binom_gen(p, s).exp()
}

fn ln_binom_gen(p: f64, s: f64) -> f64 {
    if s == 0.0 {
        -ln_gamma(p + 1.0)
    } else {
        let b = 1.0 / s;
        ln_gamma(p + b + 1.0) - ln_gamma(p + 1.0) - ln_gamma(b + 1.0)
    }
}

/// `c(s) = 1/s` for `s > 0` and `1` at `s = 0`.
pub fn c_const(s: f64) -> f64 {
    if s > 0.0 {
        1.0 / s
    } else {
        1.0
    }
}

/// `lim_{p→0} binom_gen(p, s)^{1/p}`.
fn binom_root_at_zero(s: f64) -> f64 {
    if s == 0.0 {
        EULER_GAMMA.exp()
    } else {
        (digamma(1.0 / s + 1.0) + EULER_GAMMA).exp()
    }
}

/// `G_ψ(p) = binom_gen(p, s)^{1/p}·I_p(ψ)`, extended continuously to `p = 0`.
pub fn g_functional(psi: &dyn RadialProfile, p: f64, s: f64) -> Result<f64> {
    check_p(p)?;
    if s < 0.0 {
        return Err(Error::Domain(format!("s must be nonnegative, got {s}")));
    }
    let li = log_i_p(psi, p)?;
    if p.abs() < ZERO_BAND {
        return Ok(binom_root_at_zero(s) * li.exp());
    }
    Ok((ln_binom_gen(p, s) / p + li).exp())
}

/// `lim_{p→−1⁺} G_ψ(p) = c(s)·ψ(0)/(−ψ′(0⁺))`.
pub fn g_endpoint(psi: &dyn RadialProfile, s: f64) -> Result<f64> {
    let slope = psi.slope_at_zero();
    if !(slope > 0.0) {
        return Err(Error::UnboundedBody("zero slope at the origin".into()));
    }
    Ok(c_const(s) * psi.at_zero() / slope)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp() -> MellinProfile {
        MellinProfile::closed(Profile::Exponential)
    }
    fn gauss() -> MellinProfile {
        MellinProfile::closed(Profile::Gaussian)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn examples() {
        assert!(rel(mellin(&exp(), 2.0).unwrap(), 1.0) < 1e-10);
        assert!(rel(2.0 * mellin(&gauss(), 2.0).unwrap(), 2.0) < 1e-10);
        let m = mellin(&exp(), -0.5).unwrap();
        assert!(rel(m, -2.0 * std::f64::consts::PI.sqrt()) < 1e-9, "{m}");
        assert!(rel(i_p(&exp(), 1.0).unwrap(), 1.0) < 1e-10);
        assert!(rel(i_p(&exp(), -0.5).unwrap(), 1.0 / std::f64::consts::PI) < 1e-9);
        let box2 = MellinProfile::scaled(Profile::Indicator, 3.0, 2.0).unwrap();
        for p in [-0.5, 0.0, 0.5, 1.0, 7.0] {
            assert!(rel(i_p(&box2, p).unwrap(), 2.0) < 1e-9, "p = {p}");
        }
        assert!(matches!(mellin(&exp(), -1.0), Err(Error::Domain(_))));
        assert!(matches!(mellin(&exp(), 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn negative_branch_matches_high_node_oracle() {
        // Oracle: t = u² turns ∫(e^{-t} − 1)t^{-3/2} dt into 2∫(e^{-u²} − 1)u^{-2} du;
        // composite Simpson on [0, 60] plus the exact tail −2/60.
        let g = |u: f64| if u == 0.0 { -1.0 } else { (-u * u).exp_m1() / (u * u) };
        let (n, b) = (600_000, 60.0);
        let h = b / n as f64;
        let mut s = g(0.0) + g(b);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(i as f64 * h);
        }
        let oracle = 2.0 * (s * h / 3.0) - 2.0 / b;
        assert!(rel(mellin(&exp(), -0.5).unwrap(), oracle) < 1e-7);
    }

    #[test]
    fn numeric_matches_analytic() {
        let profiles = [
            exp(),
            gauss(),
            MellinProfile::closed(Profile::Power { s: 1.0 }),
            MellinProfile::closed(Profile::Power { s: 2.0 }),
            MellinProfile::closed(Profile::Power { s: 0.5 }),
            MellinProfile::closed(Profile::Indicator),
            MellinProfile::closed(Profile::PFamily { p: 2.0, n: 2 }),
            MellinProfile::scaled(Profile::Gaussian, 2.5, 0.7).unwrap(),
        ];
        for psi in &profiles {
            for p in [-0.9, -0.5, -0.1, 0.25, 1.0, 2.5, 6.0, 30.0] {
                let num = mellin(psi, p).unwrap();
                let exact = psi.analytic_mellin(p).unwrap();
                assert!(rel(num, exact) < 1e-8, "{psi:?} p = {p}: {num} vs {exact}");
            }
        }
    }

    #[test]
    fn table_profile_matches_piecewise_oracle() {
        // (1 − t)_+ tabulated at its kinks is exact.
        let psi = MellinProfile::table(vec![0.0, 1.0], vec![1.0, 0.0]).unwrap();
        let exact = MellinProfile::closed(Profile::Power { s: 1.0 });
        for p in [-0.5, 0.0, 1.0, 3.0] {
            assert!(rel(i_p(&psi, p).unwrap(), i_p(&exact, p).unwrap()) < 1e-9);
        }
        assert!(MellinProfile::table(vec![0.0, 1.0], vec![0.0, 1.0]).is_err());
    }

    #[test]
    fn berwald_equality_families() {
        let lin = MellinProfile::closed(Profile::Power { s: 1.0 });
        for p in [-0.5, 0.0, 1.0, 2.0, 5.0] {
            assert!((g_functional(&exp(), p, 0.0).unwrap() - 1.0).abs() < 1e-9, "p = {p}");
            assert!((g_functional(&lin, p, 1.0).unwrap() - 1.0).abs() < 1e-9, "p = {p}");
        }
        assert!((g_endpoint(&exp(), 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((g_endpoint(&lin, 1.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gaussian_berwald_matches_closed_form() {
        for p in [0.5, 1.0, 2.0, 4.0] {
            let oracle = (2f64.powf(p / 2.0) * gamma(1.0 + p / 2.0) / gamma(1.0 + p)).powf(1.0 / p);
            assert!(rel(g_functional(&gauss(), p, 0.0).unwrap(), oracle) < 1e-9);
        }
    }

    #[test]
    fn binomials() {
        assert!((binom_gen(2.0, 1.0) - 3.0).abs() < 1e-12);
        assert!((binom_gen(1.0, 0.0) - 1.0).abs() < 1e-12);
        assert_eq!(c_const(0.5), 2.0);
        assert_eq!(c_const(0.0), 1.0);
    }

    #[test]
    fn zero_branch_is_continuous() {
        for psi in [exp(), gauss(), MellinProfile::closed(Profile::Power { s: 0.5 })] {
            let at0 = i_p(&psi, 0.0).unwrap();
            let near = i_p(&psi, 1e-4).unwrap();
            assert!(rel(near, at0) < 1e-3);
            let tiny = i_p(&psi, 5e-7).unwrap();
            assert_eq!(tiny, at0);
        }
        assert!(rel(i_p(&exp(), 0.0).unwrap(), (-EULER_GAMMA).exp()) < 1e-10);
    }

    #[test]
    fn finite_support_limit() {
        let r = 1.5;
        let psi = MellinProfile::scaled(Profile::Power { s: 1.0 }, 1.0, r).unwrap();
        for p in [50.0, 200.0] {
            let v = i_p(&psi, p).unwrap();
            assert!(v < r && r - v <= r * f64::ln(p) / p, "p = {p}: {v}");
        }
    }

    #[test]
    fn moments_increase_and_berwald_decreases() {
        let sq = MellinProfile::closed(Profile::Power { s: 0.5 });
        let grid = [-0.9, -0.7, -0.5, -0.3, -0.1, 0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 6.0];
        for (psi, s) in [(gauss(), 0.0), (exp(), 0.0), (sq, 0.5)] {
            let ip: Vec<f64> = grid.iter().map(|&p| i_p(&psi, p).unwrap()).collect();
            assert!(ip.windows(2).all(|w| w[1] > w[0]), "{psi:?}: {ip:?}");
            let g: Vec<f64> = grid.iter().map(|&p| g_functional(&psi, p, s).unwrap()).collect();
            assert!(g.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9)), "{psi:?}: {g:?}");
        }
    }

    #[test]
    fn fractional_derivative_limit() {
        // (1 + p)∫t^p e^{-t} dt = Γ(p + 2) → 1 as p → −1.
        for k in 2..=4 {
            let q = 10f64.powi(-k);
            let v = q * mellin(&exp(), q).unwrap();
            assert!((v - 1.0).abs() <= 10.0 * q, "k = {k}: {v}");
            assert!(rel(v, gamma(q + 1.0)) < 1e-9);
        }
    }
}
