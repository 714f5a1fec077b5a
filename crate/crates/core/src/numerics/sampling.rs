use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{special, Estimate};
use crate::error::{Error, Result};

/// Samples per Monte Carlo shard. Each shard draws from its own stream so the
/// result does not depend on how shards are scheduled.
pub const SHARD_SIZE: usize = 8192;

/// Counter-based generator keyed by `(seed, stream)`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Surface area of the unit sphere `S^{d-1}`.
pub fn unit_sphere_area(d: usize) -> f64 {
    let h = d as f64 / 2.0;
    2.0 * std::f64::consts::PI.powf(h) / special::gamma(h)
}

fn normalize(v: &mut [f64]) -> bool {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm < 1e-300 || !norm.is_finite() {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= norm);
    true
}

/// `count` unit vectors in `R^d`, drawn uniformly in antithetic pairs `(v, -v)`.
pub fn sphere_sample(d: usize, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    let mut rng = stream_rng(seed, u64::MAX);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut v = vec![0.0; d];
        if d == 1 {
            v[0] = 1.0;
        } else {
            loop {
                v.iter_mut().for_each(|x| *x = rng.sample(StandardNormal));
                if normalize(&mut v) {
                    break;
                }
            }
        }
        let neg: Vec<f64> = v.iter().map(|x| -x).collect();
        out.push(v);
        if out.len() < count {
            out.push(neg);
        }
    }
    Ok(out)
}

/// `count` equally spaced unit vectors on the circle, rotated by `phase`
/// (a fraction of the spacing). For even `count` the set is antithetic.
pub fn sphere_lattice_2d(count: usize, phase: f64) -> Vec<Vec<f64>> {
    let step = std::f64::consts::TAU / count as f64;
    (0..count)
        .map(|k| {
            let a = (k as f64 + phase) * step;
            vec![a.cos(), a.sin()]
        })
        .collect()
}

#[derive(Clone, Copy)]
struct Moments {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn merge(self, o: Moments) -> Moments {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let delta = o.mean - self.mean;
        let mean = self.mean + delta * o.n as f64 / n as f64;
        let m2 = self.m2 + o.m2 + delta * delta * (self.n as f64) * (o.n as f64) / n as f64;
        Moments { n, mean, m2 }
    }
}

/// Mean of `g(rng)` over `samples` draws, with its standard error. Shards run
/// in parallel and are merged in shard order, so the result is a
/// deterministic function of `(seed, samples)`.
pub fn monte_carlo_mean<G>(samples: usize, seed: u64, g: G) -> Estimate
where
    G: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    if samples == 0 {
        return Estimate::new(0.0, 0.0, 0);
    }
    let shards = samples.div_ceil(SHARD_SIZE);
    let parts: Vec<Moments> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = stream_rng(seed, s as u64);
            let n = SHARD_SIZE.min(samples - s * SHARD_SIZE);
            let mut m = Moments { n: 0, mean: 0.0, m2: 0.0 };
            for _ in 0..n {
                let x = g(&mut rng);
                m.n += 1;
                let delta = x - m.mean;
                m.mean += delta / m.n as f64;
                m.m2 += delta * (x - m.mean);
            }
            m
        })
        .collect();
    let total = parts.into_iter().fold(Moments { n: 0, mean: 0.0, m2: 0.0 }, Moments::merge);
    let var = if total.n > 1 { total.m2 / (total.n - 1) as f64 } else { 0.0 };
    Estimate::new(total.mean, (var.max(0.0) / total.n as f64).sqrt(), total.n)
}

/// Integral of `f` over the box `[lo, hi]` by uniform sampling.
pub fn monte_carlo_box<F>(lo: &[f64], hi: &[f64], samples: usize, seed: u64, f: F) -> Estimate
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let d = lo.len();
    assert!(d <= 8, "monte_carlo_box supports at most 8 dimensions");
    let vol: f64 = lo.iter().zip(hi).map(|(a, b)| b - a).product();
    if vol <= 0.0 {
        return Estimate::new(0.0, 0.0, samples);
    }
    monte_carlo_mean(samples, seed, |rng| {
        let mut x = [0.0f64; 8];
        let x = &mut x[..d];
        for i in 0..d {
            x[i] = lo[i] + (hi[i] - lo[i]) * rng.random::<f64>();
        }
        f(x)
    })
    .scale(vol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_has_two_points() {
        let s = sphere_sample(1, 2, 99).unwrap();
        assert_eq!(s, vec![vec![1.0], vec![-1.0]]);
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(matches!(sphere_sample(0, 3, 1), Err(Error::InvalidDimension(0))));
    }

    #[test]
    fn samples_are_unit_and_seeded() {
        let s = sphere_sample(3, 1000, 7).unwrap();
        for v in &s {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((n - 1.0).abs() < 1e-14);
        }
        assert_eq!(s, sphere_sample(3, 1000, 7).unwrap());
        assert_ne!(s, sphere_sample(3, 1000, 8).unwrap());
    }

    #[test]
    fn antithetic_means_vanish() {
        let s = sphere_sample(2, 4096, 1).unwrap();
        for c in 0..2 {
            let mean = s.iter().map(|v| v[c]).sum::<f64>() / s.len() as f64;
            assert!(mean.abs() < 1e-15, "component {c} mean {mean}");
        }
    }

    #[test]
    fn sphere_areas() {
        assert!((unit_sphere_area(1) - 2.0).abs() < 1e-14);
        assert!((unit_sphere_area(2) - std::f64::consts::TAU).abs() < 1e-13);
        assert!((unit_sphere_area(3) - 4.0 * std::f64::consts::PI).abs() < 1e-13);
    }

    #[test]
    fn box_integral_is_reproducible_and_accurate() {
        let f = |x: &[f64]| x[0] * x[1];
        let a = monte_carlo_box(&[0.0, 0.0], &[1.0, 2.0], 100_000, 3, f);
        let b = monte_carlo_box(&[0.0, 0.0], &[1.0, 2.0], 100_000, 3, f);
        assert_eq!(a, b);
        assert!((a.value - 1.0).abs() < 4.0 * a.std_error);
    }
}
