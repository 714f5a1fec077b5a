use rand::Rng;
use rand_distr::StandardNormal;

use super::stream_rng;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Maximum {
    pub point: Vec<f64>,
    pub value: f64,
}

const MAX_EVALUATIONS: usize = 200_000;
const MAX_RESTARTS: usize = 12;

fn log_value<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64]) -> f64 {
    let v = f(x);
    if v > 0.0 {
        v.ln()
    } else {
        f64::NEG_INFINITY
    }
}

fn random_basis(d: usize, seed: u64, round: u64) -> Vec<Vec<f64>> {
    let mut rng = stream_rng(seed, round);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d);
    while basis.len() < d {
        let mut v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-8 {
            v.iter_mut().for_each(|x| *x /= n);
            basis.push(v);
        }
    }
    basis
}

fn axis_basis(d: usize) -> Vec<Vec<f64>> {
    (0..d)
        .map(|i| {
            let mut e = vec![0.0; d];
            e[i] = 1.0;
            e
        })
        .collect()
}

/// Expanding ring search for a point where `f` is positive.
fn find_positive<F: Fn(&[f64]) -> f64>(f: &F, x0: &[f64]) -> Option<Vec<f64>> {
    let d = x0.len();
    let mut dirs = axis_basis(d);
    dirs.extend(axis_basis(d).into_iter().map(|e| e.into_iter().map(|x| -x).collect()));
    let mut rng = stream_rng(0x5eed, 0);
    for _ in 0..16 * d {
        let mut v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= n);
        dirs.push(v);
    }
    let mut r = 1e-3;
    while r < 1e8 {
        for dir in &dirs {
            let y: Vec<f64> = x0.iter().zip(dir).map(|(a, b)| a + r * b).collect();
            if f(&y) > 0.0 {
                return Some(y);
            }
        }
        r *= 1.2;
    }
    None
}

/// Pattern search along `basis` with step expansion. Returns the final point,
/// its log value and the number of evaluations used.
fn pattern_search<F: Fn(&[f64]) -> f64>(
    f: &F,
    mut x: Vec<f64>,
    mut lx: f64,
    basis: &[Vec<f64>],
    mut step: f64,
    min_step: f64,
    budget: usize,
) -> (Vec<f64>, f64, usize) {
    let mut evals = 0;
    let mut trial = x.clone();
    while step > min_step && evals < budget {
        let mut improved = false;
        for dir in basis {
            for sign in [1.0, -1.0] {
                let mut s = step;
                loop {
                    trial.iter_mut().zip(&x).zip(dir).for_each(|((t, a), b)| *t = a + sign * s * b);
                    let lt = log_value(f, &trial);
                    evals += 1;
                    if lt > lx {
                        x.copy_from_slice(&trial);
                        lx = lt;
                        improved = true;
                        s *= 2.0;
                    } else {
                        break;
                    }
                }
                if improved {
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, lx, evals)
}

/// Maximize a log-concave `f` by derivative-free pattern search in `log f`,
/// restarting from the incumbent with random rotated bases until a restart
/// no longer improves the value. `tol` is a relative tolerance on the value.
pub fn maximize_logconcave<F>(f: F, x0: &[f64], tol: f64) -> Result<Maximum>
where
    F: Fn(&[f64]) -> f64,
{
    let d = x0.len();
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let tol = tol.max(1e-15);
    let mut x = x0.to_vec();
    let mut lx = log_value(&f, &x);
    if lx == f64::NEG_INFINITY {
        x = find_positive(&f, x0).ok_or(Error::ZeroFunctionRegion)?;
        lx = log_value(&f, &x);
    }
    let scale = 1.0 + x.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let min_step = (tol * 1e-3).max(1e-14) * scale;
    let mut evals = 0;
    let (nx, nl, e) = pattern_search(&f, x, lx, &axis_basis(d), 0.25 * scale, min_step, MAX_EVALUATIONS);
    x = nx;
    lx = nl;
    evals += e;
    if d > 1 {
        for round in 0..MAX_RESTARTS as u64 {
            if evals >= MAX_EVALUATIONS {
                break;
            }
            let basis = random_basis(d, 0xba5e, round);
            let (nx, nl, e) =
                pattern_search(&f, x.clone(), lx, &basis, 1e-2 * scale, min_step, MAX_EVALUATIONS - evals);
            evals += e;
            let gain = nl - lx;
            x = nx;
            lx = nl;
            if gain <= 0.1 * tol {
                break;
            }
        }
    }
    Ok(Maximum { value: lx.exp(), point: x })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_peak() {
        let m = maximize_logconcave(|x| (-(x[0] * x[0] + x[1] * x[1])).exp(), &[3.0, 3.0], 1e-9).unwrap();
        assert!((m.value - 1.0).abs() < 1e-9);
        assert!(m.point.iter().all(|v| v.abs() < 1e-4));
    }

    #[test]
    fn indicator_plateau() {
        let m = maximize_logconcave(|x| if (0.0..=1.0).contains(&x[0]) { 1.0 } else { 0.0 }, &[0.5], 1e-9)
            .unwrap();
        assert_eq!(m.value, 1.0);
    }

    #[test]
    fn kinked_product_matches_grid_oracle() {
        let f = |z: &[f64]| (-z[0].abs()).exp() * (-(z[0] - 1.0).abs()).exp();
        let n = 1_000_000;
        let oracle = (0..=n)
            .map(|i| f(&[-2.0 + 5.0 * i as f64 / n as f64]))
            .fold(0.0, f64::max);
        let m = maximize_logconcave(f, &[4.0], 1e-9).unwrap();
        assert!((m.value - oracle).abs() < 1e-9);
        assert!((m.value - (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn ring_search_escapes_zero_region() {
        let f = |x: &[f64]| if x[0] > 5.0 && x[0] < 6.0 { (-(x[0] - 5.5).powi(2)).exp() } else { 0.0 };
        let m = maximize_logconcave(f, &[0.0], 1e-9).unwrap();
        assert!((m.value - 1.0).abs() < 1e-9);
        assert!(matches!(maximize_logconcave(|_: &[f64]| 0.0, &[0.0], 1e-6), Err(Error::ZeroFunctionRegion)));
    }

    #[test]
    fn concave_quadratic_ridge() {
        // Rotated anisotropic quadratic: axis moves alone stall on the ridge.
        let f = |x: &[f64]| {
            let u = x[0] + x[1] - 1.0;
            let v = x[0] - x[1];
            (-(50.0 * u * u + 0.1 * v * v) + 2.0).exp()
        };
        let m = maximize_logconcave(f, &[-3.0, 4.0], 1e-8).unwrap();
        assert!(((m.value.ln()) - 2.0).abs() < 1e-7);
    }
}
