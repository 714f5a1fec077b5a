//! Level-set quadrature against direct Monte Carlo on random inputs.

use mthorder::convex::{random_polygon, ConvexBody, SimplexVariant};
use mthorder::covariogram::{covariogram_fn, CovMethod};
use mthorder::lcfun::{LogConcaveFunction, Profile};
use mthorder::mvector::MVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_case(rng: &mut ChaCha8Rng) -> (LogConcaveFunction, MVector) {
    let n = rng.random_range(1..=2);
    let body = match (n, rng.random_range(0..3)) {
        (1, _) => {
            let a: f64 = rng.random_range(0.0..1.0);
            let b: f64 = rng.random_range(0.3..1.5);
            ConvexBody::from_vertices(&[vec![-a], vec![b]]).unwrap()
        }
        (_, 0) => ConvexBody::simplex(2, SimplexVariant::Centered).unwrap(),
        (_, 1) => ConvexBody::cube(2, rng.random_range(0.5..1.5)).unwrap(),
        _ => random_polygon(6, rng.random()).unwrap(),
    };
    let profile = match rng.random_range(0..4) {
        0 => Profile::Exponential,
        1 => Profile::Gaussian,
        2 => Profile::Power { s: rng.random_range(0.3..2.0) },
        _ => Profile::Indicator,
    };
    let shift: Vec<f64> = (0..n).map(|_| rng.random_range(-0.5..0.5)).collect();
    let f = LogConcaveFunction::new(profile, body, shift, rng.random_range(0.5..2.0)).unwrap();
    let m = if n == 1 { rng.random_range(1..=3) } else { rng.random_range(1..=2) };
    let x: Vec<f64> = (0..n * m).map(|_| rng.random_range(-0.6..0.6)).collect();
    (f, MVector::new(n, x).unwrap())
}

#[test]
fn levelset_matches_direct_monte_carlo_on_fifty_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for case in 0..50 {
        let (f, x) = random_case(&mut rng);
        let quad = covariogram_fn(&f, &x, CovMethod::LevelSet).unwrap();
        let mc = covariogram_fn(&f, &x, CovMethod::DirectMc { samples: 200_000, seed: case }).unwrap();
        let z = (quad.value - mc.value).abs() / quad.std_error.hypot(mc.std_error).max(1e-300);
        worst = worst.max(z.min(1e9));
        assert!(
            quad.agrees_with(&mc, 4.0, 1e-3 * quad.value.abs().max(1e-3)),
            "case {case}: {:?} at {:?}: level set {quad:?} vs direct {mc:?}",
            f.profile(),
            x.as_slice()
        );
    }
    eprintln!("largest standardized gap {worst:.2}");
}
