//! Property checks on random log-concave inputs.

use mthorder::convex::{ConvexBody, SimplexVariant};
use mthorder::covariogram::{covariogram_fn, CovMethod};
use mthorder::inequalities::{check_chain, check_tangent_bound, random_log_concave_1d, Status};
use mthorder::lcfun::{LogConcaveFunction, Profile};
use mthorder::mvector::MVector;
use mthorder::starbody::CovSource;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn chain_never_violated(seed in 0u64..10_000, m in 1usize..=2) {
        let f = random_log_concave_1d(seed).unwrap();
        let report = check_chain(CovSource::Function(&f), m, &[-0.5, 0.0, 1.0, 3.0], 4, seed).unwrap();
        for v in &report.verdicts {
            prop_assert!(!v.is_violated(), "{v:?}");
        }
    }

    #[test]
    fn tangent_bound_never_violated(seed in 0u64..10_000, a in -1.5f64..1.5, b in -1.5f64..1.5) {
        let f = random_log_concave_1d(seed).unwrap();
        let points = [MVector::new(1, vec![a]).unwrap(), MVector::new(1, vec![a, b]).unwrap()];
        for x in points {
            let v = check_tangent_bound(&f, x.m(), &[x]).unwrap();
            prop_assert!(!v.is_violated(), "{v:?}");
        }
    }

    #[test]
    fn covariogram_is_log_concave_on_segments(
        seed in 0u64..10_000,
        x in prop::array::uniform2(-1.0f64..1.0),
        y in prop::array::uniform2(-1.0f64..1.0),
        t in 0.05f64..0.95,
    ) {
        let f = random_log_concave_1d(seed).unwrap();
        let g = |p: &[f64]| covariogram_fn(&f, &MVector::new(1, p.to_vec()).unwrap(), CovMethod::LevelSet).unwrap().value;
        let z = [(1.0 - t) * x[0] + t * y[0], (1.0 - t) * x[1] + t * y[1]];
        let (gx, gy, gz) = (g(&x), g(&y), g(&z));
        prop_assert!(gz >= gx.powf(1.0 - t) * gy.powf(t) * (1.0 - 1e-8) - 1e-14);
    }
}

#[test]
fn exponential_simplex_chain_is_flat_in_the_plane() {
    let f = LogConcaveFunction::centered(Profile::Exponential, ConvexBody::simplex(2, SimplexVariant::Centered).unwrap())
        .unwrap();
    let report = check_chain(CovSource::Function(&f), 1, &[-0.5, 0.0, 1.0, 2.0], 8, 0).unwrap();
    for row in &report.normalized {
        assert!(row.iter().all(|g| (g / row[0] - 1.0).abs() < 1e-6), "{row:?}");
    }
    assert!(report.verdicts.iter().all(|v| v.status == Status::HoldsWithEquality));
}
