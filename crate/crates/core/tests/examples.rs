#[allow(dead_code)]
#[path = "../examples/convex_bodies.rs"]
mod convex_bodies;
#[allow(dead_code)]
#[path = "../examples/covariograms.rs"]
mod covariograms;
#[allow(dead_code)]
#[path = "../examples/inequality_verdicts.rs"]
mod inequality_verdicts;
#[allow(dead_code)]
#[path = "../examples/mellin_transforms.rs"]
mod mellin_transforms;
#[allow(dead_code)]
#[path = "../examples/projection_bodies.rs"]
mod projection_bodies;
#[allow(dead_code)]
#[path = "../examples/radial_mean_bodies.rs"]
mod radial_mean_bodies;
#[allow(dead_code)]
#[path = "../examples/run_experiment.rs"]
mod run_experiment;

use mthorder::inequalities::Status;

#[test]
fn convex_bodies_example() {
    let v = convex_bodies::run_example().unwrap();
    // Triangle of area 1/2 with vol(DK) = 6·vol(K).
    assert!((v[0] - 0.5).abs() < 1e-12);
    assert!((v[1] - 3.0).abs() < 1e-12);
    assert!(v[2] > 0.0 && v[2] < 0.5);
}

#[test]
fn covariograms_example() {
    let v = covariograms::run_example().unwrap();
    assert!((v[0] - v[1]).abs() < 0.05);
    assert!((v[2] + v[3]).abs() < 1e-5);
}

#[test]
fn mellin_example() {
    let g = mellin_transforms::run_example().unwrap();
    assert!(g.windows(2).all(|w| w[1] < w[0]));
    // G at p = 1 is I_1 = √(π/2) for the Gaussian.
    assert!((g[2] - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-9);
}

#[test]
fn radial_mean_bodies_example() {
    let v = radial_mean_bodies::run_example().unwrap();
    assert!(v.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn projection_bodies_example() {
    let v = projection_bodies::run_example().unwrap();
    assert!((v[0] - 4.0).abs() < 1e-12);
    assert!((v[1] - 3.0).abs() < 1e-3);
    assert!((v[2] - std::f64::consts::PI / 4.0).abs() < 1e-9);
}

#[test]
fn inequality_example() {
    let verdicts = inequality_verdicts::run_example().unwrap();
    assert!(verdicts.iter().all(|v| !v.is_violated()));
    assert_eq!(verdicts[0].status, Status::HoldsWithEquality);
    assert_eq!(verdicts[2].status, Status::Holds);
}

#[test]
fn run_experiment_example() {
    assert_eq!(run_experiment::run_example().unwrap(), 0);
}
