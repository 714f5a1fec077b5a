//! Functional covariograms by the level-set quadrature and by direct Monte
//! Carlo, and the radial derivative at the origin.

use mthorder::convex::{ConvexBody, SimplexVariant};
use mthorder::covariogram::{cov_radial_derivative, covariogram_fn, CovMethod};
use mthorder::lcfun::{LogConcaveFunction, Profile};
use mthorder::mvector::MVector;
use mthorder::projection::ppb_gauge_fn;

pub fn run_example() -> mthorder::Result<Vec<f64>> {
    let tri = ConvexBody::simplex(2, SimplexVariant::Centered)?;
    let f = LogConcaveFunction::centered(Profile::Gaussian, tri)?;
    let x = MVector::new(2, vec![0.4, -0.1])?;

    let levelset = covariogram_fn(&f, &x, CovMethod::LevelSet)?;
    let direct = covariogram_fn(&f, &x, CovMethod::direct_default(2, 7))?;
    println!("level sets:  {:.6}", levelset.value);
    println!("direct MC:   {:.6} ± {:.1e}", direct.value, direct.std_error);

    let theta = MVector::new(2, vec![0.6, 0.8])?;
    let slope = cov_radial_derivative(&f, &theta, 1e-3)?;
    let gauge = ppb_gauge_fn(&f, &theta)?;
    println!("radial derivative {slope:.6}, minus projection gauge {:.6}", -gauge);
    Ok(vec![levelset.value, direct.value, slope, gauge])
}

#[allow(dead_code)]
fn main() -> mthorder::Result<()> {
    run_example().map(|_| ())
}
