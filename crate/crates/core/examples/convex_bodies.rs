//! Gauges, facets, difference bodies and higher-order covariograms of a
//! triangle.

use mthorder::convex::{ConvexBody, SimplexVariant};
use mthorder::covariogram::covariogram_body;
use mthorder::mvector::MVector;

pub fn run_example() -> mthorder::Result<Vec<f64>> {
    let tri = ConvexBody::simplex(2, SimplexVariant::Centered)?;
    let x = [0.3, -0.2];
    println!("gauge of {x:?}: {:.6}", tri.gauge(&x)?);
    println!("support in direction e1: {:.6}", tri.support(&[1.0, 0.0]));

    let facets = tri.facets()?;
    for f in &facets.facets {
        println!("facet normal {:?} area {:.6}", f.normal, f.area);
    }

    let vol = tri.volume().value;
    let dk = tri.difference_body()?;
    println!("vol(K) = {vol:.6}, vol(DK)/vol(K) = {:.6}", dk.volume().value / vol);

    let x = MVector::from_blocks(&[vec![0.1, 0.0], vec![0.0, 0.1]])?;
    let g = covariogram_body(&tri, &x).value;
    println!("second-order covariogram at {:?}: {g:.6}", x.as_slice());
    Ok(vec![vol, dk.volume().value, g])
}

#[allow(dead_code)]
fn main() -> mthorder::Result<()> {
    run_example().map(|_| ())
}
