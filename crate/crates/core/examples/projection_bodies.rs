//! Gauges and volumes of higher-order polar projection bodies.

use mthorder::convex::{ConvexBody, SimplexVariant};
use mthorder::mvector::MVector;
use mthorder::projection::{ppb_gauge_body, ppb_volume_body};

pub fn run_example() -> mthorder::Result<Vec<f64>> {
    let square = ConvexBody::cube(2, 1.0)?;
    let theta = MVector::from_blocks(&[vec![1.0, 0.0], vec![0.0, -1.0]])?;
    let g = ppb_gauge_body(&square, &theta)?;
    println!("gauge of the square's second-order projection body at {:?}: {g:.6}", theta.as_slice());

    let mut out = vec![g];
    for (name, k) in [("triangle", ConvexBody::simplex(2, SimplexVariant::Corner)?), ("disk", ConvexBody::ball(2, 1.0)?)] {
        let vol = ppb_volume_body(&k, 1, 1024, 0)?;
        println!("{name}: vol(polar projection body) = {:.6}", vol.value);
        out.push(vol.value);
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> mthorder::Result<()> {
    run_example().map(|_| ())
}
