//! Radial mean bodies of a Gaussian on the plane, their volumes, and the CSV
//! table format.

use mthorder::convex::ConvexBody;
use mthorder::lcfun::{LogConcaveFunction, Profile};
use mthorder::starbody::{radial_mean_body_fn, star_volume, StarBodyTable};

pub fn run_example() -> mthorder::Result<Vec<f64>> {
    let f = LogConcaveFunction::centered(Profile::Gaussian, ConvexBody::cube(2, 1.0)?)?;
    let mut volumes = Vec::new();
    for p in [-0.5, 1.0, 4.0] {
        let table = radial_mean_body_fn(&f, 1, p, 32, 0)?;
        let vol = star_volume(&table)?;
        println!("p = {p:>4}: vol(R_p f) = {:.6}", vol.value);
        volumes.push(vol.value);
    }
    let table = radial_mean_body_fn(&f, 1, 2.0, 8, 0)?;
    let csv = table.to_csv();
    let back = StarBodyTable::from_csv(&csv)?;
    println!("{} directions round-tripped through CSV", back.len());
    Ok(volumes)
}

#[allow(dead_code)]
fn main() -> mthorder::Result<()> {
    run_example().map(|_| ())
}
