//! Mellin transforms of decreasing profiles across the pole at zero, and the
//! normalized quantity that is constant exactly for exponentials.

use mthorder::lcfun::Profile;
use mthorder::mellin::{g_functional, i_p, mellin, MellinProfile};

pub fn run_example() -> mthorder::Result<Vec<f64>> {
    let exp = MellinProfile::closed(Profile::Exponential);
    let gauss = MellinProfile::closed(Profile::Gaussian);
    let mut out = Vec::new();
    for p in [-0.5, 0.0, 1.0, 3.0] {
        let g_exp = g_functional(&exp, p, 0.0)?;
        let g_gauss = g_functional(&gauss, p, 0.0)?;
        println!("p = {p:>4}: I_p(gauss) = {:.6}, G(exp) = {g_exp:.9}, G(gauss) = {g_gauss:.6}", i_p(&gauss, p)?);
        out.push(g_gauss);
    }
    println!("M(2.5) of e^(-t) = {:.9}", mellin(&exp, 2.5)?);
    Ok(out)
}

#[allow(dead_code)]
fn main() -> mthorder::Result<()> {
    run_example().map(|_| ())
}
