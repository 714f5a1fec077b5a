//! Verdicts for the Rogers–Shephard, Zhang and chain inequalities.

use mthorder::convex::{ConvexBody, SimplexVariant};
use mthorder::inequalities::{check_chain, check_rs_body, check_rs_single, check_zhang_fn, Verdict};
use mthorder::lcfun::{LogConcaveFunction, Profile};
use mthorder::starbody::CovSource;

fn show(v: &Verdict) {
    println!("{:<36} lhs {:>10.6} rhs {:>10.6}  {:?}", v.name, v.lhs.value, v.rhs.value, v.status);
}

pub fn run_example() -> mthorder::Result<Vec<Verdict>> {
    let interval = ConvexBody::simplex(1, SimplexVariant::Corner)?;
    let exp = LogConcaveFunction::centered(Profile::Exponential, interval.clone())?;
    let gauss = LogConcaveFunction::centered(Profile::Gaussian, ConvexBody::cube(1, 1.0)?)?;
    let chi = LogConcaveFunction::centered(Profile::Indicator, interval)?;

    let mut verdicts = vec![
        check_rs_body(&ConvexBody::simplex(2, SimplexVariant::Corner)?, 1, 0, 0)?,
        check_zhang_fn(&exp, 2, 128, 0)?,
        check_zhang_fn(&gauss, 1, 2, 0)?,
        check_rs_single(&chi, 2, 100_000, 0)?,
    ];
    verdicts.extend(check_chain(CovSource::Function(&gauss), 1, &[0.0, 1.0, 3.0], 2, 0)?.verdicts);
    verdicts.iter().for_each(show);
    Ok(verdicts)
}

#[allow(dead_code)]
fn main() -> mthorder::Result<()> {
    run_example().map(|_| ())
}
